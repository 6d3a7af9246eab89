mod common;

use proptest::prelude::*;

use amst::amst::labels;
use amst::counterexample::{expr_equal, expr_member, Base, NatSetExpr};
use amst::harness::{run_suite, shrink, SuiteConfig};
use amst::{Exec, FiniteAmst, LogicalStructure, ModelSet, SentenceSet};
use common::Raw;

fn normal_amst() -> impl Strategy<Value = FiniteAmst> {
    (1usize..=6, 0usize..=6).prop_flat_map(|(m, n)| {
        prop::collection::vec(0u32..1 << n, m)
            .prop_map(move |rows| FiniteAmst::normal(labels("a", n), labels("m", m), rows.into_iter().map(SentenceSet).collect()).unwrap())
    })
}

fn general_amst() -> impl Strategy<Value = FiniteAmst> {
    (1usize..=4, 0usize..=4).prop_flat_map(|(m, n)| {
        prop::collection::vec(any::<bool>(), m << n).prop_map(move |t| FiniteAmst::general(labels("a", n), labels("m", m), t).unwrap())
    })
}

fn structure() -> impl Strategy<Value = LogicalStructure> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(0u32..1 << n, 1 << n)
            .prop_map(move |rows| LogicalStructure::new(labels("s", n), rows.into_iter().map(SentenceSet).collect()).unwrap())
    })
}

fn expr() -> impl Strategy<Value = NatSetExpr> {
    let base = prop_oneof![Just(Base::All), Just(Base::Odds), Just(Base::Empty)];
    (base, prop::collection::vec(0u64..12, 0..4), prop::collection::vec(0u64..12, 0..4)).prop_map(|(b, p, m)| NatSetExpr::new(b, p, m))
}

fn window(e: &NatSetExpr) -> Vec<bool> {
    (0..16).map(|k| expr_member(k, e)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mod_is_antitone_on_normal(a in normal_amst(), g in any::<u32>(), h in any::<u32>()) {
        let full = a.full().0;
        let (g, h) = (SentenceSet(g & full), SentenceSet((g | h) & full));
        prop_assert!(a.mod_of(h).is_subset(&a.mod_of(g)));
    }

    #[test]
    fn th_laws(a in normal_amst(), x in any::<u64>(), y in any::<u64>()) {
        let m = a.num_models();
        let x = ModelSet::from_word(m, x & ((1 << m) - 1));
        let y = ModelSet::from_word(m, y & ((1 << m) - 1));
        let both = x.union(&y);
        prop_assert!(a.th_of(&both).is_subset(a.th_of(&x)));
        prop_assert_eq!(a.th_of(&both), a.th_of(&x).intersection(a.th_of(&y)));
        prop_assert_eq!(a.th_of(&ModelSet::empty(m)), a.full());
        // Galois connection between model sets and sentence sets
        for g in amst::bits::all_sets(a.num_sentences()) {
            prop_assert_eq!(x.is_subset(&a.mod_of(g)), g.is_subset(a.th_of(&x)));
        }
    }

    #[test]
    fn mod_agrees_with_oracle(a in general_amst()) {
        let raw = Raw::of(&a);
        for g in 0..=raw.full() {
            prop_assert_eq!(a.mod_of(SentenceSet(g)).word(), Some(raw.modset(g) as u64));
        }
    }

    #[test]
    fn tarski_iff_closure_operator(ls in structure()) {
        let full = ls.full().0;
        let cl = |g: u32| ls.closure(SentenceSet(g)).0;
        let extensive = (0..=full).all(|g| g & !cl(g) == 0);
        let monotone = (0..=full).all(|g| (0..=full).all(|h| g & !h != 0 || cl(g) & !cl(h) == 0));
        let idempotent = (0..=full).all(|g| cl(cl(g)) == cl(g));
        prop_assert_eq!(ls.is_tarski_type().all(), extensive && monotone && idempotent);
    }

    #[test]
    fn induced_consequence_is_tarski(a in normal_amst()) {
        let ls = a.induced_consequence().unwrap();
        prop_assert!(ls.is_tarski_type().all());
        let raw = Raw::of(&a);
        for g in 0..=raw.full() {
            prop_assert_eq!(ls.closure(SentenceSet(g)).0, raw.closure(g));
        }
    }

    #[test]
    fn expr_equal_is_extensional(a in expr(), b in expr(), c in expr()) {
        prop_assert!(expr_equal(&a, &a));
        prop_assert_eq!(expr_equal(&a, &b), expr_equal(&b, &a));
        if expr_equal(&a, &b) && expr_equal(&b, &c) {
            prop_assert!(expr_equal(&a, &c));
        }
        // edits stay below 12, so the window beyond them decides the base
        prop_assert_eq!(expr_equal(&a, &b), window(&a) == window(&b));
    }

    #[test]
    fn shrink_never_grows(a in general_amst(), min_models in 1usize..=3) {
        let fails = |x: &FiniteAmst| x.num_models() >= min_models.min(a.num_models());
        let s = shrink(&a, fails).unwrap();
        prop_assert!(s.num_models() <= a.num_models() && s.num_sentences() <= a.num_sentences());
        prop_assert!(fails(&s));
    }

    #[test]
    fn json_round_trips(a in general_amst(), b in normal_amst(), ls in structure(), e in expr()) {
        for x in [a, b] {
            let back: FiniteAmst = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }
        let back: LogicalStructure = serde_json::from_str(&serde_json::to_string(&ls).unwrap()).unwrap();
        prop_assert_eq!(back, ls);
        let back: NatSetExpr = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn suite_is_deterministic(seed in any::<u64>()) {
        let cfg = SuiteConfig { seed, count: 12, exec: Exec::Parallel, ..SuiteConfig::default() };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&SuiteConfig { exec: Exec::Sequential, ..cfg.clone() }).unwrap();
        prop_assert_eq!(serde_json::to_value(&a).unwrap(), serde_json::to_value(&b).unwrap());
        prop_assert!(a.iter().all(|v| !v.status.is_violated()));
    }
}
