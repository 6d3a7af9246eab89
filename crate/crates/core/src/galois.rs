//! The Mod/Th Galois laws, the unsatisfiable/trivial correspondence and the Tarski representation.

use crate::amst::FiniteAmst;
use crate::bits::{all_sets, ModelSet, SentenceSet};
use crate::check::Status;
use crate::consequence::LogicalStructure;
use crate::error::{Error, Result};

/// Stops collecting after this many violations.
const KEEP: usize = 8;

struct Log(Vec<String>);

impl Log {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.0.len() < KEEP {
            self.0.push(what());
        }
    }
}

fn model_sets(n: usize) -> impl Iterator<Item = ModelSet> + Clone {
    (0u64..1 << n).map(move |w| ModelSet::from_word(n, w))
}

/// `Mod` laws: intersection of singletons and unions to intersections on normal amsts, antitone on all.
pub fn cumulative_violations(amst: &FiniteAmst) -> Vec<String> {
    let n = amst.num_sentences();
    let mods = amst.mod_table();
    let at = |g: SentenceSet| &mods[g.0 as usize];
    let normal = amst.is_normal_matrix();
    let mut log = Log(Vec::new());
    for g in all_sets(n) {
        if normal {
            let meet = g
                .iter()
                .fold(ModelSet::full(amst.num_models()), |acc, k| acc.intersection(at(SentenceSet::singleton(k))));
            log.check(&meet == at(g), || format!("(1) Mod({}) is not the meet of its singletons", amst.fmt_sentences(g)));
        }
        for s in g.subsets() {
            if normal {
                log.check(at(g).is_subset(at(s)), || {
                    format!("(2) Mod({}) not inside Mod({})", amst.fmt_sentences(g), amst.fmt_sentences(s))
                });
            }
        }
        if normal {
            for h in all_sets(n).filter(|h| h.0 >= g.0) {
                log.check(at(g.union(h)) == &at(g).intersection(at(h)), || {
                    format!("(3) Mod of {} u {} is not the meet", amst.fmt_sentences(g), amst.fmt_sentences(h))
                });
            }
        }
    }
    log.0
}

/// `Th` laws (1) to (4) on all amsts, and (5) on normal ones.
pub fn cumulative_th_violations(amst: &FiniteAmst) -> Result<Vec<String>> {
    let m = amst.num_models();
    if m > 12 {
        return Err(Error::Capacity {
            what: "models for a Th sweep",
            got: m,
            cap: 12,
        });
    }
    let full = amst.full();
    let mut log = Log(Vec::new());
    let ths: Vec<SentenceSet> = model_sets(m).map(|x| amst.th_of(&x)).collect();
    let th = |x: &ModelSet| ths[x.word().expect("at most 12 models") as usize];
    log.check(th(&ModelSet::empty(m)) == full, || "(3) Th of no models is not L".into());
    for x in model_sets(m) {
        let pointwise = x.iter().fold(full, |acc, i| acc.intersection(amst.theory(i)));
        log.check(th(&x) == pointwise, || format!("(2) Th({}) is not the meet of theories", amst.fmt_models(&x)));
        for y in model_sets(m).filter(|y| y.word() >= x.word()) {
            if x.is_subset(&y) {
                log.check(th(&y).is_subset(th(&x)), || {
                    format!("(1) Th({}) not inside Th({})", amst.fmt_models(&y), amst.fmt_models(&x))
                });
            }
            log.check(th(&x.union(&y)) == th(&x).intersection(th(&y)), || {
                format!("(4) Th of {} u {} is not the meet", amst.fmt_models(&x), amst.fmt_models(&y))
            });
        }
    }
    if amst.is_normal_matrix() {
        let ls = amst.induced_consequence()?;
        for s in all_sets(amst.num_sentences()) {
            let back = amst.th_of(&amst.mod_of(s));
            log.check(s.is_subset(back), || format!("(5) {} not inside ThMod", amst.fmt_sentences(s)));
            if s != full {
                let expect = amst.is_satisfiable(s).is_some() && ls.is_closed_set(s);
                log.check((back == s) == expect, || {
                    format!("(5) ThMod({}) = {} but satisfiable and closed is {expect}", amst.fmt_sentences(s), amst.fmt_sentences(back))
                });
            }
        }
    }
    Ok(log.0)
}

/// Unsatisfiable sets are trivial; on normal amsts with `L` unsatisfiable, trivial sets are unsatisfiable.
pub fn nsat_triv_check(amst: &FiniteAmst) -> Result<Status> {
    let ls = amst.induced_consequence()?;
    let mut log = Log(Vec::new());
    let converse = amst.is_normal_matrix() && amst.is_satisfiable(amst.full()).is_none();
    for g in all_sets(amst.num_sentences()) {
        let sat = amst.is_satisfiable(g).is_some();
        let triv = ls.is_trivial_set(g);
        log.check(sat || triv, || format!("unsatisfiable {} is not trivial", amst.fmt_sentences(g)));
        if converse {
            log.check(!triv || !sat, || format!("trivial {} is satisfiable", amst.fmt_sentences(g)));
        }
    }
    Ok(Status::from_violations(&log.0))
}

/// The induced consequence of a normal amst is of Tarski type.
pub fn induced_tarski_check(amst: &FiniteAmst) -> Result<Status> {
    if !amst.is_normal().holds() {
        return Ok(Status::vacuous("amst is not normal"));
    }
    let rep = amst.induced_consequence()?.is_tarski_type();
    Ok(if rep.all() {
        Status::Verified
    } else {
        Status::violated(format!("induced consequence is not of Tarski type: {rep:?}"))
    })
}

/// The canonical normal amst of a Tarski structure induces it back and leaves `L` unsatisfiable.
pub fn representation_check(ls: &LogicalStructure) -> Result<Status> {
    if !ls.is_tarski_type().all() {
        return Ok(Status::vacuous("not of Tarski type"));
    }
    let amst = match ls.canonical_normal_amst() {
        Ok(a) => a,
        Err(Error::EmptyModels) => return Ok(Status::vacuous("every set is trivial")),
        Err(e) => return Err(e),
    };
    let back = amst.induced_consequence()?;
    if &back != ls {
        let g = all_sets(ls.num_sentences())
            .find(|&g| back.closure(g) != ls.closure(g))
            .expect("tables differ somewhere");
        return Ok(Status::violated(format!(
            "closure of {} is {} but the canonical amst gives {}",
            ls.fmt(g),
            ls.fmt(ls.closure(g)),
            ls.fmt(back.closure(g))
        )));
    }
    if let Some(m) = amst.is_satisfiable(amst.full()) {
        return Ok(Status::violated(format!("L is satisfied by {}", amst.model_labels()[m])));
    }
    Ok(Status::Verified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amst::labels;
    use crate::consequence::t0;

    fn a2() -> FiniteAmst {
        FiniteAmst::normal(vec!["a".into(), "b".into()], labels("m", 2), vec![SentenceSet(1), SentenceSet(2)]).unwrap()
    }

    #[test]
    fn laws_hold_on_a2() {
        assert!(cumulative_violations(&a2()).is_empty());
        assert!(cumulative_th_violations(&a2()).unwrap().is_empty());
        assert_eq!(nsat_triv_check(&a2()).unwrap(), Status::Verified);
        assert_eq!(induced_tarski_check(&a2()).unwrap(), Status::Verified);
    }

    #[test]
    fn representation_of_t0() {
        assert_eq!(representation_check(&t0()).unwrap(), Status::Verified);
        let all = crate::consequence::everything_trivial(2).unwrap();
        assert!(matches!(representation_check(&all).unwrap(), Status::Vacuous { .. }));
    }

    #[test]
    fn general_tables_skip_normal_laws() {
        // satisfies {a} and {b} but not {a,b}
        let g = FiniteAmst::general_from_fn(vec!["a".into(), "b".into()], labels("m", 1), |_, s| s.len() < 2).unwrap();
        assert!(cumulative_violations(&g).is_empty());
        assert!(cumulative_th_violations(&g).unwrap().is_empty());
        assert!(matches!(induced_tarski_check(&g).unwrap(), Status::Vacuous { .. }));
    }
}
