//! Logical structures `(L, ⊢)` stored as closure tables.

use crate::amst::{labels, FiniteAmst, SentenceId, MAX_TABLE_SENTENCES};
use crate::bits::{all_sets, render, SentenceSet};
use crate::check::{Outcome, Status};
use crate::error::{Error, Result};

/// Row `Γ` (by bitmask) holds `C(Γ) = {α : Γ ⊢ α}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalStructure {
    sentences: Vec<String>,
    rows: Vec<SentenceSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TarskiReport {
    /// Witness `(Γ, α)` with `α ∈ Γ`, `Γ ⊬ α`.
    pub reflexive: Outcome<(SentenceSet, SentenceId)>,
    /// Witness `(Γ, Σ, α)` with `Γ ⊆ Σ`, `Γ ⊢ α`, `Σ ⊬ α`.
    pub monotonic: Outcome<(SentenceSet, SentenceSet, SentenceId)>,
    /// Witness `(Γ, Σ, α)` with `Γ ⊢ Σ`, `Σ ⊢ α`, `Γ ⊬ α`.
    pub transitive: Outcome<(SentenceSet, SentenceSet, SentenceId)>,
}

impl TarskiReport {
    pub fn all(&self) -> bool {
        self.reflexive.holds() && self.monotonic.holds() && self.transitive.holds()
    }
}

impl LogicalStructure {
    pub fn new(sentences: Vec<String>, rows: Vec<SentenceSet>) -> Result<Self> {
        let n = sentences.len();
        if n > MAX_TABLE_SENTENCES {
            return Err(Error::Capacity {
                what: "sentences for a consequence table",
                got: n,
                cap: MAX_TABLE_SENTENCES,
            });
        }
        if rows.len() != 1 << n {
            return Err(Error::Shape(format!("turnstile has {} rows, expected {}", rows.len(), 1 << n)));
        }
        let full = SentenceSet::full(n);
        if let Some(r) = rows.iter().find(|r| !r.is_subset(full)) {
            return Err(Error::Shape(format!("row {r:?} wider than {n} sentences")));
        }
        Ok(LogicalStructure { sentences, rows })
    }

    pub fn from_fn(sentences: Vec<String>, f: impl Fn(SentenceSet, SentenceId) -> bool) -> Result<Self> {
        let n = sentences.len();
        if n > MAX_TABLE_SENTENCES {
            return Err(Error::Capacity {
                what: "sentences for a consequence table",
                got: n,
                cap: MAX_TABLE_SENTENCES,
            });
        }
        let rows = all_sets(n)
            .map(|g| SentenceSet::from_indices((0..n).filter(|&k| f(g, k))))
            .collect();
        Self::new(sentences, rows)
    }

    pub fn sentence_labels(&self) -> &[String] {
        &self.sentences
    }

    pub fn num_sentences(&self) -> usize {
        self.sentences.len()
    }

    pub fn full(&self) -> SentenceSet {
        SentenceSet::full(self.sentences.len())
    }

    pub fn rows(&self) -> &[SentenceSet] {
        &self.rows
    }

    pub fn entails(&self, gamma: SentenceSet, alpha: SentenceId) -> bool {
        self.rows[gamma.0 as usize].contains(alpha)
    }

    pub fn closure(&self, gamma: SentenceSet) -> SentenceSet {
        self.rows[gamma.0 as usize]
    }

    pub fn is_trivial_set(&self, gamma: SentenceSet) -> bool {
        self.closure(gamma) == self.full()
    }

    pub fn is_closed_set(&self, gamma: SentenceSet) -> bool {
        self.closure(gamma) == gamma
    }

    pub fn is_tarski_type(&self) -> TarskiReport {
        let n = self.num_sentences();
        let reflexive = all_sets(n)
            .find_map(|g| g.difference(self.closure(g)).iter().next().map(|a| (g, a)))
            .into();
        let monotonic = all_sets(n)
            .find_map(|s| {
                s.subsets().find_map(|g| {
                    self.closure(g)
                        .difference(self.closure(s))
                        .iter()
                        .next()
                        .map(|a| (g, s, a))
                })
            })
            .into();
        let transitive = all_sets(n)
            .find_map(|g| {
                let cg = self.closure(g);
                cg.subsets()
                    .find_map(|s| self.closure(s).difference(cg).iter().next().map(|a| (g, s, a)))
            })
            .into();
        TarskiReport {
            reflexive,
            monotonic,
            transitive,
        }
    }

    /// Smallest `Γ₀ ⊆ Γ` (by size, then bitmask) with `Γ₀ ⊢ α`; `proper_only` excludes `Γ` itself.
    pub fn finitary_witness(&self, gamma: SentenceSet, alpha: SentenceId, proper_only: bool) -> Option<SentenceSet> {
        gamma
            .subsets_by_size()
            .into_iter()
            .filter(|&g0| !(proper_only && g0 == gamma))
            .find(|&g0| self.entails(g0, alpha))
    }

    /// Fails with `(Γ, α)` where `Γ ⊢ α` has no finite witness.
    pub fn is_finitary(&self) -> Outcome<(SentenceSet, SentenceId)> {
        all_sets(self.num_sentences())
            .find_map(|g| {
                self.closure(g)
                    .iter()
                    .find(|&a| self.finitary_witness(g, a, false).is_none())
                    .map(|a| (g, a))
            })
            .into()
    }

    /// Models are the distinct `χ_{C(Σ)}` over nontrivial `Σ`, ordered by closure bitmask.
    pub fn canonical_normal_amst(&self) -> Result<FiniteAmst> {
        let rep = self.is_tarski_type();
        if !rep.all() {
            return Err(Error::Precondition(format!("logical structure is not of Tarski type: {rep:?}")));
        }
        let full = self.full();
        let mut closures: Vec<SentenceSet> = self.rows.iter().copied().filter(|&c| c != full).collect();
        closures.sort_unstable();
        closures.dedup();
        if closures.is_empty() {
            return Err(Error::EmptyModels);
        }
        let models = closures
            .iter()
            .map(|c| format!("chi{}", render(&self.sentences, c.iter())))
            .collect();
        FiniteAmst::normal(self.sentences.clone(), models, closures)
    }

    /// Checks that every trivial set contains a finite trivial set, rebuilding it as the proof does.
    pub fn check_finitary_trivial_theorem(&self) -> Status {
        let rep = self.is_tarski_type();
        if let Outcome::Fails(w) = self.is_finitary() {
            return Status::vacuous(format!("not finitary at {w:?}"));
        }
        if !rep.monotonic.holds() {
            return Status::vacuous("not monotonic");
        }
        if !rep.transitive.holds() {
            return Status::vacuous("not transitive");
        }
        let Some(lambda) = self
            .full()
            .subsets_by_size()
            .into_iter()
            .find(|&g| !g.is_empty() && self.is_trivial_set(g))
        else {
            return Status::vacuous("no nonempty finite trivial set");
        };
        for g in all_sets(self.num_sentences()).filter(|&g| self.is_trivial_set(g)) {
            let mut sigma = SentenceSet::EMPTY;
            for l in lambda.iter() {
                match self.finitary_witness(g, l, false) {
                    Some(gi) => sigma = sigma.union(gi),
                    None => return Status::violated(format!("{} has no finite subset entailing {}", self.fmt(g), self.sentences[l])),
                }
            }
            if !sigma.is_subset(g) || !self.is_trivial_set(sigma) {
                return Status::violated(format!(
                    "trivial {} yields nontrivial witness {} from {}",
                    self.fmt(g),
                    self.fmt(sigma),
                    self.fmt(lambda)
                ));
            }
        }
        Status::Verified
    }

    pub fn fmt(&self, s: SentenceSet) -> String {
        render(&self.sentences, s.iter())
    }
}

/// The structure `T0` used throughout the docs: `Γ ⊢ α` iff `α ∈ Γ` or `Γ = L`, over `{p,q}`.
pub fn t0() -> LogicalStructure {
    let full = SentenceSet(3);
    LogicalStructure::from_fn(vec!["p".into(), "q".into()], |g, a| g.contains(a) || g == full)
        .expect("two sentences fit")
}

/// The structure whose every set entails everything.
pub fn everything_trivial(n: usize) -> Result<LogicalStructure> {
    LogicalStructure::from_fn(labels("s", n), |_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_rows_of_t0() {
        let t = t0();
        assert_eq!(t.closure(SentenceSet(1)), SentenceSet(1));
        assert_eq!(t.closure(SentenceSet(3)), SentenceSet(3));
        assert_eq!(t.closure(SentenceSet::EMPTY), SentenceSet::EMPTY);
    }

    #[test]
    fn t0_is_tarski() {
        assert!(t0().is_tarski_type().all());
    }

    #[test]
    fn reflexivity_violation_is_witnessed() {
        let ls = LogicalStructure::from_fn(vec!["p".into()], |_, _| false).unwrap();
        assert_eq!(ls.is_tarski_type().reflexive, Outcome::Fails((SentenceSet(1), 0)));
    }

    #[test]
    fn monotonicity_and_transitivity_violations() {
        let ls = LogicalStructure::from_fn(vec!["p".into(), "q".into()], |g, a| g.contains(a) || (g == SentenceSet(1) && a == 1))
            .unwrap();
        let rep = ls.is_tarski_type();
        assert!(rep.reflexive.holds());
        assert!(rep.monotonic.holds());
        assert!(rep.transitive.holds());
        // ∅ ⊢ p and {p} ⊢ q but ∅ ⊬ q
        let ls = LogicalStructure::from_fn(vec!["p".into(), "q".into()], |g, a| {
            g.contains(a) || a == 0 || (g.contains(0) && a == 1)
        })
        .unwrap();
        assert_eq!(ls.is_tarski_type().transitive, Outcome::Fails((SentenceSet(0), SentenceSet(1), 1)));
        // {p} ⊢ q but {p,r} ⊬ q
        let ls = LogicalStructure::from_fn(vec!["p".into(), "q".into(), "r".into()], |g, a| {
            g.contains(a) || (g == SentenceSet(1) && a == 1)
        })
        .unwrap();
        assert_eq!(ls.is_tarski_type().monotonic, Outcome::Fails((SentenceSet(1), SentenceSet(5), 1)));
    }

    #[test]
    fn finitary_search() {
        let t = t0();
        assert!(t.is_finitary().holds());
        assert_eq!(t.finitary_witness(SentenceSet(3), 0, true), Some(SentenceSet(1)));
        assert_eq!(t.finitary_witness(SentenceSet(1), 0, true), None);
    }

    #[test]
    fn trivial_and_closed() {
        let t = t0();
        assert!(t.is_trivial_set(SentenceSet(3)));
        assert!(!t.is_trivial_set(SentenceSet(1)));
        assert!(t.is_closed_set(SentenceSet(1)));
        assert!(t.is_closed_set(SentenceSet::EMPTY));
    }

    #[test]
    fn canonical_amst_of_t0() {
        let a = t0().canonical_normal_amst().unwrap();
        assert_eq!(a.num_models(), 3);
        assert_eq!(a.model_labels(), &["chi{}", "chi{p}", "chi{q}"]);
        assert_eq!(a.is_satisfiable(a.full()), None);
        assert_eq!(a.induced_consequence().unwrap(), t0());
    }

    #[test]
    fn canonical_amst_errors() {
        assert_eq!(everything_trivial(2).unwrap().canonical_normal_amst(), Err(Error::EmptyModels));
        let bad = LogicalStructure::from_fn(vec!["p".into()], |_, _| false).unwrap();
        assert!(matches!(bad.canonical_normal_amst(), Err(Error::Precondition(_))));
    }

    #[test]
    fn finitary_trivial_theorem() {
        assert_eq!(t0().check_finitary_trivial_theorem(), Status::Verified);
        let empty = LogicalStructure::from_fn(vec!["p".into()], |_, _| false).unwrap();
        assert_eq!(
            empty.check_finitary_trivial_theorem(),
            Status::vacuous("no nonempty finite trivial set")
        );
        let a2 = FiniteAmst::normal(
            vec!["a".into(), "b".into()],
            vec!["m0".into(), "m1".into()],
            vec![SentenceSet(1), SentenceSet(2)],
        )
        .unwrap();
        assert_eq!(a2.induced_consequence().unwrap().check_finitary_trivial_theorem(), Status::Verified);
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            LogicalStructure::from_fn(labels("s", 13), |_, _| true),
            Err(Error::Capacity { .. })
        ));
    }
}
