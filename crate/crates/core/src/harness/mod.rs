//! Random instances, shrinking and the theorem suite behind the `amst` binary.

mod suite;

pub use suite::{run_suite, summarize, SuiteConfig, TheoremSummary, Verdict, THEOREMS};

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::amst::{labels, FiniteAmst, MAX_SENTENCES, MAX_TABLE_SENTENCES};
use crate::bits::SentenceSet;
use crate::consequence::LogicalStructure;
use crate::error::{Error, Result};
pub use crate::io::Kind;
use crate::rng::{seeded, Rng64};

/// Largest model count the generators emit.
pub const MAX_GEN_MODELS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed: u64,
    pub max_models: usize,
    pub max_sentences: usize,
    pub kind: Kind,
    /// Probability that a model satisfies a sentence (normal) or a set (general).
    pub density: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: crate::rng::DEFAULT_SEED,
            max_models: 4,
            max_sentences: 4,
            kind: Kind::Normal,
            density: 0.5,
        }
    }
}

impl GenParams {
    fn check(&self) -> Result<()> {
        let cap = match self.kind {
            Kind::Normal => MAX_SENTENCES,
            Kind::General => MAX_TABLE_SENTENCES,
        };
        if self.max_sentences > cap {
            return Err(Error::Capacity {
                what: "generated sentences",
                got: self.max_sentences,
                cap,
            });
        }
        if self.max_models > MAX_GEN_MODELS {
            return Err(Error::Capacity {
                what: "generated models",
                got: self.max_models,
                cap: MAX_GEN_MODELS,
            });
        }
        if self.max_models == 0 {
            return Err(Error::Argument("max_models must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Argument(format!("density {} outside [0, 1]", self.density)));
        }
        Ok(())
    }
}

/// An amst with `1..=max_models` models and `1..=max_sentences` sentences (0 when the cap is 0).
pub fn random_amst(p: &GenParams) -> Result<FiniteAmst> {
    p.check()?;
    let mut rng = seeded(p.seed);
    let m = rng.gen_range(1..=p.max_models);
    let n = if p.max_sentences == 0 { 0 } else { rng.gen_range(1..=p.max_sentences) };
    random_amst_sized(&mut rng, m, n, p.kind, p.density)
}

/// An amst of exactly `m × n`, drawn from `rng`.
pub fn random_amst_sized(rng: &mut Rng64, m: usize, n: usize, kind: Kind, density: f64) -> Result<FiniteAmst> {
    match kind {
        Kind::Normal => {
            let rows = (0..m)
                .map(|_| SentenceSet::from_indices((0..n).filter(|_| rng.gen_bool(density))))
                .collect();
            FiniteAmst::normal(labels("a", n), labels("m", m), rows)
        }
        Kind::General => {
            if n > MAX_TABLE_SENTENCES {
                return Err(Error::Capacity {
                    what: "generated sentences",
                    got: n,
                    cap: MAX_TABLE_SENTENCES,
                });
            }
            let table = (0..m << n).map(|_| rng.gen_bool(density)).collect();
            FiniteAmst::general(labels("a", n), labels("m", m), table)
        }
    }
}

/// The induced consequence of a random normal amst, hence of Tarski type.
pub fn random_tarski(p: &GenParams) -> Result<LogicalStructure> {
    if p.max_sentences > MAX_TABLE_SENTENCES {
        return Err(Error::Capacity {
            what: "sentences for a consequence table",
            got: p.max_sentences,
            cap: MAX_TABLE_SENTENCES,
        });
    }
    random_amst(&GenParams { kind: Kind::Normal, ..*p })?.induced_consequence()
}

/// Greedily drops models, then sentences, while `fails` keeps holding, until no single removal does.
pub fn shrink(amst: &FiniteAmst, fails: impl Fn(&FiniteAmst) -> bool) -> Result<FiniteAmst> {
    if !fails(amst) {
        return Err(Error::Precondition("predicate does not fail on the input".into()));
    }
    let mut cur = amst.clone();
    'outer: loop {
        for i in 0..cur.num_models() {
            if let Ok(next) = cur.without_model(i) {
                if fails(&next) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        for k in 0..cur.num_sentences() {
            if let Ok(next) = cur.without_sentence(k) {
                if fails(&next) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return Ok(cur);
    }
}

/// First 16 hex digits of the SHA-256 of an instance's JSON.
pub fn digest<T: Serialize>(instance: &T) -> String {
    let bytes = serde_json::to_vec(instance).expect("instances serialize");
    hex::encode(&Sha256::digest(bytes)[..8])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_extreme_densities() {
        let p = GenParams {
            seed: 1,
            max_models: 2,
            max_sentences: 2,
            ..GenParams::default()
        };
        assert_eq!(random_amst(&p).unwrap(), random_amst(&p).unwrap());
        let full = random_amst(&GenParams { density: 1.0, ..p }).unwrap();
        assert!(full.is_satisfiable(full.full()).is_some());
        let empty = random_amst(&GenParams { density: 0.0, ..p }).unwrap();
        assert!((0..empty.num_sentences()).all(|k| empty.is_satisfiable(SentenceSet::singleton(k)).is_none()));
    }

    #[test]
    fn tarski_extremes() {
        for seed in 0..10 {
            let p = GenParams { seed, max_sentences: 4, ..GenParams::default() };
            assert!(random_tarski(&p).unwrap().is_tarski_type().all());
            let zero = random_tarski(&GenParams { density: 0.0, ..p }).unwrap();
            assert!(crate::bits::all_sets(zero.num_sentences()).all(|g| g.is_empty() || zero.is_trivial_set(g)));
            let one = random_tarski(&GenParams { density: 1.0, ..p }).unwrap();
            assert!(crate::bits::all_sets(one.num_sentences()).all(|g| one.is_trivial_set(g)));
        }
    }

    #[test]
    fn caps_enforced() {
        let p = GenParams { kind: Kind::General, max_sentences: 13, ..GenParams::default() };
        assert!(random_amst(&p).is_err());
        assert!(random_amst(&GenParams { density: 1.5, ..GenParams::default() }).is_err());
    }

    #[test]
    fn shrink_is_one_minimal() {
        let p = GenParams { seed: 9, max_models: 6, max_sentences: 5, ..GenParams::default() };
        let a = random_amst(&p).unwrap();
        let fails = |x: &FiniteAmst| x.num_models() >= 2 && x.num_sentences() >= 1;
        let s = shrink(&a, fails).unwrap();
        assert_eq!((s.num_models(), s.num_sentences()), (2, 1));
        assert_eq!(shrink(&s, fails).unwrap(), s);
        assert!(shrink(&a, |_| false).is_err());
    }
}
