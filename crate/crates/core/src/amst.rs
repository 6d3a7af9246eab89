//! Finite abstract model structures and the Mod / Th operators.

use crate::bits::{all_sets, render, ModelSet, SentenceSet};
use crate::check::Outcome;
use crate::consequence::LogicalStructure;
use crate::error::{Error, Result};

/// Hard cap on |L| for any amst.
pub const MAX_SENTENCES: usize = 16;
/// Cap on |L| wherever a 2^|L| × |L| table is built.
pub const MAX_TABLE_SENTENCES: usize = 12;

pub type ModelId = usize;
pub type SentenceId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatSpec {
    /// Row `m` lists the sentences `m` satisfies singly; `m ⊨ Γ` iff `Γ ⊆ row`.
    NormalMatrix(Vec<SentenceSet>),
    /// Row-major `|M| × 2^|L|` table indexed by subset bitmask.
    GeneralTable(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAmst {
    sentences: Vec<String>,
    models: Vec<String>,
    sat: SatSpec,
}

/// Why an amst is not normal: `m ⊨ Γ` disagrees with the conjunction of singletons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityWitness {
    pub model: ModelId,
    pub gamma: SentenceSet,
    /// The unsatisfied singleton when `m ⊨ Γ` holds, `None` when it fails despite every singleton holding.
    pub sentence: Option<SentenceId>,
}

/// Labels `prefix0, prefix1, ...`.
pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl FiniteAmst {
    /// A normal amst from per-model rows of singly satisfied sentences.
    pub fn normal(sentences: Vec<String>, models: Vec<String>, rows: Vec<SentenceSet>) -> Result<Self> {
        check_shape(&sentences, &models)?;
        if rows.len() != models.len() {
            return Err(Error::Shape(format!("{} rows for {} models", rows.len(), models.len())));
        }
        let full = SentenceSet::full(sentences.len());
        if let Some(r) = rows.iter().find(|r| !r.is_subset(full)) {
            return Err(Error::Shape(format!("row {r:?} wider than {} sentences", sentences.len())));
        }
        Ok(FiniteAmst {
            sentences,
            models,
            sat: SatSpec::NormalMatrix(rows),
        })
    }

    /// A normal amst from a `|M| × |L|` boolean matrix.
    pub fn from_matrix(sentences: Vec<String>, models: Vec<String>, matrix: &[Vec<bool>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(matrix.len());
        for (m, row) in matrix.iter().enumerate() {
            if row.len() != sentences.len() {
                return Err(Error::Shape(format!("matrix row {m} has {} columns, expected {}", row.len(), sentences.len())));
            }
            rows.push(SentenceSet::from_indices(row.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k)));
        }
        Self::normal(sentences, models, rows)
    }

    /// A general amst from a row-major `|M| × 2^|L|` table.
    pub fn general(sentences: Vec<String>, models: Vec<String>, table: Vec<bool>) -> Result<Self> {
        check_shape(&sentences, &models)?;
        let want = models.len() << sentences.len();
        if table.len() != want {
            return Err(Error::Shape(format!("general table has {} cells, expected {want}", table.len())));
        }
        Ok(FiniteAmst {
            sentences,
            models,
            sat: SatSpec::GeneralTable(table),
        })
    }

    pub fn general_from_fn(
        sentences: Vec<String>,
        models: Vec<String>,
        f: impl Fn(ModelId, SentenceSet) -> bool,
    ) -> Result<Self> {
        check_shape(&sentences, &models)?;
        let n = sentences.len();
        let table = (0..models.len())
            .flat_map(|m| all_sets(n).map(move |g| (m, g)))
            .map(|(m, g)| f(m, g))
            .collect();
        Self::general(sentences, models, table)
    }

    pub fn sentence_labels(&self) -> &[String] {
        &self.sentences
    }

    pub fn model_labels(&self) -> &[String] {
        &self.models
    }

    pub fn sat_spec(&self) -> &SatSpec {
        &self.sat
    }

    pub fn num_sentences(&self) -> usize {
        self.sentences.len()
    }

    pub fn num_models(&self) -> usize {
        self.models.len()
    }

    pub fn is_normal_matrix(&self) -> bool {
        matches!(self.sat, SatSpec::NormalMatrix(_))
    }

    /// The whole language `L`.
    pub fn full(&self) -> SentenceSet {
        SentenceSet::full(self.sentences.len())
    }

    pub fn check_model(&self, m: ModelId) -> Result<()> {
        if m >= self.models.len() {
            return Err(Error::OutOfRange {
                what: "model",
                index: m,
                size: self.models.len(),
            });
        }
        Ok(())
    }

    pub fn check_set(&self, gamma: SentenceSet) -> Result<()> {
        if !gamma.is_subset(self.full()) {
            let k = gamma.difference(self.full()).iter().next().unwrap_or(0);
            return Err(Error::OutOfRange {
                what: "sentence",
                index: k,
                size: self.sentences.len(),
            });
        }
        Ok(())
    }

    pub fn satisfies(&self, m: ModelId, gamma: SentenceSet) -> Result<bool> {
        self.check_model(m)?;
        self.check_set(gamma)?;
        Ok(self.sat(m, gamma))
    }

    /// Unchecked `m ⊨ Γ`.
    #[inline]
    pub fn sat(&self, m: ModelId, gamma: SentenceSet) -> bool {
        match &self.sat {
            SatSpec::NormalMatrix(rows) => gamma.is_subset(rows[m]),
            SatSpec::GeneralTable(t) => t[(m << self.sentences.len()) | gamma.0 as usize],
        }
    }

    pub fn mod_of(&self, gamma: SentenceSet) -> ModelSet {
        ModelSet::from_indices(self.num_models(), (0..self.num_models()).filter(|&m| self.sat(m, gamma)))
    }

    /// `Th({m})`: the sentences `m` satisfies singly.
    pub fn theory(&self, m: ModelId) -> SentenceSet {
        match &self.sat {
            SatSpec::NormalMatrix(rows) => rows[m],
            SatSpec::GeneralTable(_) => {
                SentenceSet::from_indices((0..self.num_sentences()).filter(|&k| self.sat(m, SentenceSet::singleton(k))))
            }
        }
    }

    pub fn th_of(&self, x: &ModelSet) -> SentenceSet {
        x.iter().fold(self.full(), |acc, m| acc.intersection(self.theory(m)))
    }

    pub fn is_normal(&self) -> Outcome<NormalityWitness> {
        if self.is_normal_matrix() {
            return Outcome::Holds;
        }
        for m in 0..self.num_models() {
            let row = self.theory(m);
            for g in all_sets(self.num_sentences()) {
                let lhs = self.sat(m, g);
                if lhs != g.is_subset(row) {
                    let sentence = if lhs { g.difference(row).iter().next() } else { None };
                    return Outcome::Fails(NormalityWitness {
                        model: m,
                        gamma: g,
                        sentence,
                    });
                }
            }
        }
        Outcome::Holds
    }

    /// Lowest-index model of `gamma`, if any.
    pub fn is_satisfiable(&self, gamma: SentenceSet) -> Option<ModelId> {
        (0..self.num_models()).find(|&m| self.sat(m, gamma))
    }

    /// Fails with a size-minimal unsatisfiable subset.
    pub fn is_finitely_satisfiable(&self, gamma: SentenceSet) -> Outcome<SentenceSet> {
        gamma
            .subsets_by_size()
            .into_iter()
            .find(|&s| self.is_satisfiable(s).is_none())
            .into()
    }

    /// `sat[Γ]` for every `Γ ⊆ L`.
    pub fn sat_table(&self) -> Vec<bool> {
        match &self.sat {
            SatSpec::NormalMatrix(rows) => all_sets(self.num_sentences())
                .map(|g| rows.iter().any(|&r| g.is_subset(r)))
                .collect(),
            SatSpec::GeneralTable(_) => all_sets(self.num_sentences())
                .map(|g| self.is_satisfiable(g).is_some())
                .collect(),
        }
    }

    /// `Mod(Γ)` for every `Γ ⊆ L`.
    pub fn mod_table(&self) -> Vec<ModelSet> {
        all_sets(self.num_sentences()).map(|g| self.mod_of(g)).collect()
    }

    /// Fails with the lowest `Γ` whose satisfiability and finite satisfiability differ.
    pub fn is_compact(&self) -> Outcome<SentenceSet> {
        let sat = self.sat_table();
        let fin = finsat_table(&sat, self.num_sentences());
        all_sets(self.num_sentences())
            .find(|g| sat[g.0 as usize] != fin[g.0 as usize])
            .into()
    }

    pub fn is_complete_set(&self, gamma: SentenceSet) -> bool {
        let x = self.mod_of(gamma);
        !x.is_empty()
            && (0..self.num_sentences()).all(|k| {
                let a = self.mod_of(SentenceSet::singleton(k));
                x.is_subset(&a) || x.is_disjoint(&a)
            })
    }

    /// Greedy index-order extension to a maximal finitely satisfiable superset.
    pub fn maximal_finitely_satisfiable_extension(&self, gamma: SentenceSet) -> Result<SentenceSet> {
        self.check_set(gamma)?;
        if let Outcome::Fails(w) = self.is_finitely_satisfiable(gamma) {
            return Err(Error::Precondition(format!(
                "{} is not finitely satisfiable: {} has no model",
                self.fmt_sentences(gamma),
                self.fmt_sentences(w)
            )));
        }
        let sat = self.sat_table();
        let fin = finsat_table(&sat, self.num_sentences());
        let mut delta = gamma;
        for k in 0..self.num_sentences() {
            if !delta.contains(k) && fin[delta.with(k).0 as usize] {
                delta = delta.with(k);
            }
        }
        Ok(delta)
    }

    /// `Γ ⊢ α` iff `Mod(Γ) ⊆ Mod({α})`.
    pub fn induced_consequence(&self) -> Result<LogicalStructure> {
        let n = self.num_sentences();
        if n > MAX_TABLE_SENTENCES {
            return Err(Error::Capacity {
                what: "sentences for a consequence table",
                got: n,
                cap: MAX_TABLE_SENTENCES,
            });
        }
        let mods = self.mod_table();
        let rows = mods
            .iter()
            .map(|x| SentenceSet::from_indices((0..n).filter(|&k| x.is_subset(&mods[1 << k]))))
            .collect();
        LogicalStructure::new(self.sentences.clone(), rows)
    }

    /// The same amst with model `i` dropped.
    pub fn without_model(&self, i: ModelId) -> Result<Self> {
        self.check_model(i)?;
        if self.num_models() == 1 {
            return Err(Error::EmptyModels);
        }
        let mut models = self.models.clone();
        models.remove(i);
        let sat = match &self.sat {
            SatSpec::NormalMatrix(rows) => {
                let mut rows = rows.clone();
                rows.remove(i);
                SatSpec::NormalMatrix(rows)
            }
            SatSpec::GeneralTable(t) => {
                let w = 1 << self.num_sentences();
                SatSpec::GeneralTable(
                    t.chunks(w)
                        .enumerate()
                        .filter(|(m, _)| *m != i)
                        .flat_map(|(_, r)| r.iter().copied())
                        .collect(),
                )
            }
        };
        Ok(FiniteAmst {
            sentences: self.sentences.clone(),
            models,
            sat,
        })
    }

    /// The same amst with sentence `k` dropped; sets containing `k` are forgotten.
    pub fn without_sentence(&self, k: SentenceId) -> Result<Self> {
        let n = self.num_sentences();
        if k >= n {
            return Err(Error::OutOfRange {
                what: "sentence",
                index: k,
                size: n,
            });
        }
        let mut sentences = self.sentences.clone();
        sentences.remove(k);
        let squeeze = |g: SentenceSet| -> SentenceSet {
            let low = g.0 & ((1 << k) - 1);
            SentenceSet(low | (g.0 >> (k + 1)) << k)
        };
        let expand = |g: u32| -> SentenceSet {
            let low = g & ((1 << k) - 1);
            SentenceSet(low | (g >> k) << (k + 1))
        };
        let sat = match &self.sat {
            SatSpec::NormalMatrix(rows) => SatSpec::NormalMatrix(rows.iter().map(|&r| squeeze(r.without(k))).collect()),
            SatSpec::GeneralTable(_) => SatSpec::GeneralTable(
                (0..self.num_models())
                    .flat_map(|m| (0..1u32 << (n - 1)).map(move |g| (m, g)))
                    .map(|(m, g)| self.sat(m, expand(g)))
                    .collect(),
            ),
        };
        Ok(FiniteAmst {
            sentences,
            models: self.models.clone(),
            sat,
        })
    }

    /// The same satisfaction relation stored as a general table.
    pub fn to_general(&self) -> Self {
        let n = self.num_sentences();
        let table = (0..self.num_models())
            .flat_map(|m| all_sets(n).map(move |g| (m, g)))
            .map(|(m, g)| self.sat(m, g))
            .collect();
        FiniteAmst {
            sentences: self.sentences.clone(),
            models: self.models.clone(),
            sat: SatSpec::GeneralTable(table),
        }
    }

    pub fn fmt_sentences(&self, s: SentenceSet) -> String {
        render(&self.sentences, s.iter())
    }

    pub fn fmt_models(&self, x: &ModelSet) -> String {
        render(&self.models, x.iter())
    }
}

fn check_shape(sentences: &[String], models: &[String]) -> Result<()> {
    if models.is_empty() {
        return Err(Error::EmptyModels);
    }
    if sentences.len() > MAX_SENTENCES {
        return Err(Error::Capacity {
            what: "sentences",
            got: sentences.len(),
            cap: MAX_SENTENCES,
        });
    }
    Ok(())
}

/// `fin[Γ]` holds iff every subset of `Γ` is satisfiable.
pub fn finsat_table(sat: &[bool], n: usize) -> Vec<bool> {
    let mut fin = vec![false; sat.len()];
    for g in all_sets(n) {
        let i = g.0 as usize;
        fin[i] = sat[i] && g.iter().all(|k| fin[i & !(1 << k)]);
    }
    fin
}
