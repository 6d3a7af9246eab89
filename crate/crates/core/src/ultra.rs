//! Filters and ultrafilters on finite index sets, ultralimits in the model-space topologies,
//! Łoś-models, the theory preorder `⪯`, and the ultramodel compactness checks.
//!
//! Every ultrafilter on a finite set is principal, so the checks here exercise the
//! definitions at finite scale; the non-principal behaviour they generalise is unreachable.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amst::{FiniteAmst, ModelId};
use crate::bits::{all_sets, BitIter, ModelSet, SentenceSet};
use crate::check::Status;
use crate::error::{Error, Result};
use crate::rng::{seeded, DEFAULT_SEED};
use crate::topology::{tau_c, tau_n, FiniteTopology, PointSet, MAX_POINTS};

/// A subset of the index set `I`, as a bitmask.
pub type IndexSet = u32;

pub const MAX_INDEX: usize = 16;

fn index_mask(n: usize) -> IndexSet {
    ((1u64 << n) - 1) as IndexSet
}

fn check_index_size(n: usize) -> Result<()> {
    if n > MAX_INDEX {
        return Err(Error::Capacity {
            what: "index set",
            got: n,
            cap: MAX_INDEX,
        });
    }
    Ok(())
}

/// A family of subsets of `I = {0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct SetFamily {
    n: usize,
    members: Vec<IndexSet>,
    bitmap: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    index_size: usize,
    members: Vec<IndexSet>,
}

impl TryFrom<RawFamily> for SetFamily {
    type Error = Error;

    fn try_from(r: RawFamily) -> Result<Self> {
        SetFamily::new(r.index_size, r.members)
    }
}

impl From<SetFamily> for RawFamily {
    fn from(f: SetFamily) -> Self {
        RawFamily {
            index_size: f.n,
            members: f.members,
        }
    }
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetFamily(n={}, {:?})", self.n, self.members)
    }
}

impl SetFamily {
    pub fn new(n: usize, mut members: Vec<IndexSet>) -> Result<Self> {
        check_index_size(n)?;
        if let Some(&s) = members.iter().find(|&&s| s & !index_mask(n) != 0) {
            return Err(Error::Argument(format!("set {s:#b} leaves the index set of size {n}")));
        }
        members.sort_unstable();
        members.dedup();
        let mut bitmap = vec![0u64; (1usize << n).div_ceil(64)];
        for &s in &members {
            bitmap[s as usize / 64] |= 1 << (s % 64);
        }
        Ok(SetFamily { n, members, bitmap })
    }

    /// Builds from a membership predicate over all subsets of `I`.
    pub fn from_fn(n: usize, f: impl Fn(IndexSet) -> bool) -> Result<Self> {
        check_index_size(n)?;
        Self::new(n, (0..=index_mask(n)).filter(|&s| f(s)).collect())
    }

    pub fn index_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> IndexSet {
        index_mask(self.n)
    }

    pub fn members(&self) -> &[IndexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, s: IndexSet) -> bool {
        (s as usize) < 1 << self.n && self.bitmap[s as usize / 64] >> (s % 64) & 1 == 1
    }

    /// Closed under pairwise intersection and supersets.
    pub fn is_filter(&self) -> bool {
        let g = self.ground();
        self.members.iter().all(|&a| {
            self.members.iter().all(|&b| self.contains(a & b))
                && BitIter((g & !a) as u64).all(|x| self.contains(a | 1 << x))
        })
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(0)
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.n > 0
            && self.is_filter()
            && self.is_proper()
            && (0..=self.ground()).all(|a| self.contains(a) != self.contains(self.ground() & !a))
    }

    /// Closure under finite (nonempty) intersections.
    fn meets(&self) -> Vec<IndexSet> {
        let mut seen = vec![false; 1 << self.n];
        let mut out: Vec<IndexSet> = Vec::new();
        for &s in &self.members {
            if !seen[s as usize] {
                seen[s as usize] = true;
                out.push(s);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let a = out[i];
            for &b in &self.members {
                let c = a & b;
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }
}

pub fn has_fip(fam: &SetFamily) -> bool {
    !fam.meets().contains(&0)
}

/// A validated filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Filter(SetFamily);

impl Filter {
    pub fn new(fam: SetFamily) -> Result<Self> {
        if !fam.is_filter() {
            return Err(Error::Argument("family is not a filter".into()));
        }
        Ok(Filter(fam))
    }

    pub fn family(&self) -> &SetFamily {
        &self.0
    }
}

/// `{F : D1 ∩ .. ∩ Dk ⊆ F for some members D1..Dk}`, `k ≥ 1`.
pub fn generated_filter(fam: &SetFamily) -> Result<Filter> {
    let meets = fam.meets();
    if meets.contains(&0) {
        return Err(Error::NoFip);
    }
    let n = fam.n;
    let mut up = vec![false; 1 << n];
    for m in meets {
        if up[m as usize] {
            continue;
        }
        for e in SentenceSet(index_mask(n) & !m).subsets() {
            up[(m | e.0) as usize] = true;
        }
    }
    Ok(Filter(SetFamily::from_fn(n, |s| up[s as usize])?))
}

/// A validated ultrafilter. On a finite index set it is principal at [`Ultrafilter::point`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetFamily", into = "SetFamily")]
pub struct Ultrafilter {
    family: SetFamily,
    point: usize,
}

impl TryFrom<SetFamily> for Ultrafilter {
    type Error = Error;

    fn try_from(f: SetFamily) -> Result<Self> {
        Ultrafilter::new(f)
    }
}

impl From<Ultrafilter> for SetFamily {
    fn from(u: Ultrafilter) -> Self {
        u.family
    }
}

impl Ultrafilter {
    pub fn new(family: SetFamily) -> Result<Self> {
        if !family.is_ultrafilter() {
            return Err(Error::Argument("family is not an ultrafilter".into()));
        }
        let meet = family.members.iter().fold(family.ground(), |a, &s| a & s);
        Ok(Ultrafilter {
            point: meet.trailing_zeros() as usize,
            family,
        })
    }

    /// `U_i = {A : i ∈ A}`.
    pub fn principal(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::OutOfRange {
                what: "ultrafilter index",
                index: i,
                size: n,
            });
        }
        Ok(Ultrafilter {
            family: SetFamily::from_fn(n, |s| s >> i & 1 == 1)?,
            point: i,
        })
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn index_size(&self) -> usize {
        self.family.n
    }

    pub fn point(&self) -> usize {
        self.point
    }

    #[inline]
    pub fn contains(&self, s: IndexSet) -> bool {
        self.family.contains(s)
    }
}

pub fn enumerate_ultrafilters(n: usize) -> Result<Vec<Ultrafilter>> {
    if n == 0 {
        return Err(Error::Argument("no ultrafilter on the empty index set".into()));
    }
    (0..n).map(|i| Ultrafilter::principal(n, i)).collect()
}

/// The principal ultrafilter at the lowest index common to every member.
pub fn extend_to_ultrafilter(f: &Filter) -> Result<Ultrafilter> {
    let fam = f.family();
    if !fam.is_proper() {
        return Err(Error::ImproperFilter);
    }
    if fam.n == 0 {
        return Err(Error::Argument("no ultrafilter on the empty index set".into()));
    }
    let meet = fam.members.iter().fold(fam.ground(), |a, &s| a & s);
    if meet == 0 {
        return Err(Error::Invariant("proper filter with empty meet".into()));
    }
    Ultrafilter::principal(fam.n, meet.trailing_zeros() as usize)
}

/// Smallest `i` with `parts[i] ∈ u`, given that the union of `parts` is in `u`.
pub fn partition_pick(u: &Ultrafilter, parts: &[IndexSet]) -> Result<usize> {
    let union = parts.iter().fold(0, |a, &s| a | s);
    if !u.contains(union) {
        return Err(Error::Precondition("union of the parts is not in the ultrafilter".into()));
    }
    parts
        .iter()
        .position(|&p| u.contains(p))
        .ok_or_else(|| Error::Invariant("no part of a large union is large".into()))
}

/// A sequence `(m_i)_{i ∈ I}` of model indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct ModelSequence {
    entries: Vec<ModelId>,
}

#[derive(Serialize, Deserialize)]
struct RawSequence {
    index_size: usize,
    entries: Vec<ModelId>,
}

impl TryFrom<RawSequence> for ModelSequence {
    type Error = Error;

    fn try_from(r: RawSequence) -> Result<Self> {
        if r.entries.len() != r.index_size {
            return Err(Error::Shape(format!("{} entries for index size {}", r.entries.len(), r.index_size)));
        }
        ModelSequence::new(r.entries)
    }
}

impl From<ModelSequence> for RawSequence {
    fn from(s: ModelSequence) -> Self {
        RawSequence {
            index_size: s.entries.len(),
            entries: s.entries,
        }
    }
}

impl ModelSequence {
    pub fn new(entries: Vec<ModelId>) -> Result<Self> {
        check_index_size(entries.len())?;
        Ok(ModelSequence { entries })
    }

    pub fn entries(&self) -> &[ModelId] {
        &self.entries
    }

    pub fn index_size(&self) -> usize {
        self.entries.len()
    }

    pub fn check(&self, num_models: usize) -> Result<()> {
        match self.entries.iter().find(|&&m| m >= num_models) {
            Some(&m) => Err(Error::OutOfRange {
                what: "model in sequence",
                index: m,
                size: num_models,
            }),
            None => Ok(()),
        }
    }

    /// `{i : m_i ∈ x}`.
    #[inline]
    pub fn hits(&self, x: PointSet) -> IndexSet {
        self.entries
            .iter()
            .enumerate()
            .fold(0, |a, (i, &m)| a | ((x >> m & 1) << i))
    }
}

fn check_sequence(seq: &ModelSequence, u: &Ultrafilter, points: usize) -> Result<()> {
    seq.check(points)?;
    if seq.index_size() != u.index_size() {
        return Err(Error::Shape(format!(
            "sequence over {} indices, ultrafilter over {}",
            seq.index_size(),
            u.index_size()
        )));
    }
    Ok(())
}

/// Points `x` such that every member of `family` containing `x` captures a `u`-large index set.
/// With the opens this is the ultralimit set; with a base or subbase it is the equivalent criterion.
pub fn limits_via(points: usize, family: &[PointSet], seq: &ModelSequence, u: &Ultrafilter) -> PointSet {
    let bad = family
        .iter()
        .filter(|&&o| !u.contains(seq.hits(o)))
        .fold(0, |a, &o| a | o);
    ((1u64 << points) - 1) as PointSet & !bad
}

pub fn ultralimits(top: &FiniteTopology, seq: &ModelSequence, u: &Ultrafilter) -> Result<ModelSet> {
    check_sequence(seq, u, top.ground_size())?;
    Ok(ModelSet::from_word(top.ground_size(), limits_via(top.ground_size(), top.opens(), seq, u) as u64))
}

/// Ultralimits, recomputed from a subbase and required to agree.
pub fn ultralimits_checked(top: &FiniteTopology, sigma: &[PointSet], seq: &ModelSequence, u: &Ultrafilter) -> Result<ModelSet> {
    let a = ultralimits(top, seq, u)?;
    let b = limits_via(top.ground_size(), sigma, seq, u);
    if a.word() != Some(b as u64) {
        return Err(Error::Invariant(format!("ultralimits {a:?} differ from subbase criterion {b:#b}")));
    }
    Ok(a)
}

/// Precomputed data for repeated ultralimit and Łoś queries on one amst.
#[derive(Debug, Clone)]
pub struct LosContext {
    n_models: usize,
    n_sentences: usize,
    normal: bool,
    /// `Mod(Σ)` per sentence mask.
    mods: Vec<PointSet>,
    theories: Vec<SentenceSet>,
    tau_n: Option<(FiniteTopology, Vec<PointSet>)>,
    tau_c: Option<(FiniteTopology, Vec<PointSet>)>,
    tau_n_error: Option<String>,
}

impl LosContext {
    pub fn new(amst: &FiniteAmst) -> Result<Self> {
        if amst.num_models() > MAX_POINTS {
            return Err(Error::Capacity {
                what: "models for ultralimit checks",
                got: amst.num_models(),
                cap: MAX_POINTS,
            });
        }
        if amst.num_sentences() > crate::amst::MAX_TABLE_SENTENCES {
            return Err(Error::Capacity {
                what: "sentences for ultralimit checks",
                got: amst.num_sentences(),
                cap: crate::amst::MAX_TABLE_SENTENCES,
            });
        }
        let normal = amst.is_normal().holds();
        let (tau_n, tau_n_error) = match tau_n(amst) {
            Ok(t) => (Some(t), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Ok(LosContext {
            n_models: amst.num_models(),
            n_sentences: amst.num_sentences(),
            normal,
            mods: all_sets(amst.num_sentences())
                .map(|g| amst.mod_of(g).word().unwrap() as PointSet)
                .collect(),
            theories: (0..amst.num_models()).map(|m| amst.theory(m)).collect(),
            tau_n,
            tau_c: if normal { tau_c(amst).ok() } else { None },
            tau_n_error,
        })
    }

    pub fn num_models(&self) -> usize {
        self.n_models
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn tau_n(&self) -> Option<&(FiniteTopology, Vec<PointSet>)> {
        self.tau_n.as_ref()
    }

    pub fn tau_c(&self) -> Option<&(FiniteTopology, Vec<PointSet>)> {
        self.tau_c.as_ref()
    }

    fn all(&self) -> PointSet {
        ((1u64 << self.n_models) - 1) as PointSet
    }

    fn require_tau_n(&self) -> Result<&(FiniteTopology, Vec<PointSet>)> {
        self.tau_n
            .as_ref()
            .ok_or_else(|| Error::Precondition(self.tau_n_error.clone().unwrap_or_default()))
    }

    fn require_normal(&self) -> Result<()> {
        if !self.normal {
            return Err(Error::Precondition("amst is not normal".into()));
        }
        Ok(())
    }

    /// Ultralimits in `τ_N`, from the opens and from the subbase.
    pub fn ultramodels(&self, seq: &ModelSequence, u: &Ultrafilter) -> Result<PointSet> {
        let (top, sigma) = self.require_tau_n()?;
        check_sequence(seq, u, self.n_models)?;
        let a = limits_via(self.n_models, top.opens(), seq, u);
        let b = limits_via(self.n_models, sigma, seq, u);
        if a != b {
            return Err(Error::Invariant(format!("tau_N ultralimits {a:#b} differ from subbase criterion {b:#b}")));
        }
        Ok(a)
    }

    /// Ultralimits in `τ_C`, from the opens and from the base.
    pub fn tauc_limits(&self, seq: &ModelSequence, u: &Ultrafilter) -> Result<PointSet> {
        self.require_normal()?;
        let (top, beta) = self.tau_c.as_ref().ok_or_else(|| Error::Precondition("tau_C unavailable".into()))?;
        check_sequence(seq, u, self.n_models)?;
        let a = limits_via(self.n_models, top.opens(), seq, u);
        let b = limits_via(self.n_models, beta, seq, u);
        if a != b {
            return Err(Error::Invariant(format!("tau_C ultralimits {a:#b} differ from base criterion {b:#b}")));
        }
        Ok(a)
    }

    /// `{x : ∀Σ, {i : m_i ⊨ Σ} ∈ U ⇒ x ⊨ Σ}`.
    pub fn large_implies_sat(&self, seq: &ModelSequence, u: &Ultrafilter) -> PointSet {
        self.mods
            .iter()
            .filter(|&&x| u.contains(seq.hits(x)))
            .fold(self.all(), |a, &x| a & x)
    }

    /// `{x : ∀Σ, x ⊨ Σ ⇒ {i : m_i ⊨ Σ} ∈ U}`.
    pub fn sat_implies_large(&self, seq: &ModelSequence, u: &Ultrafilter) -> PointSet {
        self.mods
            .iter()
            .filter(|&&x| !u.contains(seq.hits(x)))
            .fold(self.all(), |a, &x| a & !x)
    }

    /// Łoś-models by definition: `x ⊨ Σ ⟺ {i : m_i ⊨ Σ} ∈ U` for all `Σ`.
    pub fn los_models(&self, seq: &ModelSequence, u: &Ultrafilter) -> Result<PointSet> {
        self.require_normal()?;
        check_sequence(seq, u, self.n_models)?;
        let def = self.large_implies_sat(seq, u) & self.sat_implies_large(seq, u);
        let target = SentenceSet::from_indices(
            (0..self.n_sentences).filter(|&k| u.contains(seq.hits(self.mods[1 << k]))),
        );
        let reduced = (0..self.n_models)
            .filter(|&l| self.theories[l] == target)
            .fold(0, |a, l| a | 1 << l);
        if def != reduced {
            return Err(Error::Invariant(format!("Łoś-models {def:#b} differ from single-sentence reduction {reduced:#b}")));
        }
        Ok(def)
    }

    pub fn upset(&self, m: ModelId) -> PointSet {
        (0..self.n_models)
            .filter(|&n| self.theories[m].is_subset(self.theories[n]))
            .fold(0, |a, n| a | 1 << n)
    }

    /// Violations of the three characterisations and the generalised Łoś theorem on one instance.
    pub fn grid_violations(&self, seq: &ModelSequence, u: &Ultrafilter) -> Result<Vec<String>> {
        let mut v = Vec::new();
        let los = self.los_models(seq, u)?;
        let tc = self.tauc_limits(seq, u)?;
        if tc != self.sat_implies_large(seq, u) {
            v.push(format!("tau_C ultralimits of {:?} under U_{} differ from the sat => large set", seq.entries, u.point));
        }
        let i = u.point;
        let same_theory = (0..self.n_models)
            .filter(|&l| self.theories[l] == self.theories[seq.entries[i]])
            .fold(0, |a, l| a | 1 << l);
        if los != same_theory {
            v.push(format!("Łoś-models of {:?} under U_{i} are not the models sharing m_i's theory", seq.entries));
        }
        if self.tau_n.is_some() {
            let um = self.ultramodels(seq, u)?;
            if um != self.large_implies_sat(seq, u) {
                v.push(format!("ultramodels of {:?} under U_{i} differ from the large => sat set", seq.entries));
            }
            if los != um & tc {
                v.push(format!("Łoś-models of {:?} under U_{i} differ from ultramodels in both topologies", seq.entries));
            }
            if um != self.upset(seq.entries[i]) {
                v.push(format!("ultramodels of {:?} under U_{i} differ from the up-set of m_i", seq.entries));
            }
        }
        Ok(v)
    }
}

pub fn ultramodels(amst: &FiniteAmst, seq: &ModelSequence, u: &Ultrafilter) -> Result<ModelSet> {
    let ctx = LosContext::new(amst)?;
    let x = ctx.ultramodels(seq, u)?;
    if x != ctx.large_implies_sat(seq, u) {
        return Err(Error::Invariant("ultramodels differ from the large => sat characterisation".into()));
    }
    Ok(ModelSet::from_word(amst.num_models(), x as u64))
}

/// `τ_C`-ultralimits agree with `{x : ∀Σ, x ⊨ Σ ⇒ {i : m_i ⊨ Σ} ∈ U}`.
pub fn tauc_ultralimit_check(amst: &FiniteAmst, seq: &ModelSequence, u: &Ultrafilter) -> Result<bool> {
    let ctx = LosContext::new(amst)?;
    Ok(ctx.tauc_limits(seq, u)? == ctx.sat_implies_large(seq, u))
}

pub fn los_models(amst: &FiniteAmst, seq: &ModelSequence, u: &Ultrafilter) -> Result<ModelSet> {
    let ctx = LosContext::new(amst)?;
    Ok(ModelSet::from_word(amst.num_models(), ctx.los_models(seq, u)? as u64))
}

/// `Th({m}) ⊆ Th({n})`.
pub fn preceq(amst: &FiniteAmst, m: ModelId, n: ModelId) -> Result<bool> {
    amst.check_model(m)?;
    amst.check_model(n)?;
    Ok(amst.theory(m).is_subset(amst.theory(n)))
}

/// `𝕌(m) = {n : m ⪯ n}`.
pub fn upset(amst: &FiniteAmst, m: ModelId) -> Result<ModelSet> {
    amst.check_model(m)?;
    let t = amst.theory(m);
    Ok(ModelSet::from_indices(
        amst.num_models(),
        (0..amst.num_models()).filter(|&n| t.is_subset(amst.theory(n))),
    ))
}

/// Maximal elements of `𝕌(m)`: no `k` in it with `Th(n) ⊊ Th(k)`.
pub fn maximal_in_upset(amst: &FiniteAmst, m: ModelId) -> Result<ModelSet> {
    let up = upset(amst, m)?;
    let members: Vec<ModelId> = up.iter().collect();
    Ok(ModelSet::from_indices(
        amst.num_models(),
        members.iter().copied().filter(|&n| {
            let tn = amst.theory(n);
            !members.iter().any(|&k| {
                let tk = amst.theory(k);
                tn.is_subset(tk) && tn != tk
            })
        }),
    ))
}

/// `n` is maximal in `𝕌(m)` iff `Th({n})` is a maximal satisfiable set containing `Th({m})`.
pub fn order_maxsat_check(amst: &FiniteAmst) -> Result<Status> {
    if let Some(w) = amst.is_normal().witness() {
        return Ok(Status::vacuous(format!("amst is not normal at model {}", amst.model_labels()[w.model])));
    }
    let sat = amst.sat_table();
    let full = amst.full();
    for m in 0..amst.num_models() {
        let tm = amst.theory(m);
        let maximal = maximal_in_upset(amst, m)?;
        for n in 0..amst.num_models() {
            let tn = amst.theory(n);
            let maxsat = tm.is_subset(tn)
                && sat[tn.0 as usize]
                && !full
                    .difference(tn)
                    .subsets()
                    .any(|e| !e.is_empty() && sat[tn.union(e).0 as usize]);
            if maxsat != maximal.contains(n) {
                return Ok(Status::violated(format!(
                    "{} maximal in U({}) is {}, Th maximal satisfiable is {maxsat}",
                    amst.model_labels()[n],
                    amst.model_labels()[m],
                    maximal.contains(n)
                )));
            }
        }
    }
    Ok(Status::Verified)
}

/// `{m : m ⊨ Σ0 for some finite Σ0 ⊆ Σ}`.
pub fn mod_fin(amst: &FiniteAmst, sigma: SentenceSet) -> Result<ModelSet> {
    amst.check_set(sigma)?;
    Ok(ModelSet::from_indices(
        amst.num_models(),
        (0..amst.num_models()).filter(|&m| sigma.subsets().any(|s0| amst.sat(m, s0))),
    ))
}

/// Bounds for sequence enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceOptions {
    /// Enumerate every sequence when there are at most this many.
    pub bound: usize,
    /// Sequences drawn otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SequenceOptions {
    fn default() -> Self {
        SequenceOptions {
            bound: 4096,
            samples: 200,
            seed: DEFAULT_SEED,
        }
    }
}

/// Sequences over `pool` of length `n`: all of them under the bound, else a seeded sample.
pub fn sequences(pool: &[ModelId], n: usize, opts: &SequenceOptions) -> (Vec<ModelSequence>, bool) {
    if pool.is_empty() {
        return (if n == 0 { vec![ModelSequence { entries: vec![] }] } else { vec![] }, true);
    }
    let total = (pool.len() as u128).checked_pow(n as u32);
    if total.is_some_and(|t| t <= opts.bound as u128) {
        let total = total.unwrap() as usize;
        let out = (0..total)
            .map(|mut code| {
                let entries = (0..n)
                    .map(|_| {
                        let m = pool[code % pool.len()];
                        code /= pool.len();
                        m
                    })
                    .collect();
                ModelSequence { entries }
            })
            .collect();
        return (out, true);
    }
    let mut rng = seeded(opts.seed);
    let out = (0..opts.samples)
        .map(|_| ModelSequence {
            entries: (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect(),
        })
        .collect();
    (out, false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoClosure {
    pub holds: bool,
    pub exhaustive: bool,
    pub sequences: usize,
    pub witness: Option<String>,
}

/// Every Łoś-model `l` of a `K`-valued sequence has `𝕌(l) ∩ K ≠ ∅`.
pub fn pseudo_closure(amst: &FiniteAmst, k: &ModelSet, index_size: usize, opts: &SequenceOptions) -> Result<PseudoClosure> {
    let ctx = LosContext::new(amst)?;
    ctx.require_normal()?;
    pseudo_closure_ctx(&ctx, k.word().unwrap_or(0) as PointSet, index_size, opts)
}

fn pseudo_closure_ctx(ctx: &LosContext, k: PointSet, n: usize, opts: &SequenceOptions) -> Result<PseudoClosure> {
    let pool: Vec<ModelId> = BitIter(k as u64).collect();
    let (seqs, exhaustive) = sequences(&pool, n, opts);
    let ultras = if n == 0 { Vec::new() } else { enumerate_ultrafilters(n)? };
    for seq in &seqs {
        for u in &ultras {
            for l in BitIter(ctx.los_models(seq, u)? as u64) {
                if ctx.upset(l) & k == 0 {
                    return Ok(PseudoClosure {
                        holds: false,
                        exhaustive,
                        sequences: seqs.len(),
                        witness: Some(format!("sequence {:?} under U_{}: Łoś-model {l} has no K-element above it", seq.entries, u.point)),
                    });
                }
            }
        }
    }
    Ok(PseudoClosure {
        holds: true,
        exhaustive,
        sequences: seqs.len(),
        witness: None,
    })
}

pub fn is_pseudo_closed(amst: &FiniteAmst, k: &ModelSet, index_size: usize) -> Result<bool> {
    Ok(pseudo_closure(amst, k, index_size, &SequenceOptions::default())?.holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub status: Status,
    pub sequences: usize,
    pub exhaustive: bool,
}

const MAX_FINSET_SIGMA: usize = 4;

fn finset_index(amst: &FiniteAmst, sigma: SentenceSet) -> Result<Vec<SentenceSet>> {
    amst.check_set(sigma)?;
    if sigma.len() > MAX_FINSET_SIGMA {
        return Err(Error::Capacity {
            what: "sentences in Σ for FinSet(Σ) indexing",
            got: sigma.len(),
            cap: MAX_FINSET_SIGMA,
        });
    }
    Ok(sigma.subsets().collect())
}

/// Ultramodel convergence over `FinSet(Σ)`, plus the constructive witness for `u ⊨ Σ`.
pub fn theorem_iii_check(amst: &FiniteAmst, sigma: SentenceSet, opts: &SequenceOptions) -> Result<TheoremCheck> {
    let index = finset_index(amst, sigma)?;
    if amst.is_finitely_satisfiable(sigma).witness().is_some() {
        return Err(Error::Precondition(format!("{} is not finitely satisfiable", amst.fmt_sentences(sigma))));
    }
    let ctx = LosContext::new(amst)?;
    if let Err(e) = ctx.require_tau_n() {
        let why = match e {
            Error::Precondition(m) => m,
            other => other.to_string(),
        };
        return Ok(TheoremCheck {
            status: Status::vacuous(why),
            sequences: 0,
            exhaustive: true,
        });
    }
    let n = index.len();
    let ultras = enumerate_ultrafilters(n)?;
    let pool: Vec<ModelId> = (0..amst.num_models()).collect();
    let (seqs, exhaustive) = sequences(&pool, n, opts);
    let compact = amst.is_compact().holds();
    let done = |status, count| {
        Ok(TheoremCheck {
            status,
            sequences: count,
            exhaustive,
        })
    };
    for seq in &seqs {
        for u in &ultras {
            if compact && ctx.ultramodels(seq, u)? == 0 {
                return done(Status::violated(format!("compact, but {:?} has no ultramodel under U_{}", seq.entries, u.point)), seqs.len());
            }
        }
    }
    // m_{Σ0}: the lowest model of each finite subset
    let witnesses: Vec<ModelId> = index
        .iter()
        .map(|&s0| amst.is_satisfiable(s0).ok_or_else(|| Error::Invariant("finitely satisfiable Σ has an unsatisfiable finite subset".into())))
        .collect::<Result<_>>()?;
    let seq = ModelSequence::new(witnesses)?;
    let bars: Vec<IndexSet> = index
        .iter()
        .map(|&s0| seq.hits(ctx.mods[s0.0 as usize]))
        .collect();
    let fam = SetFamily::new(n, bars)?;
    if !has_fip(&fam) {
        return done(Status::violated("the witness family lacks the finite intersection property"), seqs.len());
    }
    let u = extend_to_ultrafilter(&generated_filter(&fam)?)?;
    if !fam.members().iter().all(|&b| u.contains(b)) {
        return done(Status::violated("extended ultrafilter misses a witness set"), seqs.len());
    }
    let limits = ctx.ultramodels(&seq, &u)?;
    if limits == 0 {
        return done(Status::violated(format!("witness sequence {:?} has no ultramodel", seq.entries)), seqs.len());
    }
    if let Some(x) = BitIter(limits as u64).find(|&x| !amst.sat(x, sigma)) {
        return done(
            Status::violated(format!("ultramodel {} of the witness sequence does not satisfy {}", amst.model_labels()[x], amst.fmt_sentences(sigma))),
            seqs.len(),
        );
    }
    done(Status::Verified, seqs.len() + 1)
}

/// Compactness against pseudo-closure of `ModFin(Σ)` relative to `FinSet(Σ)`.
pub fn theorem_iv_check(amst: &FiniteAmst, sigma: SentenceSet, opts: &SequenceOptions) -> Result<TheoremCheck> {
    let index = finset_index(amst, sigma)?;
    let ctx = LosContext::new(amst)?;
    if !ctx.normal {
        return Ok(TheoremCheck {
            status: Status::vacuous("amst is not normal"),
            sequences: 0,
            exhaustive: true,
        });
    }
    let n = index.len();
    let k = mod_fin(amst, sigma)?.word().unwrap() as PointSet;
    let pool: Vec<ModelId> = BitIter(k as u64).collect();
    let (seqs, exhaustive) = sequences(&pool, n, opts);
    let ultras = enumerate_ultrafilters(n)?;
    for seq in &seqs {
        for u in &ultras {
            if ctx.los_models(seq, u)? == 0 {
                return Ok(TheoremCheck {
                    status: Status::vacuous(format!("sequence {:?} has no Łoś-model under U_{}", seq.entries, u.point)),
                    sequences: seqs.len(),
                    exhaustive,
                });
            }
        }
    }
    let compact = amst.is_compact().holds();
    let closed = pseudo_closure_ctx(&ctx, k, n, opts)?;
    let status = if compact == closed.holds {
        Status::Verified
    } else {
        Status::violated(format!(
            "compact is {compact} but pseudo-closure is {}: {}",
            closed.holds,
            closed.witness.unwrap_or_default()
        ))
    };
    Ok(TheoremCheck {
        status,
        sequences: seqs.len(),
        exhaustive: exhaustive && closed.exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consequence::t0;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn a1() -> FiniteAmst {
        FiniteAmst::normal(s(&["a", "b"]), s(&["m0", "m1", "m2"]), vec![SentenceSet(1), SentenceSet(2), SentenceSet(3)]).unwrap()
    }

    fn a2() -> FiniteAmst {
        FiniteAmst::normal(s(&["a", "b"]), s(&["m0", "m1"]), vec![SentenceSet(1), SentenceSet(2)]).unwrap()
    }

    fn fam(n: usize, m: &[u32]) -> SetFamily {
        SetFamily::new(n, m.to_vec()).unwrap()
    }

    fn seq(e: &[usize]) -> ModelSequence {
        ModelSequence::new(e.to_vec()).unwrap()
    }

    fn u(n: usize, i: usize) -> Ultrafilter {
        Ultrafilter::principal(n, i).unwrap()
    }

    #[test]
    fn fip_examples() {
        assert!(has_fip(&fam(3, &[0b011, 0b110])));
        assert!(!has_fip(&fam(3, &[0b001, 0b010])));
        assert!(has_fip(&fam(3, &[0b111])));
    }

    #[test]
    fn generated_filter_examples() {
        let f = generated_filter(&fam(3, &[0b011, 0b110])).unwrap();
        assert_eq!(f.family().members(), &[0b010, 0b011, 0b110, 0b111]);
        assert_eq!(generated_filter(&fam(3, &[0b111])).unwrap().family().members(), &[0b111]);
        assert_eq!(generated_filter(&fam(3, &[0b010])).unwrap().family().members(), &[0b010, 0b011, 0b110, 0b111]);
        assert_eq!(generated_filter(&fam(3, &[1, 2])), Err(Error::NoFip));
    }

    #[test]
    fn ultrafilter_examples() {
        let us = enumerate_ultrafilters(3).unwrap();
        assert_eq!(us.len(), 3);
        assert_eq!(us[1].family().members(), &[0b010, 0b011, 0b110, 0b111]);
        assert!(us.iter().all(|u| u.family().is_ultrafilter()));
        assert!(!generated_filter(&fam(3, &[0b011])).unwrap().family().is_ultrafilter());
        assert!(enumerate_ultrafilters(0).is_err());
    }

    #[test]
    fn extension_and_pick() {
        let f = generated_filter(&fam(3, &[0b011, 0b110])).unwrap();
        assert_eq!(extend_to_ultrafilter(&f).unwrap(), u(3, 1));
        assert_eq!(extend_to_ultrafilter(&Filter::new(fam(2, &[0b11])).unwrap()).unwrap(), u(2, 0));
        let u2 = u(3, 2);
        assert_eq!(extend_to_ultrafilter(&Filter::new(u2.family().clone()).unwrap()).unwrap(), u2);
        assert_eq!(partition_pick(&u(3, 1), &[0b001, 0b110]).unwrap(), 1);
        assert_eq!(partition_pick(&u(3, 0), &[0b111]).unwrap(), 0);
        assert_eq!(partition_pick(&u(3, 2), &[0b011, 0b100]).unwrap(), 1);
        assert!(matches!(partition_pick(&u(3, 2), &[0b011]), Err(Error::Precondition(_))));
        let improper = Filter::new(SetFamily::from_fn(2, |_| true).unwrap()).unwrap();
        assert_eq!(extend_to_ultrafilter(&improper), Err(Error::ImproperFilter));
    }

    #[test]
    fn ultralimit_examples() {
        let (top, sigma) = tau_n(&a2()).unwrap();
        let x = ultralimits_checked(&top, &sigma, &seq(&[0, 1]), &u(2, 0)).unwrap();
        assert_eq!(x.word(), Some(0b01));
        let ind = FiniteTopology::indiscrete(3).unwrap();
        assert_eq!(ultralimits(&ind, &seq(&[0, 2]), &u(2, 1)).unwrap().count(), 3);
        assert!(ultralimits(&top, &seq(&[1, 1, 1]), &u(3, 2)).unwrap().contains(1));
    }

    #[test]
    fn ultramodel_and_los_examples() {
        assert_eq!(ultramodels(&a2(), &seq(&[0, 1]), &u(2, 0)).unwrap().word(), Some(0b01));
        assert_eq!(ultramodels(&a2(), &seq(&[0, 0]), &u(2, 1)).unwrap().word(), Some(0b01));
        assert!(tauc_ultralimit_check(&a2(), &seq(&[0, 1]), &u(2, 0)).unwrap());
        assert!(tauc_ultralimit_check(&a1(), &seq(&[2]), &u(1, 0)).unwrap());
        assert_eq!(los_models(&a2(), &seq(&[0, 1]), &u(2, 0)).unwrap().word(), Some(0b01));
        assert_eq!(los_models(&a1(), &seq(&[0, 1]), &u(2, 1)).unwrap().word(), Some(0b010));
        assert!(ultramodels(&a1(), &seq(&[0]), &u(1, 0)).is_err());
    }

    #[test]
    fn grid_on_a2_is_clean() {
        let ctx = LosContext::new(&a2()).unwrap();
        for n in 1..=3 {
            let (seqs, _) = sequences(&[0, 1], n, &SequenceOptions::default());
            for sq in &seqs {
                for uf in enumerate_ultrafilters(n).unwrap() {
                    assert!(ctx.grid_violations(sq, &uf).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn order_examples() {
        assert!(preceq(&a1(), 0, 2).unwrap());
        assert!(preceq(&a1(), 1, 1).unwrap());
        assert_eq!(maximal_in_upset(&a1(), 0).unwrap().word(), Some(0b100));
        assert_eq!(order_maxsat_check(&a1()).unwrap(), Status::Verified);
        assert_eq!(order_maxsat_check(&a2()).unwrap(), Status::Verified);
    }

    #[test]
    fn mod_fin_examples() {
        assert_eq!(mod_fin(&a2(), SentenceSet(3)).unwrap().count(), 2);
        assert_eq!(mod_fin(&a1(), SentenceSet(1)).unwrap().count(), 3);
        // m1 fails the empty set but satisfies {a}
        let g = FiniteAmst::general_from_fn(s(&["a"]), s(&["m0", "m1"]), |m, g| m == 1 && g.0 == 1).unwrap();
        assert_eq!(mod_fin(&g, SentenceSet(1)).unwrap().word(), Some(0b10));
        assert_eq!(mod_fin(&g, SentenceSet(0)).unwrap().word(), Some(0));
    }

    #[test]
    fn pseudo_closure_examples() {
        assert!(is_pseudo_closed(&a2(), &ModelSet::from_word(2, 0b01), 2).unwrap());
        assert!(is_pseudo_closed(&a1(), &ModelSet::from_word(3, 0b011), 3).unwrap());
        assert!(is_pseudo_closed(&a2(), &ModelSet::empty(2), 2).unwrap());
    }

    #[test]
    fn theorem_iii_examples() {
        let o = SequenceOptions::default();
        assert_eq!(theorem_iii_check(&a2(), SentenceSet(1), &o).unwrap().status, Status::Verified);
        assert_eq!(theorem_iii_check(&a2(), SentenceSet(0), &o).unwrap().status, Status::Verified);
        let t = t0().canonical_normal_amst().unwrap();
        assert_eq!(theorem_iii_check(&t, SentenceSet(1), &o).unwrap().status, Status::Verified);
        assert!(matches!(theorem_iii_check(&a2(), SentenceSet(3), &o), Err(Error::Precondition(_))));
        assert!(matches!(theorem_iii_check(&a1(), SentenceSet(3), &o).unwrap().status, Status::Vacuous { .. }));
    }

    #[test]
    fn theorem_iv_examples() {
        let o = SequenceOptions::default();
        assert_eq!(theorem_iv_check(&a2(), SentenceSet(1), &o).unwrap().status, Status::Verified);
        assert_eq!(theorem_iv_check(&a1(), SentenceSet(3), &o).unwrap().status, Status::Verified);
    }

    #[test]
    fn json_shapes() {
        let f = fam(3, &[0b110, 0b010]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"index_size":3,"members":[2,6]}"#);
        let back: Ultrafilter = serde_json::from_str(&serde_json::to_string(&u(3, 1)).unwrap()).unwrap();
        assert_eq!(back.point(), 1);
        assert!(serde_json::from_str::<Ultrafilter>(r#"{"index_size":2,"members":[3]}"#).is_err());
        let sq: ModelSequence = serde_json::from_str(r#"{"index_size":2,"entries":[0,1]}"#).unwrap();
        assert_eq!(sq, seq(&[0, 1]));
        assert!(serde_json::from_str::<ModelSequence>(r#"{"index_size":3,"entries":[0,1]}"#).is_err());
    }
}
