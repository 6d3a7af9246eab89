//! Finite topologies on at most 16 points, generated from bases and subbases, and the two
//! model-space topologies `τ_N` and `τ_C`.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amst::FiniteAmst;
use crate::bits::{all_sets, BitIter, ModelSet};
use crate::check::Status;
use crate::error::{Error, Result};
use crate::rng::{seeded, DEFAULT_SEED};

/// Points are bit positions; a set of points is a mask.
pub type PointSet = u32;

pub const MAX_POINTS: usize = 16;

/// Above this many opens, the cover search samples instead of enumerating subfamilies.
const EXHAUSTIVE_OPENS: usize = 10;
const SAMPLED_COVERS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTopology", into = "RawTopology")]
pub struct FiniteTopology {
    n: usize,
    /// Sorted ascending, deduplicated.
    opens: Vec<PointSet>,
}

#[derive(Serialize, Deserialize)]
struct RawTopology {
    ground_size: usize,
    opens: Vec<PointSet>,
}

impl TryFrom<RawTopology> for FiniteTopology {
    type Error = Error;

    fn try_from(r: RawTopology) -> Result<Self> {
        FiniteTopology::new(r.ground_size, r.opens)
    }
}

impl From<FiniteTopology> for RawTopology {
    fn from(t: FiniteTopology) -> Self {
        RawTopology {
            ground_size: t.n,
            opens: t.opens,
        }
    }
}

fn ground_mask(n: usize) -> PointSet {
    ((1u64 << n) - 1) as PointSet
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        return Err(Error::Capacity {
            what: "topology points",
            got: n,
            cap: MAX_POINTS,
        });
    }
    Ok(())
}

fn check_family(n: usize, fam: &[PointSet]) -> Result<()> {
    check_ground(n)?;
    let g = ground_mask(n);
    match fam.iter().find(|&&s| s & !g != 0) {
        Some(&s) => Err(Error::Argument(format!("set {s:#b} leaves the {n}-point ground"))),
        None => Ok(()),
    }
}

fn uncovered(n: usize, fam: &[PointSet]) -> Option<usize> {
    let u = fam.iter().fold(0, |a, &s| a | s);
    (0..n).find(|&x| u >> x & 1 == 0)
}

impl FiniteTopology {
    /// Validates an explicit open-set family.
    pub fn new(n: usize, mut opens: Vec<PointSet>) -> Result<Self> {
        check_family(n, &opens)?;
        opens.sort_unstable();
        opens.dedup();
        let g = ground_mask(n);
        let has = |s: PointSet| opens.binary_search(&s).is_ok();
        if !has(0) || !has(g) {
            return Err(Error::Argument("opens must contain the empty set and the ground".into()));
        }
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                if !has(a | b) || !has(a & b) {
                    return Err(Error::Argument(format!("opens not closed under union and intersection at {a:#b}, {b:#b}")));
                }
            }
        }
        Ok(FiniteTopology { n, opens })
    }

    pub fn discrete(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(FiniteTopology {
            n,
            opens: (0..=ground_mask(n)).collect(),
        })
    }

    pub fn indiscrete(n: usize) -> Result<Self> {
        check_ground(n)?;
        let mut opens = vec![0, ground_mask(n)];
        opens.dedup();
        Ok(FiniteTopology { n, opens })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> PointSet {
        ground_mask(self.n)
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        s & !self.ground() == 0 && self.is_open(self.ground() & !s)
    }

    /// Smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> PointSet {
        self.opens
            .iter()
            .filter(|&&u| u >> x & 1 == 1)
            .fold(self.ground(), |a, &u| a & u)
    }
}

/// Closes `sigma` under finite intersection, with the empty intersection taken to be the ground.
fn intersection_closure(n: usize, sigma: &[PointSet]) -> Vec<PointSet> {
    let g = ground_mask(n);
    let mut seen = vec![false; 1 << n];
    let mut out = vec![g];
    seen[g as usize] = true;
    let mut i = 0;
    while i < out.len() {
        let b = out[i];
        for &s in sigma {
            let c = b & s;
            if !seen[c as usize] {
                seen[c as usize] = true;
                out.push(c);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// All unions of `base` members, the empty union included.
fn union_closure(n: usize, base: &[PointSet]) -> Vec<PointSet> {
    let mut seen = vec![false; 1 << n];
    let mut out = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        for &b in base {
            let c = u | b;
            if !seen[c as usize] {
                seen[c as usize] = true;
                out.push(c);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

pub fn generate_from_subbase(n: usize, sigma: &[PointSet]) -> Result<FiniteTopology> {
    check_family(n, sigma)?;
    if let Some(point) = uncovered(n, sigma) {
        return Err(Error::SubbaseCover { point });
    }
    let base = intersection_closure(n, sigma);
    Ok(FiniteTopology {
        n,
        opens: union_closure(n, &base),
    })
}

/// The first `(U, V, x)` with `x ∈ U ∩ V` and no base member `W` with `x ∈ W ⊆ U ∩ V`.
pub fn base_axiom_violation(beta: &[PointSet]) -> Option<(PointSet, PointSet, usize)> {
    for (i, &u) in beta.iter().enumerate() {
        for &v in &beta[i..] {
            let uv = u & v;
            for x in BitIter(uv as u64) {
                if !beta.iter().any(|&w| w >> x & 1 == 1 && w & !uv == 0) {
                    return Some((u, v, x));
                }
            }
        }
    }
    None
}

pub fn generate_from_base(n: usize, beta: &[PointSet]) -> Result<FiniteTopology> {
    check_family(n, beta)?;
    if let Some(point) = uncovered(n, beta) {
        return Err(Error::BaseCover { point });
    }
    if let Some((u, v, point)) = base_axiom_violation(beta) {
        return Err(Error::BaseAxiom { u, v, point });
    }
    Ok(FiniteTopology {
        n,
        opens: union_closure(n, beta),
    })
}

/// A subcover of `cover` with the fewest members, found breadth-first over reachable unions.
/// `None` when `cover` does not cover `ground`.
pub fn finite_subcover(ground: PointSet, cover: &[PointSet]) -> Option<Vec<PointSet>> {
    if ground == 0 {
        return Some(Vec::new());
    }
    let mut parent: std::collections::HashMap<PointSet, (PointSet, usize)> = Default::default();
    let mut queue = VecDeque::from([0 as PointSet]);
    parent.insert(0, (0, usize::MAX));
    while let Some(u) = queue.pop_front() {
        for (j, &c) in cover.iter().enumerate() {
            let next = (u | c) & ground;
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (u, j));
            if next == ground {
                let mut out = Vec::new();
                let mut cur = next;
                while cur != 0 {
                    let (p, j) = parent[&cur];
                    out.push(cover[j]);
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            queue.push_back(next);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSearch {
    pub compact: bool,
    /// Covers examined.
    pub covers: usize,
    pub exhaustive: bool,
    /// A cover without a finite subcover, if one was found.
    pub witness: Option<Vec<PointSet>>,
}

/// Checks that every cover drawn from subfamilies of `family` has a finite subcover.
fn cover_search(ground: PointSet, family: &[PointSet], seed: u64) -> CoverSearch {
    let mut covers = 0;
    let mut check = |cover: Vec<PointSet>| {
        if cover.iter().fold(0, |a, &s| a | s) & ground != ground {
            return None;
        }
        covers += 1;
        match finite_subcover(ground, &cover) {
            Some(sub) if sub.len() <= cover.len() => None,
            _ => Some(cover),
        }
    };
    let exhaustive = family.len() <= EXHAUSTIVE_OPENS;
    let mut witness = None;
    if exhaustive {
        for sel in 1u32..1 << family.len() {
            let cover: Vec<PointSet> = BitIter(sel as u64).map(|j| family[j]).collect();
            if let Some(w) = check(cover) {
                witness = Some(w);
                break;
            }
        }
    } else {
        let mut rng = seeded(seed);
        witness = check(family.to_vec());
        for _ in 0..SAMPLED_COVERS {
            if witness.is_some() {
                break;
            }
            let cover: Vec<PointSet> = family.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            witness = check(cover);
        }
    }
    CoverSearch {
        compact: witness.is_none(),
        covers,
        exhaustive,
        witness,
    }
}

pub fn compact_space_search(top: &FiniteTopology, seed: u64) -> CoverSearch {
    cover_search(top.ground(), &top.opens, seed)
}

pub fn is_compact_space(top: &FiniteTopology) -> bool {
    compact_space_search(top, DEFAULT_SEED).compact
}

/// Compactness from subbasic covers only. `sigma` must generate `top`.
pub fn alexander_check(top: &FiniteTopology, sigma: &[PointSet]) -> Result<bool> {
    if generate_from_subbase(top.n, sigma)? != *top {
        return Err(Error::Argument("subbase does not generate the topology".into()));
    }
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    Ok(cover_search(top.ground(), &sigma, DEFAULT_SEED).compact)
}

fn to_points(x: &ModelSet) -> PointSet {
    x.word().expect("model count checked against MAX_POINTS") as PointSet
}

fn check_models(amst: &FiniteAmst) -> Result<()> {
    if amst.num_models() > MAX_POINTS {
        return Err(Error::Capacity {
            what: "models for a model-space topology",
            got: amst.num_models(),
            cap: MAX_POINTS,
        });
    }
    Ok(())
}

fn check_tau_n(amst: &FiniteAmst) -> Result<()> {
    check_models(amst)?;
    if let Some(w) = amst.is_normal().witness() {
        return Err(Error::Precondition(format!("tau_N needs a normal amst; fails at model {} and {}", w.model, amst.fmt_sentences(w.gamma))));
    }
    if let Some(m) = amst.is_satisfiable(amst.full()) {
        return Err(Error::Precondition(format!("tau_N needs L unsatisfiable; {} satisfies it", amst.model_labels()[m])));
    }
    Ok(())
}

/// `τ_N` and its subbase `M ∖ Mod({α})`, listed in sentence order.
pub fn tau_n(amst: &FiniteAmst) -> Result<(FiniteTopology, Vec<PointSet>)> {
    check_tau_n(amst)?;
    let n = amst.num_models();
    let sigma: Vec<PointSet> = (0..amst.num_sentences())
        .map(|k| ground_mask(n) & !to_points(&amst.mod_of(crate::SentenceSet::singleton(k))))
        .collect();
    Ok((generate_from_subbase(n, &sigma)?, sigma))
}

/// `τ_C` and its base: the distinct `Mod(Γ)`, in order of first occurrence over `Γ` masks.
pub fn tau_c(amst: &FiniteAmst) -> Result<(FiniteTopology, Vec<PointSet>)> {
    check_models(amst)?;
    if let Some(w) = amst.is_normal().witness() {
        return Err(Error::Precondition(format!("tau_C needs a normal amst; fails at model {} and {}", w.model, amst.fmt_sentences(w.gamma))));
    }
    let n = amst.num_models();
    let mut seen = vec![false; 1 << n];
    let mut base = Vec::new();
    for g in all_sets(amst.num_sentences()) {
        let x = to_points(&amst.mod_of(g));
        if !seen[x as usize] {
            seen[x as usize] = true;
            base.push(x);
        }
    }
    Ok((generate_from_base(n, &base)?, base))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ClosureReport {
    pub fn status(&self) -> Status {
        Status::from_violations(&self.violations)
    }
}

/// Model classes are `τ_N`-closed and fixed by `Mod∘Th`, and `Mod∘Th` is a closure operator.
pub fn closed_sets_check(amst: &FiniteAmst) -> Result<ClosureReport> {
    let (top, _) = tau_n(amst)?;
    let n = amst.num_models();
    let modth = |x: PointSet| to_points(&amst.mod_of(amst.th_of(&ModelSet::from_word(n, x as u64))));
    let mut r = ClosureReport::default();
    for g in all_sets(amst.num_sentences()) {
        let z = to_points(&amst.mod_of(g));
        r.checked += 2;
        if !top.is_closed(z) {
            r.violations.push(format!("Mod({}) is not tau_N-closed", amst.fmt_sentences(g)));
        }
        if modth(z) != z {
            r.violations.push(format!("Mod(Th(Mod({}))) differs from Mod", amst.fmt_sentences(g)));
        }
    }
    let table: Vec<PointSet> = (0..=ground_mask(n)).map(modth).collect();
    for x in 0..=ground_mask(n) {
        let c = table[x as usize];
        r.checked += 3;
        let name = || amst.fmt_models(&ModelSet::from_word(n, x as u64));
        if x & !c != 0 {
            r.violations.push(format!("{} is not inside ModTh of itself", name()));
        }
        if table[c as usize] != c {
            r.violations.push(format!("ModTh is not idempotent at {}", name()));
        }
        // monotone on covering pairs suffices
        for m in 0..n {
            if x >> m & 1 == 0 && c & !table[(x | 1 << m) as usize] != 0 {
                r.violations.push(format!("ModTh is not monotone at {} plus {}", name(), amst.model_labels()[m]));
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub amst_compact: bool,
    pub space_compact: bool,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.amst_compact == self.space_compact
    }
}

/// The amst is compact iff `(M, τ_N)` is, each side computed on its own.
pub fn compactness_equivalence_check(amst: &FiniteAmst) -> Result<EquivalenceReport> {
    let (top, _) = tau_n(amst)?;
    Ok(EquivalenceReport {
        amst_compact: amst.is_compact().holds(),
        space_compact: is_compact_space(&top),
    })
}
