//! The nine equivalent compactness conditions for normal amsts, checked independently.
//!
//! Conditions (6)-(9) quantify over function spaces. Items (6) and (8) depend only on the
//! image family, so families are enumerated directly; items (7) and (9) enumerate
//! monotone / antitone maps on `FinSet(Σ)` exhaustively at small sizes and sample above.

use rand::Rng;
use serde_json::{json, Value};

use crate::amst::{finsat_table, FiniteAmst, MAX_TABLE_SENTENCES};
use crate::bits::{all_sets, ModelSet, SentenceSet};
use crate::check::{Outcome, Status};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rng::{derive, Rng64, DEFAULT_SEED};

/// Deliberate checker bugs used to confirm the cross-check catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Condition (1) counts Γ as finitely satisfiable when its proper subsets are.
    CompactIgnoresWholeSet,
    /// Condition (4) accepts complete sets through the inclusion branch only.
    CompleteOneSided,
    /// Condition (8) asks for upper bounds instead of lower bounds in the family.
    ThDirectedFlipped,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::CompactIgnoresWholeSet,
        Mutation::CompleteOneSided,
        Mutation::ThDirectedFlipped,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::CompactIgnoresWholeSet => "compact-ignores-whole-set",
            Mutation::CompleteOneSided => "complete-one-sided",
            Mutation::ThDirectedFlipped => "th-directed-flipped",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown mutation `{s}`")))
    }

    /// The condition the bug lives in.
    pub fn condition(self) -> usize {
        match self {
            Mutation::CompactIgnoresWholeSet => 1,
            Mutation::CompleteOneSided => 4,
            Mutation::ThDirectedFlipped => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    /// Sampled functions or families per condition above the exhaustive bounds.
    pub samples: usize,
    pub mutation: Option<Mutation>,
    pub exec: Exec,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: DEFAULT_SEED,
            samples: 200,
            mutation: None,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub holds: bool,
    pub witness: Option<String>,
    /// False when the quantifier was sampled.
    pub exhaustive: bool,
    /// Instances whose hypothesis held and whose conclusion was checked.
    pub instances: usize,
}

impl ConditionResult {
    fn new(witness: Option<String>, exhaustive: bool, instances: usize) -> Self {
        ConditionResult {
            holds: witness.is_none(),
            witness,
            exhaustive,
            instances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    /// Normal, and `L` not finitely satisfiable.
    pub hypothesis_ok: bool,
    /// Conditions (1) to (9), in order.
    pub conditions: Vec<ConditionResult>,
}

impl CharacterizationReport {
    pub fn values(&self) -> Vec<bool> {
        self.conditions.iter().map(|c| c.holds).collect()
    }

    /// Under the hypothesis, the first condition whose value differs from (1).
    pub fn disagreement(&self) -> Option<usize> {
        if !self.hypothesis_ok {
            return None;
        }
        let first = self.conditions[0].holds;
        self.conditions.iter().position(|c| c.holds != first).map(|i| i + 1)
    }

    pub fn to_json(&self) -> Value {
        let conditions: serde_json::Map<String, Value> = self
            .conditions
            .iter()
            .enumerate()
            .map(|(i, c)| ((i + 1).to_string(), Value::Bool(c.holds)))
            .collect();
        let witnesses: serde_json::Map<String, Value> = self
            .conditions
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.witness.as_ref().map(|w| ((i + 1).to_string(), Value::String(w.clone()))))
            .collect();
        json!({
            "hypothesis_ok": self.hypothesis_ok,
            "conditions": conditions,
            "witnesses": witnesses,
        })
    }
}

/// Precomputed per-amst tables shared by the condition checkers.
struct Tables<'a> {
    amst: &'a FiniteAmst,
    n: usize,
    full: SentenceSet,
    mods: Vec<ModelSet>,
    sat: Vec<bool>,
    fin: Vec<bool>,
    closure: Vec<SentenceSet>,
}

impl<'a> Tables<'a> {
    fn new(amst: &'a FiniteAmst) -> Result<Self> {
        let n = amst.num_sentences();
        if n > MAX_TABLE_SENTENCES {
            return Err(Error::Capacity {
                what: "sentences for the compactness conditions",
                got: n,
                cap: MAX_TABLE_SENTENCES,
            });
        }
        let mods = amst.mod_table();
        let sat: Vec<bool> = mods.iter().map(|x| !x.is_empty()).collect();
        let fin = finsat_table(&sat, n);
        let closure = mods
            .iter()
            .map(|x| SentenceSet::from_indices((0..n).filter(|&k| x.is_subset(&mods[1 << k]))))
            .collect();
        Ok(Tables {
            amst,
            n,
            full: amst.full(),
            mods,
            sat,
            fin,
            closure,
        })
    }

    fn sat(&self, g: SentenceSet) -> bool {
        self.sat[g.0 as usize]
    }

    fn fin(&self, g: SentenceSet) -> bool {
        self.fin[g.0 as usize]
    }

    fn trivial(&self, g: SentenceSet) -> bool {
        self.closure[g.0 as usize] == self.full
    }

    fn sets(&self) -> impl Iterator<Item = SentenceSet> + Clone {
        all_sets(self.n)
    }

    fn supersets(&self, g: SentenceSet) -> impl Iterator<Item = SentenceSet> {
        self.full.difference(g).subsets().map(move |e| e.union(g))
    }

    fn maxfin(&self, d: SentenceSet) -> bool {
        self.fin(d) && self.full.difference(d).iter().all(|k| !self.fin(d.with(k)))
    }

    fn fmt(&self, g: SentenceSet) -> String {
        self.amst.fmt_sentences(g)
    }

    fn fmt_models(&self, x: &ModelSet) -> String {
        self.amst.fmt_models(x)
    }

    fn hypothesis_ok(&self) -> bool {
        self.amst.is_normal().holds() && !self.fin(self.full)
    }
}

pub fn characterization_report(amst: &FiniteAmst, opts: &CheckOptions) -> Result<CharacterizationReport> {
    let t = Tables::new(amst)?;
    let conditions = par::map_range(opts.exec, 9, |i| condition(&t, i + 1, opts));
    Ok(CharacterizationReport {
        hypothesis_ok: t.hypothesis_ok(),
        conditions,
    })
}

/// Runs condition `k` (1-based).
pub fn run_condition(amst: &FiniteAmst, k: usize, opts: &CheckOptions) -> Result<ConditionResult> {
    if !(1..=9).contains(&k) {
        return Err(Error::Argument(format!("condition {k} outside 1..=9")));
    }
    Ok(condition(&Tables::new(amst)?, k, opts))
}

fn condition(t: &Tables, k: usize, opts: &CheckOptions) -> ConditionResult {
    let mutated = |m: Mutation| opts.mutation == Some(m);
    let mut rng = derive(opts.seed, k as u64);
    match k {
        1 => cond_compact(t, mutated(Mutation::CompactIgnoresWholeSet)),
        2 => cond_nontrivial_maxfinsat(t),
        3 => cond_maximal_satisfiable(t),
        4 => cond_complete(t, mutated(Mutation::CompleteOneSided)),
        5 => cond_trivial_finite_subset(t),
        6 => cond_directed_union(t, opts.samples, &mut rng),
        7 => cond_finset_monotone(t, opts.samples, &mut rng),
        8 => cond_th_directed(t, opts.samples, &mut rng, mutated(Mutation::ThDirectedFlipped)),
        9 => cond_finset_antitone_th(t, opts.samples, &mut rng),
        _ => unreachable!("condition index checked by callers"),
    }
}

macro_rules! public_condition {
    ($(#[$doc:meta])* $name:ident, $k:expr) => {
        $(#[$doc])*
        pub fn $name(amst: &FiniteAmst) -> Result<ConditionResult> {
            run_condition(amst, $k, &CheckOptions::default())
        }
    };
}

public_condition!(
    /// (1) the amst is compact.
    cond_compact_of, 1
);
public_condition!(
    /// (2) every finitely satisfiable set lies in a nontrivial maximal finitely satisfiable set.
    cond_nontrivial_maxfinsat_of, 2
);
public_condition!(
    /// (3) every finitely satisfiable set lies in a maximal satisfiable set.
    cond_maximal_satisfiable_of, 3
);
public_condition!(
    /// (4) every finitely satisfiable set lies in a complete set.
    cond_complete_of, 4
);
public_condition!(
    /// (5) every trivial set has a finite trivial subset.
    cond_trivial_finite_subset_of, 5
);
public_condition!(
    /// (6) directed unions of satisfiable sets are satisfiable.
    cond_directed_union_of, 6
);
public_condition!(
    /// (7) monotone images of `FinSet(Σ)` with satisfiable values have satisfiable unions.
    cond_finset_monotone_of, 7
);
public_condition!(
    /// (8) `⋃ Th` over a ⊇-directed family of nonempty model sets is satisfiable.
    cond_th_directed_of, 8
);
public_condition!(
    /// (9) `⋃ Th ∘ f` is satisfiable for antitone `f` on `FinSet(Σ)` with nonempty values.
    cond_finset_antitone_th_of, 9
);

fn cond_compact(t: &Tables, ignore_whole: bool) -> ConditionResult {
    if !ignore_whole {
        let w = t.amst.is_compact().witness().copied();
        return ConditionResult::new(w.map(|g| format!("{} is finitely satisfiable xor satisfiable", t.fmt(g))), true, 1 << t.n);
    }
    let w = t.sets().find(|&g| {
        let fin = g.subsets().filter(|&s| s != g).all(|s| t.sat(s));
        fin != t.sat(g)
    });
    ConditionResult::new(w.map(|g| format!("{} is finitely satisfiable xor satisfiable", t.fmt(g))), true, 1 << t.n)
}

fn cond_nontrivial_maxfinsat(t: &Tables) -> ConditionResult {
    let mut checked = 0;
    let w = t.sets().filter(|&g| t.fin(g)).find(|&g| {
        checked += 1;
        !t.supersets(g).any(|d| t.maxfin(d) && !t.trivial(d))
    });
    ConditionResult::new(
        w.map(|g| format!("{} has no nontrivial maximal finitely satisfiable superset", t.fmt(g))),
        true,
        checked,
    )
}

fn cond_maximal_satisfiable(t: &Tables) -> ConditionResult {
    // some_sat_above[d]: d or one of its supersets is satisfiable
    let size = 1usize << t.n;
    let mut above = vec![false; size];
    for d in (0..size).rev() {
        let ds = SentenceSet(d as u32);
        above[d] = t.sat[d] || t.full.difference(ds).iter().any(|k| above[ds.with(k).0 as usize]);
    }
    let maxsat = |d: SentenceSet| t.sat(d) && t.full.difference(d).iter().all(|k| !above[d.with(k).0 as usize]);
    let mut checked = 0;
    let w = t.sets().filter(|&g| t.fin(g)).find(|&g| {
        checked += 1;
        !t.supersets(g).any(maxsat)
    });
    ConditionResult::new(w.map(|g| format!("{} has no maximal satisfiable superset", t.fmt(g))), true, checked)
}

fn cond_complete(t: &Tables, one_sided: bool) -> ConditionResult {
    let complete: Vec<bool> = t
        .mods
        .iter()
        .map(|x| {
            !x.is_empty()
                && (0..t.n).all(|k| {
                    let a = &t.mods[1 << k];
                    x.is_subset(a) || (!one_sided && x.is_disjoint(a))
                })
        })
        .collect();
    let mut checked = 0;
    let w = t.sets().filter(|&g| t.fin(g)).find(|&g| {
        checked += 1;
        !t.supersets(g).any(|d| complete[d.0 as usize])
    });
    ConditionResult::new(w.map(|g| format!("{} has no complete superset", t.fmt(g))), true, checked)
}

fn cond_trivial_finite_subset(t: &Tables) -> ConditionResult {
    let mut checked = 0;
    let w = t.sets().filter(|&g| t.trivial(g)).find(|&g| {
        checked += 1;
        !g.subsets_by_size().into_iter().any(|s| t.trivial(s))
    });
    ConditionResult::new(w.map(|g| format!("trivial {} has no finite trivial subset", t.fmt(g))), true, checked)
}

/// Every pair of members has an upper bound among the members.
fn directed_up(members: &[SentenceSet]) -> bool {
    members.iter().enumerate().all(|(i, &a)| {
        members[i..]
            .iter()
            .all(|&b| members.iter().any(|&c| a.union(b).is_subset(c)))
    })
}

fn cond_directed_union(t: &Tables, samples: usize, rng: &mut Rng64) -> ConditionResult {
    let fmt_family = |fam: &[SentenceSet]| fam.iter().map(|&g| t.fmt(g)).collect::<Vec<_>>().join(" ");
    if t.n <= 4 {
        let sets = 1usize << t.n;
        let sat_mask: u32 = (0..sets).filter(|&s| t.sat[s]).fold(0, |m, s| m | 1 << s);
        let sup: Vec<u32> = (0..sets)
            .map(|s| (0..sets).filter(|&c| s & !c == 0).fold(0, |m, c| m | 1 << c))
            .collect();
        let mut checked = 0;
        for fam in 1..(1u64 << sets) {
            let fam = fam as u32;
            if fam & !sat_mask != 0 {
                continue;
            }
            let members: Vec<usize> = crate::bits::BitIter(fam as u64).collect();
            let directed = members
                .iter()
                .enumerate()
                .all(|(i, &a)| members[i..].iter().all(|&b| fam & sup[a | b] != 0));
            if !directed {
                continue;
            }
            checked += 1;
            let union = members.iter().fold(0, |u, &s| u | s);
            if !t.sat[union] {
                let fam: Vec<SentenceSet> = members.iter().map(|&s| SentenceSet(s as u32)).collect();
                return ConditionResult::new(
                    Some(format!("directed satisfiable family [{}] has unsatisfiable union", fmt_family(&fam))),
                    true,
                    checked,
                );
            }
        }
        return ConditionResult::new(None, true, checked);
    }
    let mut checked = 0;
    for _ in 0..samples {
        let k = rng.gen_range(1..=4);
        let mut fam: Vec<SentenceSet> = (0..k).map(|_| random_sentence_set(t, rng)).collect();
        if rng.gen_bool(0.5) {
            fam.push(fam.iter().fold(SentenceSet::EMPTY, |u, &g| u.union(g)));
        }
        fam.sort_unstable();
        fam.dedup();
        if !fam.iter().all(|&g| t.sat(g)) || !directed_up(&fam) {
            continue;
        }
        checked += 1;
        let union = fam.iter().fold(SentenceSet::EMPTY, |u, &g| u.union(g));
        if !t.sat(union) {
            return ConditionResult::new(
                Some(format!("directed satisfiable family [{}] has unsatisfiable union", fmt_family(&fam))),
                false,
                checked,
            );
        }
    }
    ConditionResult::new(None, false, checked)
}

/// A random subset of some model's theory, or occasionally an arbitrary set.
fn random_sentence_set(t: &Tables, rng: &mut Rng64) -> SentenceSet {
    let base = if rng.gen_bool(0.8) {
        t.amst.theory(rng.gen_range(0..t.amst.num_models()))
    } else {
        t.full
    };
    SentenceSet(base.0 & rng.gen_range(0..=t.full.0))
}

/// Positions of the subsets of `sigma` in ascending bitmask order.
fn subset_index(sigma: SentenceSet, n: usize) -> (Vec<SentenceSet>, Vec<usize>) {
    let subs: Vec<SentenceSet> = sigma.subsets().collect();
    let mut pos = vec![usize::MAX; 1 << n];
    for (i, s) in subs.iter().enumerate() {
        pos[s.0 as usize] = i;
    }
    (subs, pos)
}

fn cond_finset_monotone(t: &Tables, samples: usize, rng: &mut Rng64) -> ConditionResult {
    let fail = |sigma: SentenceSet, vals: &[SentenceSet], exhaustive, checked| {
        let (subs, _) = subset_index(sigma, t.n);
        let pairs: Vec<String> = subs.iter().zip(vals).map(|(&g, &v)| format!("{}->{}", t.fmt(g), t.fmt(v))).collect();
        ConditionResult::new(
            Some(format!("monotone f on FinSet({}) [{}] has unsatisfiable union", t.fmt(sigma), pairs.join(" "))),
            exhaustive,
            checked,
        )
    };
    let union = |vals: &[SentenceSet]| vals.iter().fold(SentenceSet::EMPTY, |u, &v| u.union(v));
    let mut checked = 0;
    if t.n <= 3 {
        let cands: Vec<SentenceSet> = t.sets().filter(|&g| t.sat(g)).collect();
        for sigma in t.sets() {
            let (subs, pos) = subset_index(sigma, t.n);
            let mut vals = vec![SentenceSet::EMPTY; subs.len()];
            let mut bad = None;
            enumerate_monotone(&subs, &pos, &cands, &mut vals, 0, &mut |vals| {
                checked += 1;
                if !t.sat(union(vals)) {
                    bad = Some(vals.to_vec());
                    return false;
                }
                true
            });
            if let Some(vals) = bad {
                return fail(sigma, &vals, true, checked);
            }
        }
        return ConditionResult::new(None, true, checked);
    }
    // the inclusion map on every Σ, then random monotone maps
    for sigma in t.sets() {
        let vals: Vec<SentenceSet> = sigma.subsets().collect();
        if vals.iter().all(|&v| t.sat(v)) {
            checked += 1;
            if !t.sat(union(&vals)) {
                return fail(sigma, &vals, false, checked);
            }
        }
    }
    for _ in 0..samples {
        let sigma = SentenceSet(rng.gen_range(0..=t.full.0));
        let (subs, pos) = subset_index(sigma, t.n);
        let mut vals = vec![SentenceSet::EMPTY; subs.len()];
        for (j, &g) in subs.iter().enumerate() {
            let lower = g.iter().fold(SentenceSet::EMPTY, |u, x| u.union(vals[pos[g.without(x).0 as usize]]));
            let extra = if rng.gen_bool(0.5) { random_sentence_set(t, rng) } else { SentenceSet::EMPTY };
            vals[j] = lower.union(extra);
        }
        if !vals.iter().all(|&v| t.sat(v)) {
            continue;
        }
        checked += 1;
        if !t.sat(union(&vals)) {
            return fail(sigma, &vals, false, checked);
        }
    }
    ConditionResult::new(None, false, checked)
}

/// Enumerates order-preserving maps `subs -> cands`; `visit` returns false to stop.
fn enumerate_monotone(
    subs: &[SentenceSet],
    pos: &[usize],
    cands: &[SentenceSet],
    vals: &mut Vec<SentenceSet>,
    j: usize,
    visit: &mut dyn FnMut(&[SentenceSet]) -> bool,
) -> bool {
    if j == subs.len() {
        return visit(vals);
    }
    let g = subs[j];
    let lower = g.iter().fold(SentenceSet::EMPTY, |u, x| u.union(vals[pos[g.without(x).0 as usize]]));
    for &c in cands {
        if lower.is_subset(c) {
            vals[j] = c;
            if !enumerate_monotone(subs, pos, cands, vals, j + 1, visit) {
                return false;
            }
        }
    }
    true
}

fn cond_th_directed(t: &Tables, samples: usize, rng: &mut Rng64, flipped: bool) -> ConditionResult {
    let m = t.amst.num_models();
    let fmt_family = |fam: &[ModelSet]| fam.iter().map(|x| t.fmt_models(x)).collect::<Vec<_>>().join(" ");
    let fail = |fam: &[ModelSet], exhaustive, checked| {
        ConditionResult::new(
            Some(format!("directed family [{}] has unsatisfiable union of theories", fmt_family(fam))),
            exhaustive,
            checked,
        )
    };
    if m <= 4 {
        let nonempty = (1usize << m) - 1;
        // family bit j stands for the model subset j + 1
        let th: Vec<SentenceSet> = (0..=nonempty).map(|w| t.amst.th_of(&ModelSet::from_word(m, w as u64))).collect();
        let below: Vec<u32> = (0..=nonempty)
            .map(|s| (1..=nonempty).filter(|&c| c & !s == 0).fold(0, |acc, c| acc | 1 << (c - 1)))
            .collect();
        let above: Vec<u32> = (0..=nonempty)
            .map(|s| (1..=nonempty).filter(|&c| s & !c == 0).fold(0, |acc, c| acc | 1 << (c - 1)))
            .collect();
        let mut checked = 0;
        for fam in 1..(1u64 << nonempty) {
            let fam = fam as u32;
            let members: Vec<usize> = crate::bits::BitIter(fam as u64).map(|j| j + 1).collect();
            let directed = members.iter().enumerate().all(|(i, &a)| {
                members[i..].iter().all(|&b| {
                    if flipped {
                        fam & above[a | b] != 0
                    } else {
                        fam & below[a & b] != 0
                    }
                })
            });
            if !directed {
                continue;
            }
            checked += 1;
            let union = members.iter().fold(SentenceSet::EMPTY, |u, &s| u.union(th[s]));
            if !t.sat(union) {
                let fam: Vec<ModelSet> = members.iter().map(|&s| ModelSet::from_word(m, s as u64)).collect();
                return fail(&fam, true, checked);
            }
        }
        return ConditionResult::new(None, true, checked);
    }
    let mut checked = 0;
    for _ in 0..samples {
        let k = rng.gen_range(1..=4);
        let mut fam: Vec<ModelSet> = (0..k)
            .map(|_| {
                let mut x = ModelSet::from_indices(m, (0..m).filter(|_| rng.gen_bool(0.4)));
                x.insert(rng.gen_range(0..m));
                x
            })
            .collect();
        if rng.gen_bool(0.5) {
            let meet = fam.iter().skip(1).fold(fam[0].clone(), |acc, x| acc.intersection(x));
            if !meet.is_empty() {
                fam.push(meet);
            }
        }
        fam.sort();
        fam.dedup();
        let directed = fam.iter().enumerate().all(|(i, a)| {
            fam[i..].iter().all(|b| {
                if flipped {
                    let ub = a.union(b);
                    fam.iter().any(|c| ub.is_subset(c))
                } else {
                    let lb = a.intersection(b);
                    fam.iter().any(|c| c.is_subset(&lb))
                }
            })
        });
        if !directed {
            continue;
        }
        checked += 1;
        let union = fam.iter().fold(SentenceSet::EMPTY, |u, x| u.union(t.amst.th_of(x)));
        if !t.sat(union) {
            return fail(&fam, false, checked);
        }
    }
    ConditionResult::new(None, false, checked)
}

fn cond_finset_antitone_th(t: &Tables, samples: usize, rng: &mut Rng64) -> ConditionResult {
    let m = t.amst.num_models();
    let fail = |sigma: SentenceSet, vals: &[ModelSet], exhaustive, checked| {
        let (subs, _) = subset_index(sigma, t.n);
        let pairs: Vec<String> = subs
            .iter()
            .zip(vals)
            .map(|(&g, v)| format!("{}->{}", t.fmt(g), t.fmt_models(v)))
            .collect();
        ConditionResult::new(
            Some(format!("antitone f on FinSet({}) [{}] has unsatisfiable union of theories", t.fmt(sigma), pairs.join(" "))),
            exhaustive,
            checked,
        )
    };
    let union_th = |vals: &[ModelSet]| vals.iter().fold(SentenceSet::EMPTY, |u, x| u.union(t.amst.th_of(x)));
    let finsat: Vec<SentenceSet> = t.sets().filter(|&g| t.fin(g)).collect();
    let mut checked = 0;
    if t.n <= 3 && m <= 3 {
        let th: Vec<SentenceSet> = (0..1usize << m).map(|w| t.amst.th_of(&ModelSet::from_word(m, w as u64))).collect();
        let cands: Vec<u64> = (1..1u64 << m).collect();
        for &sigma in &finsat {
            let (subs, pos) = subset_index(sigma, t.n);
            let mut vals = vec![0u64; subs.len()];
            let mut bad = None;
            enumerate_antitone(sigma, &subs, &pos, &cands, &mut vals, subs.len(), &mut |vals| {
                checked += 1;
                let u = vals.iter().fold(SentenceSet::EMPTY, |u, &w| u.union(th[w as usize]));
                if !t.sat(u) {
                    bad = Some(vals.to_vec());
                    return false;
                }
                true
            });
            if let Some(vals) = bad {
                let vals: Vec<ModelSet> = vals.into_iter().map(|w| ModelSet::from_word(m, w)).collect();
                return fail(sigma, &vals, true, checked);
            }
        }
        return ConditionResult::new(None, true, checked);
    }
    // μ_Σ = Mod on every finitely satisfiable Σ, then random antitone maps
    for &sigma in &finsat {
        let vals: Vec<ModelSet> = sigma.subsets().map(|g| t.mods[g.0 as usize].clone()).collect();
        checked += 1;
        if !t.sat(union_th(&vals)) {
            return fail(sigma, &vals, false, checked);
        }
    }
    if finsat.is_empty() {
        return ConditionResult::new(None, false, checked);
    }
    for _ in 0..samples {
        let sigma = finsat[rng.gen_range(0..finsat.len())];
        let (subs, pos) = subset_index(sigma, t.n);
        let mut vals = vec![ModelSet::empty(m); subs.len()];
        for j in (0..subs.len()).rev() {
            let g = subs[j];
            let mut v = sigma
                .difference(g)
                .iter()
                .fold(ModelSet::empty(m), |u, x| u.union(&vals[pos[g.with(x).0 as usize]]));
            if v.is_empty() || rng.gen_bool(0.3) {
                v.insert(rng.gen_range(0..m));
            }
            vals[j] = v;
        }
        checked += 1;
        if !t.sat(union_th(&vals)) {
            return fail(sigma, &vals, false, checked);
        }
    }
    ConditionResult::new(None, false, checked)
}

/// Enumerates order-reversing maps `subs -> cands` (model-set words), assigning from `Σ` downwards.
fn enumerate_antitone(
    sigma: SentenceSet,
    subs: &[SentenceSet],
    pos: &[usize],
    cands: &[u64],
    vals: &mut Vec<u64>,
    j: usize,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if j == 0 {
        return visit(vals);
    }
    let g = subs[j - 1];
    let lower = sigma
        .difference(g)
        .iter()
        .fold(0u64, |u, x| u | vals[pos[g.with(x).0 as usize]]);
    for &c in cands {
        if lower & !c == 0 {
            vals[j - 1] = c;
            if !enumerate_antitone(sigma, subs, pos, cands, vals, j - 1, visit) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// Lemma instances whose hypotheses held.
    pub checked: usize,
    /// Lemmas skipped because a standing hypothesis failed.
    pub skipped: Vec<String>,
    pub violations: Vec<String>,
}

/// Checks the lemmas around maximal finitely satisfiable sets and trivial sets.
pub fn lemma_checks(amst: &FiniteAmst) -> Result<LemmaReport> {
    let t = Tables::new(amst)?;
    let normal = amst.is_normal().holds();
    let l_unsat = !t.sat(t.full);
    let mut r = LemmaReport::default();
    for g in t.sets() {
        // extension lemma
        if t.fin(g) {
            r.checked += 1;
            match amst.maximal_finitely_satisfiable_extension(g) {
                Ok(d) if g.is_subset(d) && t.maxfin(d) => {}
                other => r.violations.push(format!("extension of {} is not maximal: {other:?}", t.fmt(g))),
            }
        }
        if !t.sat(g) {
            r.checked += 1;
            if !t.trivial(g) {
                r.violations.push(format!("unsatisfiable {} is not trivial", t.fmt(g)));
            }
        }
        if normal && l_unsat && t.trivial(g) {
            r.checked += 1;
            if t.sat(g) {
                r.violations.push(format!("trivial {} is satisfiable although L is not", t.fmt(g)));
            }
        }
        if normal && t.maxfin(g) {
            if t.sat(g) {
                r.checked += 1;
                if t.closure[g.0 as usize] != g {
                    r.violations.push(format!("satisfiable maximal finitely satisfiable {} is not closed", t.fmt(g)));
                }
            }
            if g != t.full {
                r.checked += 1;
                if t.sat(g) == t.trivial(g) {
                    r.violations.push(format!("maximal finitely satisfiable {} : satisfiable differs from nontrivial", t.fmt(g)));
                }
            }
        }
    }
    if normal && !t.fin(t.full) {
        r.checked += 1;
        if let Some(g) = amst.is_compact().witness() {
            r.violations.push(format!("finitary normal amst with L not finitely satisfiable is not compact at {}", t.fmt(*g)));
        }
    }
    if !normal {
        r.skipped.push("normality lemmas: amst is not normal".into());
    }
    if !l_unsat {
        r.skipped.push("converse of unsatisfiable => trivial: L is satisfiable".into());
    }
    Ok(r)
}

/// Compactness transfers between normal amsts with the same induced consequence.
pub fn shared_consequence_transfer(a1: &FiniteAmst, a2: &FiniteAmst) -> Result<Status> {
    if a1.sentence_labels() != a2.sentence_labels() {
        return Err(Error::Argument("amsts are over different sentence alphabets".into()));
    }
    for (name, a) in [("first", a1), ("second", a2)] {
        if !a.is_normal().holds() {
            return Ok(Status::vacuous(format!("{name} amst is not normal")));
        }
        if a.is_satisfiable(a.full()).is_some() {
            return Ok(Status::vacuous(format!("L is satisfiable in the {name} amst")));
        }
    }
    if a1.induced_consequence()? != a2.induced_consequence()? {
        return Ok(Status::vacuous("induced consequences differ"));
    }
    Ok(match (a1.is_compact(), a2.is_compact()) {
        (Outcome::Holds, Outcome::Fails(g)) => {
            Status::violated(format!("first is compact, second fails at {}", a2.fmt_sentences(g)))
        }
        _ => Status::Verified,
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

    #[test]
    fn a2_satisfies_all_nine() {
        let r = characterization_report(&a2(), &CheckOptions::default()).unwrap();
        assert!(r.hypothesis_ok);
        assert_eq!(r.values(), vec![true; 9]);
        assert!(r.conditions.iter().all(|c| c.exhaustive));
    }

    #[test]
    fn a1_fails_hypothesis_but_reports() {
        let r = characterization_report(&a1(), &CheckOptions::default()).unwrap();
        assert!(!r.hypothesis_ok);
        // L itself is the only maximal finitely satisfiable set, and it is trivial
        let mut want = vec![true; 9];
        want[1] = false;
        assert_eq!(r.values(), want);
        assert_eq!(r.disagreement(), None);
    }

    #[test]
    fn canonical_t0_satisfies_all_nine() {
        let a = t0().canonical_normal_amst().unwrap();
        let r = characterization_report(&a, &CheckOptions::default()).unwrap();
        assert!(r.hypothesis_ok);
        assert_eq!(r.values(), vec![true; 9]);
    }

    #[test]
    fn each_mutation_breaks_a2() {
        for m in Mutation::ALL {
            let opts = CheckOptions {
                mutation: Some(m),
                ..CheckOptions::default()
            };
            let r = characterization_report(&a2(), &opts).unwrap();
            let failing: Vec<usize> = (1..=9).filter(|&k| !r.conditions[k - 1].holds).collect();
            assert_eq!(failing, vec![m.condition()], "{m:?}");
            assert!(r.disagreement().is_some());
        }
    }

    #[test]
    fn report_json_shape() {
        let v = characterization_report(&a2(), &CheckOptions::default()).unwrap().to_json();
        assert_eq!(v["hypothesis_ok"], true);
        assert_eq!(v["conditions"]["9"], true);
        assert!(v["witnesses"].as_object().unwrap().is_empty());
    }

    #[test]
    fn lemmas_hold_on_fixtures() {
        let r = lemma_checks(&a2()).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.checked > 0);
        let r = lemma_checks(&a1()).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.skipped.iter().any(|x| x.contains("L is satisfiable")));
    }

    #[test]
    fn shared_consequence() {
        let c = a2().induced_consequence().unwrap().canonical_normal_amst().unwrap();
        assert_eq!(shared_consequence_transfer(&c, &a2()).unwrap(), Status::Verified);
        assert_eq!(shared_consequence_transfer(&a2(), &a2()).unwrap(), Status::Verified);
        assert!(matches!(shared_consequence_transfer(&a1(), &a2()).unwrap(), Status::Vacuous { .. }));
        let other = FiniteAmst::normal(s(&["x", "y"]), s(&["m"]), vec![SentenceSet(0)]).unwrap();
        assert!(shared_consequence_transfer(&a2(), &other).is_err());
    }

    #[test]
    fn sampled_paths_run_above_exhaustive_bounds() {
        let rows = (0..6).map(|m| SentenceSet((m * 37 + 5) % 32)).collect();
        let a = FiniteAmst::normal(s(&["a", "b", "c", "d", "e"]), crate::amst::labels("m", 6), rows).unwrap();
        let r = characterization_report(&a, &CheckOptions::default()).unwrap();
        assert!(!r.conditions[5].exhaustive && !r.conditions[7].exhaustive);
        assert_eq!(r.values(), vec![true; 9]);
    }
}
