use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{digest, random_amst_sized, shrink, Kind};
use crate::adapters;
use crate::amst::{labels, FiniteAmst};
use crate::bits::{all_sets, SentenceSet};
use crate::check::Status;
use crate::compactness::{self, CheckOptions, Mutation};
use crate::consequence::LogicalStructure;
use crate::counterexample::verify_counterexample;
use crate::cpl::{self, Connective, Formula, TruthAssignment};
use crate::error::{Error, Result};
use crate::galois;
use crate::par::{self, Exec};
use crate::rng::{derive, Rng64, DEFAULT_SEED};
use crate::topology::{self, PointSet};
use crate::ultra::{self, LosContext, ModelSequence, SequenceOptions, SetFamily};

/// Registered theorem ids, in run order.
pub const THEOREMS: [&str; 19] = [
    "cumulative",
    "rep_tarski",
    "nsat_triv",
    "compact_I",
    "lemmas",
    "shared_consequence",
    "finitary_trivial",
    "topology_gen",
    "alexander",
    "compact_II",
    "tarski_top",
    "ultrafilter_char",
    "loz",
    "order_maxsat",
    "compact_III",
    "compact_IV",
    "cpl_ultravaluation",
    "adapters",
    "counterexample",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Instances per theorem.
    pub count: usize,
    pub max_models: usize,
    pub max_sentences: usize,
    pub theorems: Vec<String>,
    /// Bug injected into the compactness cross-check.
    pub inject: Option<Mutation>,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            count: 500,
            max_models: 5,
            max_sentences: 4,
            theorems: THEOREMS.iter().map(|s| s.to_string()).collect(),
            inject: None,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: String,
    #[serde(flatten)]
    pub status: Status,
    /// Digest of the instance JSON.
    pub instance: String,
    /// Seed that regenerates the instance.
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shrunk: Option<Value>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub theorem: String,
    pub verified: usize,
    pub vacuous: usize,
    pub violated: usize,
}

/// Per-theorem counts, in run order.
pub fn summarize(verdicts: &[Verdict]) -> Vec<TheoremSummary> {
    let mut out: Vec<TheoremSummary> = Vec::new();
    for v in verdicts {
        if out.last().is_none_or(|s| s.theorem != v.theorem) {
            out.push(TheoremSummary {
                theorem: v.theorem.clone(),
                ..Default::default()
            });
        }
        let s = out.last_mut().unwrap();
        match v.status {
            Status::Verified => s.verified += 1,
            Status::Vacuous { .. } => s.vacuous += 1,
            Status::Violated { .. } => s.violated += 1,
        }
    }
    out
}

/// Runs every configured theorem on its instances. Output is identical for identical configs.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Verdict>> {
    let ids: Vec<usize> = cfg
        .theorems
        .iter()
        .map(|t| THEOREMS.iter().position(|x| x == t).ok_or_else(|| Error::UnknownTheorem(t.clone())))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for id in ids {
        let n = if THEOREMS[id] == "counterexample" { cfg.count.min(1) } else { cfg.count };
        out.extend(par::map_range(cfg.exec, n, |i| {
            let seed = derive(cfg.seed, (id as u64) << 32 | i as u64).next_u64();
            run_instance(cfg, THEOREMS[id], seed)
        }));
    }
    Ok(out)
}

/// Precondition failures are vacuous; any other checker error is reported as a violation.
fn settle(r: Result<Status>) -> Status {
    match r {
        Ok(s) => s,
        Err(Error::Precondition(h)) => Status::vacuous(h),
        Err(e) => Status::violated(format!("checker error: {e}")),
    }
}

struct Run {
    status: Status,
    instance: Value,
    shrunk: Option<Value>,
}

fn plain(status: Status, instance: Value) -> Run {
    Run {
        status,
        instance,
        shrunk: None,
    }
}

/// Runs `check` on `amst`, shrinking on violation.
fn on_amst(amst: FiniteAmst, check: impl Fn(&FiniteAmst) -> Result<Status>) -> Run {
    let status = settle(check(&amst));
    let shrunk = status
        .is_violated()
        .then(|| shrink(&amst, |a| settle(check(a)).is_violated()).ok())
        .flatten()
        .map(|s| json!(s));
    Run {
        status,
        instance: json!(amst),
        shrunk,
    }
}

fn normal_amst(cfg: &SuiteConfig, rng: &mut Rng64) -> FiniteAmst {
    let m = rng.gen_range(1..=cfg.max_models.max(1));
    let n = rng.gen_range(1..=cfg.max_sentences.max(1));
    let density = rng.gen_range(0.2..0.8);
    random_amst_sized(rng, m, n, Kind::Normal, density).expect("suite sizes are within caps")
}

fn any_amst(cfg: &SuiteConfig, rng: &mut Rng64) -> FiniteAmst {
    if rng.gen_bool(0.5) {
        return normal_amst(cfg, rng);
    }
    let m = rng.gen_range(1..=cfg.max_models.max(1));
    let n = rng.gen_range(1..=cfg.max_sentences.clamp(1, 4));
    random_amst_sized(rng, m, n, Kind::General, 0.5).expect("suite sizes are within caps")
}

/// A random finitely satisfiable `Σ` with at most four sentences.
fn finsat_sigma(amst: &FiniteAmst, rng: &mut Rng64) -> SentenceSet {
    let pool: Vec<SentenceSet> = all_sets(amst.num_sentences())
        .filter(|g| g.len() <= 4 && amst.is_finitely_satisfiable(*g).holds())
        .collect();
    *pool.choose(rng).expect("the empty set is satisfiable")
}

/// A subbase on `1..=6` points that covers the ground set.
fn random_subbase(rng: &mut Rng64) -> (usize, Vec<PointSet>) {
    let n = rng.gen_range(1..=6);
    let ground: PointSet = (1 << n) - 1;
    let k = rng.gen_range(1..=5);
    let mut sigma: Vec<PointSet> = (0..k).map(|_| rng.gen_range(0..=ground)).collect();
    let missing = ground & !sigma.iter().fold(0, |a, &s| a | s);
    let j = rng.gen_range(0..k);
    sigma[j] |= missing;
    (n, sigma)
}

fn random_formula(vars: &[String], depth: usize, rng: &mut Rng64) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::var(vars.choose(rng).unwrap());
    }
    if rng.gen_bool(0.2) {
        return Formula::not(random_formula(vars, depth - 1, rng));
    }
    let c = *Connective::ALL.choose(rng).unwrap();
    Formula::binary(c, random_formula(vars, depth - 1, rng), random_formula(vars, depth - 1, rng))
}

fn run_instance(cfg: &SuiteConfig, theorem: &str, seed: u64) -> Verdict {
    let mut rng = derive(seed, 0);
    let rng = &mut rng;
    let run = match theorem {
        "cumulative" => on_amst(any_amst(cfg, rng), |a| {
            let mut v = galois::cumulative_violations(a);
            v.extend(galois::cumulative_th_violations(a)?);
            Ok(Status::from_violations(&v))
        }),
        "rep_tarski" => {
            let a = normal_amst(cfg, rng);
            let ls = a.induced_consequence().expect("within table cap");
            let status = match settle(galois::induced_tarski_check(&a)) {
                Status::Verified => settle(galois::representation_check(&ls)),
                other => other,
            };
            plain(status, json!({"amst": a, "consequence": ls}))
        }
        "nsat_triv" => on_amst(any_amst(cfg, rng), galois::nsat_triv_check),
        "compact_I" => {
            let opts = CheckOptions {
                seed,
                samples: 64,
                mutation: cfg.inject,
                exec: Exec::Sequential,
            };
            on_amst(normal_amst(cfg, rng), |a| {
                let r = compactness::characterization_report(a, &opts)?;
                if !r.hypothesis_ok {
                    return Ok(Status::vacuous("not normal, or L finitely satisfiable"));
                }
                Ok(match r.disagreement() {
                    None => Status::Verified,
                    Some(k) => Status::violated(format!(
                        "condition {k} is {} while compactness is {}: {}",
                        r.conditions[k - 1].holds,
                        r.conditions[0].holds,
                        r.conditions.iter().find_map(|c| c.witness.clone()).unwrap_or_default()
                    )),
                })
            })
        }
        "lemmas" => on_amst(any_amst(cfg, rng), |a| Ok(Status::from_violations(&compactness::lemma_checks(a)?.violations))),
        "shared_consequence" => {
            let a1 = normal_amst(cfg, rng);
            let ls = a1.induced_consequence().expect("within table cap");
            let status = match ls.canonical_normal_amst() {
                Ok(a2) => settle(compactness::shared_consequence_transfer(&a1, &a2).map(|s| match s {
                    Status::Verified => settle(compactness::shared_consequence_transfer(&a2, &a1)),
                    other => other,
                })),
                Err(_) => Status::vacuous("every set is trivial"),
            };
            plain(status, json!(a1))
        }
        "finitary_trivial" => {
            let ls: LogicalStructure = normal_amst(cfg, rng).induced_consequence().expect("within table cap");
            plain(ls.check_finitary_trivial_theorem(), json!(ls))
        }
        "topology_gen" => {
            let (n, sigma) = random_subbase(rng);
            let status = settle(topology_gen_status(n, &sigma));
            plain(status, json!({"ground_size": n, "subbase": sigma}))
        }
        "alexander" => {
            let (n, sigma) = random_subbase(rng);
            let status = settle((|| {
                let top = topology::generate_from_subbase(n, &sigma)?;
                let alex = topology::alexander_check(&top, &sigma)?;
                let direct = topology::is_compact_space(&top);
                Ok(if alex == direct {
                    Status::Verified
                } else {
                    Status::violated(format!("subbase covers say {alex}, open covers say {direct}"))
                })
            })());
            plain(status, json!({"ground_size": n, "subbase": sigma}))
        }
        "compact_II" => on_amst(normal_amst(cfg, rng), |a| {
            let r = topology::compactness_equivalence_check(a)?;
            Ok(if r.agree() {
                Status::Verified
            } else {
                Status::violated(format!("amst compact {} but space compact {}", r.amst_compact, r.space_compact))
            })
        }),
        "tarski_top" => on_amst(normal_amst(cfg, rng), |a| Ok(topology::closed_sets_check(a)?.status())),
        "ultrafilter_char" => {
            let n = rng.gen_range(1..=4);
            let ground: u32 = (1 << n) - 1;
            let k = rng.gen_range(0..=4);
            let members: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=ground)).collect();
            let status = settle(ultrafilter_status(n, &members));
            plain(status, json!({"index_size": n, "members": members}))
        }
        "loz" => {
            let a = normal_amst(&SuiteConfig { max_models: cfg.max_models.min(4), ..cfg.clone() }, rng);
            let n = rng.gen_range(1..=3);
            let seq = ModelSequence::new((0..n).map(|_| rng.gen_range(0..a.num_models())).collect()).expect("nonempty");
            let status = settle((|| {
                let ctx = LosContext::new(&a)?;
                let mut v = Vec::new();
                for u in ultra::enumerate_ultrafilters(n)? {
                    v.extend(ctx.grid_violations(&seq, &u)?);
                }
                Ok(Status::from_violations(&v))
            })());
            plain(status, json!({"amst": a, "sequence": seq}))
        }
        "order_maxsat" => on_amst(normal_amst(cfg, rng), ultra::order_maxsat_check),
        "compact_III" | "compact_IV" => {
            let a = normal_amst(cfg, rng);
            let sigma = finsat_sigma(&a, rng);
            let opts = SequenceOptions { bound: 512, samples: 64, seed };
            let status = settle(if theorem == "compact_III" {
                ultra::theorem_iii_check(&a, sigma, &opts).map(|c| c.status)
            } else {
                ultra::theorem_iv_check(&a, sigma, &opts).map(|c| c.status)
            });
            plain(status, json!({"amst": a, "sigma": a.fmt_sentences(sigma)}))
        }
        "cpl_ultravaluation" => {
            let vars = labels("p", rng.gen_range(1..=3));
            let f = random_formula(&vars, 3, rng);
            let n = rng.gen_range(1..=3);
            let seq: Vec<TruthAssignment> = (0..n).map(|_| TruthAssignment::from_bits(&vars, rng.gen_range(0..1 << vars.len()))).collect();
            let status = settle((|| {
                for u in ultra::enumerate_ultrafilters(n)? {
                    if !cpl::ultravaluation_theorem_check(&seq, &u, &f)? {
                        return Ok(Status::violated(format!("{f} at the ultrafilter on {}", u.point())));
                    }
                }
                Ok(Status::Verified)
            })());
            let seq_text: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
            plain(status, json!({"formula": f.to_string(), "sequence": seq_text}))
        }
        "adapters" => adapter_run(cfg, rng),
        "counterexample" => {
            let status = settle(verify_counterexample(16).map(|r| match r.claims.iter().find(|c| !c.holds) {
                None => Status::Verified,
                Some(c) => Status::violated(format!("claim ({}) fails: {}", c.id, c.witness.clone().unwrap_or_default())),
            }));
            plain(status, json!({"bound": 16}))
        }
        other => unreachable!("unregistered theorem {other}"),
    };
    Verdict {
        theorem: theorem.to_string(),
        status: run.status,
        instance: digest(&run.instance),
        seed,
        shrunk: run.shrunk,
    }
}

/// The topology from a subbase equals the one from the base of its finite intersections, and is one.
fn topology_gen_status(n: usize, sigma: &[PointSet]) -> Result<Status> {
    let ground: PointSet = (1 << n) - 1;
    let mut base: Vec<PointSet> = vec![ground];
    for mask in 1u32..1 << sigma.len() {
        let meet = crate::bits::BitIter(mask as u64).fold(ground, |acc, i| acc & sigma[i]);
        if !base.contains(&meet) {
            base.push(meet);
        }
    }
    let from_sub = topology::generate_from_subbase(n, sigma)?;
    let from_base = topology::generate_from_base(n, &base)?;
    if from_sub != from_base {
        return Ok(Status::violated(format!("subbase gives {:?}, base gives {:?}", from_sub.opens(), from_base.opens())));
    }
    let opens = from_sub.opens();
    for &u in opens {
        if base.iter().filter(|&&b| b & !u == 0).fold(0, |a, &b| a | b) != u {
            return Ok(Status::violated(format!("open {u:#b} is not a union of base sets")));
        }
        for &v in opens {
            if !from_sub.is_open(u | v) || !from_sub.is_open(u & v) {
                return Ok(Status::violated(format!("opens {u:#b} and {v:#b} are not closed under union and meet")));
            }
        }
    }
    Ok(Status::Verified)
}

fn ultrafilter_status(n: usize, members: &[u32]) -> Result<Status> {
    let fam = SetFamily::new(n, members.to_vec())?;
    if !ultra::has_fip(&fam) {
        return Ok(match ultra::generated_filter(&fam) {
            Err(Error::NoFip) => Status::Verified,
            other => Status::violated(format!("family without FIP generated {other:?}")),
        });
    }
    let f = ultra::generated_filter(&fam)?;
    let u = ultra::extend_to_ultrafilter(&f)?;
    let ground: u32 = (1 << n) - 1;
    let decides = (0..=ground).all(|a| u.contains(a) != u.contains(ground & !a));
    if !fam.members().iter().all(|&s| u.contains(s)) {
        return Ok(Status::violated("extension drops a generator"));
    }
    if !(u.family().is_filter() && u.family().is_proper() && decides) {
        return Ok(Status::violated("extension is not a proper filter deciding every set"));
    }
    let all = ultra::enumerate_ultrafilters(n)?;
    for w in &all {
        let proper_filter = w.family().is_filter() && w.family().is_proper();
        let decides = (0..=ground).all(|a| w.contains(a) != w.contains(ground & !a));
        if !(proper_filter && decides && w.family().is_ultrafilter()) {
            return Ok(Status::violated(format!("ultrafilter at {} fails the characterization", w.point())));
        }
    }
    Ok(Status::Verified)
}

fn adapter_run(cfg: &SuiteConfig, rng: &mut Rng64) -> Run {
    match rng.gen_range(0..3) {
        0 => {
            let q = adapters::random_quiver(rng);
            let status = settle(
                adapters::quiver_to_amst(&q)
                    .and_then(|a| adapters::amst_to_quiver(&a, &q.vertices))
                    .map(|b| if b == q { Status::Verified } else { Status::violated("quiver round trip differs") }),
            );
            plain(status, json!(q))
        }
        1 => {
            let c = if rng.gen_bool(0.5) { adapters::random_monoid_category(rng) } else { adapters::random_poset_category(rng) };
            let status = settle(
                adapters::category_to_amst(&c)
                    .and_then(|a| adapters::amst_to_category(&a))
                    .map(|b| if b == c { Status::Verified } else { Status::violated("composition table differs after round trip") }),
            );
            plain(status, json!(c))
        }
        _ => {
            let ls = normal_amst(cfg, rng).induced_consequence().expect("within table cap");
            let status = settle(
                adapters::logical_structure_to_amst(&ls)
                    .and_then(|a| adapters::amst_to_logical_structure(&a))
                    .map(|b| if b == ls { Status::Verified } else { Status::violated("turnstile differs after round trip") }),
            );
            plain(status, json!(ls))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(theorems: &[&str]) -> SuiteConfig {
        SuiteConfig {
            count: 6,
            theorems: theorems.iter().map(|s| s.to_string()).collect(),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_theorem_runs_clean() {
        let v = run_suite(&small(&THEOREMS)).unwrap();
        assert_eq!(v.len(), 6 * 18 + 1);
        let bad: Vec<_> = v.iter().filter(|x| x.status.is_violated()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn empty_and_unknown_configs() {
        assert!(run_suite(&small(&[])).unwrap().is_empty());
        assert_eq!(run_suite(&small(&["nope"])), Err(Error::UnknownTheorem("nope".into())));
    }

    #[test]
    fn deterministic_across_strategies() {
        let a = run_suite(&small(&["compact_I", "loz"])).unwrap();
        let b = run_suite(&SuiteConfig { exec: Exec::Sequential, ..small(&["compact_I", "loz"]) }).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn injected_bug_is_caught_and_shrunk() {
        let cfg = SuiteConfig {
            count: 40,
            inject: Some(Mutation::CompleteOneSided),
            ..small(&["compact_I"])
        };
        let v = run_suite(&cfg).unwrap();
        let hit = v.iter().find(|x| x.status.is_violated()).expect("mutation caught");
        assert!(hit.shrunk.is_some());
    }
}
