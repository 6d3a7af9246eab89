//! The non-normal, non-compact amst over ℕ, where every model satisfies every set
//! except `{0}`, the odd numbers and ℕ itself.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    All,
    Odds,
    Empty,
}

impl Base {
    fn contains(self, n: u64) -> bool {
        match self {
            Base::All => true,
            Base::Odds => n % 2 == 1,
            Base::Empty => false,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawExpr {
    base: Base,
    #[serde(default)]
    plus: BTreeSet<u64>,
    #[serde(default)]
    minus: BTreeSet<u64>,
}

/// `(base ∪ plus) ∖ minus` in normal form: `plus` is disjoint from `base` and `minus ⊆ base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExpr", into = "RawExpr")]
pub struct NatSetExpr {
    base: Base,
    plus: BTreeSet<u64>,
    minus: BTreeSet<u64>,
}

impl TryFrom<RawExpr> for NatSetExpr {
    type Error = Error;

    fn try_from(raw: RawExpr) -> Result<Self> {
        let e = NatSetExpr {
            base: raw.base,
            plus: raw.plus,
            minus: raw.minus,
        };
        e.validate()?;
        Ok(e)
    }
}

impl From<NatSetExpr> for RawExpr {
    fn from(e: NatSetExpr) -> Self {
        RawExpr {
            base: e.base,
            plus: e.plus,
            minus: e.minus,
        }
    }
}

impl NatSetExpr {
    /// Builds `(base ∪ plus) ∖ minus`, normalizing the edits.
    pub fn new(base: Base, plus: impl IntoIterator<Item = u64>, minus: impl IntoIterator<Item = u64>) -> Self {
        let minus: BTreeSet<u64> = minus.into_iter().collect();
        let mut e = NatSetExpr {
            base,
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        for n in plus {
            e = e.with(n);
        }
        for n in minus {
            e = e.without(n);
        }
        e
    }

    pub fn all() -> Self {
        Self::new(Base::All, [], [])
    }

    pub fn odds() -> Self {
        Self::new(Base::Odds, [], [])
    }

    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        Self::new(Base::Empty, elems, [])
    }

    /// `ℕ ∖ {k}`.
    pub fn all_but(k: u64) -> Self {
        Self::new(Base::All, [], [k])
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn plus(&self) -> &BTreeSet<u64> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<u64> {
        &self.minus
    }

    pub fn with(mut self, n: u64) -> Self {
        if !self.minus.remove(&n) && !self.base.contains(n) {
            self.plus.insert(n);
        }
        self
    }

    pub fn without(mut self, n: u64) -> Self {
        if !self.plus.remove(&n) && self.base.contains(n) {
            self.minus.insert(n);
        }
        self
    }

    pub fn is_finite(&self) -> bool {
        self.base == Base::Empty
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.plus.iter().find(|&&n| self.base.contains(n)) {
            return Err(Error::Invariant(format!("{n} is added to a base that already contains it")));
        }
        if let Some(n) = self.minus.iter().find(|&&n| !self.base.contains(n)) {
            return Err(Error::Invariant(format!("{n} is removed from a base that lacks it")));
        }
        Ok(())
    }
}

impl fmt::Display for NatSetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self.base {
            Base::All => write!(f, "N")?,
            Base::Odds => write!(f, "Odds")?,
            Base::Empty => return write!(f, "{{{}}}", list(&self.plus)),
        }
        if !self.plus.is_empty() {
            write!(f, " + {{{}}}", list(&self.plus))?;
        }
        if !self.minus.is_empty() {
            write!(f, " - {{{}}}", list(&self.minus))?;
        }
        Ok(())
    }
}

pub fn expr_member(n: u64, e: &NatSetExpr) -> bool {
    if e.plus.contains(&n) {
        return true;
    }
    if e.minus.contains(&n) {
        return false;
    }
    e.base.contains(n)
}

/// Normal forms are unique per extensional set, so equality is structural.
pub fn expr_equal(a: &NatSetExpr, b: &NatSetExpr) -> bool {
    a == b
}

/// `n ⊨ Γ` iff `Γ` is none of `{0}`, the odd numbers, ℕ. The model is ignored.
pub fn example_satisfies(_n: u64, gamma: &NatSetExpr) -> bool {
    ![NatSetExpr::finite([0]), NatSetExpr::odds(), NatSetExpr::all()]
        .iter()
        .any(|f| expr_equal(gamma, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub justification: String,
    pub checks: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub bound: u64,
    pub claims: Vec<Claim>,
}

impl CounterexampleReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("N counterexample, spot checks up to {}\n", self.bound);
        for c in &self.claims {
            out += &format!(
                "({}) {}: {}\n    {} [{} checks]\n",
                c.id,
                if c.holds { "ok" } else { "FAILED" },
                c.statement,
                c.justification,
                c.checks
            );
            if let Some(w) = &c.witness {
                out += &format!("    witness: {w}\n");
            }
        }
        out
    }
}

struct Tally {
    checks: usize,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, witness: None }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(what());
        }
    }

    fn claim(self, id: &str, statement: &str, justification: &str) -> Claim {
        Claim {
            id: id.into(),
            statement: statement.into(),
            justification: justification.into(),
            checks: self.checks,
            holds: self.witness.is_none(),
            witness: self.witness,
        }
    }
}

/// All subsets of `pool`.
fn finite_subsets(pool: &[u64]) -> impl Iterator<Item = NatSetExpr> + '_ {
    (0u64..1 << pool.len()).map(move |m| NatSetExpr::finite(pool.iter().enumerate().filter(|&(i, _)| m >> i & 1 == 1).map(|(_, &n)| n)))
}

/// A finite `Γ₀ ⊆ Γ ∩ pool` that model `n` does not satisfy.
fn unsatisfied_finite_subset(gamma: &NatSetExpr, pool: &[u64], n: u64) -> Option<NatSetExpr> {
    let inside: Vec<u64> = pool.iter().copied().filter(|&k| expr_member(k, gamma)).collect();
    let found = finite_subsets(&inside).find(|g0| !example_satisfies(n, g0));
    found
}

/// Checks the six claims symbolically and by enumeration up to `bound`.
pub fn verify_counterexample(bound: u64) -> Result<CounterexampleReport> {
    if bound < 2 {
        return Err(Error::Argument(format!("bound must be at least 2, got {bound}")));
    }
    // nested subset enumeration in (vi) stays on a pool of at most 10 naturals
    let pool: Vec<u64> = (0..=bound.min(9)).collect();
    let models = 0..=bound;
    let mut claims = Vec::new();

    let mut t = Tally::new();
    let pair = NatSetExpr::finite([0, 1]);
    let zero = NatSetExpr::finite([0]);
    for n in models.clone() {
        t.expect(example_satisfies(n, &pair) && !example_satisfies(n, &zero), || {
            format!("model {n} on {{0,1}} and {{0}}")
        });
    }
    claims.push(t.claim(
        "i",
        "not normal: n satisfies {0,1} but not its subset {0}",
        "{0,1} is none of the three excluded sets and {0} is one of them",
    ));

    let mut t = Tally::new();
    for n in models.clone() {
        t.expect(!example_satisfies(n, &zero) && expr_member(0, &NatSetExpr::all()), || {
            format!("model {n} satisfies {{0}}")
        });
    }
    claims.push(t.claim(
        "ii",
        "N is not finitely satisfiable",
        "{0} is a finite subset of N satisfied by no model",
    ));

    let mut t = Tally::new();
    let odds_pool: Vec<u64> = (0..=bound).filter(|k| k % 2 == 1).take(12).collect();
    for n in models.clone() {
        for g0 in finite_subsets(&odds_pool) {
            t.expect(example_satisfies(n, &g0), || format!("model {n} fails {g0}"));
        }
    }
    claims.push(t.claim(
        "iii",
        "the odd numbers are finitely satisfiable",
        "a finite set of odd numbers omits 0 so is not {0}, and being finite it is neither the odd numbers nor N",
    ));

    let mut t = Tally::new();
    for n in models.clone() {
        t.expect(!example_satisfies(n, &NatSetExpr::odds()), || format!("model {n} satisfies the odd numbers"));
    }
    claims.push(t.claim("iv", "the odd numbers are not satisfiable", "the odd numbers are one of the excluded sets"));

    let mut t = Tally::new();
    for k in 0..=bound {
        let g = NatSetExpr::all_but(k);
        for n in models.clone() {
            t.expect(example_satisfies(n, &g), || format!("model {n} fails {g}"));
            t.expect(!example_satisfies(n, &g.clone().with(k)), || format!("model {n} satisfies N"));
        }
    }
    claims.push(t.claim(
        "v",
        "each N - {k} is satisfiable and maximal satisfiable",
        "N - {k} is none of the excluded sets, and its only proper superset is N, which is unsatisfiable",
    ));

    // (3): finitely satisfiable Γ lie inside N - {0}, which is maximal satisfiable
    let mut t = Tally::new();
    let target = NatSetExpr::all_but(0);
    for n in 0..=bound.min(2) {
        for g in finite_subsets(&pool) {
            let fin = unsatisfied_finite_subset(&g, &pool, n).is_none();
            t.expect(fin == !expr_member(0, &g), || format!("finite satisfiability of {g} at model {n}"));
            if fin {
                t.expect(!expr_member(0, &g) && example_satisfies(n, &target), || format!("{g} is not inside {target}"));
            }
        }
        for g in [NatSetExpr::odds(), NatSetExpr::all(), target.clone()] {
            let fin = unsatisfied_finite_subset(&g, &pool, n).is_none();
            t.expect(fin == !expr_member(0, &g), || format!("finite satisfiability of {g} at model {n}"));
        }
    }
    let odds_fin = claims[2].holds;
    let odds_unsat = claims[3].holds;
    t.expect(odds_fin && odds_unsat, || "the odd numbers do not separate finite and full satisfiability".into());
    claims.push(t.claim(
        "vi",
        "every finitely satisfiable set lies in a maximal satisfiable set, yet the amst is not compact",
        "a set is finitely satisfiable iff it omits 0, so it lies in N - {0}; the odd numbers are finitely satisfiable but not satisfiable",
    ));

    Ok(CounterexampleReport { bound, claims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_equality() {
        assert!(expr_member(3, &NatSetExpr::odds()));
        assert!(!expr_member(4, &NatSetExpr::odds()));
        assert!(!expr_equal(&NatSetExpr::all_but(0), &NatSetExpr::odds()));
        let e = NatSetExpr::odds().without(1).with(1);
        assert!(expr_equal(&e, &NatSetExpr::odds()));
        let e = NatSetExpr::new(Base::Odds, [1, 2], [2, 3]);
        assert_eq!(e.plus().len(), 0);
        assert_eq!(e.minus().iter().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(e.to_string(), "Odds - {3}");
    }

    #[test]
    fn satisfaction_examples() {
        assert!(example_satisfies(5, &NatSetExpr::finite([0, 1])));
        assert!(!example_satisfies(5, &NatSetExpr::finite([0])));
        assert!(!example_satisfies(5, &NatSetExpr::odds()));
        assert!(!example_satisfies(0, &NatSetExpr::all_but(3).with(3)));
        assert!(example_satisfies(0, &NatSetExpr::finite([])));
    }

    #[test]
    fn report_at_eight() {
        let r = verify_counterexample(8).unwrap();
        assert_eq!(r.claims.len(), 6);
        assert!(r.all_hold(), "{}", r.to_text());
        assert!(verify_counterexample(1).is_err());
        let ids: Vec<_> = r.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["i", "ii", "iii", "iv", "v", "vi"]);
    }

    #[test]
    fn json_rejects_unnormalized() {
        let e: NatSetExpr = serde_json::from_str(r#"{"base":"odds","plus":[2],"minus":[3]}"#).unwrap();
        assert_eq!(e, NatSetExpr::new(Base::Odds, [2], [3]));
        assert!(serde_json::from_str::<NatSetExpr>(r#"{"base":"odds","plus":[1]}"#).is_err());
        assert!(serde_json::from_str::<NatSetExpr>(r#"{"base":"empty","minus":[1]}"#).is_err());
    }
}
