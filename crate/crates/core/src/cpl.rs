//! Classical propositional logic: formulas, a parser and printer, truth assignments,
//! ultravaluations and the valuation amst.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::amst::FiniteAmst;
use crate::bits::SentenceSet;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::ultra::{enumerate_ultrafilters, Ultrafilter};

pub const MAX_VARIABLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(Arc<str>),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub const ALL: [Connective; 4] = [Connective::And, Connective::Or, Connective::Implies, Connective::Iff];

    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            Connective::And => a && b,
            Connective::Or => a || b,
            Connective::Implies => !a || b,
            Connective::Iff => a == b,
        }
    }
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Arc::new(f))
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Self {
        Self::join(c, Arc::new(a), Arc::new(b))
    }

    pub fn join(c: Connective, a: Arc<Formula>, b: Arc<Formula>) -> Self {
        match c {
            Connective::And => Formula::And(a, b),
            Connective::Or => Formula::Or(a, b),
            Connective::Implies => Formula::Implies(a, b),
            Connective::Iff => Formula::Iff(a, b),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        fn go(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Var(v) => {
                    if !out.iter().any(|x| **x == **v) {
                        out.push(v.to_string());
                    }
                }
                Formula::Not(a) => go(a, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    fn eval_by(&self, look: &impl Fn(&str) -> Option<bool>) -> Result<bool> {
        Ok(match self {
            Formula::Var(v) => look(v).ok_or_else(|| Error::UndeclaredVariable(v.to_string()))?,
            Formula::Not(a) => !a.eval_by(look)?,
            Formula::And(a, b) => a.eval_by(look)? && b.eval_by(look)?,
            Formula::Or(a, b) => a.eval_by(look)? || b.eval_by(look)?,
            Formula::Implies(a, b) => !a.eval_by(look)? || b.eval_by(look)?,
            Formula::Iff(a, b) => a.eval_by(look)? == b.eval_by(look)?,
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Var(_) => 6,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, x: &Formula, parens: bool| {
            if parens {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        let p = self.prec();
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Not(a) => {
                f.write_str("~")?;
                wrap(f, a, a.prec() < p)
            }
            Formula::Implies(a, b) => {
                wrap(f, a, a.prec() <= p)?;
                f.write_str(" -> ")?;
                wrap(f, b, b.prec() < p)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " <-> ",
                };
                wrap(f, a, a.prec() < p)?;
                f.write_str(op)?;
                wrap(f, b, b.prec() <= p)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unknown token `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.implies()?;
        while self.eat(&Tok::Iff) {
            f = Formula::binary(Connective::Iff, f, self.implies()?);
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if self.eat(&Tok::Implies) {
            return Ok(Formula::binary(Connective::Implies, f, self.implies()?));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            f = Formula::binary(Connective::Or, f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::binary(Connective::And, f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::var(&name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok(f)
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// A total assignment over a declared variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruthAssignment {
    variables: Vec<String>,
    values: Vec<bool>,
}

impl TruthAssignment {
    pub fn new(variables: Vec<String>, values: Vec<bool>) -> Result<Self> {
        if variables.len() != values.len() {
            return Err(Error::Shape(format!("{} variables, {} values", variables.len(), values.len())));
        }
        Ok(TruthAssignment { variables, values })
    }

    /// Variable `k` gets bit `k` of `bits`.
    pub fn from_bits(variables: &[String], bits: u64) -> Self {
        TruthAssignment {
            values: (0..variables.len()).map(|k| bits >> k & 1 == 1).collect(),
            variables: variables.to_vec(),
        }
    }

    pub fn bits(&self) -> u64 {
        self.values.iter().enumerate().fold(0, |a, (k, &b)| a | (b as u64) << k)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.variables.iter().position(|v| v == name).map(|k| self.values[k])
    }
}

impl fmt::Display for TruthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .variables
            .iter()
            .zip(&self.values)
            .map(|(v, &b)| format!("{v}={}", b as u8))
            .collect();
        f.write_str(&parts.join(","))
    }
}

pub fn evaluate(v: &TruthAssignment, f: &Formula) -> Result<bool> {
    f.eval_by(&|name| v.get(name))
}

/// `μ(p) = 1` iff `{i : v_i(p) = 1} ∈ U`.
pub fn ultravaluation(seq: &[TruthAssignment], u: &Ultrafilter) -> Result<TruthAssignment> {
    if seq.len() != u.index_size() {
        return Err(Error::Shape(format!("{} assignments for an ultrafilter on {} indices", seq.len(), u.index_size())));
    }
    let vars = seq[0].variables.clone();
    if seq.iter().any(|v| v.variables != vars) {
        return Err(Error::Shape("assignments over different variable lists".into()));
    }
    let values = (0..vars.len())
        .map(|k| u.contains(seq.iter().enumerate().fold(0, |a, (i, v)| a | (v.values[k] as u32) << i)))
        .collect();
    TruthAssignment::new(vars, values)
}

/// `μ̄(φ) = 1` iff `{i : v̄_i(φ) = 1} ∈ U`.
pub fn ultravaluation_theorem_check(seq: &[TruthAssignment], u: &Ultrafilter, f: &Formula) -> Result<bool> {
    let mu = ultravaluation(seq, u)?;
    let lhs = evaluate(&mu, f)?;
    let mut large = 0u32;
    for (i, v) in seq.iter().enumerate() {
        large |= (evaluate(v, f)? as u32) << i;
    }
    Ok(lhs == u.contains(large))
}

/// The normal amst of all assignments to `variables` (ordered by bitmask) against `formulas`.
pub fn valuation_amst(variables: &[String], formulas: &[Formula]) -> Result<FiniteAmst> {
    if variables.len() > MAX_VARIABLES {
        return Err(Error::Capacity {
            what: "propositional variables",
            got: variables.len(),
            cap: MAX_VARIABLES,
        });
    }
    let n = 1u64 << variables.len();
    let mut rows = Vec::with_capacity(n as usize);
    let mut labels = Vec::with_capacity(n as usize);
    for bits in 0..n {
        let v = TruthAssignment::from_bits(variables, bits);
        let mut row = SentenceSet::EMPTY;
        for (k, f) in formulas.iter().enumerate() {
            if evaluate(&v, f)? {
                row = row.with(k);
            }
        }
        rows.push(row);
        labels.push(v.to_string());
    }
    FiniteAmst::normal(formulas.iter().map(|f| f.to_string()).collect(), labels, rows)
}

/// The ultravaluation theorem for the given formulas on every sequence of length `1..=max_index`
/// and every ultrafilter. Returns the number of checks and the failures.
pub fn ultravaluation_check_formulas(variables: &[String], formulas: &[Formula], max_index: usize) -> Result<(usize, Vec<String>)> {
    let rows = 1u64.checked_shl(variables.len() as u32).unwrap_or(u64::MAX);
    let total: u64 = (1..=max_index as u32).map(|ni| rows.saturating_pow(ni)).fold(0, u64::saturating_add);
    if total > 1 << 16 {
        return Err(Error::Capacity {
            what: "assignment sequences",
            got: total.min(usize::MAX as u64) as usize,
            cap: 1 << 16,
        });
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for ni in 1..=max_index {
        let ultras = enumerate_ultrafilters(ni)?;
        for code in 0..rows.pow(ni as u32) {
            let mut c = code;
            let seq: Vec<TruthAssignment> = (0..ni)
                .map(|_| {
                    let v = TruthAssignment::from_bits(variables, c % rows);
                    c /= rows;
                    v
                })
                .collect();
            for u in &ultras {
                for f in formulas {
                    checked += 1;
                    if !ultravaluation_theorem_check(&seq, u, f)? {
                        let s: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
                        bad.push(format!("{f} under U_{} on [{}]", u.point(), s.join("; ")));
                    }
                }
            }
        }
    }
    Ok((checked, bad))
}

/// Text form accepted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CplSpec {
    pub variables: Vec<String>,
    pub formulas: Vec<String>,
}

impl CplSpec {
    pub fn to_amst(&self) -> Result<FiniteAmst> {
        let fs = self.formulas.iter().map(|t| parse_formula(t)).collect::<Result<Vec<_>>>()?;
        valuation_amst(&self.variables, &fs)
    }
}

/// All formulas over `vars` of depth at most `depth`, each exactly once.
pub fn formulas_up_to(vars: &[String], depth: usize) -> Vec<Arc<Formula>> {
    let mut all: Vec<Arc<Formula>> = vars.iter().map(|v| Arc::new(Formula::var(v))).collect();
    for _ in 0..depth {
        let prev = all.clone();
        let mut next: Vec<Arc<Formula>> = vars.iter().map(|v| Arc::new(Formula::var(v))).collect();
        next.extend(prev.iter().map(|a| Arc::new(Formula::Not(a.clone()))));
        for c in Connective::ALL {
            for a in &prev {
                for b in &prev {
                    next.push(Arc::new(Formula::join(c, a.clone(), b.clone())));
                }
            }
        }
        all = next;
    }
    all
}

/// Truth table of `f` over `vars`: bit `j` is the value under assignment `j`.
pub fn truth_table(vars: &[String], f: &Formula) -> Result<u64> {
    if vars.len() > 6 {
        return Err(Error::Capacity {
            what: "variables for a 64-row truth table",
            got: vars.len(),
            cap: 6,
        });
    }
    let mut t = 0;
    for bits in 0..1u64 << vars.len() {
        t |= (evaluate(&TruthAssignment::from_bits(vars, bits), f)? as u64) << bits;
    }
    Ok(t)
}

/// Calls `visit` on every formula skeleton of depth at most `depth`.
///
/// Depths up to 2 are listed literally. At depth 3 the immediate subformulas range over one
/// representative per truth table of the depth-2 formulas, so every depth-3 truth table shape is
/// reached without materialising all of them.
pub fn for_each_skeleton(vars: &[String], depth: usize, mut visit: impl FnMut(&Formula)) -> Result<usize> {
    if depth > 3 {
        return Err(Error::Argument(format!("skeleton depth {depth} above 3")));
    }
    let base = formulas_up_to(vars, depth.min(2));
    let mut count = 0;
    for f in &base {
        visit(f);
        count += 1;
    }
    if depth < 3 {
        return Ok(count);
    }
    let mut reps: Vec<Arc<Formula>> = Vec::new();
    let mut seen = HashMap::new();
    for f in &base {
        let t = truth_table(vars, f)?;
        if seen.insert(t, ()).is_none() {
            reps.push(f.clone());
        }
    }
    for r in &reps {
        visit(&Formula::Not(r.clone()));
        count += 1;
    }
    for c in Connective::ALL {
        for a in &reps {
            for b in &reps {
                visit(&Formula::join(c, a.clone(), b.clone()));
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UltravaluationSweep {
    /// Skeletons enumerated across all variable counts.
    pub formulas: usize,
    /// Formulas checked literally: one per distinct truth table.
    pub representatives: usize,
    /// `(sequence, ultrafilter, formula)` triples evaluated.
    pub instances: usize,
    pub violations: Vec<String>,
}

/// The ultravaluation theorem for `|I| ≤ max_index`, `|V| ≤ max_vars` and skeletons up to `depth`.
///
/// The theorem's two sides depend on a formula only through its truth table, so each table is
/// checked through one representative formula against every sequence and ultrafilter.
pub fn ultravaluation_sweep(max_index: usize, max_vars: usize, depth: usize, exec: Exec) -> Result<UltravaluationSweep> {
    let mut out = UltravaluationSweep::default();
    for nv in 1..=max_vars {
        let vars: Vec<String> = (0..nv).map(|k| ["p", "q", "r", "s", "t", "u"].get(k).map_or(format!("v{k}"), |s| s.to_string())).collect();
        let mut reps: Vec<Formula> = Vec::new();
        let mut seen: HashMap<u64, ()> = HashMap::new();
        let mut err = None;
        out.formulas += for_each_skeleton(&vars, depth, |f| match truth_table(&vars, f) {
            Ok(t) => {
                if seen.insert(t, ()).is_none() {
                    reps.push(f.clone());
                }
            }
            Err(e) => err = Some(e),
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        out.representatives += reps.len();
        for ni in 1..=max_index {
            let ultras = enumerate_ultrafilters(ni)?;
            let rows = 1u64 << nv;
            let total = rows.pow(ni as u32);
            let results = par::map_range(exec, total as usize, |code| -> Result<(usize, Vec<String>)> {
                let mut c = code as u64;
                let seq: Vec<TruthAssignment> = (0..ni)
                    .map(|_| {
                        let v = TruthAssignment::from_bits(&vars, c % rows);
                        c /= rows;
                        v
                    })
                    .collect();
                let mut bad = Vec::new();
                let mut n = 0;
                for u in &ultras {
                    for f in &reps {
                        n += 1;
                        if !ultravaluation_theorem_check(&seq, u, f)? {
                            let s: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
                            bad.push(format!("{f} under U_{} on [{}]", u.point(), s.join("; ")));
                        }
                    }
                }
                Ok((n, bad))
            });
            for r in results {
                let (n, bad) = r?;
                out.instances += n;
                out.violations.extend(bad);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &str) -> Formula {
        parse_formula(t).unwrap()
    }

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("p & ~q"), Formula::binary(Connective::And, Formula::var("p"), Formula::not(Formula::var("q"))));
        assert_eq!(
            p("p -> q -> r"),
            Formula::binary(Connective::Implies, Formula::var("p"), Formula::binary(Connective::Implies, Formula::var("q"), Formula::var("r")))
        );
        assert_eq!(
            p("p & q | r"),
            Formula::binary(Connective::Or, Formula::binary(Connective::And, Formula::var("p"), Formula::var("q")), Formula::var("r"))
        );
        assert_eq!(p("p <-> q <-> r"), p("(p <-> q) <-> r"));
        assert_eq!(p("~~x_1"), Formula::not(Formula::not(Formula::var("x_1"))));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert!(matches!(parse_formula("p & $"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse_formula("p &"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_formula("(p"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_formula("p q"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_formula("P"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn printer_roundtrips() {
        for t in ["p -> q -> r", "(p -> q) -> r", "~(p & q) | r", "p & (q | r)", "(p <-> q) <-> r", "p <-> (q <-> r)", "~~p", "p | (q | r)"] {
            let f = p(t);
            assert_eq!(p(&f.to_string()), f, "{t}");
        }
        assert_eq!(p("(p -> q) -> r").to_string(), "(p -> q) -> r");
        assert_eq!(p("p | (q | r)").to_string(), "p | (q | r)");
    }

    #[test]
    fn evaluate_examples() {
        let v = TruthAssignment::new(vars(&["p", "q"]), vec![true, false]).unwrap();
        assert!(!evaluate(&v, &p("~p")).unwrap());
        assert!(!evaluate(&v, &p("p -> q")).unwrap());
        assert!(evaluate(&v, &p("p | q")).unwrap());
        assert_eq!(evaluate(&v, &p("r")), Err(Error::UndeclaredVariable("r".into())));
    }

    #[test]
    fn ultravaluation_examples() {
        let vs = vars(&["p"]);
        let a = |b: bool| TruthAssignment::new(vs.clone(), vec![b]).unwrap();
        let u1 = Ultrafilter::principal(2, 1).unwrap();
        assert_eq!(ultravaluation(&[a(true), a(false)], &u1).unwrap().values(), &[false]);
        let u0 = Ultrafilter::principal(3, 0).unwrap();
        assert_eq!(ultravaluation(&[a(true), a(true), a(false)], &u0).unwrap().values(), &[true]);
        assert_eq!(ultravaluation(&[a(false), a(false)], &u1).unwrap(), a(false));
        assert!(ultravaluation(&[a(true)], &u1).is_err());
        for f in ["p | ~p", "p & ~p", "p"] {
            assert!(ultravaluation_theorem_check(&[a(true), a(true), a(false)], &u0, &p(f)).unwrap());
        }
    }

    #[test]
    fn valuation_amst_examples() {
        let a = valuation_amst(&vars(&["p"]), &[p("p")]).unwrap();
        assert_eq!(a.num_models(), 2);
        assert_eq!(a.mod_of(SentenceSet(1)).word(), Some(0b10));
        let b = valuation_amst(&vars(&["p"]), &[p("p | ~p"), p("p & ~p")]).unwrap();
        assert_eq!(b.mod_of(SentenceSet(1)).count(), 2);
        assert!(b.mod_of(SentenceSet(2)).is_empty());
        assert!(b.is_finitely_satisfiable(b.full()).witness().is_some());
        assert!(b.induced_consequence().unwrap().is_tarski_type().all());
        let many: Vec<String> = (0..11).map(|k| format!("v{k}")).collect();
        assert!(matches!(valuation_amst(&many, &[]), Err(Error::Capacity { .. })));
        let spec: CplSpec = serde_json::from_str(r#"{"variables":["p","q"],"formulas":["p & q","~p"]}"#).unwrap();
        assert_eq!(spec.to_amst().unwrap().num_models(), 4);
    }

    #[test]
    fn skeleton_counts() {
        let v = vars(&["p"]);
        // depth 1 over one variable: p, ~p, and 4 binary forms of (p, p)
        assert_eq!(formulas_up_to(&v, 1).len(), 6);
        assert_eq!(for_each_skeleton(&v, 2, |_| {}).unwrap(), 1 + 6 + 4 * 36);
        assert!(for_each_skeleton(&v, 4, |_| {}).is_err());
    }

    #[test]
    fn small_sweep_is_clean() {
        let r = ultravaluation_sweep(2, 2, 2, Exec::Sequential).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.instances > 0 && r.representatives <= 4 + 16);
    }
}
