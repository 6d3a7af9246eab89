//! Encodings of neighbouring structures as amsts: logical structures, information systems,
//! Chu spaces, quivers and object-free categories.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amst::{FiniteAmst, MAX_TABLE_SENTENCES};
use crate::bits::{all_sets, SentenceSet};
use crate::consequence::LogicalStructure;
use crate::error::{Error, Result};
use crate::rng::Rng64;

fn axiom(label: &str, witness: String) -> Error {
    Error::Axiom {
        label: label.into(),
        witness,
    }
}

fn cap(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::Capacity { what, got, cap: limit });
    }
    Ok(())
}

fn render(labels: &[String], s: SentenceSet) -> String {
    crate::bits::render(labels, s.iter())
}

// Logical structures

/// `α ⊨ Γ` iff `Γ ⊬ α`, with models and sentences both `L`.
pub fn logical_structure_to_amst(ls: &LogicalStructure) -> Result<FiniteAmst> {
    FiniteAmst::general_from_fn(ls.sentence_labels().to_vec(), ls.sentence_labels().to_vec(), |a, g| !ls.entails(g, a))
}

pub fn amst_to_logical_structure(amst: &FiniteAmst) -> Result<LogicalStructure> {
    if amst.model_labels() != amst.sentence_labels() {
        return Err(Error::Shape("models and sentences must be the same labelled set".into()));
    }
    LogicalStructure::from_fn(amst.sentence_labels().to_vec(), |g, a| !amst.sat(a, g))
}

// Information systems

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InformationSystem {
    pub tokens: Vec<String>,
    /// Consistent sets, as token bitmasks.
    pub con: Vec<SentenceSet>,
    /// Entailment pairs `(X, a)` with `X ⊢ a`.
    pub entail: Vec<(SentenceSet, usize)>,
}

impl InformationSystem {
    fn is_con(&self, x: SentenceSet) -> bool {
        self.con.contains(&x)
    }

    fn entails(&self, x: SentenceSet, a: usize) -> bool {
        self.entail.contains(&(x, a))
    }

    fn fmt(&self, x: SentenceSet) -> String {
        render(&self.tokens, x)
    }
}

/// Checks the defining conditions and axioms (a) to (e), failing with the first violated label.
pub fn validate_information_system(is: &InformationSystem) -> Result<()> {
    let n = is.tokens.len();
    cap("information system tokens", n, MAX_TABLE_SENTENCES)?;
    let full = SentenceSet::full(n);
    if is.con.is_empty() {
        return Err(axiom("con", "Con is empty".into()));
    }
    if let Some(x) = is.con.iter().find(|x| !x.is_subset(full)) {
        return Err(axiom("con", format!("{x:?} is not a set of tokens")));
    }
    if let Some(&(x, a)) = is.entail.iter().find(|&&(x, a)| a >= n || x.is_empty() || !is.is_con(x)) {
        return Err(axiom("entail", format!("({x:?}, {a}) is outside (Con minus empty) x A")));
    }
    for &y in &is.con {
        if let Some(x) = y.subsets().find(|&x| !is.is_con(x)) {
            return Err(axiom("a", format!("{} in Con but its subset {} is not", is.fmt(y), is.fmt(x))));
        }
    }
    if let Some(a) = (0..n).find(|&a| !is.is_con(SentenceSet::singleton(a))) {
        return Err(axiom("b", format!("{{{}}} is not in Con", is.tokens[a])));
    }
    if let Some(&(x, a)) = is.entail.iter().find(|&&(x, a)| !is.is_con(x.with(a))) {
        return Err(axiom("c", format!("{} entails {} but their union is not in Con", is.fmt(x), is.tokens[a])));
    }
    for &x in &is.con {
        if let Some(a) = x.iter().find(|&a| !is.entails(x, a)) {
            return Err(axiom("d", format!("({}, {}) missing from the entailment", is.fmt(x), is.tokens[a])));
        }
    }
    for &x in &is.con {
        for &y in &is.con {
            if y.is_empty() || !y.iter().all(|b| is.entails(x, b)) {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| is.entails(y, c) && !is.entails(x, c)) {
                return Err(axiom(
                    "e",
                    format!("{} entails all of {}, which entails {}, but {} does not", is.fmt(x), is.fmt(y), is.tokens[c], is.fmt(x)),
                ));
            }
        }
    }
    Ok(())
}

/// `a ⊨ Γ` iff `Γ ⊢ a`; sets outside `Con` minus the empty set are satisfied by nothing.
pub fn info_system_to_amst(is: &InformationSystem) -> Result<FiniteAmst> {
    validate_information_system(is)?;
    FiniteAmst::general_from_fn(is.tokens.clone(), is.tokens.clone(), |a, g| is.entails(g, a))
}

/// The satisfaction relation of an amst over `(A, P(A))` read back as pairs `(Γ, a)` with `a ⊨ Γ`.
pub fn amst_entailment(amst: &FiniteAmst) -> Vec<(SentenceSet, usize)> {
    let mut out = Vec::new();
    for g in all_sets(amst.num_sentences()) {
        for a in 0..amst.num_models() {
            if amst.sat(a, g) {
                out.push((g, a));
            }
        }
    }
    out
}

/// The information system where `X ⊢ a` iff `a ∈ X`, with every subset consistent.
pub fn reflexive_information_system(tokens: Vec<String>) -> InformationSystem {
    let n = tokens.len();
    let con: Vec<SentenceSet> = all_sets(n).collect();
    let entail = con.iter().flat_map(|&x| x.iter().map(move |a| (x, a))).collect();
    InformationSystem { tokens, con, entail }
}

// Chu spaces

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChuSpace {
    pub points: Vec<String>,
    pub attributes: Vec<String>,
    pub alphabet: Vec<String>,
    /// `r[x][a]` indexes the alphabet.
    pub matrix: Vec<Vec<usize>>,
}

/// Models `X × A` in row-major order; `(x, a) ⊨ Γ` iff `Γ = {r(x, a)}`.
pub fn chu_to_amst(chu: &ChuSpace) -> Result<FiniteAmst> {
    let k = chu.alphabet.len();
    cap("Chu alphabet", k, MAX_TABLE_SENTENCES)?;
    if chu.matrix.len() != chu.points.len() {
        return Err(Error::Shape(format!("{} matrix rows for {} points", chu.matrix.len(), chu.points.len())));
    }
    for (x, row) in chu.matrix.iter().enumerate() {
        if row.len() != chu.attributes.len() {
            return Err(Error::Shape(format!("matrix row {x} has {} entries for {} attributes", row.len(), chu.attributes.len())));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= k) {
            return Err(Error::OutOfRange {
                what: "Chu matrix value",
                index: v,
                size: k,
            });
        }
    }
    let na = chu.attributes.len();
    let models = chu
        .points
        .iter()
        .flat_map(|x| chu.attributes.iter().map(move |a| format!("({x},{a})")))
        .collect();
    FiniteAmst::general_from_fn(chu.alphabet.clone(), models, |m, g| g == SentenceSet::singleton(chu.matrix[m / na][m % na]))
}

// Quivers

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

/// Largest vertex count whose `V × V` fits the sentence cap.
pub const MAX_QUIVER_VERTICES: usize = 4;

fn pair_labels(v: &[String]) -> Vec<String> {
    v.iter().flat_map(|a| v.iter().map(move |b| format!("({a},{b})"))).collect()
}

/// `L = V × V` with `(a, b)` at index `a·|V| + b`; `e ⊨ Γ` iff `Γ = {(s(e), t(e))}`.
pub fn quiver_to_amst(q: &Quiver) -> Result<FiniteAmst> {
    let nv = q.vertices.len();
    cap("quiver vertices", nv, MAX_QUIVER_VERTICES)?;
    if q.source.len() != q.edges.len() || q.target.len() != q.edges.len() {
        return Err(Error::Shape("source and target must be total on edges".into()));
    }
    if let Some(&v) = q.source.iter().chain(&q.target).find(|&&v| v >= nv) {
        return Err(Error::OutOfRange {
            what: "quiver vertex",
            index: v,
            size: nv,
        });
    }
    FiniteAmst::general_from_fn(pair_labels(&q.vertices), q.edges.clone(), |e, g| {
        g == SentenceSet::singleton(q.source[e] * nv + q.target[e])
    })
}

/// Reads source and target from the unique singleton each edge satisfies.
pub fn amst_to_quiver(amst: &FiniteAmst, vertices: &[String]) -> Result<Quiver> {
    let nv = vertices.len();
    if amst.num_sentences() != nv * nv {
        return Err(Error::Shape(format!("{} sentences is not |V|^2 for {nv} vertices", amst.num_sentences())));
    }
    let mut source = Vec::new();
    let mut target = Vec::new();
    for e in 0..amst.num_models() {
        let hits: Vec<usize> = (0..nv * nv).filter(|&k| amst.sat(e, SentenceSet::singleton(k))).collect();
        if hits.len() != 1 {
            return Err(axiom(
                "unique",
                format!("edge {} satisfies {} singletons over V x V", amst.model_labels()[e], hits.len()),
            ));
        }
        source.push(hits[0] / nv);
        target.push(hits[0] % nv);
    }
    Ok(Quiver {
        vertices: vertices.to_vec(),
        edges: amst.model_labels().to_vec(),
        source,
        target,
    })
}

// Object-free categories

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectFreeCategory {
    pub morphisms: Vec<String>,
    /// `compose[m][n] = m ∘ n` when defined.
    pub compose: Vec<Vec<Option<usize>>>,
}

impl ObjectFreeCategory {
    pub fn new(morphisms: Vec<String>, compose: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = morphisms.len();
        cap("category morphisms", n, MAX_TABLE_SENTENCES)?;
        if compose.len() != n || compose.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("composition table must be {n} x {n}")));
        }
        if compose.iter().flatten().flatten().any(|&c| c >= n) {
            return Err(Error::Shape("composite outside the morphism set".into()));
        }
        Ok(ObjectFreeCategory { morphisms, compose })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn comp(&self, m: usize, n: usize) -> Option<usize> {
        self.compose[m][n]
    }

    pub fn is_unit(&self, u: usize) -> bool {
        (0..self.len()).all(|x| self.comp(x, u).is_none_or(|c| c == x) && self.comp(u, x).is_none_or(|c| c == x))
    }

    fn name(&self, i: usize) -> &str {
        &self.morphisms[i]
    }
}

fn matching_and_associativity(c: &ObjectFreeCategory, labels: (&str, &str)) -> Result<()> {
    let n = c.len();
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                let gf = c.comp(g, f);
                let hg = c.comp(h, g);
                let left = gf.and_then(|x| c.comp(h, x));
                let right = hg.and_then(|y| c.comp(y, f));
                let both = gf.is_some() && hg.is_some();
                let witness = || format!("f={}, g={}, h={}", c.name(f), c.name(g), c.name(h));
                if both != left.is_some() || both != right.is_some() {
                    return Err(axiom(labels.0, witness()));
                }
                if left != right {
                    return Err(axiom(labels.1, witness()));
                }
            }
        }
    }
    Ok(())
}

/// Matching `(a_P)`, associativity `(b_P)` and unit existence `(c_P)`.
pub fn validate_object_free_category(c: &ObjectFreeCategory) -> Result<()> {
    matching_and_associativity(c, ("a_P", "b_P"))?;
    let units: Vec<usize> = (0..c.len()).filter(|&u| c.is_unit(u)).collect();
    for f in 0..c.len() {
        let codomain = units.iter().any(|&u| c.comp(u, f).is_some());
        let domain = units.iter().any(|&u| c.comp(f, u).is_some());
        if !codomain || !domain {
            return Err(axiom("c_P", format!("no unit on the {} side of {}", if codomain { "domain" } else { "codomain" }, c.name(f))));
        }
    }
    Ok(())
}

/// Models `M × M` in row-major order, `L = M`; `(m, n) ⊨ Γ` iff `m ∘ n` is defined and `Γ = {m ∘ n}`.
pub fn category_to_amst(c: &ObjectFreeCategory) -> Result<FiniteAmst> {
    validate_object_free_category(c)?;
    let n = c.len();
    let models = c
        .morphisms
        .iter()
        .flat_map(|m| c.morphisms.iter().map(move |k| format!("({m},{k})")))
        .collect();
    FiniteAmst::general_from_fn(c.morphisms.clone(), models, |mn, g| {
        c.comp(mn / n, mn % n).is_some_and(|x| g == SentenceSet::singleton(x))
    })
}

/// Rebuilds the partial operation from an amst over `(M × M, P(M))`, checking `(a_M)`, `(b_M)`, `(c_M)`.
pub fn amst_to_category(amst: &FiniteAmst) -> Result<ObjectFreeCategory> {
    let n = amst.num_sentences();
    if amst.num_models() != n * n {
        return Err(Error::Shape(format!("{} models is not |M|^2 for {n} morphisms", amst.num_models())));
    }
    let names = amst.sentence_labels();
    let pair = |mn: usize| format!("({},{})", names[mn / n], names[mn % n]);
    for mn in 0..n * n {
        if let Some(g) = all_sets(n).find(|&g| g.len() != 1 && amst.sat(mn, g)) {
            return Err(axiom("a_M", format!("{} satisfies {}", pair(mn), render(names, g))));
        }
    }
    // with (a_M), the unique singleton gives x ⊛ y and the operation
    let compose: Vec<Vec<Option<usize>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let hits: Vec<usize> = (0..n).filter(|&l| amst.sat(x * n + y, SentenceSet::singleton(l))).collect();
                    (hits.len() == 1).then(|| hits[0])
                })
                .collect()
        })
        .collect();
    let c = ObjectFreeCategory {
        morphisms: names.to_vec(),
        compose,
    };
    matching_and_associativity(&c, ("b_M", "b_M"))?;
    let identity = |u: usize| {
        (0..n).all(|g| {
            (0..n).all(|k| !amst.sat(u * n + g, SentenceSet::singleton(k)) || k == g)
                && (0..n).all(|k| !amst.sat(g * n + u, SentenceSet::singleton(k)) || k == g)
        })
    };
    let ids: Vec<usize> = (0..n).filter(|&u| identity(u)).collect();
    for (f, name) in names.iter().enumerate() {
        let one = SentenceSet::singleton(f);
        let left = ids.iter().any(|&u| amst.sat(u * n + f, one));
        let right = ids.iter().any(|&u| amst.sat(f * n + u, one));
        if !left || !right {
            return Err(axiom("c_M", format!("no identity on the {} side of {}", if left { "right" } else { "left" }, name)));
        }
    }
    validate_object_free_category(&c)?;
    Ok(c)
}

/// The monoid generated by `gens` under composition of maps on `points` elements, as a one-object category.
pub fn transformation_monoid(points: usize, gens: &[Vec<usize>]) -> Result<ObjectFreeCategory> {
    let mut elems: Vec<Vec<usize>> = vec![(0..points).collect()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            // g ∘ elems[i]
            let c: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if !elems.contains(&c) {
                elems.push(c);
                cap("monoid elements", elems.len(), MAX_TABLE_SENTENCES)?;
            }
        }
        i += 1;
    }
    let idx = |f: &Vec<usize>| elems.iter().position(|e| e == f).unwrap();
    let compose = elems
        .iter()
        .map(|m| elems.iter().map(|k| Some(idx(&k.iter().map(|&x| m[x]).collect()))).collect())
        .collect();
    let names = elems
        .iter()
        .map(|e| format!("t{}", e.iter().map(|d| d.to_string()).collect::<String>()))
        .collect();
    ObjectFreeCategory::new(names, compose)
}

/// The category of a preorder given as a reflexive, transitive relation matrix.
pub fn poset_category(leq: &[Vec<bool>]) -> Result<ObjectFreeCategory> {
    let n = leq.len();
    let arrows: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| leq[a][b]).collect();
    cap("poset arrows", arrows.len(), MAX_TABLE_SENTENCES)?;
    let compose = arrows
        .iter()
        .map(|&(b, c)| {
            arrows
                .iter()
                .map(|&(a, b2)| if b2 == b { arrows.iter().position(|&x| x == (a, c)) } else { None })
                .collect()
        })
        .collect();
    let names = arrows.iter().map(|(a, b)| format!("{a}<={b}")).collect();
    ObjectFreeCategory::new(names, compose)
}

pub fn random_monoid_category(rng: &mut Rng64) -> ObjectFreeCategory {
    loop {
        let points = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Vec<usize>> = (0..k).map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect()).collect();
        if let Ok(c) = transformation_monoid(points, &gens) {
            return c;
        }
    }
}

pub fn random_poset_category(rng: &mut Rng64) -> ObjectFreeCategory {
    loop {
        let n = rng.gen_range(1..=4);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[order[i]][order[i]] = true;
            for j in i + 1..n {
                leq[order[i]][order[j]] = rng.gen_bool(0.4);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        if let Ok(c) = poset_category(&leq) {
            return c;
        }
    }
}

pub fn random_quiver(rng: &mut Rng64) -> Quiver {
    let nv = rng.gen_range(1..=MAX_QUIVER_VERTICES);
    let ne = rng.gen_range(1..=6);
    Quiver {
        vertices: crate::amst::labels("v", nv),
        edges: crate::amst::labels("e", ne),
        source: (0..ne).map(|_| rng.gen_range(0..nv)).collect(),
        target: (0..ne).map(|_| rng.gen_range(0..nv)).collect(),
    }
}

/// A handcrafted path `A → B → C → D` with a parallel arrow `k : A → D` where `h ∘ (g ∘ f)` is redirected to `k`.
pub fn broken_associativity_fixture() -> ObjectFreeCategory {
    let names = ["1A", "1B", "1C", "1D", "f", "g", "h", "gf", "hg", "hgf", "k"];
    let idx = |s: &str| names.iter().position(|&x| x == s).unwrap();
    // arrows as (name, dom, cod)
    let arrows = [
        ("1A", 0, 0),
        ("1B", 1, 1),
        ("1C", 2, 2),
        ("1D", 3, 3),
        ("f", 0, 1),
        ("g", 1, 2),
        ("h", 2, 3),
        ("gf", 0, 2),
        ("hg", 1, 3),
        ("hgf", 0, 3),
        ("k", 0, 3),
    ];
    fn composite(m: &'static str, n: &'static str) -> Option<&'static str> {
        match (m, n) {
            (m, n) if m.starts_with('1') => Some(n),
            (m, n) if n.starts_with('1') => Some(m),
            ("g", "f") => Some("gf"),
            ("h", "g") => Some("hg"),
            ("h", "gf") => Some("k"),
            ("hg", "f") => Some("hgf"),
            _ => None,
        }
    }
    let n = names.len();
    let mut compose = vec![vec![None; n]; n];
    for &(m, md, _) in &arrows {
        for &(k, _, kc) in &arrows {
            if kc == md {
                compose[idx(m)][idx(k)] = composite(m, k).map(idx);
            }
        }
    }
    ObjectFreeCategory {
        morphisms: names.iter().map(|s| s.to_string()).collect(),
        compose,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consequence::t0;
    use crate::rng::seeded;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn label(e: Error) -> String {
        match e {
            Error::Axiom { label, .. } => label,
            other => panic!("expected an axiom error, got {other:?}"),
        }
    }

    #[test]
    fn logical_structure_roundtrip() {
        let a = logical_structure_to_amst(&t0()).unwrap();
        for g in all_sets(2) {
            assert_eq!(a.sat(0, g), !t0().entails(g, 0));
        }
        assert_eq!(amst_to_logical_structure(&a).unwrap(), t0());
        let empty = LogicalStructure::from_fn(s(&["p", "q"]), |_, _| false).unwrap();
        let a = logical_structure_to_amst(&empty).unwrap();
        assert!(all_sets(2).all(|g| a.sat(0, g) && a.sat(1, g)));
        let wrong = FiniteAmst::normal(s(&["p"]), s(&["m"]), vec![SentenceSet(1)]).unwrap();
        assert!(matches!(amst_to_logical_structure(&wrong), Err(Error::Shape(_))));
    }

    #[test]
    fn information_systems() {
        let is = reflexive_information_system(s(&["a", "b"]));
        validate_information_system(&is).unwrap();
        let a = info_system_to_amst(&is).unwrap();
        assert!(a.sat(0, SentenceSet(1)));
        let mut back = amst_entailment(&a);
        back.sort();
        let mut want = is.entail.clone();
        want.sort();
        assert_eq!(back, want);
        let mut broken = is.clone();
        broken.entail.retain(|&p| p != (SentenceSet(1), 0));
        let e = validate_information_system(&broken).unwrap_err();
        assert_eq!(e, axiom("d", "({a}, a) missing from the entailment".into()));
    }

    #[test]
    fn information_system_axioms_labelled() {
        let base = reflexive_information_system(s(&["a", "b"]));
        let mut a = base.clone();
        a.con.retain(|&x| x != SentenceSet(0));
        assert_eq!(label(validate_information_system(&a).unwrap_err()), "a");
        let mut c = base.clone();
        c.con.retain(|&x| x != SentenceSet(3));
        c.entail.retain(|&(x, _)| x != SentenceSet(3));
        c.entail.push((SentenceSet(1), 1));
        assert_eq!(label(validate_information_system(&c).unwrap_err()), "c");
        let mut e = reflexive_information_system(s(&["a", "b", "c"]));
        e.entail.push((SentenceSet(1), 1));
        e.entail.push((SentenceSet(2), 2));
        assert_eq!(label(validate_information_system(&e).unwrap_err()), "e");
    }

    #[test]
    fn chu_examples() {
        let chu = ChuSpace {
            points: s(&["x"]),
            attributes: s(&["a"]),
            alphabet: s(&["0", "1"]),
            matrix: vec![vec![0]],
        };
        let a = chu_to_amst(&chu).unwrap();
        assert!(a.sat(0, SentenceSet(1)));
        assert!(!a.sat(0, SentenceSet(0)) && !a.sat(0, SentenceSet(2)) && !a.sat(0, SentenceSet(3)));
        assert!(!a.is_normal().holds());
        let empty = ChuSpace {
            points: vec![],
            attributes: vec![],
            alphabet: vec![],
            matrix: vec![],
        };
        assert_eq!(chu_to_amst(&empty), Err(Error::EmptyModels));
    }

    #[test]
    fn quiver_examples() {
        let q = Quiver {
            vertices: s(&["u", "v"]),
            edges: s(&["e"]),
            source: vec![0],
            target: vec![1],
        };
        let a = quiver_to_amst(&q).unwrap();
        assert_eq!(all_sets(4).filter(|&g| a.sat(0, g)).collect::<Vec<_>>(), vec![SentenceSet(2)]);
        assert_eq!(amst_to_quiver(&a, &q.vertices).unwrap(), q);
        let two = FiniteAmst::general_from_fn(pair_labels(&q.vertices), s(&["e"]), |_, g| g.len() == 1 && g.0 < 4).unwrap();
        assert_eq!(label(amst_to_quiver(&two, &q.vertices).unwrap_err()), "unique");
    }

    #[test]
    fn category_examples() {
        let one = ObjectFreeCategory::new(s(&["id"]), vec![vec![Some(0)]]).unwrap();
        validate_object_free_category(&one).unwrap();
        assert!(category_to_amst(&one).unwrap().sat(0, SentenceSet(1)));
        let arrow = ObjectFreeCategory::new(
            s(&["1u", "1v", "f"]),
            vec![vec![Some(0), None, None], vec![None, Some(1), Some(2)], vec![Some(2), None, None]],
        )
        .unwrap();
        validate_object_free_category(&arrow).unwrap();
        let back = amst_to_category(&category_to_amst(&arrow).unwrap()).unwrap();
        assert_eq!(back, arrow);
    }

    #[test]
    fn broken_fixtures_are_rejected() {
        let bad = broken_associativity_fixture();
        assert_eq!(
            validate_object_free_category(&bad),
            Err(axiom("b_P", "f=f, g=g, h=h".into()))
        );
        let amst = FiniteAmst::general_from_fn(bad.morphisms.clone(), crate::amst::labels("m", bad.len() * bad.len()), |mn, g| {
            bad.comp(mn / bad.len(), mn % bad.len()).is_some_and(|x| g == SentenceSet::singleton(x))
        })
        .unwrap();
        assert_eq!(label(amst_to_category(&amst).unwrap_err()), "b_M");
        let no_unit = ObjectFreeCategory::new(s(&["z"]), vec![vec![None]]).unwrap();
        assert_eq!(label(validate_object_free_category(&no_unit).unwrap_err()), "c_P");
        let mismatch = ObjectFreeCategory::new(s(&["1", "a"]), vec![vec![Some(0), Some(1)], vec![Some(1), None]]).unwrap();
        assert_eq!(label(validate_object_free_category(&mismatch).unwrap_err()), "a_P");
        let pairs = FiniteAmst::general_from_fn(s(&["x"]), s(&["(x,x)"]), |_, g| g.0 <= 1).unwrap();
        assert_eq!(label(amst_to_category(&pairs).unwrap_err()), "a_M");
        let lonely = FiniteAmst::general_from_fn(s(&["x"]), s(&["(x,x)"]), |_, _| false).unwrap();
        assert_eq!(label(amst_to_category(&lonely).unwrap_err()), "c_M");
    }

    #[test]
    fn random_categories_roundtrip() {
        let mut rng = seeded(3);
        for i in 0..20 {
            let c = if i % 2 == 0 { random_monoid_category(&mut rng) } else { random_poset_category(&mut rng) };
            validate_object_free_category(&c).unwrap();
            assert_eq!(amst_to_category(&category_to_amst(&c).unwrap()).unwrap(), c);
        }
        let q = random_quiver(&mut rng);
        assert_eq!(amst_to_quiver(&quiver_to_amst(&q).unwrap(), &q.vertices).unwrap(), q);
    }

    #[test]
    fn json_shapes() {
        let one = ObjectFreeCategory::new(s(&["1", "z"]), vec![vec![Some(0), None], vec![None, None]]).unwrap();
        assert_eq!(serde_json::to_string(&one).unwrap(), r#"{"morphisms":["1","z"],"compose":[[0,null],[null,null]]}"#);
        let q: Quiver = serde_json::from_str(r#"{"vertices":["u"],"edges":["e"],"source":[0],"target":[0]}"#).unwrap();
        assert_eq!(q.edges, s(&["e"]));
    }
}
