//! Brute-force reference implementations used as test oracles. Everything here works on raw
//! masks and tables, independent of the library's operators.
#![allow(dead_code)]

use amst::{FiniteAmst, SentenceSet};

/// Raw satisfaction: `table[m][g]` for every model and subset mask.
pub struct Raw {
    pub n: usize,
    pub m: usize,
    pub table: Vec<Vec<bool>>,
}

impl Raw {
    /// A normal amst given by per-model rows of singly satisfied sentences.
    pub fn normal(n: usize, rows: &[u32]) -> Raw {
        let table = rows
            .iter()
            .map(|&r| (0u32..1 << n).map(|g| g & !r == 0).collect())
            .collect();
        Raw { n, m: rows.len(), table }
    }

    /// Reads an amst through `satisfies` only.
    pub fn of(a: &FiniteAmst) -> Raw {
        let n = a.num_sentences();
        let table = (0..a.num_models())
            .map(|m| (0u32..1 << n).map(|g| a.satisfies(m, SentenceSet(g)).unwrap()).collect())
            .collect();
        Raw { n, m: a.num_models(), table }
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn all_models(&self) -> u32 {
        (1u32 << self.m) - 1
    }

    pub fn sat(&self, m: usize, g: u32) -> bool {
        self.table[m][g as usize]
    }

    pub fn modset(&self, g: u32) -> u32 {
        (0..self.m).filter(|&m| self.sat(m, g)).fold(0, |a, m| a | 1 << m)
    }

    /// Sentences every model of `x` satisfies singly.
    pub fn th(&self, x: u32) -> u32 {
        (0..self.n)
            .filter(|&k| (0..self.m).all(|m| x >> m & 1 == 0 || self.sat(m, 1 << k)))
            .fold(0, |a, k| a | 1 << k)
    }

    pub fn satisfiable(&self, g: u32) -> bool {
        self.modset(g) != 0
    }

    /// `Γ ⊢ α` iff `Mod(Γ) ⊆ Mod({α})`.
    pub fn closure(&self, g: u32) -> u32 {
        let x = self.modset(g);
        (0..self.n).filter(|&k| x & !self.modset(1 << k) == 0).fold(0, |a, k| a | 1 << k)
    }

    pub fn is_normal(&self) -> bool {
        (0..self.m).all(|m| (0..=self.full()).all(|g| self.sat(m, g) == (0..self.n).all(|k| g >> k & 1 == 0 || self.sat(m, 1 << k))))
    }
}

/// Every subset of `mask`.
pub fn subsets(mask: u32) -> Vec<u32> {
    (0..=mask).filter(|s| s & !mask == 0).collect()
}

/// Opens generated by `family` on `points` points: finite meets (with the ground), then all unions.
pub fn topology(points: usize, family: &[u32]) -> Vec<u32> {
    let ground = (1u32 << points) - 1;
    let mut meets = vec![ground];
    loop {
        let mut grew = false;
        for i in 0..meets.len() {
            for &s in family {
                let x = meets[i] & s;
                if !meets.contains(&x) {
                    meets.push(x);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut opens = vec![0u32];
    for x in 0..=ground {
        let union = meets.iter().filter(|&&b| b & !x == 0).fold(0, |a, &b| a | b);
        if union == x && !opens.contains(&x) {
            opens.push(x);
        }
    }
    opens.sort_unstable();
    opens
}

/// Ultrafilters on `n` indices, as membership predicates over masks: one per index.
pub fn principal(n: usize, i: usize) -> Vec<bool> {
    (0u32..1 << n).map(|a| a >> i & 1 == 1).collect()
}

/// `{i : seq[i] ∈ x}`.
pub fn hits(seq: &[usize], x: u32) -> u32 {
    seq.iter().enumerate().filter(|&(_, &m)| x >> m & 1 == 1).fold(0, |a, (i, _)| a | 1 << i)
}

/// Points `x` such that every open containing `x` catches a large index set.
pub fn ultralimits(points: usize, opens: &[u32], seq: &[usize], u: &[bool]) -> u32 {
    (0..points)
        .filter(|&x| opens.iter().filter(|&&o| o >> x & 1 == 1).all(|&o| u[hits(seq, o) as usize]))
        .fold(0, |a, x| a | 1 << x)
}

/// Łoś-models: `l ⊨ Σ` iff `{i : m_i ⊨ Σ}` is large, for every `Σ`.
pub fn los_models(raw: &Raw, seq: &[usize], u: &[bool]) -> u32 {
    (0..raw.m)
        .filter(|&l| {
            (0..=raw.full()).all(|g| {
                let large = u[seq.iter().enumerate().filter(|&(_, &m)| raw.sat(m, g)).fold(0, |a, (i, _)| a | 1 << i) as usize];
                raw.sat(l, g) == large
            })
        })
        .fold(0, |a, l| a | 1 << l)
}

/// Every sequence of length `len` over `0..m`.
pub fn all_sequences(m: usize, len: usize) -> Vec<Vec<usize>> {
    let total = m.pow(len as u32);
    (0..total)
        .map(|mut c| {
            (0..len)
                .map(|_| {
                    let x = c % m;
                    c /= m;
                    x
                })
                .collect()
        })
        .collect()
}

/// `n` is maximal in the up-set of `m` under theory inclusion.
pub fn maximal_in_upset(raw: &Raw, m: usize) -> u32 {
    let th = |x: usize| raw.th(1 << x);
    (0..raw.m)
        .filter(|&n| th(m) & !th(n) == 0)
        .filter(|&n| !(0..raw.m).any(|k| th(n) & !th(k) == 0 && th(n) != th(k)))
        .fold(0, |a, n| a | 1 << n)
}

/// `Γ` is satisfiable and no proper superset is.
pub fn maximal_satisfiable(raw: &Raw, g: u32) -> bool {
    raw.satisfiable(g) && (0..raw.n).all(|k| g >> k & 1 == 1 || !raw.satisfiable(g | 1 << k))
}
