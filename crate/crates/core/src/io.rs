//! JSON formats for amsts and logical structures.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::amst::{FiniteAmst, SatSpec};
use crate::bits::{all_sets, SentenceSet};
use crate::consequence::LogicalStructure;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Normal,
    General,
}

/// `matrix` is `|M| × |L|` for normal amsts and `|M| × 2^|L|` (subset bitmask columns) for general ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmstJson {
    pub sentences: Vec<String>,
    pub models: Vec<String>,
    pub kind: Kind,
    pub matrix: Vec<Vec<u8>>,
}

fn bit(v: u8, row: usize) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::Shape(format!("matrix row {row} holds {v}, expected 0 or 1"))),
    }
}

impl AmstJson {
    pub fn to_amst(&self) -> Result<FiniteAmst> {
        let n = self.sentences.len();
        let width = match self.kind {
            Kind::Normal => n,
            Kind::General => 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
        };
        if self.matrix.len() != self.models.len() {
            return Err(Error::Shape(format!("{} matrix rows for {} models", self.matrix.len(), self.models.len())));
        }
        if let Some((i, r)) = self.matrix.iter().enumerate().find(|(_, r)| r.len() != width) {
            return Err(Error::Shape(format!("matrix row {i} has {} columns, expected {width}", r.len())));
        }
        match self.kind {
            Kind::Normal => {
                let mut rows = Vec::with_capacity(self.matrix.len());
                for (i, r) in self.matrix.iter().enumerate() {
                    let mut s = SentenceSet::EMPTY;
                    for (k, &v) in r.iter().enumerate() {
                        if bit(v, i)? {
                            s = s.with(k);
                        }
                    }
                    rows.push(s);
                }
                FiniteAmst::normal(self.sentences.clone(), self.models.clone(), rows)
            }
            Kind::General => {
                let mut table = Vec::with_capacity(self.matrix.len() * width);
                for (i, r) in self.matrix.iter().enumerate() {
                    for &v in r {
                        table.push(bit(v, i)?);
                    }
                }
                FiniteAmst::general(self.sentences.clone(), self.models.clone(), table)
            }
        }
    }
}

impl From<&FiniteAmst> for AmstJson {
    fn from(a: &FiniteAmst) -> Self {
        let n = a.num_sentences();
        let (kind, matrix) = match a.sat_spec() {
            SatSpec::NormalMatrix(rows) => (Kind::Normal, rows.iter().map(|r| (0..n).map(|k| r.contains(k) as u8).collect()).collect()),
            SatSpec::GeneralTable(_) => (
                Kind::General,
                (0..a.num_models()).map(|m| all_sets(n).map(|g| a.sat(m, g) as u8).collect()).collect(),
            ),
        };
        AmstJson {
            sentences: a.sentence_labels().to_vec(),
            models: a.model_labels().to_vec(),
            kind,
            matrix,
        }
    }
}

impl Serialize for FiniteAmst {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AmstJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAmst {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        AmstJson::deserialize(d)?.to_amst().map_err(serde::de::Error::custom)
    }
}

/// `turnstile[Γ][α]` with rows indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsequenceJson {
    pub sentences: Vec<String>,
    pub turnstile: Vec<Vec<u8>>,
}

impl ConsequenceJson {
    pub fn to_structure(&self) -> Result<LogicalStructure> {
        let n = self.sentences.len();
        let mut rows = Vec::with_capacity(self.turnstile.len());
        for (i, r) in self.turnstile.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Shape(format!("turnstile row {i} has {} columns, expected {n}", r.len())));
            }
            let mut s = SentenceSet::EMPTY;
            for (k, &v) in r.iter().enumerate() {
                if bit(v, i)? {
                    s = s.with(k);
                }
            }
            rows.push(s);
        }
        LogicalStructure::new(self.sentences.clone(), rows)
    }
}

impl From<&LogicalStructure> for ConsequenceJson {
    fn from(ls: &LogicalStructure) -> Self {
        let n = ls.num_sentences();
        ConsequenceJson {
            sentences: ls.sentence_labels().to_vec(),
            turnstile: ls.rows().iter().map(|r| (0..n).map(|k| r.contains(k) as u8).collect()).collect(),
        }
    }
}

impl Serialize for LogicalStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConsequenceJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogicalStructure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ConsequenceJson::deserialize(d)?.to_structure().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consequence::t0;

    #[test]
    fn amst_json_roundtrip() {
        let text = r#"{"sentences":["a","b"],"models":["m0","m1"],"kind":"normal","matrix":[[1,0],[0,1]]}"#;
        let a: FiniteAmst = serde_json::from_str(text).unwrap();
        assert_eq!(a.theory(1), SentenceSet(2));
        assert_eq!(serde_json::to_string(&a).unwrap(), text);
        let g = a.to_general();
        let back: FiniteAmst = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn bad_shapes_rejected() {
        for text in [
            r#"{"sentences":["a"],"models":["m"],"kind":"normal","matrix":[[2]]}"#,
            r#"{"sentences":["a"],"models":["m"],"kind":"general","matrix":[[1]]}"#,
            r#"{"sentences":["a"],"models":["m","n"],"kind":"normal","matrix":[[1]]}"#,
        ] {
            assert!(serde_json::from_str::<FiniteAmst>(text).is_err(), "{text}");
        }
    }

    #[test]
    fn consequence_json_roundtrip() {
        let text = serde_json::to_string(&t0()).unwrap();
        assert_eq!(text, r#"{"sentences":["p","q"],"turnstile":[[0,0],[1,0],[0,1],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<LogicalStructure>(&text).unwrap(), t0());
    }
}
