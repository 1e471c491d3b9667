//! Formal linear combinations of words in the generators `1_{i,l}`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{self, Field, Rat, Rationals};
use crate::quiver::{DimVector, Quiver};

/// `1_{i,l}`: the subquotient sits at vertex `i` with dimension `l` and the
/// `Ω`-loops at `i` vanish on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub vertex: usize,
    pub l: usize,
}

/// Generators left to right: `word[0]` acts on the top quotient, the last
/// entry on the innermost subspace `W_1`.
pub type Word = Vec<Atom>;

pub fn word_degree(n_vertices: usize, word: &[Atom]) -> DimVector {
    let mut d = vec![0; n_vertices];
    for a in word {
        d[a.vertex] += a.l;
    }
    DimVector(d)
}

/// Step dimensions of the flags a word constrains, innermost first.
pub fn word_steps(n_vertices: usize, word: &[Atom]) -> Vec<DimVector> {
    word.iter()
        .rev()
        .map(|a| {
            let mut d = vec![0; n_vertices];
            d[a.vertex] = a.l;
            DimVector(d)
        })
        .collect()
}

/// `1̃_w = 1_{w_r} ∗ … ∗ 1_{w_1}` at vertex `i`.
pub fn tilde_word(i: usize, w: &[usize]) -> Word {
    w.iter().rev().map(|&l| Atom { vertex: i, l }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionExpr {
    degree: DimVector,
    terms: BTreeMap<Word, Rat>,
}

impl FunctionExpr {
    pub fn zero(degree: DimVector) -> Self {
        FunctionExpr { degree, terms: BTreeMap::new() }
    }

    pub fn word(n_vertices: usize, word: Word) -> Self {
        let degree = word_degree(n_vertices, &word);
        let mut terms = BTreeMap::new();
        terms.insert(word, Rationals.one());
        FunctionExpr { degree, terms }
    }

    pub fn degree(&self) -> &DimVector {
        &self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn words(&self) -> Vec<Word> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, c: &Rat, other: &FunctionExpr) {
        assert_eq!(self.degree, other.degree, "adding functions of different degrees");
        let f = Rationals;
        for (w, v) in &other.terms {
            let e = self.terms.entry(w.clone()).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(c, v));
        }
        self.terms.retain(|_, v| !f.is_zero(v));
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        let mut out = FunctionExpr::zero(self.degree.clone());
        out.add_scaled(c, self);
        out
    }

    /// `self ∗ other`: words of `self` on top, `other` on the inner part.
    pub fn convolve(&self, other: &FunctionExpr) -> Self {
        let f = Rationals;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().copied());
                let e = terms.entry(w).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(ca, cb));
            }
        }
        terms.retain(|_, v| !f.is_zero(v));
        FunctionExpr { degree: &self.degree + &other.degree, terms }
    }

    /// Move every atom at vertex `from` to vertex `to` of a quiver with
    /// `n_vertices` vertices.
    pub fn relocate(&self, from: usize, to: usize, n_vertices: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let w2: Word = w.iter().map(|a| Atom { vertex: if a.vertex == from { to } else { a.vertex }, l: a.l }).collect();
                (w2, c.clone())
            })
            .collect::<BTreeMap<_, _>>();
        let degree = match terms.keys().next() {
            Some(w) => word_degree(n_vertices, w),
            None => {
                let mut d = vec![0; n_vertices];
                d[to] = self.degree.total();
                DimVector(d)
            }
        };
        FunctionExpr { degree, terms }
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({
                        "coeff": c.to_string(),
                        "word": w.iter().map(|a| json!({ "vertex": q.vertex_id(a.vertex), "l": a.l })).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expression must be an array of terms".into()))?;
        let n = q.vertex_count();
        let mut out: Option<FunctionExpr> = None;
        for t in arr {
            let c = t["coeff"]
                .as_str()
                .and_then(field::parse_rat)
                .ok_or_else(|| Error::Parse("term needs a rational `coeff`".into()))?;
            let word = parse_word(q, &t["word"])?;
            let term = FunctionExpr::word(n, word).scaled(&c);
            match &mut out {
                None => out = Some(term),
                Some(acc) => {
                    if acc.degree != term.degree {
                        return Err(Error::Validation("terms of different degrees".into()));
                    }
                    acc.add_scaled(&Rationals.one(), &term);
                }
            }
        }
        out.ok_or_else(|| Error::Parse("empty expression".into()))
    }
}

/// Parse `[{"vertex":"0","l":2}, …]` or the shorthand `"0:2,0:1"`.
pub fn parse_word(q: &Quiver, v: &Value) -> Result<Word> {
    if let Some(s) = v.as_str() {
        return parse_word_text(q, s);
    }
    let arr = v.as_array().ok_or_else(|| Error::Parse("word must be an array".into()))?;
    arr.iter()
        .map(|a| {
            let id = a["vertex"].as_str().ok_or_else(|| Error::Parse("atom needs `vertex`".into()))?;
            let vertex = q.vertex_index(id).ok_or_else(|| Error::Validation(format!("unknown vertex `{id}`")))?;
            let l = a["l"].as_u64().filter(|&l| l > 0).ok_or_else(|| Error::Parse("atom needs positive `l`".into()))? as usize;
            Ok(Atom { vertex, l })
        })
        .collect()
}

/// `"0:2,1:1"` (vertex:l, top first); on a one-vertex quiver `"2,1"` also works.
pub fn parse_word_text(q: &Quiver, s: &str) -> Result<Word> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let (vid, l) = match part.split_once(':') {
                Some((v, l)) => (v.to_string(), l),
                None if q.vertex_count() == 1 => (q.vertex_id(0).to_string(), part),
                None => return Err(Error::Parse(format!("atom `{part}` needs the form vertex:l"))),
            };
            let vertex = q.vertex_index(&vid).ok_or_else(|| Error::Validation(format!("unknown vertex `{vid}`")))?;
            let l = l.parse::<usize>().ok().filter(|&l| l > 0).ok_or_else(|| Error::Parse(format!("bad size in `{part}`")))?;
            Ok(Atom { vertex, l })
        })
        .collect()
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|a| format!("1[{},{}]", a.vertex, a.l)).collect();
                format!("{c}·{}", word.join("∗"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Partial sums of `w` padded to length `n` with the total.
pub fn partial_sums(w: &[usize], n: usize) -> Vec<usize> {
    let total: usize = w.iter().sum();
    let mut acc = 0;
    (0..n.max(w.len()))
        .map(|k| {
            if k < w.len() {
                acc += w[k];
                acc
            } else {
                total
            }
        })
        .collect()
}

/// `w ⪯ w′` iff every partial sum of `w` is at most that of `w′`.
pub fn dominated(w: &[usize], w2: &[usize]) -> bool {
    let n = w.len().max(w2.len());
    let a = partial_sums(w, n);
    let b = partial_sums(w2, n);
    a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// Sorting key of a linear extension of `⪯` (larger key = higher).
pub fn dominance_key(w: &[usize], n: usize) -> usize {
    partial_sums(w, n).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_basics() {
        assert!(dominated(&[1, 1], &[2]));
        assert!(!dominated(&[2], &[1, 1]));
        assert!(dominated(&[1, 2], &[2, 1]));
        assert!(!dominated(&[1, 2], &[1, 1, 1]));
        assert!(dominated(&[1, 1, 1], &[1, 2]));
    }

    #[test]
    fn convolution_concatenates() {
        let a = FunctionExpr::word(1, vec![Atom { vertex: 0, l: 1 }]);
        let b = FunctionExpr::word(1, vec![Atom { vertex: 0, l: 2 }]);
        let ab = a.convolve(&b);
        assert_eq!(ab.words(), vec![vec![Atom { vertex: 0, l: 1 }, Atom { vertex: 0, l: 2 }]]);
        assert_eq!(ab.degree(), &DimVector(vec![3]));
        assert_eq!(tilde_word(0, &[1, 2]), vec![Atom { vertex: 0, l: 2 }, Atom { vertex: 0, l: 1 }]);
    }

    #[test]
    fn cancellation_and_json() {
        let q = Quiver::jordan();
        let mut e = FunctionExpr::word(1, tilde_word(0, &[1, 1]));
        e.add_scaled(&Rationals.from_i64(-2), &FunctionExpr::word(1, tilde_word(0, &[2])));
        let v = e.to_json(&q);
        assert_eq!(FunctionExpr::from_json(&q, &v).unwrap(), e);
        let mut z = e.clone();
        z.add_scaled(&Rationals.from_i64(-1), &e);
        assert!(z.is_empty());
    }
}
