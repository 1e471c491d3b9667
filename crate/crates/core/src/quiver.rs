//! Quivers, their doubles, and dimension vectors.
//!
//! Doubled arrows are indexed `0..2n`: index `h < n` is the declared arrow
//! `h ∈ Ω`, index `n + h` is its opposite `h̄`. Vertex and arrow order is the
//! declaration order and is used for every tie-break downstream.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Index};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A quiver as stored in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Validation(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut ids = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            if s >= vertices.len() || t >= vertices.len() {
                return Err(Error::Validation(format!("arrow `{id}` has an undeclared endpoint")));
            }
            if !ids.insert(id.clone()) {
                return Err(Error::Validation(format!("duplicate arrow id `{id}`")));
            }
            out.push(Arrow { id, src: s, tgt: t });
        }
        for a in &out {
            let bar = format!("{}_bar", a.id);
            if ids.contains(&bar) {
                return Err(Error::Validation(format!(
                    "arrow id `{bar}` collides with the opposite of `{}`",
                    a.id
                )));
            }
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let index = |name: &str, arrow: &str| {
            spec.vertices.iter().position(|v| v == name).ok_or_else(|| {
                Error::Validation(format!("arrow `{arrow}` uses undeclared vertex `{name}`"))
            })
        };
        let arrows = spec
            .arrows
            .iter()
            .map(|a| Ok((a.id.clone(), index(&a.src, &a.id)?, index(&a.tgt, &a.id)?)))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(spec.vertices.clone(), arrows)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                })
                .collect(),
        }
    }

    /// One vertex `"0"` carrying `g` loops named `x1..xg`.
    pub fn one_vertex(g: usize) -> Self {
        let arrows = (1..=g).map(|k| (format!("x{k}"), 0, 0)).collect();
        Quiver::new(vec!["0".into()], arrows).unwrap()
    }

    pub fn jordan() -> Self {
        Quiver::new(vec!["0".into()], vec![("x".into(), 0, 0)]).unwrap()
    }

    /// Linearly oriented `A_n`: `0 → 1 → … → n-1`.
    pub fn linear(n: usize) -> Self {
        let vertices = (0..n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (format!("a{i}"), i - 1, i)).collect();
        Quiver::new(vertices, arrows).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `|Ω|`.
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// `|H| = 2|Ω|`.
    pub fn doubled_count(&self) -> usize {
        2 * self.arrows.len()
    }

    pub fn is_original(&self, h: usize) -> bool {
        h < self.arrows.len()
    }

    pub fn bar(&self, h: usize) -> usize {
        let n = self.arrows.len();
        if h < n {
            h + n
        } else {
            h - n
        }
    }

    /// `ε(h)`: +1 on `Ω`, −1 on `Ω̄`.
    pub fn sign(&self, h: usize) -> i64 {
        if self.is_original(h) {
            1
        } else {
            -1
        }
    }

    pub fn source(&self, h: usize) -> usize {
        let n = self.arrows.len();
        if h < n {
            self.arrows[h].src
        } else {
            self.arrows[h - n].tgt
        }
    }

    pub fn target(&self, h: usize) -> usize {
        let n = self.arrows.len();
        if h < n {
            self.arrows[h].tgt
        } else {
            self.arrows[h - n].src
        }
    }

    pub fn doubled_id(&self, h: usize) -> String {
        let n = self.arrows.len();
        if h < n {
            self.arrows[h].id.clone()
        } else {
            format!("{}_bar", self.arrows[h - n].id)
        }
    }

    pub fn doubled_index(&self, id: &str) -> Option<usize> {
        (0..self.doubled_count()).find(|&h| self.doubled_id(h) == id)
    }

    pub fn is_loop(&self, h: usize) -> bool {
        self.source(h) == self.target(h)
    }

    /// Declared loops at `i` (the `Ω` part of `H^loop`).
    pub fn loops_at(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&h| self.arrows[h].src == i && self.arrows[h].tgt == i).collect()
    }

    pub fn loop_count(&self, i: usize) -> usize {
        self.loops_at(i).len()
    }

    /// `I^loop`.
    pub fn loop_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&i| self.loop_count(i) > 0).collect()
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector(vec![0; self.vertex_count()])
    }

    pub fn unit(&self, j: usize) -> DimVector {
        let mut v = vec![0; self.vertex_count()];
        v[j] = 1;
        DimVector(v)
    }

    fn check(&self, a: &DimVector) -> Result<()> {
        if a.len() != self.vertex_count() {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    /// `(α, β) = Σ_{h∈Ω} α_{s(h)} β_{t(h)}`.
    pub fn form_round(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.arrows.iter().map(|h| (a[h.src] * b[h.tgt]) as i64).sum())
    }

    /// `⟨α, β⟩ = Σ_i α_i β_i`.
    pub fn form_angle(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.0.iter().zip(&b.0).map(|(x, y)| (x * y) as i64).sum())
    }

    /// Parse `"1,2"` (declaration order) into a dimension vector.
    pub fn parse_alpha(&self, s: &str) -> Result<DimVector> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.len() != self.vertex_count() {
            return Err(Error::Parse(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                parts.len(),
                self.vertex_count()
            )));
        }
        Ok(DimVector(parts))
    }
}

/// Parse and validate a quiver JSON document.
pub fn load_quiver(text: &str) -> Result<Quiver> {
    let spec: QuiverSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Quiver::from_spec(&spec)
}

/// Per-vertex nonnegative dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// `Some(i)` when the vector is `l·e_i` with `l ≥ 1`.
    pub fn single_support(&self) -> Option<usize> {
        match self.support().as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn scaled(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_loops_double_to_four_arrows() {
        let q = load_quiver(r#"{"vertices":["0"],"arrows":[{"id":"a","src":"0","tgt":"0"},{"id":"b","src":"0","tgt":"0"}]}"#)
            .unwrap();
        assert_eq!(q.doubled_count(), 4);
        assert_eq!(q.loop_vertices(), vec![0]);
        for h in 0..4 {
            assert_eq!(q.bar(q.bar(h)), h);
            assert_eq!(q.sign(q.bar(h)), -q.sign(h));
            assert_eq!(q.source(q.bar(h)), q.target(h));
        }
    }

    #[test]
    fn opposite_arrow_swaps_endpoints() {
        let q = load_quiver(r#"{"vertices":["0","1"],"arrows":[{"id":"a","src":"0","tgt":"1"}]}"#).unwrap();
        let abar = q.doubled_index("a_bar").unwrap();
        assert_eq!((q.source(abar), q.target(abar)), (1, 0));
        assert_eq!(q.sign(abar), -1);
        assert!(q.loop_vertices().is_empty());
    }

    #[test]
    fn undeclared_endpoint_and_duplicates_are_rejected() {
        let bad = r#"{"vertices":["0","1"],"arrows":[{"id":"a","src":"0","tgt":"2"}]}"#;
        assert!(matches!(load_quiver(bad), Err(Error::Validation(_))));
        let dup = r#"{"vertices":["0","0"],"arrows":[]}"#;
        assert!(matches!(load_quiver(dup), Err(Error::Validation(_))));
        let dup_arrow = r#"{"vertices":["0"],"arrows":[{"id":"a","src":"0","tgt":"0"},{"id":"a","src":"0","tgt":"0"}]}"#;
        assert!(matches!(load_quiver(dup_arrow), Err(Error::Validation(_))));
        assert!(matches!(load_quiver("{\"vertices\":"), Err(Error::Parse(_))));
    }

    #[test]
    fn forms() {
        let q = Quiver::one_vertex(2);
        let a = DimVector(vec![3]);
        assert_eq!(q.form_round(&a, &a).unwrap(), 18);
        assert_eq!(q.form_angle(&a, &a).unwrap(), 9);
        let a2 = Quiver::linear(2);
        let one = DimVector(vec![1, 1]);
        assert_eq!(a2.form_round(&one, &one).unwrap(), 1);
        assert_eq!(a2.form_round(&a2.zero_dim(), &one).unwrap(), 0);
        assert_eq!(a2.form_angle(&DimVector(vec![1, 2]), &DimVector(vec![1, 2])).unwrap(), 5);
        assert_eq!(a2.form_angle(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(), 0);
        assert!(matches!(a2.form_round(&a, &one), Err(Error::Mismatch)));
    }

    #[test]
    fn round_form_is_not_symmetric() {
        let q = Quiver::linear(2);
        let a = DimVector(vec![1, 0]);
        let b = DimVector(vec![0, 1]);
        assert_eq!(q.form_round(&a, &b).unwrap(), 1);
        assert_eq!(q.form_round(&b, &a).unwrap(), 0);
    }
}
