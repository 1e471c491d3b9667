//! Canonical flags, seminilpotency and the stratification invariants
//! `w`, `δ`, `𝔍_A` and `ε`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{self, Matrix};
use crate::quiver::DimVector;
use crate::rep::Rep;
use crate::subspace::{GradedSubspace, Subspace};

/// Increasing chain `0 = W_0 ⊂ W_1 ⊂ … ⊂ W_r = V`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFlag<E> {
    terms: Vec<GradedSubspace<E>>,
}

impl<E: Clone + PartialEq> GradedFlag<E> {
    pub fn new(terms: Vec<GradedSubspace<E>>) -> Self {
        assert!(!terms.is_empty() && terms[0].is_zero() && terms.last().unwrap().is_full());
        GradedFlag { terms }
    }

    pub fn terms(&self) -> &[GradedSubspace<E>] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> &GradedSubspace<E> {
        &self.terms[k]
    }

    /// `r`, the number of steps.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// Graded dimensions of `W_k / W_{k-1}`, `k = 1..r`.
    pub fn steps(&self) -> Vec<DimVector> {
        self.terms
            .windows(2)
            .map(|p| DimVector(p[1].dims().0.iter().zip(&p[0].dims().0).map(|(a, b)| a - b).collect()))
            .collect()
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|t| {
                    Value::Array(
                        t.parts()
                            .iter()
                            .map(|p| {
                                Value::Array(
                                    p.basis_vectors()
                                        .iter()
                                        .map(|v| Value::Array(v.iter().map(|e| Value::String(f.fmt_elem(e))).collect()))
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Result of iterating `W^{k+1} = closure(Σ_{h∈Ω} x_h(W^k))`.
#[derive(Clone, Debug)]
pub struct CanonicalChain<E> {
    /// `W^0 = V ⊇ W^1 ⊇ …` up to the first repeated term (not repeated).
    pub descending: Vec<GradedSubspace<E>>,
    pub seminilpotent: bool,
}

impl<E: Clone + PartialEq> CanonicalChain<E> {
    /// `W_k = W^{r-k}`, when seminilpotent.
    pub fn flag(&self) -> Option<GradedFlag<E>> {
        if !self.seminilpotent {
            return None;
        }
        let mut terms = self.descending.clone();
        terms.reverse();
        Some(GradedFlag::new(terms))
    }
}

/// Smallest subspace containing `u` and stable under every `x_h`, `h ∈ H`.
pub fn stable_closure<F: Field>(x: &Rep<F>, u: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
    let f = x.field();
    let q = x.quiver();
    let mut cur = u.clone();
    loop {
        let before = cur.dims();
        for h in 0..q.doubled_count() {
            let img = cur.part(q.source(h)).image(f, x.map(h));
            let t = q.target(h);
            let grown = cur.part(t).sum(f, &img);
            cur.set_part(t, grown);
        }
        if cur.dims() == before {
            return cur;
        }
    }
}

/// Largest `H`-stable subspace contained in `u`.
pub fn stable_interior<F: Field>(x: &Rep<F>, u: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
    let f = x.field();
    let q = x.quiver();
    let mut cur = u.clone();
    loop {
        let before = cur.dims();
        for h in 0..q.doubled_count() {
            let s = q.source(h);
            let pre = Subspace::preimage(f, x.map(h), cur.part(q.target(h)));
            let shrunk = cur.part(s).intersection(f, &pre);
            cur.set_part(s, shrunk);
        }
        if cur.dims() == before {
            return cur;
        }
    }
}

/// `Σ_{h∈Ω} x_h(u)`.
pub fn omega_image<F: Field>(x: &Rep<F>, u: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
    let f = x.field();
    let q = x.quiver();
    let mut out = GradedSubspace::zero(f, x.alpha());
    for h in 0..q.arrow_count() {
        let img = u.part(q.source(h)).image(f, x.map(h));
        let t = q.target(h);
        let grown = out.part(t).sum(f, &img);
        out.set_part(t, grown);
    }
    out
}

pub fn canonical_chain<F: Field>(x: &Rep<F>) -> CanonicalChain<F::Elem> {
    let f = x.field();
    let mut descending = vec![GradedSubspace::full(f, x.alpha())];
    loop {
        let last = descending.last().unwrap();
        if last.is_zero() {
            return CanonicalChain { descending, seminilpotent: true };
        }
        let next = stable_closure(x, &omega_image(x, last));
        if &next == last {
            return CanonicalChain { descending, seminilpotent: false };
        }
        descending.push(next);
    }
}

pub fn is_seminilpotent<F: Field>(x: &Rep<F>) -> bool {
    canonical_chain(x).seminilpotent
}

pub fn canonical_flag<F: Field>(x: &Rep<F>) -> Option<GradedFlag<F::Elem>> {
    canonical_chain(x).flag()
}

/// Graded step type `w` of the canonical flag.
pub fn canonical_type<F: Field>(x: &Rep<F>) -> Option<Vec<DimVector>> {
    canonical_flag(x).map(|fl| fl.steps())
}

/// Whether `x_h(W_k) ⊆ W_{k-1}` for `h ∈ Ω` and `x_h(W_k) ⊆ W_k` for `h ∈ Ω̄`.
pub fn satisfies_flag_conditions<F: Field>(x: &Rep<F>, flag: &GradedFlag<F::Elem>) -> bool {
    let f = x.field();
    let q = x.quiver();
    (1..flag.terms().len()).all(|k| {
        (0..q.doubled_count()).all(|h| {
            let img = flag.term(k).part(q.source(h)).image(f, x.map(h));
            let target = if q.is_original(h) { flag.term(k - 1) } else { flag.term(k) };
            target.part(q.target(h)).contains(f, &img)
        })
    })
}

/// Induced representation on `upper / lower` for stable `lower ⊆ upper`.
pub fn subquotient<F: Field>(
    x: &Rep<F>,
    lower: &GradedSubspace<F::Elem>,
    upper: &GradedSubspace<F::Elem>,
) -> Result<Rep<F>> {
    let sub = x.restrict(upper)?;
    let inner = lower.inside(x.field(), upper);
    sub.quotient(&inner)
}

/// `δ_k = dim ∩_i ker(X ↦ y_i^{(k+1)} X − X y_i^{(k)})` on
/// `Hom(W_k/W_{k-1}, W_{k+1}/W_k)` for `k = 1..r-1`.
pub fn delta_invariant<F: Field>(x: &Rep<F>, flag: &GradedFlag<F::Elem>) -> Result<Vec<usize>> {
    let q = x.quiver();
    if q.vertex_count() != 1 {
        return Err(Error::Usage("δ is only defined on one-vertex quivers".into()));
    }
    let f = x.field();
    let pieces = (1..flag.terms().len())
        .map(|k| subquotient(x, flag.term(k - 1), flag.term(k)))
        .collect::<Result<Vec<_>>>()?;
    let bars: Vec<usize> = (q.arrow_count()..q.doubled_count()).collect();
    let mut out = Vec::new();
    for k in 0..pieces.len().saturating_sub(1) {
        let (lo, hi) = (&pieces[k], &pieces[k + 1]);
        let (a, b) = (lo.alpha()[0], hi.alpha()[0]);
        out.push(intertwiner_dim(f, &bars.iter().map(|&h| (hi.map(h).clone(), lo.map(h).clone())).collect::<Vec<_>>(), b, a));
    }
    Ok(out)
}

/// `dim {X ∈ Hom(k^a, k^b) : v_i X = X u_i for all i}` for pairs `(v_i, u_i)`.
pub fn intertwiner_dim<F: Field>(f: &F, pairs: &[(Matrix<F::Elem>, Matrix<F::Elem>)], b: usize, a: usize) -> usize {
    let n = a * b;
    if n == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (v, u) in pairs {
        for r in 0..b {
            for c in 0..a {
                // (vX − Xu)_{rc} as a linear form in the entries X_{st}, index s*a + t
                let mut row = vec![f.zero(); n];
                for s in 0..b {
                    row[s * a + c] = f.add(&row[s * a + c], v.get(r, s));
                }
                for t in 0..a {
                    row[r * a + t] = f.sub(&row[r * a + t], u.get(t, c));
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - matrix::rank(f, &Matrix::from_rows(n, rows))
}

/// `𝔍_A(x)`: stable closure of `⊕_{i∉A} V_i`.
pub fn ideal_subspace<F: Field>(x: &Rep<F>, a: &[usize]) -> GradedSubspace<F::Elem> {
    let u = GradedSubspace::coordinate(x.field(), x.alpha(), |i| !a.contains(&i));
    stable_closure(x, &u)
}

/// `ε_i(x)`: codimension at `i` of `𝔍_{{i}}(x)`.
pub fn eps<F: Field>(x: &Rep<F>, i: usize) -> usize {
    ideal_subspace(x, &[i]).codims()[i]
}

pub fn eps_all<F: Field>(x: &Rep<F>) -> Vec<usize> {
    (0..x.quiver().vertex_count()).map(|i| eps(x, i)).collect()
}

/// `dim Y_w = Σ_i Σ_{j<k} w_j^{(i)} w_k^{(i)}`.
pub fn flag_variety_dim(steps: &[DimVector]) -> usize {
    let n = steps.first().map_or(0, |s| s.len());
    let mut total = 0;
    for i in 0..n {
        for j in 0..steps.len() {
            for k in j + 1..steps.len() {
                total += steps[j][i] * steps[k][i];
            }
        }
    }
    total
}

/// `K_0 = 0`, `K_{j+1}` the largest stable subspace of `∩_{h∈Ω} x_h^{-1}(K_j)`,
/// up to the first repeated term.
pub fn k_chain<F: Field>(x: &Rep<F>) -> Vec<GradedSubspace<F::Elem>> {
    let f = x.field();
    let q = x.quiver();
    let mut chain = vec![GradedSubspace::zero(f, x.alpha())];
    loop {
        let last = chain.last().unwrap();
        if last.is_full() {
            return chain;
        }
        let mut pre = GradedSubspace::full(f, x.alpha());
        for h in 0..q.arrow_count() {
            let s = q.source(h);
            let p = Subspace::preimage(f, x.map(h), last.part(q.target(h)));
            let shrunk = pre.part(s).intersection(f, &p);
            pre.set_part(s, shrunk);
        }
        let next = stable_interior(x, &pre);
        if &next == last {
            return chain;
        }
        chain.push(next);
    }
}

/// Step dimensions of the K-chain, one entry per step.
pub fn k_type<F: Field>(x: &Rep<F>) -> Vec<DimVector> {
    k_chain(x)
        .windows(2)
        .map(|p| DimVector(p[1].dims().0.iter().zip(&p[0].dims().0).map(|(a, b)| a - b).collect()))
        .collect()
}

/// `w_i = dim ker x^i − dim ker x^{i−1}` for a nilpotent endomorphism.
pub fn kernel_jumps<F: Field>(f: &F, x: &Matrix<F::Elem>) -> Option<Vec<usize>> {
    let n = x.rows();
    let mut out = Vec::new();
    let mut power = Matrix::identity(f, n);
    let mut prev = 0;
    loop {
        power = matrix::mul(f, &power, x);
        let k = n - matrix::rank(f, &power);
        if k == prev {
            return if k == n { Some(out) } else { None };
        }
        out.push(k - prev);
        prev = k;
        if k == n {
            return Some(out);
        }
    }
}

/// Stratum data: canonical type, `δ` (one vertex only) and `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumInvariants {
    pub w: Vec<DimVector>,
    pub delta: Option<Vec<usize>>,
    pub eps: Vec<usize>,
}

impl StratumInvariants {
    pub fn of<F: Field>(x: &Rep<F>) -> Option<Self> {
        let flag = canonical_flag(x)?;
        let delta = if x.quiver().vertex_count() == 1 { delta_invariant(x, &flag).ok() } else { None };
        Some(StratumInvariants { w: flag.steps(), delta, eps: eps_all(x) })
    }

    pub fn to_json(&self, vertices: &[String]) -> Value {
        let w: Vec<Value> = if vertices.len() == 1 {
            self.w.iter().map(|s| json!(s[0])).collect()
        } else {
            self.w.iter().map(|s| json!(s.0)).collect()
        };
        let eps: serde_json::Map<String, Value> =
            vertices.iter().zip(&self.eps).map(|(v, e)| (v.clone(), json!(e))).collect();
        json!({ "w": w, "delta": self.delta.clone().unwrap_or_default(), "eps": eps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::quiver::Quiver;
    use crate::rep::QRep;
    use std::sync::Arc;

    fn jordan(x: Vec<Vec<i64>>, y: Vec<Vec<i64>>) -> QRep {
        let n = x.len();
        QRep::from_int(Arc::new(Quiver::jordan()), DimVector(vec![n]), &[x, y]).unwrap()
    }

    fn a2(a: i64, abar: i64) -> QRep {
        QRep::from_int(Arc::new(Quiver::linear(2)), DimVector(vec![1, 1]), &[vec![vec![a]], vec![vec![abar]]]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let f = Rationals;
        let x = jordan(vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]);
        let e1 = GradedSubspace::from_parts(vec![Subspace::span(&f, 2, vec![vec![f.one(), f.zero()]])]);
        assert_eq!(stable_closure(&x, &e1), e1);
        let zero = GradedSubspace::zero(&f, x.alpha());
        assert_eq!(stable_closure(&x, &zero), zero);
    }

    #[test]
    fn canonical_chain_examples() {
        let z = QRep::zero(Arc::new(Quiver::one_vertex(2)), DimVector(vec![3]), Rationals);
        assert_eq!(canonical_type(&z).unwrap(), vec![DimVector(vec![3])]);
        let x = jordan(vec![vec![0, 1], vec![0, 0]], vec![vec![2, 7], vec![0, 2]]);
        let fl = canonical_flag(&x).unwrap();
        assert_eq!(fl.steps(), vec![DimVector(vec![1]), DimVector(vec![1])]);
        assert!(satisfies_flag_conditions(&x, &fl));
        let id = jordan(vec![vec![1]], vec![vec![0]]);
        assert!(!is_seminilpotent(&id));
        assert!(is_seminilpotent(&a2(1, 0)));
    }

    #[test]
    fn delta_examples() {
        let x = jordan(vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]);
        let fl = canonical_flag(&x).unwrap();
        assert_eq!(delta_invariant(&x, &fl).unwrap(), vec![1]);
        let z = jordan(vec![vec![0]], vec![vec![5]]);
        assert!(delta_invariant(&z, &canonical_flag(&z).unwrap()).unwrap().is_empty());
        let a = a2(1, 0);
        assert!(matches!(delta_invariant(&a, &canonical_flag(&a).unwrap()), Err(Error::Usage(_))));
    }

    #[test]
    fn ideal_and_eps_examples() {
        let x = a2(1, 0);
        assert!(ideal_subspace(&x, &[1]).is_full());
        assert!(ideal_subspace(&x, &[]).is_full());
        assert_eq!(eps_all(&x), vec![1, 0]);
        let z = QRep::zero(Arc::new(Quiver::linear(2)), DimVector(vec![2, 3]), Rationals);
        assert_eq!(eps_all(&z), vec![2, 3]);
        assert!(ideal_subspace(&z, &[0, 1]).is_zero());
    }

    #[test]
    fn flag_variety_dims() {
        let d = |w: &[usize]| flag_variety_dim(&w.iter().map(|&k| DimVector(vec![k])).collect::<Vec<_>>());
        assert_eq!(d(&[1, 1]), 1);
        assert_eq!(d(&[3]), 0);
        assert_eq!(d(&[1, 2]), 2);
    }

    #[test]
    fn kernel_jumps_and_k_chain() {
        let f = Rationals;
        let x = jordan(vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]], vec![vec![0; 3]; 3]);
        assert_eq!(kernel_jumps(&f, x.map(0)).unwrap(), vec![2, 1]);
        assert_eq!(k_type(&x), vec![DimVector(vec![2]), DimVector(vec![1])]);
        assert!(kernel_jumps(&f, &Matrix::identity(&f, 2)).is_none());
    }
}
