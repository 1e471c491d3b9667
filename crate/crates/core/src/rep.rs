//! Representations of the doubled quiver: points `x ∈ Ē_α`, the moment map,
//! the symplectic form, and sub/quotient representations.

use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::field::{self, Field, PrimeField, Rationals};
use crate::matrix::{self, Matrix};
use crate::quiver::{DimVector, Quiver};
use crate::subspace::{GradedSubspace, Subspace};

/// One matrix `x_h : V_{s(h)} → V_{t(h)}` per doubled arrow. Also used as a
/// tangent vector, since `Ē_α` is a vector space.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<F: Field> {
    quiver: Arc<Quiver>,
    alpha: DimVector,
    field: F,
    maps: Vec<Matrix<F::Elem>>,
}

pub type QRep = Rep<Rationals>;
pub type FpRep = Rep<PrimeField>;

impl<F: Field> Rep<F> {
    pub fn zero(quiver: Arc<Quiver>, alpha: DimVector, field: F) -> Self {
        assert_eq!(alpha.len(), quiver.vertex_count());
        let maps = (0..quiver.doubled_count())
            .map(|h| Matrix::zeros(&field, alpha[quiver.target(h)], alpha[quiver.source(h)]))
            .collect();
        Rep { quiver, alpha, field, maps }
    }

    pub fn from_maps(quiver: Arc<Quiver>, alpha: DimVector, field: F, maps: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if alpha.len() != quiver.vertex_count() || maps.len() != quiver.doubled_count() {
            return Err(Error::Mismatch);
        }
        for (h, m) in maps.iter().enumerate() {
            if m.shape() != (alpha[quiver.target(h)], alpha[quiver.source(h)]) {
                return Err(Error::Validation(format!(
                    "matrix for `{}` has shape {:?}, expected {:?}",
                    quiver.doubled_id(h),
                    m.shape(),
                    (alpha[quiver.target(h)], alpha[quiver.source(h)])
                )));
            }
        }
        Ok(Rep { quiver, alpha, field, maps })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn map(&self, h: usize) -> &Matrix<F::Elem> {
        &self.maps[h]
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    pub fn set_map(&mut self, h: usize, m: Matrix<F::Elem>) {
        assert_eq!(m.shape(), self.maps[h].shape());
        self.maps[h] = m;
    }

    pub fn same_space(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.alpha == other.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| matrix::is_zero(&self.field, m))
    }

    /// `μ_α(x)_i = Σ_{h : s(h) = i} ε(h) x_{h̄} x_h`.
    pub fn moment_map(&self) -> Vec<Matrix<F::Elem>> {
        let f = &self.field;
        let q = &self.quiver;
        let mut out: Vec<_> = self.alpha.entries().iter().map(|&n| Matrix::zeros(f, n, n)).collect();
        for h in 0..q.doubled_count() {
            let term = matrix::mul(f, &self.maps[q.bar(h)], &self.maps[h]);
            let i = q.source(h);
            out[i] = if q.sign(h) > 0 { matrix::add(f, &out[i], &term) } else { matrix::sub(f, &out[i], &term) };
        }
        out
    }

    pub fn is_mu_zero(&self) -> bool {
        self.moment_map().iter().all(|m| matrix::is_zero(&self.field, m))
    }

    /// `dμ_x(ξ) = Σ ε(h)(ξ_{h̄} x_h + x_{h̄} ξ_h)`.
    pub fn moment_map_derivative(&self, xi: &Self) -> Vec<Matrix<F::Elem>> {
        let f = &self.field;
        let q = &self.quiver;
        let mut out: Vec<_> = self.alpha.entries().iter().map(|&n| Matrix::zeros(f, n, n)).collect();
        for h in 0..q.doubled_count() {
            let hb = q.bar(h);
            let term = matrix::add(
                f,
                &matrix::mul(f, &xi.maps[hb], &self.maps[h]),
                &matrix::mul(f, &self.maps[hb], &xi.maps[h]),
            );
            let i = q.source(h);
            out[i] = if q.sign(h) > 0 { matrix::add(f, &out[i], &term) } else { matrix::sub(f, &out[i], &term) };
        }
        out
    }

    /// `ω_α(ξ, ξ′) = Σ_{h∈H} Tr(ε(h) ξ_h ξ′_{h̄})`.
    pub fn symplectic_form(&self, other: &Self) -> Result<F::Elem> {
        if !self.same_space(other) {
            return Err(Error::Mismatch);
        }
        let f = &self.field;
        let q = &self.quiver;
        let mut acc = f.zero();
        for h in 0..q.doubled_count() {
            let t = matrix::trace(f, &matrix::mul(f, &self.maps[h], &other.maps[q.bar(h)]));
            acc = if q.sign(h) > 0 { f.add(&acc, &t) } else { f.sub(&acc, &t) };
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| matrix::add(&self.field, a, b)).collect();
        Rep { maps, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| matrix::sub(&self.field, a, b)).collect();
        Rep { maps, ..self.clone() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let maps = self.maps.iter().map(|a| matrix::scale(&self.field, c, a)).collect();
        Rep { maps, ..self.clone() }
    }

    /// Coordinates of `Ē_α`, arrow by arrow, row-major within each matrix.
    pub fn coordinate_count(&self) -> usize {
        self.maps.iter().map(|m| m.rows() * m.cols()).sum()
    }

    pub fn to_coordinates(&self) -> Vec<F::Elem> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn from_coordinates(&self, coords: &[F::Elem]) -> Self {
        let mut pos = 0;
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let n = m.rows() * m.cols();
                let out = Matrix::from_vec(m.rows(), m.cols(), coords[pos..pos + n].to_vec());
                pos += n;
                out
            })
            .collect();
        Rep { maps, ..self.clone() }
    }

    /// Unit coordinate vectors of `Ē_α` in coordinate order.
    pub fn coordinate_units(&self) -> Vec<Self> {
        let n = self.coordinate_count();
        (0..n)
            .map(|k| {
                let mut c = vec![self.field.zero(); n];
                c[k] = self.field.one();
                self.from_coordinates(&c)
            })
            .collect()
    }

    /// `(g·x)_h = g_{t(h)} x_h g_{s(h)}^{-1}`; `None` if some `g_i` is singular.
    pub fn act(&self, g: &[Matrix<F::Elem>]) -> Option<Self> {
        let f = &self.field;
        let inv: Vec<_> = g.iter().map(|m| matrix::inverse(f, m)).collect::<Option<_>>()?;
        let q = &self.quiver;
        let maps = (0..q.doubled_count())
            .map(|h| matrix::mul(f, &matrix::mul(f, &g[q.target(h)], &self.maps[h]), &inv[q.source(h)]))
            .collect();
        Some(Rep { maps, ..self.clone() })
    }

    /// First arrow (declaration order) not preserving `w`, if any.
    pub fn unstable_arrow(&self, w: &GradedSubspace<F::Elem>) -> Option<usize> {
        let f = &self.field;
        let q = &self.quiver;
        (0..q.doubled_count()).find(|&h| {
            let img = w.part(q.source(h)).image(f, &self.maps[h]);
            !w.part(q.target(h)).contains(f, &img)
        })
    }

    /// Induced representations on a stable subspace `w` and on `V / w`, in
    /// the basis that completes the echelon basis of `w` by unit vectors.
    pub fn split(&self, w: &GradedSubspace<F::Elem>) -> Result<(Self, Self)> {
        if let Some(h) = self.unstable_arrow(w) {
            return Err(Error::NotStable { arrow: self.quiver.doubled_id(h) });
        }
        let f = &self.field;
        let q = &self.quiver;
        let frames: Vec<_> = w.parts().iter().map(|p| p.adapted_frame(f)).collect();
        let inv: Vec<_> = frames.iter().map(|m| matrix::inverse(f, m).unwrap()).collect();
        let sub_dims = w.dims();
        let quot_dims = w.codims();
        let mut sub_maps = Vec::with_capacity(q.doubled_count());
        let mut quot_maps = Vec::with_capacity(q.doubled_count());
        for h in 0..q.doubled_count() {
            let (s, t) = (q.source(h), q.target(h));
            let conj = matrix::mul(f, &matrix::mul(f, &inv[t], &self.maps[h]), &frames[s]);
            let (ks, kt) = (sub_dims[s], sub_dims[t]);
            sub_maps.push(conj.block(0, kt, 0, ks));
            quot_maps.push(conj.block(kt, self.alpha[t], ks, self.alpha[s]));
        }
        let sub = Rep { quiver: self.quiver.clone(), alpha: sub_dims, field: f.clone(), maps: sub_maps };
        let quot = Rep { quiver: self.quiver.clone(), alpha: quot_dims, field: f.clone(), maps: quot_maps };
        Ok((sub, quot))
    }

    pub fn restrict(&self, w: &GradedSubspace<F::Elem>) -> Result<Self> {
        self.split(w).map(|(s, _)| s)
    }

    pub fn quotient(&self, w: &GradedSubspace<F::Elem>) -> Result<Self> {
        self.split(w).map(|(_, q)| q)
    }

    /// The block upper-triangular representation `[[y, η], [0, z]]` on
    /// `V_β ⊕ V_γ` (coordinates of `y` first at every vertex). `eta[h]` is a
    /// `β_{t(h)} × γ_{s(h)}` matrix.
    pub fn extension(y: &Self, z: &Self, eta: &[Matrix<F::Elem>]) -> Self {
        assert!(y.quiver == z.quiver);
        let f = &y.field;
        let q = &y.quiver;
        let alpha = &y.alpha + &z.alpha;
        let mut maps = Vec::with_capacity(q.doubled_count());
        for h in 0..q.doubled_count() {
            let (s, t) = (q.source(h), q.target(h));
            let mut m = Matrix::zeros(f, alpha[t], alpha[s]);
            m.set_block(0, 0, &y.maps[h]);
            m.set_block(y.alpha[t], y.alpha[s], &z.maps[h]);
            assert_eq!(eta[h].shape(), (y.alpha[t], z.alpha[s]));
            m.set_block(0, y.alpha[s], &eta[h]);
            maps.push(m);
        }
        Rep { quiver: q.clone(), alpha, field: f.clone(), maps }
    }

    /// Off-diagonal blocks `Ē(V_γ, V_β)` for an extension, all zero.
    pub fn zero_offdiagonal(y: &Self, z: &Self) -> Vec<Matrix<F::Elem>> {
        let q = &y.quiver;
        (0..q.doubled_count())
            .map(|h| Matrix::zeros(&y.field, y.alpha[q.target(h)], z.alpha[q.source(h)]))
            .collect()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::extension(self, other, &Self::zero_offdiagonal(self, other))
    }

    /// Convert into another field entrywise.
    pub fn convert<G: Field>(&self, g: &G, conv: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<Rep<G>> {
        let maps = self.maps.iter().map(|m| m.map(&conv)).collect::<Option<Vec<_>>>()?;
        Some(Rep { quiver: self.quiver.clone(), alpha: self.alpha.clone(), field: g.clone(), maps })
    }

    pub fn fmt_maps(&self) -> String {
        let q = &self.quiver;
        (0..q.doubled_count())
            .map(|h| {
                let m = &self.maps[h];
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| m.row(i).iter().map(|e| self.field.fmt_elem(e)).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("{}: [{}]", q.doubled_id(h), rows.join("; "))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl Rep<Rationals> {
    /// Entrywise reduction mod `p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpRep> {
        let fp = PrimeField::new(p);
        for m in &self.maps {
            for e in m.entries() {
                if fp.reduce(e).is_none() {
                    return Err(Error::BadPrime { p, denominator: field::rat_abs_denominator(e).to_string() });
                }
            }
        }
        Ok(self.convert(&fp, |e| fp.reduce(e)).unwrap())
    }

    /// Subspaces reduced mod `p` alongside the representation.
    pub fn reduce_subspace(w: &GradedSubspace<field::Rat>, p: u64) -> Option<GradedSubspace<u64>> {
        let fp = PrimeField::new(p);
        let parts = w.parts().iter().map(|s| s.map_field(&fp, |e| fp.reduce(e))).collect::<Option<Vec<Subspace<u64>>>>()?;
        Some(GradedSubspace::from_parts(parts))
    }

    /// JSON object mapping doubled-arrow ids to nested arrays of `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        let q = &self.quiver;
        for h in 0..q.doubled_count() {
            let m = &self.maps[h];
            let rows: Vec<Value> = (0..m.rows())
                .map(|i| Value::Array(m.row(i).iter().map(|e| Value::String(e.to_string())).collect()))
                .collect();
            obj.insert(q.doubled_id(h), Value::Array(rows));
        }
        Value::Object(obj)
    }

    pub fn from_json(quiver: Arc<Quiver>, alpha: DimVector, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("representation must be a JSON object".into()))?;
        let f = Rationals;
        let mut rep = Rep::zero(quiver.clone(), alpha, f);
        for (key, rows) in obj {
            let h = quiver
                .doubled_index(key)
                .ok_or_else(|| Error::Validation(format!("unknown doubled arrow `{key}`")))?;
            let (r, c) = rep.maps[h].shape();
            let rows = rows.as_array().ok_or_else(|| Error::Parse(format!("`{key}` must be an array of rows")))?;
            if rows.len() != r {
                return Err(Error::Validation(format!("`{key}` needs {r} rows")));
            }
            let mut m = Matrix::zeros(&f, r, c);
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| Error::Parse(format!("row {i} of `{key}`")))?;
                if row.len() != c {
                    return Err(Error::Validation(format!("`{key}` needs {c} columns")));
                }
                for (j, e) in row.iter().enumerate() {
                    let s = match e {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(Error::Parse(format!("entry ({i},{j}) of `{key}`"))),
                    };
                    let v = field::parse_rat(&s).ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))?;
                    m.set(i, j, v);
                }
            }
            rep.maps[h] = m;
        }
        Ok(rep)
    }

    /// Build from integer matrices given per doubled arrow, in arrow order.
    pub fn from_int(quiver: Arc<Quiver>, alpha: DimVector, ints: &[Vec<Vec<i64>>]) -> Result<Self> {
        let f = Rationals;
        let maps = (0..quiver.doubled_count())
            .map(|h| {
                let rows = alpha[quiver.target(h)];
                let cols = alpha[quiver.source(h)];
                let data: Vec<_> = ints[h].iter().flatten().map(|&v| f.from_i64(v)).collect();
                if data.len() != rows * cols {
                    return Err(Error::Validation(format!("matrix for `{}` has wrong size", quiver.doubled_id(h))));
                }
                Ok(Matrix::from_vec(rows, cols, data))
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::from_maps(quiver, alpha, f, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn jordan(x: &[&[i64]], y: &[&[i64]]) -> QRep {
        let q = Arc::new(Quiver::jordan());
        let n = x.len();
        QRep::from_int(
            q,
            DimVector(vec![n]),
            &[x.iter().map(|r| r.to_vec()).collect(), y.iter().map(|r| r.to_vec()).collect()],
        )
        .unwrap()
    }

    #[test]
    fn moment_map_examples() {
        let q = Arc::new(Quiver::linear(2));
        let x = QRep::from_int(q.clone(), DimVector(vec![1, 1]), &[vec![vec![1]], vec![vec![1]]]).unwrap();
        let mu = x.moment_map();
        assert_eq!(mu[0].get(0, 0), &Rationals.from_i64(1));
        assert_eq!(mu[1].get(0, 0), &Rationals.from_i64(-1));
        let z = QRep::zero(q, DimVector(vec![2, 3]), Rationals);
        assert!(z.is_mu_zero());
        // J_2 commutes with aI + bJ_2
        let x = jordan(&[&[0, 1], &[0, 0]], &[&[3, 5], &[0, 3]]);
        assert!(x.is_mu_zero());
    }

    #[test]
    fn symplectic_form_examples() {
        let xi = jordan(&[&[1]], &[&[0]]);
        let eta = jordan(&[&[0]], &[&[1]]);
        assert_eq!(xi.symplectic_form(&eta).unwrap(), Rationals.from_i64(1));
        assert_eq!(eta.symplectic_form(&xi).unwrap(), Rationals.from_i64(-1));
        assert_eq!(xi.symplectic_form(&xi).unwrap(), Rationals.from_i64(0));
    }

    #[test]
    fn restrict_and_quotient_of_jordan_block() {
        let f = Rationals;
        let x = jordan(&[&[0, 1], &[0, 0]], &[&[0, 0], &[0, 0]]);
        let w = GradedSubspace::from_parts(vec![Subspace::span(&f, 2, vec![vec![f.one(), f.zero()]])]);
        let (sub, quot) = x.split(&w).unwrap();
        assert_eq!(sub.alpha(), &DimVector(vec![1]));
        assert!(sub.is_zero() && quot.is_zero());
        let zero = GradedSubspace::zero(&f, x.alpha());
        let (s0, q0) = x.split(&zero).unwrap();
        assert_eq!(s0.alpha(), &DimVector(vec![0]));
        assert_eq!(q0, x);
        let full = GradedSubspace::full(&f, x.alpha());
        assert_eq!(x.restrict(&full).unwrap(), x);
        let bad = GradedSubspace::from_parts(vec![Subspace::span(&f, 2, vec![vec![f.zero(), f.one()]])]);
        assert!(matches!(x.split(&bad), Err(Error::NotStable { .. })));
    }

    #[test]
    fn reduction_mod_p() {
        let q = Arc::new(Quiver::jordan());
        let mut x = QRep::zero(q, DimVector(vec![1]), Rationals);
        x.set_map(0, Matrix::from_vec(1, 1, vec![field::parse_rat("1/2").unwrap()]));
        assert!(matches!(x.reduce_mod_p(2), Err(Error::BadPrime { p: 2, .. })));
        assert_eq!(x.reduce_mod_p(3).unwrap().map(0).get(0, 0), &2);
    }

    #[test]
    fn json_roundtrip() {
        let x = jordan(&[&[0, 1], &[0, 0]], &[&[1, 2], &[0, 1]]);
        let v = x.to_json();
        assert_eq!(v["x_bar"][0][1], "2");
        let back = QRep::from_json(x.quiver().clone(), x.alpha().clone(), &v).unwrap();
        assert_eq!(back, x);
    }
}
