//! Subspaces of coordinate spaces kept in canonical reduced echelon form, so
//! that equality of subspaces is structural equality.

use crate::field::Field;
use crate::matrix::{self, Matrix};
use crate::quiver::DimVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Matrix<E>, // dim × ambient, reduced echelon rows
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(f, 0, ambient) }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(f, ambient) }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, vectors: Vec<Vec<E>>) -> Self {
        let m = Matrix::from_rows(ambient, vectors);
        let (r, pivots) = matrix::rref(f, &m);
        Subspace { ambient, basis: r.block(0, pivots.len(), 0, ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<E>> {
        self.basis.row_vecs()
    }

    pub fn pivots<F: Field<Elem = E>>(&self, f: &F) -> Vec<usize> {
        (0..self.dim())
            .map(|r| (0..self.ambient).find(|&c| !f.is_zero(self.basis.get(r, c))).unwrap())
            .collect()
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut v = self.basis_vectors();
        v.extend(other.basis_vectors());
        Self::span(f, self.ambient, v)
    }

    pub fn with_vectors<F: Field<Elem = E>>(&self, f: &F, vectors: Vec<Vec<E>>) -> Self {
        let mut v = self.basis_vectors();
        v.extend(vectors);
        Self::span(f, self.ambient, v)
    }

    pub fn contains_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        matrix::rank(f, &Matrix::from_rows(self.ambient, rows)) == self.dim()
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.sum(f, other).dim() == self.dim()
    }

    /// Rows of a matrix `A` with `A v = 0` exactly when `v` lies in the subspace.
    pub fn annihilator<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let k = matrix::kernel(f, &self.basis);
        Matrix::from_rows(self.ambient, k)
    }

    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let a = self.annihilator(f).vstack(&other.annihilator(f));
        Self::span(f, self.ambient, matrix::kernel(f, &a))
    }

    /// `{v : m v ∈ target}` for a map `m` into the ambient space of `target`.
    pub fn preimage<F: Field<Elem = E>>(f: &F, m: &Matrix<E>, target: &Self) -> Self {
        let a = matrix::mul(f, &target.annihilator(f), m);
        Self::span(f, m.cols(), matrix::kernel(f, &a))
    }

    /// Image of this subspace under `m`.
    pub fn image<F: Field<Elem = E>>(&self, f: &F, m: &Matrix<E>) -> Self {
        let vecs = self.basis_vectors().iter().map(|b| matrix::apply(f, m, b)).collect();
        Self::span(f, m.rows(), vecs)
    }

    /// Coefficients of `v` (assumed to lie in the subspace) on the echelon basis.
    pub fn coordinates_of<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        self.pivots(f).into_iter().map(|p| v[p].clone()).collect()
    }

    /// Standard unit vectors at the non-pivot positions: a complement.
    pub fn complement_basis<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let pivots = self.pivots(f);
        (0..self.ambient)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut v = vec![f.zero(); self.ambient];
                v[c] = f.one();
                v
            })
            .collect()
    }

    /// Basis of the whole space: this subspace's echelon basis followed by
    /// the complement, as the columns of an invertible matrix.
    pub fn adapted_frame<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let mut cols = self.basis_vectors();
        cols.extend(self.complement_basis(f));
        Matrix::from_rows(self.ambient, cols).transpose()
    }

    pub fn map_field<G: Field>(&self, g: &G, conv: impl Fn(&E) -> Option<G::Elem>) -> Option<Subspace<G::Elem>> {
        let b = self.basis.map(conv)?;
        Some(Subspace::span(g, self.ambient, b.row_vecs()))
    }
}

/// One subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSubspace<E> {
    parts: Vec<Subspace<E>>,
}

impl<E: Clone + PartialEq> GradedSubspace<E> {
    pub fn from_parts(parts: Vec<Subspace<E>>) -> Self {
        GradedSubspace { parts }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F, alpha: &DimVector) -> Self {
        GradedSubspace { parts: alpha.entries().iter().map(|&n| Subspace::zero(f, n)).collect() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, alpha: &DimVector) -> Self {
        GradedSubspace { parts: alpha.entries().iter().map(|&n| Subspace::full(f, n)).collect() }
    }

    /// `⊕_{i ∈ S} V_i`.
    pub fn coordinate<F: Field<Elem = E>>(f: &F, alpha: &DimVector, keep: impl Fn(usize) -> bool) -> Self {
        GradedSubspace {
            parts: alpha
                .entries()
                .iter()
                .enumerate()
                .map(|(i, &n)| if keep(i) { Subspace::full(f, n) } else { Subspace::zero(f, n) })
                .collect(),
        }
    }

    pub fn parts(&self) -> &[Subspace<E>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Subspace<E> {
        &self.parts[i]
    }

    pub fn set_part(&mut self, i: usize, s: Subspace<E>) {
        self.parts[i] = s;
    }

    pub fn dims(&self) -> DimVector {
        DimVector(self.parts.iter().map(|p| p.dim()).collect())
    }

    pub fn ambient_dims(&self) -> DimVector {
        DimVector(self.parts.iter().map(|p| p.ambient()).collect())
    }

    pub fn codims(&self) -> DimVector {
        DimVector(self.parts.iter().map(|p| p.ambient() - p.dim()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(|p| p.is_full())
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.contains(f, b))
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        GradedSubspace { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.sum(f, b)).collect() }
    }

    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        GradedSubspace {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.intersection(f, b)).collect(),
        }
    }

    /// `self` (contained in `outer`) written in the echelon coordinates of `outer`.
    pub fn inside<F: Field<Elem = E>>(&self, f: &F, outer: &Self) -> Self {
        GradedSubspace {
            parts: self
                .parts
                .iter()
                .zip(&outer.parts)
                .map(|(s, o)| {
                    let vecs = s.basis_vectors().iter().map(|v| o.coordinates_of(f, v)).collect();
                    Subspace::span(f, o.dim(), vecs)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn v(xs: &[i64]) -> Vec<crate::field::Rat> {
        xs.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn echelon_form_is_canonical() {
        let f = Rationals;
        let a = Subspace::span(&f, 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(&f, 3, vec![v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[3, 3, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains_vec(&f, &v(&[1, 0, -1])));
        assert!(!a.contains_vec(&f, &v(&[1, 0, 0])));
    }

    #[test]
    fn intersection_and_preimage() {
        let f = Rationals;
        let a = Subspace::span(&f, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(&f, 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&f, &b), Subspace::span(&f, 3, vec![v(&[0, 1, 0])]));
        // m = projection killing e_1
        let m = Matrix::from_rows(3, vec![v(&[0, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let pre = Subspace::preimage(&f, &m, &Subspace::zero(&f, 3));
        assert_eq!(pre, Subspace::span(&f, 3, vec![v(&[1, 0, 0])]));
        let frame = a.adapted_frame(&f);
        assert!(crate::matrix::inverse(&f, &frame).is_some());
    }
}
