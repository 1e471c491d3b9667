//! Dense matrices over a [`Field`] and the exact linear algebra built on
//! reduced row echelon form.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>, // row-major
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            for j in c0..c1 {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<E>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn vstack(&self, other: &Matrix<E>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn map<G, T: Clone>(&self, g: G) -> Option<Matrix<T>>
    where
        G: Fn(&E) -> Option<T>,
    {
        let data = self.data.iter().map(g).collect::<Option<Vec<T>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch in product");
    let mut out = Matrix::zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), &f.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.shape(), b.shape());
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.shape(), b.shape());
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let data = a.data.iter().map(|x| f.mul(c, x)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn is_zero<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

pub fn trace<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows, a.cols);
    (0..a.rows).fold(f.zero(), |acc, i| f.add(&acc, a.get(i, i)))
}

/// Matrix-vector product.
pub fn apply<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}

/// Reduced row echelon form. Returns the full-size reduced matrix and the
/// pivot columns; the first `pivots.len()` rows are the nonzero ones.
pub fn rref<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).unwrap();
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, a).1.len()
}

/// Basis of `{v : a v = 0}`, one vector per free column, in column order.
pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (m, pivots) = rref(f, a);
    let n = a.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(m.get(r, free));
        }
        basis.push(v);
    }
    basis
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return Some(a.clone());
    }
    let mut aug = Matrix::zeros(f, n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &Matrix::identity(f, n));
    let (m, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.block(0, n, n, 2 * n))
}

pub fn determinant<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
            return f.zero();
        };
        if p != c {
            for j in 0..n {
                m.data.swap(p * n + j, c * n + j);
            }
            det = f.neg(&det);
        }
        let piv = m.get(c, c).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).unwrap();
        for i in c + 1..n {
            let factor = f.mul(m.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                m.set(i, j, v);
            }
        }
    }
    det
}

/// Characteristic polynomial `det(t - a)`, coefficients from degree 0 up,
/// via reduction to upper Hessenberg form (valid over any field).
pub fn charpoly<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut h = a.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&i| !f.is_zero(h.get(i, c))) else {
            continue;
        };
        if p != c + 1 {
            // similarity by the transposition (p, c+1)
            for j in 0..n {
                h.data.swap(p * n + j, (c + 1) * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + p, i * n + c + 1);
            }
        }
        let inv = f.inv(h.get(c + 1, c)).unwrap();
        for i in c + 2..n {
            let factor = f.mul(h.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            // row_i -= factor * row_{c+1}; col_{c+1} += factor * col_i
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&factor, h.get(c + 1, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, c + 1), &f.mul(&factor, h.get(r, i)));
                h.set(r, c + 1, v);
            }
        }
    }
    // p_k = charpoly of leading k x k block
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 1..=n {
        let m = k - 1;
        // (t - h[m][m]) * p_{m}
        let prev = &polys[m];
        let mut next = vec![f.zero(); k + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = f.add(&next[d + 1], c);
            next[d] = f.sub(&next[d], &f.mul(h.get(m, m), c));
        }
        let mut prod = f.one();
        for i in (0..m).rev() {
            prod = f.mul(&prod, h.get(i + 1, i));
            let coef = f.mul(&prod, h.get(i, m));
            for (d, c) in polys[i].iter().enumerate() {
                next[d] = f.sub(&next[d], &f.mul(&coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn poly_trim<F: Field>(f: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn poly_derivative<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let d = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| f.mul(&f.from_i64(k as i64), c))
        .collect();
    poly_trim(f, d)
}

fn poly_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = poly_trim(f, a.to_vec());
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = f.sub(&r[shift + k], &f.mul(&c, bc));
        }
        r = poly_trim(f, r);
    }
    r
}

/// Monic gcd; the zero polynomial is the empty vector.
pub fn poly_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = poly_trim(f, a.to_vec());
    let mut y = poly_trim(f, b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = f.inv(&lead).unwrap();
        x = x.iter().map(|c| f.mul(c, &inv)).collect();
    }
    x
}

/// `deg p - deg gcd(p, p')`. In characteristic 0 this counts distinct roots;
/// in characteristic `p` it can drop (for instance when `p' = 0`).
pub fn separable_degree<F: Field>(f: &F, p: &[F::Elem]) -> usize {
    let p = poly_trim(f, p.to_vec());
    if p.is_empty() {
        return 0;
    }
    let d = poly_derivative(f, &p);
    let g = poly_gcd(f, &p, &d);
    let gdeg = if g.is_empty() { p.len() - 1 } else { g.len() - 1 };
    (p.len() - 1) - gdeg
}
