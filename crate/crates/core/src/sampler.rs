//! Seeded constructions of pseudo-generic points on each irreducible
//! component. Every returned point has passed an exact acceptance check.

use std::sync::Arc;

use num::{BigInt, Integer, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::components::{ComponentLabel, LabelKind};
use crate::error::{Error, Result};
use crate::field::{Field, Rat, Rationals};
use crate::flags::{self, StratumInvariants};
use crate::matrix::{self, Matrix};
use crate::quiver::{DimVector, Quiver};
use crate::rep::QRep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Random integers are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub retries: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: 0, bound: 10, retries: 64 }
    }
}

impl SamplerConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        SamplerConfig { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bound < 1 || self.retries < 1 {
            return Err(Error::Usage("coefficient bound and retries must be at least 1".into()));
        }
        Ok(())
    }
}

/// Exact data about one block extension `[[y, η], [0, z]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionInfo {
    pub vertex: usize,
    pub l: usize,
    /// `dim Ē(𝔛, 𝔍)` restricted to arrows leaving the vertex.
    pub domain: usize,
    /// `dim Hom(𝔛_i, 𝔍_i)`.
    pub target: usize,
    pub rank: usize,
    pub kernel: usize,
    pub attempts: usize,
}

/// Membership certificate of a sampled point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mu_zero: bool,
    pub seminilpotent: bool,
    pub invariants: Option<StratumInvariants>,
    pub seed: u64,
}

impl Certificate {
    pub fn of(x: &QRep, seed: u64) -> Self {
        Certificate {
            mu_zero: x.is_mu_zero(),
            seminilpotent: flags::is_seminilpotent(x),
            invariants: StratumInvariants::of(x),
            seed,
        }
    }

    pub fn to_json(&self, vertices: &[String]) -> Value {
        let inv = self.invariants.as_ref().map(|s| s.to_json(vertices));
        let get = |k: &str| inv.as_ref().map_or(Value::Null, |v| v[k].clone());
        json!({
            "mu_zero": self.mu_zero,
            "seminilpotent": self.seminilpotent,
            "w": get("w"),
            "delta": get("delta"),
            "eps": get("eps"),
            "seed": self.seed,
        })
    }
}

/// Random source with the coefficient bound attached.
pub struct Sampler {
    cfg: SamplerConfig,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(cfg: &SamplerConfig) -> Self {
        Sampler { cfg: cfg.clone(), rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.cfg
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.cfg.bound..=self.cfg.bound)
    }

    fn rat(&mut self) -> Rat {
        Rationals.from_i64(self.int())
    }

    pub fn random_matrix(&mut self, rows: usize, cols: usize) -> Matrix<Rat> {
        let data = (0..rows * cols).map(|_| self.rat()).collect();
        Matrix::from_vec(rows, cols, data)
    }

    /// `n` distinct integers, from `[-B, B]` when it is wide enough.
    fn distinct_ints(&mut self, n: usize) -> Vec<i64> {
        let b = self.cfg.bound.max(n as i64);
        let mut out: Vec<i64> = Vec::with_capacity(n);
        while out.len() < n {
            let v = self.rng.gen_range(-b..=b);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Random integer combination of `basis`, each vector first scaled to
    /// integer entries.
    fn integer_combination(&mut self, basis: &[Vec<Rat>], len: usize) -> Vec<Rat> {
        let mut acc = vec![Rat::from_integer(BigInt::from(0)); len];
        for v in basis {
            let d = v.iter().fold(BigInt::one(), |l, e| l.lcm(e.denom()));
            let c = self.int();
            for (a, e) in acc.iter_mut().zip(v) {
                *a += e * Rat::from_integer(&d * BigInt::from(c));
            }
        }
        acc
    }

    /// Conjugate by a random invertible graded element.
    pub fn random_conjugate(&mut self, x: &QRep) -> QRep {
        let f = Rationals;
        loop {
            let g: Vec<_> = x.alpha().entries().iter().map(|&n| self.random_matrix(n, n)).collect();
            if g.iter().all(|m| !f.is_zero(&matrix::determinant(&f, m))) {
                return x.act(&g).unwrap();
            }
        }
    }

    // ---- one-vertex samplers ----

    /// Jordan quiver point of kernel-jump type `w`: `x` nilpotent in Jordan
    /// form with `dim ker x^i = w_1 + … + w_i`, `y` in its centralizer.
    pub fn jordan(&mut self, quiver: &Arc<Quiver>, w: &[usize]) -> Result<QRep> {
        check_one_vertex(quiver, 1)?;
        if w.windows(2).any(|p| p[0] < p[1]) || w.contains(&0) {
            return Err(Error::Validation(format!("Jordan label {w:?} must be a partition")));
        }
        let f = Rationals;
        let n: usize = w.iter().sum();
        let blocks = conjugate_partition(w);
        let x = jordan_matrix(&f, &blocks);
        let basis = centralizer_basis(&f, &blocks);
        let consts = self.distinct_ints(blocks.len());
        let mut y = Matrix::zeros(&f, n, n);
        for t in &basis {
            // split eigenvalues: distinct constants on each block, block
            // upper triangular among equal-size blocks, everything else random
            let c = if t.shift == 0 && t.target == t.source {
                consts[t.target]
            } else if t.shift == 0 && blocks[t.target] == blocks[t.source] && t.target > t.source {
                0
            } else {
                self.int()
            };
            if c != 0 {
                y = matrix::add(&f, &y, &matrix::scale(&f, &f.from_i64(c), &t.matrix));
            }
        }
        QRep::from_maps(quiver.clone(), DimVector(vec![n]), f, vec![x, y])
    }

    /// Point of `Λ(w)_0` on one vertex with `g ≥ 2` loops, `w` the canonical
    /// step type.
    pub fn multiloop(&mut self, quiver: &Arc<Quiver>, w: &[usize]) -> Result<QRep> {
        let g = quiver.arrow_count();
        check_one_vertex(quiver, g)?;
        if g < 2 {
            return Err(Error::Precondition("multiloop sampling needs at least two loops".into()));
        }
        if w.is_empty() || w.contains(&0) {
            return Err(Error::Validation(format!("composition {w:?} must have positive parts")));
        }
        match self.multiloop_random(quiver, w) {
            Ok(x) => Ok(x),
            Err(_) => self.multiloop_witness(quiver, w),
        }
    }

    fn multiloop_base(&mut self, quiver: &Arc<Quiver>, n: usize) -> QRep {
        let f = Rationals;
        let g = quiver.arrow_count();
        let mut maps: Vec<Matrix<Rat>> = (0..g).map(|_| Matrix::zeros(&f, n, n)).collect();
        maps.extend((0..g).map(|_| self.random_matrix(n, n)));
        QRep::from_maps(quiver.clone(), DimVector(vec![n]), f, maps).unwrap()
    }

    fn multiloop_random(&mut self, quiver: &Arc<Quiver>, w: &[usize]) -> Result<QRep> {
        let n: usize = w.iter().sum();
        if w.len() == 1 {
            return Ok(self.multiloop_base(quiver, n));
        }
        let l = *w.last().unwrap();
        for _ in 0..self.cfg.retries {
            let lower = self.multiloop_random(quiver, &w[..w.len() - 1])?;
            let top = self.multiloop_base(quiver, l);
            let (x, _) = self.try_extension(&lower, &top, 0);
            if multiloop_accepts(&x, w) {
                return Ok(x);
            }
        }
        Err(Error::SamplingFailed { what: format!("composition {w:?} with {} loops", quiver.arrow_count()), seed: self.cfg.seed })
    }

    /// Explicit point: `x_1` lowering the flag with nonzero consecutive
    /// blocks, `y_1` preserving it with disjoint consecutive spectra,
    /// `x_2 = −x_1`, `y_2 = y_1`, all other loops zero.
    fn multiloop_witness(&mut self, quiver: &Arc<Quiver>, w: &[usize]) -> Result<QRep> {
        let f = Rationals;
        let g = quiver.arrow_count();
        let n: usize = w.iter().sum();
        let offsets: Vec<usize> = w.iter().scan(0, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();
        for _ in 0..self.cfg.retries {
            let mut x1 = Matrix::zeros(&f, n, n);
            let mut y1 = Matrix::zeros(&f, n, n);
            for k in 0..w.len() {
                if k + 1 < w.len() {
                    x1.set_block(offsets[k], offsets[k + 1], &self.random_matrix(w[k], w[k + 1]));
                }
                let eig = self.distinct_ints(w[k]);
                let shift = if k % 2 == 0 { 0 } else { 4 * self.cfg.bound.max(n as i64) + 1 };
                for a in 0..w[k] {
                    for b in 0..w[k] {
                        let v = if a == b { f.from_i64(eig[a] + shift) } else if a < b { self.rat() } else { f.zero() };
                        y1.set(offsets[k] + a, offsets[k] + b, v);
                    }
                }
                for j in k + 1..w.len() {
                    y1.set_block(offsets[k], offsets[j], &self.random_matrix(w[k], w[j]));
                }
            }
            let zero = Matrix::zeros(&f, n, n);
            let mut maps = vec![zero.clone(); 2 * g];
            maps[0] = x1.clone();
            maps[1] = matrix::scale(&f, &f.from_i64(-1), &x1);
            maps[g] = y1.clone();
            maps[g + 1] = y1;
            let x = QRep::from_maps(quiver.clone(), DimVector(vec![n]), f, maps)?;
            let x = self.random_conjugate(&x);
            if multiloop_accepts(&x, w) {
                return Ok(x);
            }
        }
        Err(Error::SamplingFailed { what: format!("composition {w:?} with {g} loops"), seed: self.cfg.seed })
    }

    /// Inputs of the fiber count for composition `w` with last part `l`: a
    /// point of `Λ(w⁻)_0` and a point of `(End k^l)^g` with `x = 0`.
    pub fn fiber_pair(&mut self, quiver: &Arc<Quiver>, w: &[usize]) -> Result<(QRep, QRep)> {
        let g = quiver.arrow_count();
        check_one_vertex(quiver, g)?;
        let (&l, lower) = w.split_last().ok_or_else(|| Error::Validation("empty composition".into()))?;
        let y = if lower.is_empty() {
            QRep::zero(quiver.clone(), DimVector(vec![0]), Rationals)
        } else {
            self.multiloop(quiver, lower)?
        };
        Ok((y, self.multiloop_base(quiver, l)))
    }

    /// Point of the component of `Λ(l·e_i)` given by a one-vertex label,
    /// on the full quiver.
    pub fn one_vertex(&mut self, quiver: &Arc<Quiver>, i: usize, label: &ComponentLabel) -> Result<QRep> {
        let l = label.alpha[i];
        let g = quiver.loop_count(i);
        let local_q = Arc::new(Quiver::one_vertex(g));
        let local = match &label.kind {
            LabelKind::Point => QRep::zero(local_q, DimVector(vec![l]), Rationals),
            LabelKind::Jordan(w) => self.jordan(&local_q, w)?,
            LabelKind::Multiloop(w) => self.multiloop(&local_q, w)?,
            _ => return Err(Error::Precondition(format!("{} is not a one-vertex label", label.short()))),
        };
        Ok(embed_at_vertex(quiver, i, &local))
    }

    // ---- extensions ----

    /// Extension of `z` (on `l·e_i`) by `y` along a random kernel element of `φ`.
    fn try_extension(&mut self, y: &QRep, z: &QRep, i: usize) -> (QRep, ExtensionInfo) {
        let f = Rationals;
        let (phi, units) = phi_matrix(y, z, i);
        let ker = matrix::kernel(&f, &phi);
        let rank = phi.cols() - ker.len();
        let coords = self.integer_combination(&ker, phi.cols());
        let eta = eta_from_coordinates(y, z, &units, &coords);
        let x = QRep::extension(y, z, &eta);
        let info = ExtensionInfo {
            vertex: i,
            l: z.alpha()[i],
            domain: phi.cols(),
            target: phi.rows(),
            rank,
            kernel: ker.len(),
            attempts: 1,
        };
        (x, info)
    }

    /// Block extension with `x|_𝔍 = y`, `x|_{V/𝔍} = z`, checked to satisfy
    /// `μ = 0`, seminilpotency and `ε_i = l`.
    pub fn extend(&mut self, y: &QRep, z: &QRep, i: usize) -> Result<(QRep, ExtensionInfo)> {
        if flags::eps(y, i) != 0 {
            return Err(Error::Precondition(format!("ε_{} of the lower point is not 0", y.quiver().vertex_id(i))));
        }
        let l = z.alpha()[i];
        if z.alpha().single_support().is_some_and(|j| j != i) || z.alpha().total() != l {
            return Err(Error::Precondition("upper point must be concentrated at the peeled vertex".into()));
        }
        for attempt in 1..=self.cfg.retries {
            let (x, mut info) = self.try_extension(y, z, i);
            if x.is_mu_zero() && flags::is_seminilpotent(&x) && flags::eps(&x, i) == l {
                info.attempts = attempt;
                return Ok((x, info));
            }
        }
        Err(Error::SamplingFailed { what: format!("extension at vertex {} with l = {l}", y.quiver().vertex_id(i)), seed: self.cfg.seed })
    }

    pub fn component(&mut self, quiver: &Arc<Quiver>, label: &ComponentLabel) -> Result<QRep> {
        match &label.kind {
            LabelKind::Empty => Ok(QRep::zero(quiver.clone(), label.alpha.clone(), Rationals)),
            LabelKind::Point | LabelKind::Jordan(_) | LabelKind::Multiloop(_) => {
                let i = label.alpha.single_support().ok_or_else(|| Error::Validation("one-vertex label off a single vertex".into()))?;
                self.one_vertex(quiver, i, label)
            }
            LabelKind::Peel { vertex, inner, rest, .. } => {
                // the lower point must be generic enough to have ε = 0 at the vertex
                for _ in 0..self.cfg.retries {
                    let y = self.component(quiver, rest)?;
                    if flags::eps(&y, *vertex) == 0 {
                        let z = self.one_vertex(quiver, *vertex, inner)?;
                        return Ok(self.extend(&y, &z, *vertex)?.0);
                    }
                }
                Err(Error::SamplingFailed { what: format!("lower point of {} with ε = 0", label.short()), seed: self.cfg.seed })
            }
        }
    }
}

fn check_one_vertex(q: &Quiver, loops: usize) -> Result<()> {
    if q.vertex_count() != 1 || q.arrow_count() != loops {
        return Err(Error::Precondition(format!("expected one vertex with {loops} loops")));
    }
    Ok(())
}

fn multiloop_accepts(x: &QRep, w: &[usize]) -> bool {
    if !x.is_mu_zero() {
        return false;
    }
    let Some(flag) = flags::canonical_flag(x) else { return false };
    let steps: Vec<usize> = flag.steps().iter().map(|s| s[0]).collect();
    steps == w && flags::delta_invariant(x, &flag).is_ok_and(|d| d.iter().all(|&v| v == 0))
}

/// `λ′_j = #{i : λ_i ≥ j}`.
pub fn conjugate_partition(w: &[usize]) -> Vec<usize> {
    let max = w.iter().copied().max().unwrap_or(0);
    (1..=max).map(|j| w.iter().filter(|&&p| p >= j).count()).collect()
}

/// Nilpotent Jordan matrix with blocks of the given sizes, `e_{j+1} ↦ e_j`.
pub fn jordan_matrix<F: Field>(f: &F, blocks: &[usize]) -> Matrix<F::Elem> {
    let n: usize = blocks.iter().sum();
    let mut m = Matrix::zeros(f, n, n);
    let mut off = 0;
    for &b in blocks {
        for j in 0..b.saturating_sub(1) {
            m.set(off + j, off + j + 1, f.one());
        }
        off += b;
    }
    m
}

/// Element `f_j ↦ e_{j-shift}` from block `source` to block `target` of
/// the centralizer of a Jordan matrix.
#[derive(Clone, Debug)]
pub struct CentralizerElement<E> {
    pub target: usize,
    pub source: usize,
    pub shift: usize,
    pub matrix: Matrix<E>,
}

/// Standard basis of `{y : [x, y] = 0}` for `x = jordan_matrix(blocks)`.
pub fn centralizer_basis<F: Field>(f: &F, blocks: &[usize]) -> Vec<CentralizerElement<F::Elem>> {
    let n: usize = blocks.iter().sum();
    let offsets: Vec<usize> = blocks.iter().scan(0, |a, &b| {
        let o = *a;
        *a += b;
        Some(o)
    })
    .collect();
    let mut out = Vec::new();
    for (t, &nt) in blocks.iter().enumerate() {
        for (s, &ns) in blocks.iter().enumerate() {
            for shift in ns.saturating_sub(nt)..ns {
                let mut m = Matrix::zeros(f, n, n);
                for j in shift..ns {
                    m.set(offsets[t] + j - shift, offsets[s] + j, f.one());
                }
                out.push(CentralizerElement { target: t, source: s, shift, matrix: m });
            }
        }
    }
    out
}

/// Put a one-vertex representation at vertex `i` of `quiver`, matching the
/// loops at `i` in declaration order.
pub fn embed_at_vertex(quiver: &Arc<Quiver>, i: usize, local: &QRep) -> QRep {
    let mut alpha = vec![0; quiver.vertex_count()];
    alpha[i] = local.alpha()[0];
    let mut x = QRep::zero(quiver.clone(), DimVector(alpha), Rationals);
    let g = local.quiver().arrow_count();
    for (k, &h) in quiver.loops_at(i).iter().enumerate() {
        x.set_map(h, local.map(k).clone());
        x.set_map(quiver.bar(h), local.map(g + k).clone());
    }
    x
}

/// Inverse of [`embed_at_vertex`] for a representation concentrated at `i`.
pub fn local_at_vertex<F: Field>(x: &crate::rep::Rep<F>, i: usize) -> crate::rep::Rep<F> {
    let q = x.quiver();
    let loops = q.loops_at(i);
    let g = loops.len();
    let local_q = Arc::new(Quiver::one_vertex(g));
    let mut maps: Vec<_> = loops.iter().map(|&h| x.map(h).clone()).collect();
    maps.extend(loops.iter().map(|&h| x.map(q.bar(h)).clone()));
    crate::rep::Rep::from_maps(local_q, DimVector(vec![x.alpha()[i]]), x.field().clone(), maps).unwrap()
}

/// Coordinates of the off-diagonal block `η`: `(arrow, row, col)` with
/// `s(arrow) = i`, in arrow order then row-major.
type EtaUnit = (usize, usize, usize);

fn eta_units(y: &QRep, z: &QRep, i: usize) -> Vec<EtaUnit> {
    let q = y.quiver();
    let mut out = Vec::new();
    for h in 0..q.doubled_count() {
        if q.source(h) != i {
            continue;
        }
        for r in 0..y.alpha()[q.target(h)] {
            for c in 0..z.alpha()[i] {
                out.push((h, r, c));
            }
        }
    }
    out
}

fn eta_from_coordinates(y: &QRep, z: &QRep, units: &[EtaUnit], coords: &[Rat]) -> Vec<Matrix<Rat>> {
    let mut eta = QRep::zero_offdiagonal(y, z);
    for (&(h, r, c), v) in units.iter().zip(coords) {
        eta[h].set(r, c, v.clone());
    }
    eta
}

/// The linear map `φ_i : η ↦ (top-right block of μ at i)` for the block
/// representation `[[y, η], [0, z]]`, as a matrix on [`eta_units`]
/// coordinates. Requires `μ(y) = 0` and `μ(z) = 0`.
pub fn phi_matrix(y: &QRep, z: &QRep, i: usize) -> (Matrix<Rat>, Vec<EtaUnit>) {
    let f = Rationals;
    let units = eta_units(y, z, i);
    let (bi, li) = (y.alpha()[i], z.alpha()[i]);
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(units.len());
    for k in 0..units.len() {
        let mut coords = vec![f.zero(); units.len()];
        coords[k] = f.one();
        let x = QRep::extension(y, z, &eta_from_coordinates(y, z, &units, &coords));
        let mu = &x.moment_map()[i];
        cols.push(mu.block(0, bi, bi, bi + li).entries().to_vec());
    }
    let phi = if cols.is_empty() { Matrix::zeros(&f, bi * li, 0) } else { Matrix::from_rows(bi * li, cols).transpose() };
    (phi, units)
}

/// Entry point: Jordan sample from a fresh seeded stream.
pub fn sample_jordan(quiver: &Arc<Quiver>, w: &[usize], cfg: &SamplerConfig) -> Result<QRep> {
    Sampler::new(cfg).jordan(quiver, w)
}

pub fn sample_multiloop(quiver: &Arc<Quiver>, w: &[usize], cfg: &SamplerConfig) -> Result<QRep> {
    Sampler::new(cfg).multiloop(quiver, w)
}

pub fn extend_point(y: &QRep, z: &QRep, i: usize, cfg: &SamplerConfig) -> Result<(QRep, ExtensionInfo)> {
    Sampler::new(cfg).extend(y, z, i)
}

pub fn sample_component(quiver: &Arc<Quiver>, label: &ComponentLabel, cfg: &SamplerConfig) -> Result<QRep> {
    cfg.validate()?;
    Sampler::new(cfg).component(quiver, label)
}

/// `Σ_j (λ′_j)²`, the centralizer dimension of a nilpotent of type `λ`.
pub fn centralizer_dim_formula(blocks: &[usize]) -> usize {
    conjugate_partition(blocks).iter().map(|c| c * c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{canonical_type, eps};

    fn cfg(seed: u64) -> SamplerConfig {
        SamplerConfig { seed, ..Default::default() }
    }

    #[test]
    fn jordan_samples() {
        let q = Arc::new(Quiver::jordan());
        let x = sample_jordan(&q, &[1, 1], &cfg(3)).unwrap();
        assert!(x.is_mu_zero());
        assert_eq!(canonical_type(&x).unwrap(), vec![DimVector(vec![1]), DimVector(vec![1])]);
        let z = sample_jordan(&q, &[3], &cfg(3)).unwrap();
        assert!(matrix::is_zero(&Rationals, z.map(0)));
        assert_eq!(canonical_type(&z).unwrap(), vec![DimVector(vec![3])]);
        assert_eq!(sample_jordan(&q, &[2, 1], &cfg(9)).unwrap(), sample_jordan(&q, &[2, 1], &cfg(9)).unwrap());
    }

    #[test]
    fn centralizer_dimension_two_ways() {
        let f = Rationals;
        for blocks in [vec![2], vec![2, 1], vec![3, 1, 1], vec![2, 2], vec![3, 2, 1]] {
            let x = jordan_matrix(&f, &blocks);
            let n = x.rows();
            let direct = flags::intertwiner_dim(&f, &[(x.clone(), x.clone())], n, n);
            assert_eq!(direct, centralizer_basis(&f, &blocks).len());
            assert_eq!(direct, centralizer_dim_formula(&blocks));
            for t in centralizer_basis(&f, &blocks) {
                assert_eq!(matrix::mul(&f, &x, &t.matrix), matrix::mul(&f, &t.matrix, &x));
            }
        }
    }

    #[test]
    fn multiloop_samples() {
        let q = Arc::new(Quiver::one_vertex(2));
        let x = sample_multiloop(&q, &[2], &cfg(1)).unwrap();
        assert!(matrix::is_zero(&Rationals, x.map(0)) && matrix::is_zero(&Rationals, x.map(1)));
        let x = sample_multiloop(&q, &[1, 1], &cfg(1)).unwrap();
        assert!(x.is_mu_zero());
        assert_eq!(eps(&x, 0), 2);
        let x = sample_multiloop(&q, &[1, 2], &cfg(5)).unwrap();
        assert_eq!(canonical_type(&x).unwrap(), vec![DimVector(vec![1]), DimVector(vec![2])]);
    }

    #[test]
    fn witness_is_accepted() {
        let q = Arc::new(Quiver::one_vertex(2));
        let mut s = Sampler::new(&cfg(4));
        for w in [vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 1, 1]] {
            let x = s.multiloop_witness(&q, &w).unwrap();
            assert!(multiloop_accepts(&x, &w));
        }
    }

    #[test]
    fn extension_on_a2() {
        let q = Arc::new(Quiver::linear(2));
        // y: the point on (0,1); z: the point on (1,0)
        let y = QRep::zero(q.clone(), DimVector(vec![0, 1]), Rationals);
        let z = QRep::zero(q.clone(), DimVector(vec![1, 0]), Rationals);
        let (x, info) = extend_point(&y, &z, 0, &cfg(2)).unwrap();
        assert_eq!(eps(&x, 0), 1);
        assert_eq!(info.rank, info.target);
        let empty = QRep::zero(q.clone(), DimVector(vec![0, 0]), Rationals);
        let z2 = QRep::zero(q, DimVector(vec![2, 0]), Rationals);
        let (x0, _) = extend_point(&empty, &z2, 0, &cfg(2)).unwrap();
        assert!(x0.is_zero());
    }
}
