//! Euler characteristics of flag fibers by counting points over `F_p` and
//! interpolating in `p`.

use rayon::prelude::*;

use super::expr::{word_degree, word_steps, Atom};
use crate::error::{Error, Result};
use crate::field::{Field, Rat, Rationals};
use crate::flags;
use crate::matrix::{self, Matrix};
use crate::quiver::DimVector;
use crate::rep::{FpRep, QRep, Rep};
use crate::subspace::{GradedSubspace, Subspace};

pub const DEFAULT_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub primes: Vec<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { primes: DEFAULT_PRIMES.to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerResult {
    pub chi: i64,
    pub degree_bound: usize,
    /// `(p, #fiber(F_p))` at the primes used, fitting ones first.
    pub counts: Vec<(u64, u64)>,
    /// Primes skipped because of a denominator or a changed profile.
    pub skipped: Vec<u64>,
}

/// Invariants of a point compared between `Q` and `F_p`; a prime where any of
/// them changes is treated as bad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionProfile {
    pub ranks: Vec<usize>,
    pub algebra_dim: usize,
    pub separable: Vec<usize>,
    pub chain: Vec<DimVector>,
    pub eps: Vec<usize>,
    pub k_chain: Vec<DimVector>,
}

pub fn profile<F: Field>(x: &Rep<F>) -> ReductionProfile {
    let f = x.field();
    let q = x.quiver();
    let ranks = x.maps().iter().map(|m| matrix::rank(f, m)).collect();
    let separable = (0..q.doubled_count())
        .filter(|&h| q.is_loop(h))
        .map(|h| matrix::separable_degree(f, &matrix::charpoly(f, x.map(h))))
        .collect();
    ReductionProfile {
        ranks,
        algebra_dim: path_algebra_dim(x),
        separable,
        chain: flags::canonical_chain(x).descending.iter().map(|s| s.dims()).collect(),
        eps: flags::eps_all(x),
        k_chain: flags::k_chain(x).iter().map(|s| s.dims()).collect(),
    }
}

/// Dimension of the image of the path algebra of the doubled quiver in
/// `End(⊕_i V_i)`.
pub fn path_algebra_dim<F: Field>(x: &Rep<F>) -> usize {
    let f = x.field();
    let q = x.quiver();
    let alpha = x.alpha();
    let n = alpha.total();
    if n == 0 {
        return 0;
    }
    let off: Vec<usize> = alpha.entries().iter().scan(0, |a, &k| {
        let o = *a;
        *a += k;
        Some(o)
    })
    .collect();
    let gens: Vec<Matrix<F::Elem>> = (0..q.doubled_count())
        .map(|h| {
            let mut m = Matrix::zeros(f, n, n);
            m.set_block(off[q.target(h)], off[q.source(h)], x.map(h));
            m
        })
        .collect();
    let mut basis: Vec<Matrix<F::Elem>> = Vec::new();
    let mut span = Subspace::zero(f, n * n);
    let mut queue: Vec<Matrix<F::Elem>> = (0..q.vertex_count())
        .filter(|&i| alpha[i] > 0)
        .map(|i| {
            let mut e = Matrix::zeros(f, n, n);
            for k in 0..alpha[i] {
                e.set(off[i] + k, off[i] + k, f.one());
            }
            e
        })
        .collect();
    while let Some(m) = queue.pop() {
        let v = m.entries().to_vec();
        if span.contains_vec(f, &v) {
            continue;
        }
        span = span.with_vectors(f, vec![v]);
        for g in &gens {
            queue.push(matrix::mul(f, g, &m));
        }
        basis.push(m);
    }
    basis.len()
}

/// Visit every `l`-dimensional subspace of `F_p^k` as `l` coefficient rows
/// (reduced echelon form).
fn for_each_subspace(p: u64, k: usize, l: usize, visit: &mut dyn FnMut(&[Vec<u64>])) {
    if l > k {
        return;
    }
    let mut pivots: Vec<usize> = (0..l).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..l)
            .flat_map(|r| {
                let piv = pivots.clone();
                ((pivots[r] + 1)..k).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; k]; l];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                rows[r][c] = d;
            }
            visit(&rows);
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
        // next pivot combination
        let mut r = l;
        loop {
            if r == 0 {
                return;
            }
            r -= 1;
            if pivots[r] < k - l + r {
                pivots[r] += 1;
                for s in r + 1..l {
                    pivots[s] = pivots[s - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of flags `0 = W_0 ⊂ … ⊂ W_m = V` over `F_p` that are stable under
/// every arrow, with `W_k/W_{k−1}` at vertex `i_k` of size `l_k` and killed
/// by the `Ω`-loops there, `word` read from the top down.
pub fn count_points(x: &FpRep, word: &[Atom]) -> u64 {
    let Some((&Atom { vertex: i, l }, outer)) = word.split_last() else {
        return u64::from(x.alpha().is_zero());
    };
    let f = x.field();
    let q = x.quiver();
    let n = x.alpha()[i];
    if n < l {
        return 0;
    }
    let killing: Vec<usize> = (0..q.doubled_count())
        .filter(|&h| q.source(h) == i && (q.target(h) != i || q.is_original(h)))
        .collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &h in &killing {
        rows.extend(x.map(h).row_vecs());
    }
    let kbasis = if rows.is_empty() {
        Matrix::identity(f, n).row_vecs()
    } else {
        matrix::kernel(f, &Matrix::from_rows(n, rows))
    };
    let k = kbasis.len();
    if k < l {
        return 0;
    }
    let preserving: Vec<usize> = q.loops_at(i).iter().map(|&h| q.bar(h)).collect();
    let p = f.modulus();
    let mut total = 0u64;
    for_each_subspace(p, k, l, &mut |coeffs| {
        let vecs: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0u64; n];
                for (a, b) in c.iter().zip(&kbasis) {
                    if *a != 0 {
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = f.add(vi, &f.mul(a, bi));
                        }
                    }
                }
                v
            })
            .collect();
        let s = Subspace::span(f, n, vecs);
        if !preserving.iter().all(|&h| s.contains(f, &s.image(f, x.map(h)))) {
            return;
        }
        let mut w = GradedSubspace::zero(f, x.alpha());
        w.set_part(i, s);
        let quot = x.quotient(&w).expect("stable by construction");
        total += count_points(&quot, outer);
    });
    total
}

/// Reductions of `x` at the first `limit` good primes of the pool, and the
/// primes skipped on the way.
pub fn good_reductions(x: &QRep, cfg: &OracleConfig, limit: usize) -> (Vec<(u64, FpRep)>, Vec<u64>) {
    let reference = profile(x);
    let mut good = Vec::new();
    let mut skipped = Vec::new();
    for &p in &cfg.primes {
        if good.len() == limit {
            break;
        }
        match x.reduce_mod_p(p) {
            Ok(xp) if profile(&xp) == reference => good.push((p, xp)),
            _ => skipped.push(p),
        }
    }
    (good, skipped)
}

/// Largest interpolation degree over all words of degree `alpha`: the
/// dimension of the variety of complete graded flags.
pub fn max_degree_bound(alpha: &DimVector) -> usize {
    alpha.entries().iter().map(|&a| a * a.saturating_sub(1) / 2).sum()
}

/// Whether every word of degree `x.alpha()` can be evaluated at `x` with this pool.
pub fn oracle_ready(x: &QRep, cfg: &OracleConfig) -> bool {
    let need = max_degree_bound(x.alpha()) + 2;
    good_reductions(x, cfg, need).0.len() == need
}

/// `χ` of the fiber of `x` cut out by `word`.
pub fn euler_characteristic(x: &QRep, word: &[Atom], cfg: &OracleConfig) -> Result<EulerResult> {
    let n = x.quiver().vertex_count();
    let deg = word_degree(n, word);
    if &deg != x.alpha() {
        return Err(Error::DegreeMismatch { expected: deg.to_string(), found: x.alpha().to_string() });
    }
    let d = flags::flag_variety_dim(&word_steps(n, word));
    let need = d + 2;
    let (good, skipped) = good_reductions(x, cfg, need);
    if good.len() < need {
        return Err(Error::PrimePoolExhausted { needed: need, available: good.len() });
    }
    let counts: Vec<(u64, u64)> = good.par_iter().map(|(p, xp)| (*p, count_points(xp, word))).collect();
    let fit = &counts[..d + 1];
    for &(p, c) in &counts[d + 1..] {
        let predicted = lagrange_eval(fit, p as i64);
        if predicted != Rationals.from_i64(c as i64) {
            return Err(Error::NonPolynomialCount(format!(
                "fit through {:?} predicts {predicted} at p = {p}, counted {c}",
                fit
            )));
        }
    }
    let at_one = lagrange_eval(fit, 1);
    if !at_one.is_integer() {
        return Err(Error::NonPolynomialCount(format!("P(1) = {at_one} through {fit:?}")));
    }
    let chi = crate::field::rat_to_i64(&at_one).ok_or_else(|| Error::NonPolynomialCount(format!("P(1) = {at_one} overflows")))?;
    Ok(EulerResult { chi, degree_bound: d, counts, skipped })
}

/// Value at `t` of the interpolating polynomial through `points`.
pub fn lagrange_eval(points: &[(u64, u64)], t: i64) -> Rat {
    let f = Rationals;
    let mut acc = f.zero();
    for (j, &(pj, cj)) in points.iter().enumerate() {
        let mut term = f.from_i64(cj as i64);
        for (m, &(pm, _)) in points.iter().enumerate() {
            if m != j {
                let num = f.from_i64(t - pm as i64);
                let den = f.from_i64(pj as i64 - pm as i64);
                term = f.mul(&term, &f.div(&num, &den).unwrap());
            }
        }
        acc = f.add(&acc, &term);
    }
    acc
}

/// Finite-field count for a one-off prime, with the same bad-prime rules.
pub fn count_at_prime(x: &QRep, word: &[Atom], p: u64) -> Result<u64> {
    let xp = x.reduce_mod_p(p)?;
    Ok(count_points(&xp, word))
}
