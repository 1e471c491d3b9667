#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use quiver_lagrangian::algebra::expr::Atom;
use quiver_lagrangian::quiver::{DimVector, Quiver};
use quiver_lagrangian::rep::FpRep;

pub fn pendant() -> Quiver {
    Quiver::new(vec!["0".into(), "1".into()], vec![("x".into(), 0, 0), ("a".into(), 0, 1)]).unwrap()
}

pub fn arc(q: Quiver) -> Arc<Quiver> {
    Arc::new(q)
}

/// Every word of degree `alpha`, top first.
pub fn all_words(alpha: &DimVector) -> Vec<Vec<Atom>> {
    if alpha.is_zero() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..alpha.len() {
        for l in 1..=alpha[i] {
            let mut rest = alpha.clone();
            rest.0[i] -= l;
            for mut w in all_words(&rest) {
                w.insert(0, Atom { vertex: i, l });
                out.push(w);
            }
        }
    }
    out
}

/// Every nonzero `β ≤ α` entrywise.
pub fn below(alpha: &[usize]) -> Vec<DimVector> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..=a).map(move |k| {
            let mut v = v.clone();
            v.push(k);
            v
        })).collect();
    }
    out.into_iter().map(DimVector).filter(|d| !d.is_zero()).collect()
}

/// Flag counting over `F_2` by listing every subset of the total space that
/// is a stable graded subspace, with vectors as bitmasks.
pub struct BruteF2 {
    n: usize,
    offsets: Vec<usize>,
    alpha: Vec<usize>,
    /// (source vertex, target vertex, is Ω-loop, image of each basis vector, is in Ω)
    maps: Vec<(usize, usize, bool, Vec<u32>, bool)>,
}

impl BruteF2 {
    pub fn new(x: &FpRep) -> Self {
        assert_eq!(x.field().modulus(), 2);
        let q = x.quiver();
        let alpha = x.alpha().0.clone();
        let mut offsets = Vec::new();
        let mut acc = 0;
        for &a in &alpha {
            offsets.push(acc);
            acc += a;
        }
        let mut maps = Vec::new();
        for h in 0..q.doubled_count() {
            let (s, t) = (q.source(h), q.target(h));
            let m = x.map(h);
            let cols: Vec<u32> = (0..alpha[s])
                .map(|c| (0..alpha[t]).filter(|&r| *m.get(r, c) == 1).map(|r| 1u32 << (offsets[t] + r)).fold(0, |a, b| a | b))
                .collect();
            maps.push((s, t, q.is_original(h) && s == t, cols, q.is_original(h)));
        }
        BruteF2 { n: acc, offsets, alpha, maps }
    }

    fn apply(&self, h: usize, v: u32) -> u32 {
        let (s, _, _, cols, _) = &self.maps[h];
        let mut out = 0;
        for (c, img) in cols.iter().enumerate() {
            if v >> (self.offsets[*s] + c) & 1 == 1 {
                out ^= img;
            }
        }
        out
    }

    fn vertex_mask(&self, i: usize) -> u32 {
        ((1u32 << self.alpha[i]) - 1) << self.offsets[i]
    }

    fn all_subspaces(&self) -> Vec<BTreeSet<u32>> {
        let mut seen: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
        let mut stack = vec![BTreeSet::from([0u32])];
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for v in 0..(1u32 << self.n) {
                if !s.contains(&v) {
                    let mut t = s.clone();
                    for &u in &s {
                        t.insert(u ^ v);
                    }
                    stack.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn dim_at(&self, s: &BTreeSet<u32>, i: usize) -> usize {
        let m = self.vertex_mask(i);
        s.iter().filter(|&&v| v & !m == 0).count().trailing_zeros() as usize
    }

    pub fn count(&self, word: &[Atom]) -> u64 {
        let subs: Vec<BTreeSet<u32>> = self
            .all_subspaces()
            .into_iter()
            .filter(|s| {
                let graded = s.iter().all(|&v| (0..self.alpha.len()).all(|i| s.contains(&(v & self.vertex_mask(i)))));
                let stable = (0..self.maps.len()).all(|h| s.iter().all(|&v| s.contains(&self.apply(h, v))));
                graded && stable
            })
            .collect();
        let inner_first: Vec<Atom> = word.iter().rev().copied().collect();
        let full = (1u32 << self.n) - 1;
        let mut total = 0;
        let zero = BTreeSet::from([0u32]);
        self.extend(&subs, &zero, &inner_first, full, &mut total);
        total
    }

    fn extend(&self, subs: &[BTreeSet<u32>], lower: &BTreeSet<u32>, rest: &[Atom], full: u32, total: &mut u64) {
        let Some((a, more)) = rest.split_first() else {
            if lower.len() == 1usize << self.n && lower.contains(&full) {
                *total += 1;
            }
            return;
        };
        for s in subs {
            if !lower.is_subset(s) {
                continue;
            }
            let ok_dims = (0..self.alpha.len()).all(|i| {
                let want = self.dim_at(lower, i) + if i == a.vertex { a.l } else { 0 };
                self.dim_at(s, i) == want
            });
            if !ok_dims {
                continue;
            }
            let killed = self
                .maps
                .iter()
                .enumerate()
                .filter(|(_, m)| m.2 && m.0 == a.vertex)
                .all(|(h, _)| s.iter().all(|&v| lower.contains(&self.apply(h, v))));
            if killed {
                self.extend(subs, s, more, full, total);
            }
        }
    }

    fn span(&self, gens: impl IntoIterator<Item = u32>) -> BTreeSet<u32> {
        let mut s = BTreeSet::from([0u32]);
        for g in gens {
            if !s.contains(&g) {
                let shifted: Vec<u32> = s.iter().map(|&u| u ^ g).collect();
                s.extend(shifted);
            }
        }
        s
    }

    /// Smallest subspace containing `s` and stable under every map.
    fn closure(&self, s: &BTreeSet<u32>) -> BTreeSet<u32> {
        let mut cur = s.clone();
        loop {
            let imgs: Vec<u32> = (0..self.maps.len()).flat_map(|h| cur.iter().map(move |&v| (h, v))).map(|(h, v)| self.apply(h, v)).collect();
            let next = self.span(cur.iter().copied().chain(imgs));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    fn omega_image(&self, s: &BTreeSet<u32>) -> BTreeSet<u32> {
        let imgs: Vec<u32> = self.originals().flat_map(|h| s.iter().map(move |&v| (h, v))).map(|(h, v)| self.apply(h, v)).collect();
        self.span(imgs)
    }

    fn originals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.maps.len()).filter(|&h| self.maps[h].4)
    }

    /// `V = W^0 ⊋ W^1 ⊋ …` until it stops shrinking.
    pub fn canonical(&self) -> Vec<BTreeSet<u32>> {
        let mut chain = vec![self.span((0..self.n).map(|b| 1u32 << b))];
        loop {
            let next = self.closure(&self.omega_image(chain.last().unwrap()));
            if &next == chain.last().unwrap() {
                return chain;
            }
            chain.push(next);
        }
    }

    /// Every strictly decreasing graded chain from `V` to `0` whose terms are
    /// preserved by the reverse arrows and pushed one step down by `Ω`.
    pub fn witness_chains(&self) -> Vec<Vec<BTreeSet<u32>>> {
        let subs: Vec<BTreeSet<u32>> = self
            .all_subspaces()
            .into_iter()
            .filter(|s| {
                let graded = s.iter().all(|&v| (0..self.alpha.len()).all(|i| s.contains(&(v & self.vertex_mask(i)))));
                let stable = (0..self.maps.len()).filter(|&h| !self.maps[h].4).all(|h| s.iter().all(|&v| s.contains(&self.apply(h, v))));
                graded && stable
            })
            .collect();
        let mut out = Vec::new();
        let top = self.span((0..self.n).map(|b| 1u32 << b));
        self.descend(&subs, vec![top], &mut out);
        out
    }

    fn descend(&self, subs: &[BTreeSet<u32>], chain: Vec<BTreeSet<u32>>, out: &mut Vec<Vec<BTreeSet<u32>>>) {
        let last = chain.last().unwrap();
        if last.len() == 1 {
            out.push(chain);
            return;
        }
        let img = self.omega_image(last);
        for s in subs {
            if s.len() < last.len() && s.is_subset(last) && img.is_subset(s) {
                let mut c = chain.clone();
                c.push(s.clone());
                self.descend(subs, c, out);
            }
        }
    }
}
