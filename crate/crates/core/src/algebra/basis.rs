//! Evaluation of constructible functions on components, the one-vertex
//! basis `{1_w}` and the distinguished functions dual to `Irr Λ(α)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::euler::{euler_characteristic, oracle_ready, OracleConfig};
use super::expr::{dominance_key, dominated, tilde_word, Atom, FunctionExpr, Word};
use crate::components::{self, compositions, one_vertex_labels, partitions, Catalog, Component, ComponentLabel, EnumerationConfig, Fingerprint, LabelKind};
use crate::error::{Error, Result};
use crate::field::{Field, Rat, Rationals};
use crate::flags;
use crate::quiver::{DimVector, Quiver};
use crate::rep::QRep;
use crate::sampler::{Sampler, SamplerConfig};

#[derive(Clone, Debug, Default)]
pub struct AlgebraConfig {
    pub enumeration: EnumerationConfig,
    pub oracle: OracleConfig,
}

/// `χ` of the fiber of `x` over a word.
pub fn evaluate_word(x: &QRep, word: &[Atom], oracle: &OracleConfig) -> Result<Rat> {
    Ok(Rationals.from_i64(euler_characteristic(x, word, oracle)?.chi))
}

pub fn evaluate(x: &QRep, f: &FunctionExpr, oracle: &OracleConfig) -> Result<Rat> {
    if f.degree() != x.alpha() {
        return Err(Error::DegreeMismatch { expected: f.degree().to_string(), found: x.alpha().to_string() });
    }
    let r = Rationals;
    f.terms().try_fold(r.zero(), |acc, (w, c)| Ok(r.add(&acc, &r.mul(c, &evaluate_word(x, w, oracle)?))))
}

type PointKey = (ComponentLabel, u8);
type Batch = Arc<(Vec<QRep>, Vec<u64>)>;

/// Sampled points per component and cached word values at them.
pub struct Evaluator {
    quiver: Arc<Quiver>,
    cfg: AlgebraConfig,
    points: Mutex<BTreeMap<PointKey, Batch>>,
    values: Mutex<HashMap<(PointKey, Word), Arc<Vec<i64>>>>,
}

impl Evaluator {
    pub fn new(quiver: Arc<Quiver>, cfg: AlgebraConfig) -> Self {
        Evaluator { quiver, cfg, points: Mutex::new(BTreeMap::new()), values: Mutex::new(HashMap::new()) }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.cfg
    }

    /// Batch 0 starts at the configured seed; batch 1 at the next seeds with
    /// twice the bound.
    fn batch_config(&self, batch: u8) -> SamplerConfig {
        let s = &self.cfg.enumeration.sampler;
        match batch {
            0 => s.clone(),
            _ => SamplerConfig { bound: s.bound * 2, seed: s.seed.wrapping_add(self.cfg.enumeration.n_seeds as u64), ..s.clone() },
        }
    }

    fn batch_seeds(&self, label: &ComponentLabel, batch: u8) -> Vec<u64> {
        self.points(label, batch).map(|p| p.1.clone()).unwrap_or_default()
    }

    /// Sampled points of `label` with their seeds. Sample `k` of a batch uses
    /// seed `s + k`, moving on by `2·n_seeds` while the point leaves too few
    /// good primes for the oracle.
    pub fn points(&self, label: &ComponentLabel, batch: u8) -> Result<Batch> {
        let key = (label.clone(), batch);
        if let Some(p) = self.points.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let base = self.batch_config(batch);
        let n = self.cfg.enumeration.n_seeds as u64;
        let found = (0..n)
            .into_par_iter()
            .map(|k| {
                let mut last = base.seed.wrapping_add(k);
                for j in 0..base.retries.max(1) as u64 {
                    last = base.seed.wrapping_add(k + 2 * n * j);
                    let x = Sampler::new(&base.with_seed(last)).component(&self.quiver, label)?;
                    if oracle_ready(&x, &self.cfg.oracle) {
                        return Ok((x, last));
                    }
                }
                Err(Error::SamplingFailed { what: format!("a point of {} with enough good primes", label.short()), seed: last })
            })
            .collect::<Result<Vec<_>>>()?;
        let pts = Arc::new(found.into_iter().unzip());
        self.points.lock().unwrap().insert(key, pts.clone());
        Ok(pts)
    }

    fn word_values(&self, label: &ComponentLabel, batch: u8, word: &Word) -> Result<Arc<Vec<i64>>> {
        let key = ((label.clone(), batch), word.clone());
        if let Some(v) = self.values.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let pts = self.points(label, batch)?;
        let vals = pts
            .0
            .par_iter()
            .map(|x| euler_characteristic(x, word, &self.cfg.oracle).map(|r| r.chi))
            .collect::<Result<Vec<_>>>()?;
        let vals = Arc::new(vals);
        self.values.lock().unwrap().insert(key, vals.clone());
        Ok(vals)
    }

    fn batch_values(&self, f: &FunctionExpr, label: &ComponentLabel, batch: u8) -> Result<Vec<Rat>> {
        let r = Rationals;
        let mut acc = vec![r.zero(); self.cfg.enumeration.n_seeds];
        for (w, c) in f.terms() {
            let vals = self.word_values(label, batch, w)?;
            for (a, v) in acc.iter_mut().zip(vals.iter()) {
                *a = r.add(a, &r.mul(c, &r.from_i64(*v)));
            }
        }
        Ok(acc)
    }

    /// `ρ_Z(f)`: the value of `f` at a generic point of `Z`. Seeds must
    /// agree; otherwise a second batch is drawn and a strict majority over
    /// both batches is required.
    pub fn rho(&self, f: &FunctionExpr, label: &ComponentLabel) -> Result<Rat> {
        if f.degree() != &label.alpha {
            return Err(Error::DegreeMismatch { expected: f.degree().to_string(), found: label.alpha.to_string() });
        }
        let first = self.batch_values(f, label, 0)?;
        if first.windows(2).all(|p| p[0] == p[1]) {
            return Ok(first[0].clone());
        }
        let all: Vec<Rat> = first.into_iter().chain(self.batch_values(f, label, 1)?).collect();
        let mut tally: BTreeMap<&Rat, usize> = BTreeMap::new();
        for v in &all {
            *tally.entry(v).or_default() += 1;
        }
        let (best, count) = tally.iter().max_by_key(|(_, c)| **c).map(|(v, c)| ((*v).clone(), *c)).unwrap();
        if 2 * count > all.len() {
            return Ok(best);
        }
        Err(Error::NoConsensus {
            what: format!("ρ at {}", label.short()),
            values: all.iter().map(|v| v.to_string()).collect(),
            seeds: self.batch_seeds(label, 0).into_iter().chain(self.batch_seeds(label, 1)).collect(),
        })
    }

    /// `[ρ_{Z_a}(f_b)]` with rows indexed by `labels` and columns by `funcs`.
    pub fn matrix(&self, labels: &[ComponentLabel], funcs: &[FunctionExpr]) -> Result<Vec<Vec<Rat>>> {
        let cells: Vec<(usize, usize)> = (0..labels.len()).flat_map(|a| (0..funcs.len()).map(move |b| (a, b))).collect();
        let vals = cells.par_iter().map(|&(a, b)| self.rho(&funcs[b], &labels[a])).collect::<Result<Vec<_>>>()?;
        Ok(vals.chunks(funcs.len().max(1)).map(|c| c.to_vec()).collect())
    }
}

pub fn is_identity(m: &[Vec<Rat>]) -> bool {
    let r = Rationals;
    m.iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(b, v)| if a == b { r.is_one(v) } else { r.is_zero(v) }))
}

#[derive(Clone, Debug)]
pub struct BasisEntry {
    pub label: ComponentLabel,
    /// Index `w` of `1_w`: the K-type of `Z`.
    pub w: Vec<usize>,
    pub expr: FunctionExpr,
}

#[derive(Clone, Debug)]
pub struct OneVertexBasis {
    pub loops: usize,
    pub l: usize,
    /// Entries in elimination order (decreasing for `⪯`).
    pub entries: Vec<BasisEntry>,
    /// `transition[a][b] = ρ_{Z_a}(1̃_{w_b})`.
    pub transition: Vec<Vec<Rat>>,
    /// Nonzero entries with `w_b ⋠ w_a`, and diagonal entries different from 1.
    pub violations: Vec<(usize, usize)>,
    pub verification: Vec<Vec<Rat>>,
}

impl OneVertexBasis {
    pub fn is_unitriangular(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn entry_for(&self, label_tuple: &[usize]) -> Option<&BasisEntry> {
        self.entries.iter().find(|e| e.label.tuple().as_deref() == Some(label_tuple))
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        json!({
            "loops": self.loops,
            "l": self.l,
            "basis": self.entries.iter().map(|e| json!({
                "w": e.w,
                "label": e.label.to_json(q),
                "expr": e.expr.to_json(q),
            })).collect::<Vec<_>>(),
            "unitriangular": self.is_unitriangular(),
            "dual": is_identity(&self.verification),
        })
    }
}

/// The K-type of a one-vertex component, agreed on by all sampled points.
pub fn k_type_of(eval: &Evaluator, label: &ComponentLabel) -> Result<Vec<usize>> {
    let pts = eval.points(label, 0)?;
    let types: Vec<Vec<usize>> = pts.0.iter().map(|x| flags::k_type(x).iter().map(|d| d.total()).collect()).collect();
    if types.windows(2).all(|p| p[0] == p[1]) {
        return Ok(types[0].clone());
    }
    Err(Error::NoConsensus {
        what: format!("K-type of {}", label.short()),
        values: types.iter().map(|t| format!("{t:?}")).collect(),
        seeds: pts.1.clone(),
    })
}

/// `{1_w}` on `Λ(l)` of a one-vertex quiver: `1_w = 1̃_w − Σ ρ_{Z_{w′}}(1̃_w) 1_{w′}`
/// over the `w′` above `w`, processed from the top of `⪯` down.
pub fn one_vertex_basis(quiver: &Arc<Quiver>, l: usize, cfg: &AlgebraConfig) -> Result<OneVertexBasis> {
    if quiver.vertex_count() != 1 {
        return Err(Error::Usage("the one-vertex basis needs a quiver with a single vertex".into()));
    }
    let g = quiver.loop_count(0);
    if g == 0 {
        return Err(Error::Usage("the vertex has no loops; Λ(l) is a point and 1_l is its indicator".into()));
    }
    let eval = Evaluator::new(quiver.clone(), cfg.clone());
    let labels = one_vertex_labels(g, 1, 0, l);
    let ktypes = labels.iter().map(|z| k_type_of(&eval, z)).collect::<Result<Vec<_>>>()?;
    let mut expected = if g == 1 { partitions(l) } else { compositions(l) };
    let mut found = ktypes.clone();
    expected.sort();
    found.sort();
    if found != expected {
        return Err(Error::Validation(format!("K-types {found:?} are not a bijection onto {expected:?}")));
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| {
        dominance_key(&ktypes[b], l).cmp(&dominance_key(&ktypes[a], l)).then(ktypes[b].cmp(&ktypes[a]))
    });
    let labels: Vec<ComponentLabel> = order.iter().map(|&k| labels[k].clone()).collect();
    let ktypes: Vec<Vec<usize>> = order.iter().map(|&k| ktypes[k].clone()).collect();
    let tildes: Vec<FunctionExpr> = ktypes.iter().map(|w| FunctionExpr::word(1, tilde_word(0, w))).collect();
    let transition = eval.matrix(&labels, &tildes)?;
    let r = Rationals;
    let mut violations = Vec::new();
    for (a, row) in transition.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let bad = if a == b { !r.is_one(v) } else { !r.is_zero(v) && !dominated(&ktypes[b], &ktypes[a]) };
            if bad {
                violations.push((a, b));
            }
        }
    }
    let mut exprs: Vec<FunctionExpr> = Vec::with_capacity(labels.len());
    for b in 0..labels.len() {
        let mut f = tildes[b].clone();
        for a in 0..b {
            if !r.is_zero(&transition[a][b]) {
                f.add_scaled(&r.neg(&transition[a][b]), &exprs[a]);
            }
        }
        exprs.push(f);
    }
    let verification = eval.matrix(&labels, &exprs)?;
    let entries = labels
        .into_iter()
        .zip(ktypes)
        .zip(exprs)
        .map(|((label, w), expr)| BasisEntry { label, w, expr })
        .collect();
    Ok(OneVertexBasis { loops: g, l, entries, transition, violations, verification })
}

/// Builds `f_Z` for the components of a catalog, peeling at the canonical
/// vertex: `f = 1_{i,inner} ∗ f_rest − Σ_{ε_i(Z′) > l} ρ_{Z′}(…) f^{(i)}_{Z′}`.
pub struct Distinguisher {
    eval: Evaluator,
    catalogs: BTreeMap<DimVector, Vec<Component>>,
    fingerprints: BTreeMap<ComponentLabel, Fingerprint>,
    one_vertex: BTreeMap<(usize, usize), OneVertexBasis>,
    memo: BTreeMap<(usize, ComponentLabel), FunctionExpr>,
}

impl Distinguisher {
    pub fn new(quiver: Arc<Quiver>, catalog: &Catalog, cfg: AlgebraConfig) -> Self {
        let mut catalogs = catalog.reachable.clone();
        if let Some(c) = catalog.components.first() {
            catalogs.insert(c.label.alpha.clone(), catalog.components.clone());
        }
        Distinguisher {
            eval: Evaluator::new(quiver, cfg),
            catalogs,
            fingerprints: BTreeMap::new(),
            one_vertex: BTreeMap::new(),
            memo: BTreeMap::new(),
        }
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.eval
    }

    fn component(&self, label: &ComponentLabel) -> Result<&Component> {
        self.catalogs
            .get(&label.alpha)
            .and_then(|cs| cs.iter().find(|c| &c.label == label))
            .ok_or_else(|| Error::Validation(format!("{} is not in the catalog", label.short())))
    }

    fn fingerprint(&mut self, label: &ComponentLabel) -> Result<Fingerprint> {
        if let Some(fp) = self.fingerprints.get(label) {
            return Ok(fp.clone());
        }
        let (fp, _) = components::label_fingerprint(self.eval.quiver(), label, &self.eval.config().enumeration)?;
        self.fingerprints.insert(label.clone(), fp.clone());
        Ok(fp)
    }

    /// `1_{i,Z}` for a one-vertex label at vertex `i`.
    fn one_vertex_function(&mut self, i: usize, label: &ComponentLabel) -> Result<FunctionExpr> {
        let q = self.eval.quiver().clone();
        let n = q.vertex_count();
        let l = label.alpha[i];
        let g = q.loop_count(i);
        if g == 0 {
            return Ok(FunctionExpr::word(n, vec![Atom { vertex: i, l }]));
        }
        if !self.one_vertex.contains_key(&(g, l)) {
            let b = one_vertex_basis(&Arc::new(Quiver::one_vertex(g)), l, self.eval.config())?;
            if !b.is_unitriangular() || !is_identity(&b.verification) {
                return Err(Error::Validation(format!("one-vertex basis for g = {g}, l = {l} is not unitriangular")));
            }
            self.one_vertex.insert((g, l), b);
        }
        let tuple = label.tuple().ok_or_else(|| Error::Precondition(format!("{} is not a one-vertex label", label.short())))?;
        let entry = self.one_vertex[&(g, l)]
            .entry_for(&tuple)
            .ok_or_else(|| Error::Validation(format!("no basis element for {}", label.short())))?;
        Ok(entry.expr.relocate(0, i, n))
    }

    /// The function dual to `label` among the components of its `α`.
    pub fn distinguished(&mut self, label: &ComponentLabel) -> Result<FunctionExpr> {
        let n = self.eval.quiver().vertex_count();
        match &label.kind {
            LabelKind::Empty => Ok(FunctionExpr::word(n, Vec::new())),
            LabelKind::Peel { vertex, .. } => self.peeled_at(*vertex, label),
            _ => {
                let i = label.alpha.single_support().ok_or(Error::Mismatch)?;
                self.one_vertex_function(i, label)
            }
        }
    }

    /// `f^{(i)}_Z`, built by peeling `ε_i(Z)` at vertex `i`.
    fn peeled_at(&mut self, i: usize, label: &ComponentLabel) -> Result<FunctionExpr> {
        let key = (i, label.clone());
        if let Some(f) = self.memo.get(&key) {
            return Ok(f.clone());
        }
        let l = self.component(label)?.eps[i];
        if l == 0 {
            return Err(Error::Precondition(format!("ε_{i} vanishes on {}", label.short())));
        }
        let (inner, rest) = match &label.kind {
            LabelKind::Peel { vertex, inner, rest, .. } if *vertex == i => ((**inner).clone(), (**rest).clone()),
            _ => {
                let fp = self.fingerprint(label)?;
                let (_, top, rest) = fp
                    .peels
                    .iter()
                    .find(|(j, _, _)| *j == i)
                    .ok_or_else(|| Error::Validation(format!("{} has no peel at vertex {i}", label.short())))?;
                (top.clone(), rest.canonical_label())
            }
        };
        self.component(&rest)?;
        let top = self.one_vertex_function(i, &inner)?;
        let below = self.distinguished(&rest)?;
        let tilde = top.convolve(&below);
        let mut f = tilde.clone();
        let higher: Vec<ComponentLabel> = self.catalogs[&label.alpha]
            .iter()
            .filter(|c| c.eps[i] > l)
            .map(|c| c.label.clone())
            .collect();
        let r = Rationals;
        for z in higher {
            let c = self.eval.rho(&tilde, &z)?;
            if !r.is_zero(&c) {
                let fz = self.peeled_at(i, &z)?;
                f.add_scaled(&r.neg(&c), &fz);
            }
        }
        self.memo.insert(key, f.clone());
        Ok(f)
    }

    /// Distinguished functions of every component of `α` and the matrix
    /// `[ρ_{Z_a}(f_{Z_b})]`.
    pub fn all(&mut self, alpha: &DimVector) -> Result<(Vec<ComponentLabel>, Vec<FunctionExpr>, Vec<Vec<Rat>>)> {
        let labels: Vec<ComponentLabel> = self
            .catalogs
            .get(alpha)
            .ok_or_else(|| Error::Validation(format!("no catalog for α = {alpha}")))?
            .iter()
            .map(|c| c.label.clone())
            .collect();
        let funcs = labels.iter().map(|z| self.distinguished(z)).collect::<Result<Vec<_>>>()?;
        let m = self.eval.matrix(&labels, &funcs)?;
        Ok((labels, funcs, m))
    }
}
