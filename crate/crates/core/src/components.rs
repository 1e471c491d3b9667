//! Labels, enumeration and bookkeeping for the irreducible components of
//! `Λ(α)`, and the peeling graph between them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::flags;
use crate::quiver::{DimVector, Quiver};
use crate::rep::Rep;
use crate::sampler::{local_at_vertex, Sampler, SamplerConfig};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    /// The unique component of `Λ(0)`.
    Empty,
    /// `Λ(l·e_i)` at a vertex without loops: a single point.
    Point,
    /// One loop: `w_k = dim ker x^k − dim ker x^{k−1}` (a partition).
    Jordan(Vec<usize>),
    /// At least two loops: the canonical step type (a composition).
    Multiloop(Vec<usize>),
    /// `Irr Λ(α)_{i,l} ≅ Irr Λ(α − l·e_i)_{i,0} × Irr Λ(l·e_i)`.
    Peel { vertex: usize, l: usize, inner: Box<ComponentLabel>, rest: Box<ComponentLabel> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentLabel {
    pub alpha: DimVector,
    pub kind: LabelKind,
}

impl ComponentLabel {
    pub fn empty(n: usize) -> Self {
        ComponentLabel { alpha: DimVector(vec![0; n]), kind: LabelKind::Empty }
    }

    pub fn is_one_vertex(&self) -> bool {
        matches!(self.kind, LabelKind::Point | LabelKind::Jordan(_) | LabelKind::Multiloop(_))
    }

    /// The tuple of a one-vertex label (`(l)` for a point).
    pub fn tuple(&self) -> Option<Vec<usize>> {
        match &self.kind {
            LabelKind::Jordan(w) | LabelKind::Multiloop(w) => Some(w.clone()),
            LabelKind::Point => Some(vec![self.alpha.total()]),
            _ => None,
        }
    }

    pub fn short(&self) -> String {
        match &self.kind {
            LabelKind::Empty => "∅".into(),
            LabelKind::Point => format!("pt{}", self.alpha),
            LabelKind::Jordan(w) | LabelKind::Multiloop(w) => {
                let parts: Vec<String> = w.iter().map(|k| k.to_string()).collect();
                match self.alpha.len() {
                    1 => format!("({})", parts.join(",")),
                    _ => format!("v{}({})", self.alpha.single_support().unwrap_or(0), parts.join(",")),
                }
            }
            LabelKind::Peel { vertex, l, inner, rest } => {
                format!("peel[{vertex},{l},{}|{}]", inner.short(), rest.short())
            }
        }
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let vertex = |i: usize| Value::String(q.vertex_id(i).to_string());
        match &self.kind {
            LabelKind::Empty => json!({ "kind": "empty" }),
            LabelKind::Point => {
                let i = self.alpha.single_support().unwrap();
                json!({ "kind": "point", "vertex": vertex(i), "l": self.alpha[i] })
            }
            LabelKind::Jordan(w) => {
                json!({ "kind": "jordan", "vertex": vertex(self.alpha.single_support().unwrap()), "w": w })
            }
            LabelKind::Multiloop(w) => {
                json!({ "kind": "multiloop", "vertex": vertex(self.alpha.single_support().unwrap()), "w": w })
            }
            LabelKind::Peel { vertex: i, l, inner, rest } => json!({
                "kind": "peel",
                "vertex": vertex(*i),
                "l": l,
                "inner": inner.to_json(q),
                "rest": rest.to_json(q),
            }),
        }
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<Self> {
        let n = q.vertex_count();
        let bad = |m: &str| Error::Parse(format!("label: {m}"));
        let kind = v["kind"].as_str().ok_or_else(|| bad("missing kind"))?;
        if kind == "empty" {
            return Ok(ComponentLabel::empty(n));
        }
        let vid = v["vertex"].as_str().ok_or_else(|| bad("missing vertex"))?;
        let i = q.vertex_index(vid).ok_or_else(|| Error::Validation(format!("unknown vertex `{vid}`")))?;
        let tuple = || -> Result<Vec<usize>> {
            v["w"]
                .as_array()
                .ok_or_else(|| bad("missing w"))?
                .iter()
                .map(|e| e.as_u64().map(|k| k as usize).ok_or_else(|| bad("w entries must be integers")))
                .collect()
        };
        let at = |l: usize| {
            let mut a = vec![0; n];
            a[i] = l;
            DimVector(a)
        };
        let label = match kind {
            "point" => {
                let l = v["l"].as_u64().ok_or_else(|| bad("missing l"))? as usize;
                ComponentLabel { alpha: at(l), kind: LabelKind::Point }
            }
            "jordan" => {
                let w = tuple()?;
                ComponentLabel { alpha: at(w.iter().sum()), kind: LabelKind::Jordan(w) }
            }
            "multiloop" => {
                let w = tuple()?;
                ComponentLabel { alpha: at(w.iter().sum()), kind: LabelKind::Multiloop(w) }
            }
            "peel" => {
                let l = v["l"].as_u64().ok_or_else(|| bad("missing l"))? as usize;
                let inner = ComponentLabel::from_json(q, &v["inner"])?;
                let rest = ComponentLabel::from_json(q, &v["rest"])?;
                if inner.alpha != at(l) {
                    return Err(Error::Validation("peel inner label has the wrong dimension".into()));
                }
                ComponentLabel {
                    alpha: &rest.alpha + &inner.alpha,
                    kind: LabelKind::Peel { vertex: i, l, inner: Box::new(inner), rest: Box::new(rest) },
                }
            }
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        };
        label.validate(q)?;
        Ok(label)
    }

    /// Structural validity against the quiver's loop counts.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        if self.alpha.len() != q.vertex_count() {
            return Err(Error::Mismatch);
        }
        let one = |want: usize, w: &[usize]| -> Result<()> {
            let i = self.alpha.single_support().ok_or_else(|| Error::Validation("one-vertex label needs l·e_i".into()))?;
            if q.loop_count(i).min(2) != want {
                return Err(Error::Validation(format!("label kind does not match {} loops at vertex `{}`", q.loop_count(i), q.vertex_id(i))));
            }
            if w.contains(&0) || w.iter().sum::<usize>() != self.alpha[i] {
                return Err(Error::Validation("tuple must have positive parts summing to l".into()));
            }
            Ok(())
        };
        match &self.kind {
            LabelKind::Empty => {
                if !self.alpha.is_zero() {
                    return Err(Error::Validation("empty label with nonzero α".into()));
                }
            }
            LabelKind::Point => one(0, &[self.alpha.total()])?,
            LabelKind::Jordan(w) => {
                one(1, w)?;
                if w.windows(2).any(|p| p[0] < p[1]) {
                    return Err(Error::Validation("Jordan labels are partitions".into()));
                }
            }
            LabelKind::Multiloop(w) => one(2, w)?,
            LabelKind::Peel { vertex, l, inner, rest } => {
                if *l == 0 || inner.alpha != q.unit(*vertex).scaled(*l) || &rest.alpha + &inner.alpha != self.alpha {
                    return Err(Error::Validation("peel dimensions do not add up".into()));
                }
                inner.validate(q)?;
                rest.validate(q)?;
            }
        }
        Ok(())
    }

    /// Parse `"1,2"` (a one-vertex tuple) or a JSON label.
    pub fn parse(q: &Quiver, alpha: &DimVector, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            let label = ComponentLabel::from_json(q, &v)?;
            if &label.alpha != alpha {
                return Err(Error::Validation(format!("label has dimension {}, expected {alpha}", label.alpha)));
            }
            return Ok(label);
        }
        let i = alpha
            .single_support()
            .ok_or_else(|| Error::Usage("tuple labels need α supported on one vertex; pass a JSON label".into()))?;
        let w = t
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad label part `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        let kind = match q.loop_count(i) {
            0 => LabelKind::Point,
            1 => LabelKind::Jordan(w),
            _ => LabelKind::Multiloop(w),
        };
        let label = ComponentLabel { alpha: alpha.clone(), kind };
        label.validate(q)?;
        Ok(label)
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` ordered by length, then lexicographically.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 1..=n {
            prefix.push(k);
            go(n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Labels of the components of `Λ(l·e_i)` when vertex `i` carries `g` loops.
pub fn one_vertex_labels(g: usize, n_vertices: usize, i: usize, l: usize) -> Vec<ComponentLabel> {
    let mut a = vec![0; n_vertices];
    a[i] = l;
    let alpha = DimVector(a);
    if l == 0 {
        return vec![ComponentLabel::empty(n_vertices)];
    }
    let kinds: Vec<LabelKind> = match g {
        0 => vec![LabelKind::Point],
        1 => partitions(l).into_iter().map(LabelKind::Jordan).collect(),
        _ => compositions(l).into_iter().map(LabelKind::Multiloop).collect(),
    };
    kinds.into_iter().map(|kind| ComponentLabel { alpha: alpha.clone(), kind }).collect()
}

/// Point invariant used for deduplication: `α`, `ε`, and for every vertex
/// with `ε_j ≥ 1` the label of `x / 𝔍_j` and the fingerprint of `x|_{𝔍_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub alpha: DimVector,
    pub eps: Vec<usize>,
    pub peels: Vec<(usize, ComponentLabel, Fingerprint)>,
}

impl Fingerprint {
    /// Canonical label: peel at the first vertex with `ε ≥ 1`.
    pub fn canonical_label(&self) -> ComponentLabel {
        if self.alpha.is_zero() {
            return ComponentLabel::empty(self.alpha.len());
        }
        let (j, top, rest) = &self.peels[0];
        if self.alpha.single_support().is_some() {
            return top.clone();
        }
        ComponentLabel {
            alpha: self.alpha.clone(),
            kind: LabelKind::Peel {
                vertex: *j,
                l: self.eps[*j],
                inner: Box::new(top.clone()),
                rest: Box::new(rest.canonical_label()),
            },
        }
    }
}

/// Label of the component containing a point concentrated at vertex `i`,
/// read off the point itself.
pub fn one_vertex_label_of<F: Field>(x: &Rep<F>, i: usize) -> Result<ComponentLabel> {
    let local = local_at_vertex(x, i);
    let kind = match local.quiver().arrow_count() {
        0 => LabelKind::Point,
        1 => LabelKind::Jordan(
            flags::kernel_jumps(x.field(), local.map(0)).ok_or_else(|| Error::Precondition("loop is not nilpotent".into()))?,
        ),
        _ => LabelKind::Multiloop(
            flags::canonical_type(&local)
                .ok_or_else(|| Error::Precondition("point is not seminilpotent".into()))?
                .iter()
                .map(|s| s[0])
                .collect(),
        ),
    };
    Ok(ComponentLabel { alpha: x.alpha().clone(), kind })
}

pub fn fingerprint<F: Field>(x: &Rep<F>) -> Result<Fingerprint> {
    let n = x.quiver().vertex_count();
    let eps = flags::eps_all(x);
    let mut peels = Vec::new();
    if !x.alpha().is_zero() {
        if let Some(i) = x.alpha().single_support() {
            peels.push((i, one_vertex_label_of(x, i)?, fingerprint(&Rep::zero(x.quiver().clone(), DimVector(vec![0; n]), x.field().clone()))?));
        } else {
            for j in (0..n).filter(|&j| eps[j] >= 1) {
                let ideal = flags::ideal_subspace(x, &[j]);
                let (sub, quot) = x.split(&ideal)?;
                peels.push((j, one_vertex_label_of(&quot, j)?, fingerprint(&sub)?));
            }
            if peels.is_empty() {
                return Err(Error::Precondition("point has ε = 0 at every vertex".into()));
            }
        }
    }
    Ok(Fingerprint { alpha: x.alpha().clone(), eps, peels })
}

/// Re-label a point from its own invariants.
pub fn label_point<F: Field>(x: &Rep<F>) -> Result<ComponentLabel> {
    Ok(fingerprint(x)?.canonical_label())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consensus {
    Strong,
    Weak,
}

impl Consensus {
    pub fn as_str(self) -> &'static str {
        match self {
            Consensus::Strong => "strong",
            Consensus::Weak => "weak",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub label: ComponentLabel,
    pub dim: i64,
    pub eps: Vec<usize>,
    pub consensus: Consensus,
}

impl Component {
    pub fn to_json(&self, q: &Quiver) -> Value {
        let named = |v: &[usize]| -> Map<String, Value> {
            q.vertices().iter().zip(v).map(|(k, e)| (k.clone(), json!(e))).collect()
        };
        json!({
            "alpha": named(self.label.alpha.entries()),
            "label": self.label.to_json(q),
            "dim": self.dim,
            "eps": named(&self.eps),
            "consensus": self.consensus.as_str(),
        })
    }
}

/// Two raw peels that share a fingerprint and a peel vertex but differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeReport {
    pub kept: ComponentLabel,
    pub merged: ComponentLabel,
}

impl MergeReport {
    pub fn as_error(&self) -> Error {
        Error::DedupInconclusive { first: self.kept.short(), second: self.merged.short() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub components: Vec<Component>,
    pub merged: Vec<MergeReport>,
    /// Components of every smaller dimension vector met by the recursion.
    pub reachable: BTreeMap<DimVector, Vec<Component>>,
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub sampler: SamplerConfig,
    pub n_seeds: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { sampler: SamplerConfig::default(), n_seeds: 3 }
    }
}

/// `(α, α)`, cross-checked against the peeling recursion
/// `dim C = dim(inner) + dim(rest) + (α − l·e_i, l·e_i) + (l·e_i, α − l·e_i)`.
pub fn dimension(q: &Quiver, label: &ComponentLabel) -> Result<i64> {
    let direct = q.form_round(&label.alpha, &label.alpha)?;
    if let LabelKind::Peel { inner, rest, .. } = &label.kind {
        let rec = dimension(q, inner)?
            + dimension(q, rest)?
            + q.form_round(&rest.alpha, &inner.alpha)?
            + q.form_round(&inner.alpha, &rest.alpha)?;
        if rec != direct {
            return Err(Error::Validation(format!("dimension recursion gives {rec}, (α,α) = {direct}")));
        }
    }
    Ok(direct)
}

fn seed_for(cfg: &SamplerConfig, k: usize) -> SamplerConfig {
    cfg.with_seed(cfg.seed.wrapping_add(k as u64))
}

/// Sampled points of a component, one per seed `seed, seed+1, …`.
pub fn sample_points(q: &Arc<Quiver>, label: &ComponentLabel, cfg: &SamplerConfig, n: usize) -> Result<Vec<crate::rep::QRep>> {
    (0..n).into_par_iter().map(|k| Sampler::new(&seed_for(cfg, k)).component(q, label)).collect()
}

/// Per-vertex minimum of `ε` over `n_seeds` samples, with a consensus flag.
/// On disagreement a second batch is drawn with doubled bound.
pub fn eps_signature(q: &Arc<Quiver>, label: &ComponentLabel, cfg: &SamplerConfig, n_seeds: usize) -> Result<(Vec<usize>, Consensus)> {
    let pts = sample_points(q, label, cfg, n_seeds)?;
    let sigs: Vec<Vec<usize>> = pts.iter().map(flags::eps_all).collect();
    if sigs.windows(2).all(|p| p[0] == p[1]) {
        return Ok((sigs[0].clone(), Consensus::Strong));
    }
    let wide = SamplerConfig { bound: cfg.bound * 2, seed: cfg.seed.wrapping_add(n_seeds as u64), ..cfg.clone() };
    let more = sample_points(q, label, &wide, n_seeds)?;
    let all: Vec<Vec<usize>> = sigs.into_iter().chain(more.iter().map(flags::eps_all)).collect();
    Ok((min_signature(&all), Consensus::Weak))
}

fn min_signature(sigs: &[Vec<usize>]) -> Vec<usize> {
    (0..sigs[0].len()).map(|j| sigs.iter().map(|s| s[j]).min().unwrap()).collect()
}

/// Fingerprint of a label from its sampled points: the fingerprint of the
/// point with the smallest `ε` (the generic value) when seeds disagree.
pub fn label_fingerprint(q: &Arc<Quiver>, label: &ComponentLabel, cfg: &EnumerationConfig) -> Result<(Fingerprint, Consensus)> {
    let pts = sample_points(q, label, &cfg.sampler, cfg.n_seeds)?;
    let fps = pts.iter().map(fingerprint).collect::<Result<Vec<_>>>()?;
    if fps.windows(2).all(|p| p[0] == p[1]) {
        return Ok((fps[0].clone(), Consensus::Strong));
    }
    let min = min_signature(&fps.iter().map(|f| f.eps.clone()).collect::<Vec<_>>());
    let pick = fps.iter().filter(|f| f.eps == min).min().unwrap_or_else(|| fps.iter().min().unwrap());
    Ok((pick.clone(), Consensus::Weak))
}

/// All components of `Λ(α)`, canonical representatives in a deterministic order.
pub fn enumerate_components(q: &Arc<Quiver>, alpha: &DimVector, cfg: &EnumerationConfig) -> Result<Catalog> {
    if alpha.len() != q.vertex_count() {
        return Err(Error::Mismatch);
    }
    cfg.sampler.validate()?;
    let mut memo: BTreeMap<DimVector, Vec<Component>> = BTreeMap::new();
    let mut merged = Vec::new();
    let components = enumerate_rec(q, alpha, cfg, &mut memo, &mut merged)?;
    memo.remove(alpha);
    Ok(Catalog { components, merged, reachable: memo })
}

fn enumerate_rec(
    q: &Arc<Quiver>,
    alpha: &DimVector,
    cfg: &EnumerationConfig,
    memo: &mut BTreeMap<DimVector, Vec<Component>>,
    merged: &mut Vec<MergeReport>,
) -> Result<Vec<Component>> {
    if let Some(c) = memo.get(alpha) {
        return Ok(c.clone());
    }
    let n = q.vertex_count();
    let labels: Vec<(ComponentLabel, Option<Consensus>)> = if alpha.is_zero() {
        vec![(ComponentLabel::empty(n), None)]
    } else if let Some(i) = alpha.single_support() {
        one_vertex_labels(q.loop_count(i), n, i, alpha[i]).into_iter().map(|l| (l, None)).collect()
    } else {
        let mut raw = Vec::new();
        for i in alpha.support() {
            for l in 1..=alpha[i] {
                let rest_alpha = alpha.checked_sub(&q.unit(i).scaled(l)).unwrap();
                let rests = enumerate_rec(q, &rest_alpha, cfg, memo, merged)?;
                for inner in one_vertex_labels(q.loop_count(i), n, i, l) {
                    for rest in rests.iter().filter(|c| c.eps[i] == 0) {
                        raw.push(ComponentLabel {
                            alpha: alpha.clone(),
                            kind: LabelKind::Peel { vertex: i, l, inner: Box::new(inner.clone()), rest: Box::new(rest.label.clone()) },
                        });
                    }
                }
            }
        }
        let fps = raw.par_iter().map(|r| label_fingerprint(q, r, cfg)).collect::<Result<Vec<_>>>()?;
        let mut groups: BTreeMap<Fingerprint, Vec<(ComponentLabel, Consensus)>> = BTreeMap::new();
        for (r, (fp, c)) in raw.into_iter().zip(fps) {
            groups.entry(fp).or_default().push((r, c));
        }
        let mut out = Vec::new();
        for (fp, members) in groups {
            let canonical = fp.canonical_label();
            let vertex_of = |l: &ComponentLabel| match &l.kind {
                LabelKind::Peel { vertex, .. } => *vertex,
                _ => usize::MAX,
            };
            let kept = members.iter().find(|(m, _)| *m == canonical).map(|(m, _)| m.clone()).unwrap_or(canonical.clone());
            for (m, _) in &members {
                if *m != kept && vertex_of(m) == vertex_of(&kept) {
                    merged.push(MergeReport { kept: kept.clone(), merged: m.clone() });
                }
            }
            let consensus = if members.iter().all(|(_, c)| *c == Consensus::Strong) { Consensus::Strong } else { Consensus::Weak };
            out.push((kept, Some(consensus)));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    };
    let comps = labels
        .par_iter()
        .map(|(label, prior)| {
            let (eps, c) = eps_signature(q, label, &cfg.sampler, cfg.n_seeds)?;
            let consensus = match (prior, c) {
                (Some(Consensus::Weak), _) | (_, Consensus::Weak) => Consensus::Weak,
                _ => Consensus::Strong,
            };
            Ok(Component { label: label.clone(), dim: dimension(q, label)?, eps, consensus })
        })
        .collect::<Result<Vec<_>>>()?;
    memo.insert(alpha.clone(), comps.clone());
    Ok(comps)
}

/// DOT graph: one node per component (with every reachable rest label),
/// edges from a peel label to its rest, annotated `(i, l, inner)`.
pub fn export_crystal_graph(q: &Quiver, catalog: &Catalog) -> String {
    let mut nodes: BTreeMap<ComponentLabel, Component> = BTreeMap::new();
    fn collect(
        label: &ComponentLabel,
        catalog: &Catalog,
        top: &[Component],
        nodes: &mut BTreeMap<ComponentLabel, Component>,
    ) {
        let found = top
            .iter()
            .chain(catalog.reachable.get(&label.alpha).into_iter().flatten())
            .find(|c| &c.label == label)
            .cloned();
        if let Some(c) = found {
            nodes.entry(label.clone()).or_insert(c);
        }
        if let LabelKind::Peel { rest, .. } = &label.kind {
            collect(rest, catalog, top, nodes);
        }
    }
    for c in &catalog.components {
        collect(&c.label, catalog, &catalog.components, &mut nodes);
    }
    let ids: BTreeMap<&ComponentLabel, usize> = nodes.keys().enumerate().map(|(k, l)| (l, k)).collect();
    let mut out = String::from("digraph crystal {\n  rankdir=LR;\n");
    for (label, c) in &nodes {
        out.push_str(&format!(
            "  n{} [label=\"{}\\nα={} dim={} ε={:?}\"];\n",
            ids[label],
            label.short().replace('"', "'"),
            label.alpha,
            c.dim,
            c.eps
        ));
    }
    for label in nodes.keys() {
        if let LabelKind::Peel { vertex, l, inner, rest } = &label.kind {
            if let Some(t) = ids.get(rest.as_ref()) {
                out.push_str(&format!(
                    "  n{} -> n{} [label=\"({}, {}, {})\"];\n",
                    ids[label],
                    t,
                    q.vertex_id(*vertex),
                    l,
                    inner.short()
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(compositions(3), vec![vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(one_vertex_labels(2, 1, 0, 3).len(), 4);
        assert_eq!(one_vertex_labels(1, 1, 0, 3).len(), 3);
        assert_eq!(one_vertex_labels(5, 1, 0, 1).len(), 1);
    }

    #[test]
    fn a2_has_two_components() {
        let q = Arc::new(Quiver::linear(2));
        let cat = enumerate_components(&q, &DimVector(vec![1, 1]), &EnumerationConfig::default()).unwrap();
        assert_eq!(cat.components.len(), 2);
        assert!(cat.merged.is_empty());
        for c in &cat.components {
            assert_eq!(c.dim, 1);
        }
        let sigs: Vec<_> = cat.components.iter().map(|c| c.eps.clone()).collect();
        assert!(sigs.contains(&vec![1, 0]) && sigs.contains(&vec![0, 1]));
        let dot = export_crystal_graph(&q, &cat);
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn label_json_roundtrip() {
        let q = Quiver::linear(2);
        let inner = ComponentLabel { alpha: DimVector(vec![1, 0]), kind: LabelKind::Point };
        let rest = ComponentLabel { alpha: DimVector(vec![0, 1]), kind: LabelKind::Point };
        let l = ComponentLabel {
            alpha: DimVector(vec![1, 1]),
            kind: LabelKind::Peel { vertex: 0, l: 1, inner: Box::new(inner), rest: Box::new(rest) },
        };
        assert_eq!(ComponentLabel::from_json(&q, &l.to_json(&q)).unwrap(), l);
        assert_eq!(dimension(&q, &l).unwrap(), 1);
    }
}
