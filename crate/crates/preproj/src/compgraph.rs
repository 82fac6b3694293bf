//! Component graphs: sampled generic Ext for `Λ₂ … Λ₄`, and the lattice-side
//! edge criterion for `Λ₅`.

use crate::error::{Error, Result};
use crate::fixtures;
use crate::multiseg::{degree, psi, rep_of, Multisegment};
use crate::quiver::{ext1_dim, fiber_sample, orbit_dim_check, Algebra, Rep};
use crate::roots::{delta_map, edge, schur_roots_of_slope, CriticalReading, Lattice, RootVec, Slope};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Coordinates of sampled points are drawn from `[-POOL, POOL]`.
pub const POOL: i64 = 10_000;
pub const DEFAULT_TRIALS: usize = 5;
const ESCALATED_TRIALS: usize = 25;

/// Undirected graph with optional loops; edges stored as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentGraph {
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
    pub loops: BTreeSet<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    loops: Vec<usize>,
}

impl ComponentGraph {
    pub fn new(labels: Vec<String>) -> Self {
        ComponentGraph { labels, ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn connect(&mut self, u: usize, v: usize) {
        match u.cmp(&v) {
            std::cmp::Ordering::Equal => {
                self.loops.insert(u);
            }
            std::cmp::Ordering::Less => {
                self.edges.insert((u, v));
            }
            std::cmp::Ordering::Greater => {
                self.edges.insert((v, u));
            }
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops.contains(&u)
        } else {
            self.edges.contains(&(u.min(v), u.max(v)))
        }
    }

    /// The subgraph on `keep` (in the given order) without loops.
    pub fn induced(&self, keep: &[usize]) -> ComponentGraph {
        let mut g = ComponentGraph::new(keep.iter().map(|&k| self.labels[k].clone()).collect());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    g.connect(a, b);
                }
            }
        }
        g
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson {
            vertices: self.labels.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            loops: self.loops.iter().copied().collect(),
        };
        serde_json::to_string_pretty(&j).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<ComponentGraph> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut g = ComponentGraph::new(j.vertices);
        for [u, v] in j.edges {
            if u >= g.len() || v >= g.len() {
                return Err(Error::Parse(format!("edge ({u},{v}) out of range")));
            }
            g.connect(u, v);
        }
        for u in j.loops {
            if u >= g.len() {
                return Err(Error::Parse(format!("loop {u} out of range")));
            }
            g.connect(u, u);
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph C {\n");
        for (k, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  v{k} [label=\"{}\"];", l.replace('"', "'"));
        }
        for &u in &self.loops {
            let _ = writeln!(s, "  v{u} -- v{u};");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  v{u} -- v{v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn export(&self, format: &str) -> Result<String> {
        match format {
            "dot" => Ok(self.to_dot()),
            "json" => Ok(self.to_json()),
            other => Err(Error::Other(format!("unknown format {other}"))),
        }
    }
}

/// Indecomposable components of `Λ_n` for `n ∈ {2,3,4}` and the positions of
/// the projective ones.
pub fn indec_components(n: usize) -> Result<(Vec<Multisegment>, Vec<usize>)> {
    if !(2..=4).contains(&n) {
        return Err(Error::Other(format!("no component list for n = {n}")));
    }
    fixtures::indecomposables(n)
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    // splitmix64 over the combined key.
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random point of `Z_m`: a generic point of the linear fibre over the
/// dense-orbit representative of `m`. Components with a dense orbit are
/// resampled until the orbit check passes.
pub fn generic_point(m: &Multisegment, n: usize, seed: u64, dense: bool) -> Result<Rep> {
    let base = rep_of(m, n)?;
    let deg = degree(m, n);
    let mut last = None;
    for attempt in 0..20u64 {
        let x = fiber_sample(&base, mix(seed, attempt, 0x5eed), POOL)?;
        if !dense || orbit_dim_check(&x, &deg)? {
            return Ok(x);
        }
        last = Some(x);
    }
    last.ok_or_else(|| Error::Other("no sample".into()))
}

/// `min` over `trials` independent pairs of `dim Ext¹(x, y)` with `x ∈ Z_{m′}`, `y ∈ Z_{m″}`.
pub fn generic_ext(m1: &Multisegment, m2: &Multisegment, n: usize, trials: usize, seed: u64) -> Result<usize> {
    let alg = Algebra::lambda(n);
    let mut best = usize::MAX;
    for t in 0..trials as u64 {
        let x = generic_point(m1, n, mix(seed, t, 1), true)?;
        let y = generic_point(m2, n, mix(seed, t, 2), true)?;
        best = best.min(ext1_dim(&alg, &x, &y)?);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Generic Ext values between all indecomposable components of `Λ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTable {
    pub n: usize,
    pub components: Vec<Multisegment>,
    pub projective: Vec<usize>,
    /// `values[i][j] = ext¹(Z_i, Z_j)`.
    pub values: Vec<Vec<usize>>,
    /// Pairs where the two orders of one sampled pair gave different dimensions.
    pub asymmetric: Vec<(usize, usize)>,
}

pub fn ext_table(n: usize, trials: usize, seed: u64) -> Result<ExtTable> {
    let (components, projective) = indec_components(n)?;
    let alg = Algebra::lambda(n);
    let k = components.len();
    // Two independent points per component and trial.
    let points: Vec<Vec<[Rep; 2]>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            components
                .iter()
                .enumerate()
                .map(|(c, m)| {
                    Ok([
                        generic_point(m, n, mix(seed, t, 2 * c as u64), true)?,
                        generic_point(m, n, mix(seed, t, 2 * c as u64 + 1), true)?,
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let results: Vec<(usize, usize, usize, usize, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (mut ij, mut ji, mut asym) = (usize::MAX, usize::MAX, false);
            for pts in &points {
                let (x, y) = (&pts[i][0], &pts[j][1]);
                let a = ext1_dim(&alg, x, y)?;
                let b = ext1_dim(&alg, y, x)?;
                asym |= a != b;
                ij = ij.min(a);
                ji = ji.min(b);
            }
            Ok((i, j, ij, ji, asym))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![vec![0; k]; k];
    let mut asymmetric = Vec::new();
    for (i, j, ij, ji, asym) in results {
        values[i][j] = ij;
        values[j][i] = ji;
        if asym {
            asymmetric.push((i, j));
        }
    }
    Ok(ExtTable { n, components, projective, values, asymmetric })
}

impl ExtTable {
    /// Edges where the generic Ext vanishes in both directions; loops included.
    pub fn graph(&self) -> ComponentGraph {
        let mut g = ComponentGraph::new(self.components.iter().map(|m| m.to_string()).collect());
        for i in 0..g.len() {
            for j in i..g.len() {
                if self.values[i][j] == 0 && self.values[j][i] == 0 {
                    g.connect(i, j);
                }
            }
        }
        g
    }
}

pub fn build_graph(n: usize, trials: usize, seed: u64) -> Result<ComponentGraph> {
    Ok(ext_table(n, trials, seed)?.graph())
}

/// Builds the graph for each seed; if the results differ, rebuilds with an
/// escalated trial count. Returns the graph and whether all seeds agreed.
pub fn build_graph_stable(n: usize, trials: usize, seeds: &[u64]) -> Result<(ComponentGraph, bool)> {
    let graphs = seeds.iter().map(|&s| build_graph(n, trials, s)).collect::<Result<Vec<_>>>()?;
    if graphs.windows(2).all(|w| w[0] == w[1]) {
        return Ok((graphs.into_iter().next().unwrap_or_default(), true));
    }
    let graphs = seeds.iter().map(|&s| build_graph(n, ESCALATED_TRIALS.max(trials), s)).collect::<Result<Vec<_>>>()?;
    let agree = graphs.windows(2).all(|w| w[0] == w[1]);
    Ok((graphs.into_iter().next().unwrap_or_default(), agree))
}

/// The graph without projective components and without loops.
pub fn reduced(g: &ComponentGraph, projective: &[usize]) -> ComponentGraph {
    let keep: Vec<usize> = (0..g.len()).filter(|k| !projective.contains(k)).collect();
    g.induced(&keep)
}

/// Compares a reduced `Λ₄` graph with the transcribed edge list (1-based).
pub fn check_g4_fixture(g: &ComponentGraph) -> Result<FixtureDiff> {
    let f = fixtures::g4_edges()?;
    let expected: BTreeSet<(usize, usize)> = f.edges.iter().map(|[u, v]| (u.min(v) - 1, u.max(v) - 1)).collect();
    Ok(FixtureDiff {
        vertices: (g.len(), f.vertices),
        missing: expected.difference(&g.edges).copied().collect(),
        extra: g.edges.difference(&expected).copied().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureDiff {
    /// (computed, expected)
    pub vertices: (usize, usize),
    pub missing: Vec<(usize, usize)>,
    pub extra: Vec<(usize, usize)>,
}

impl FixtureDiff {
    pub fn matches(&self) -> bool {
        self.vertices.0 == self.vertices.1 && self.missing.is_empty() && self.extra.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Maximal cliques

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        (0..n).for_each(|k| b.insert(k));
        b
    }
    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }
    fn remove(&mut self, k: usize) {
        self.0[k / 64] &= !(1 << (k % 64));
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

/// All maximal cliques (loops ignored), each sorted, in lexicographic order.
pub fn max_cliques(g: &ComponentGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut nbr = vec![BitSet::empty(n); n];
    for &(u, v) in &g.edges {
        nbr[u].insert(v);
        nbr[v].insert(u);
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(&nbr, &mut r, BitSet::full(n), BitSet::empty(n), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(nbr: &[BitSet], r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    // Pivot on the vertex of P ∪ X with the most neighbours in P.
    let pivot = p.iter().chain(x.iter()).max_by_key(|&u| nbr[u].and(&p).count()).expect("P is nonempty");
    for v in p.and_not(&nbr[pivot]).iter().collect::<Vec<_>>() {
        r.push(v);
        bron_kerbosch(nbr, r, p.and(&nbr[v]), x.and(&nbr[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

// ---------------------------------------------------------------------------
// Λ₅

/// A finite family of Schur roots: given slopes, quasi-lengths up to `max_ql`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub slopes: Vec<Slope>,
    pub max_ql: usize,
}

impl Slice {
    /// Slopes `b/a` with `|a|, |b| ≤ bound` and quasi-length at most 7.
    pub fn default_bounded(bound: i64) -> Slice {
        let mut slopes = BTreeSet::new();
        slopes.insert(Slope::Infinity);
        for a in 1..=bound {
            for b in -bound..=bound {
                slopes.insert(Slope::Finite(num_rational::Rational64::new(b, a)));
            }
        }
        Slice { slopes: slopes.into_iter().collect(), max_ql: 7 }
    }

    pub fn roots(&self) -> Result<Vec<RootVec>> {
        let lat = Lattice::delta();
        let mut out = Vec::new();
        for &s in &self.slopes {
            for r in schur_roots_of_slope(s)? {
                if lat.classify(&r)?.ql <= self.max_ql {
                    out.push(r);
                }
            }
        }
        Ok(out)
    }
}

pub fn root_label(r: &RootVec) -> String {
    let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Λ₅-modules in the projective components `C₁ … C₅` have multisegment `Σ_i [i, i+j−1]`.
pub fn projective_multisegment(j: usize) -> Result<Multisegment> {
    let segs: Vec<(usize, usize, usize)> = (1..=5 + 1 - j).map(|i| (i, i + j - 1, 1)).collect();
    Multisegment::from_segments(&segs)
}

/// Graph on the given Schur roots plus `C₁ … C₅`, with edges from the lattice criterion.
pub fn build_graph_a5(roots: &[RootVec], reading: CriticalReading) -> Result<ComponentGraph> {
    let mut labels: Vec<String> = roots.iter().map(root_label).collect();
    labels.extend((1..=5).map(|j| format!("C{j}")));
    let k = roots.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let adj: Vec<bool> = pairs.par_iter().map(|&(i, j)| edge(&roots[i], &roots[j], reading)).collect::<Result<_>>()?;
    let mut g = ComponentGraph::new(labels);
    for (&(i, j), a) in pairs.iter().zip(adj) {
        if a {
            g.connect(i, j);
        }
    }
    for c in k..k + 5 {
        for v in 0..k + 5 {
            g.connect(c, v);
        }
    }
    Ok(g)
}

/// The Λ₅ multisegment of the component of a Schur root.
pub fn a5_multisegment(r: &RootVec) -> Result<Multisegment> {
    Ok(psi(&delta_map(r)?))
}

/// One row of the Λ₅ cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub d: RootVec,
    pub e: RootVec,
    pub sampled_ext: (usize, usize),
    pub literal: bool,
    pub relaxed: bool,
}

impl CrossCheck {
    pub fn sampled_edge(&self) -> bool {
        self.sampled_ext == (0, 0)
    }
}

/// Compares the lattice criterion with sampled generic Ext on all pairs of
/// the given Schur roots whose modules have total dimension at most `max_dim`.
pub fn a5_cross_check(roots: &[RootVec], max_dim: usize, trials: usize, seed: u64) -> Result<Vec<CrossCheck>> {
    let lat = Lattice::delta();
    let mut info = Vec::new();
    for r in roots {
        let m = a5_multisegment(r)?;
        let dim: usize = degree(&m, 5).iter().sum();
        // Real Schur roots have a dense orbit in their component.
        info.push((*r, m, dim, lat.q(r) == 1));
    }
    let mut pairs = Vec::new();
    for i in 0..info.len() {
        for j in i..info.len() {
            if info[i].2 + info[j].2 <= max_dim {
                pairs.push((i, j));
            }
        }
    }
    let alg = Algebra::lambda(5);
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (d, md, _, dense_d) = &info[i];
            let (e, me, _, dense_e) = &info[j];
            let mut best = (usize::MAX, usize::MAX);
            for t in 0..trials as u64 {
                let x = generic_point(md, 5, mix(seed, t, 2 * i as u64), *dense_d)?;
                let y = generic_point(me, 5, mix(seed, t, 2 * j as u64 + 1), *dense_e)?;
                best.0 = best.0.min(ext1_dim(&alg, &x, &y)?);
                best.1 = best.1.min(ext1_dim(&alg, &y, &x)?);
            }
            Ok(CrossCheck {
                d: *d,
                e: *e,
                sampled_ext: best,
                literal: edge(d, e, CriticalReading::Literal)?,
                relaxed: edge(d, e, CriticalReading::Relaxed)?,
            })
        })
        .collect()
}
