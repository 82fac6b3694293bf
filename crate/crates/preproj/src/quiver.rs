//! Quivers, preprojective relations, representations and their Hom/Ext¹.
//!
//! Vertices are 0-based internally and printed 1-based. A matrix for an
//! arrow `a: s -> t` has shape `dims[t] x dims[s]`. Paths are stored in the
//! order they are traversed, so the path `[a, b]` is the composite `b∘a`
//! (written `ba` in the usual right-to-left notation).
//!
//! For the linear quiver `Q_n` the arrow `a{i}` goes `i+1 -> i` and its
//! reverse in the double quiver is `a{i}*`.

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, parse_q, q, Matrix, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub name: String,
    pub num_vertices: usize,
    pub arrows: Vec<Arrow>,
    /// For a double quiver: arrows `[0, k)` come from the original quiver and
    /// arrow `k + j` is the reverse of arrow `j`.
    pub half: Option<usize>,
}

impl Quiver {
    pub fn new(name: &str, num_vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        for a in &arrows {
            if a.source >= num_vertices || a.target >= num_vertices {
                return Err(Error::Shape(format!("arrow {} has an invalid endpoint", a.id)));
            }
            if a.source == a.target {
                return Err(Error::Loop(a.source + 1));
            }
        }
        Ok(Quiver { name: name.to_string(), num_vertices, arrows, half: None })
    }

    /// `Q_n`: vertices 1..n, arrows `a{i}: i+1 -> i`.
    pub fn linear(n: usize) -> Self {
        let arrows = (1..n)
            .map(|i| Arrow { id: format!("a{i}"), source: i, target: i - 1 })
            .collect();
        Quiver { name: format!("Q{n}"), num_vertices: n, arrows, half: None }
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// The arrows of the original quiver when `self` is a double quiver.
    pub fn base_arrows(&self) -> &[Arrow] {
        match self.half {
            Some(k) => &self.arrows[..k],
            None => &self.arrows,
        }
    }
}

pub fn double_quiver(q: &Quiver) -> Result<Quiver> {
    if let Some(a) = q.arrows.iter().find(|a| a.source == a.target) {
        return Err(Error::Loop(a.source + 1));
    }
    let mut arrows = q.arrows.clone();
    for a in &q.arrows {
        arrows.push(Arrow { id: format!("{}*", a.id), source: a.target, target: a.source });
    }
    let name = match q.name.strip_prefix('Q') {
        Some(rest) => format!("A{rest}"),
        None => format!("{}~", q.name),
    };
    Ok(Quiver { name, num_vertices: q.num_vertices, arrows, half: Some(q.arrows.len()) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Q, Vec<usize>)>,
    pub source: usize,
    pub target: usize,
}

impl Relation {
    pub fn new(quiver: &Quiver, terms: Vec<(Q, Vec<usize>)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::BadRelation("no terms".into()));
        };
        let endpoints = |p: &Vec<usize>| -> Result<(usize, usize)> {
            if p.len() < 2 {
                return Err(Error::BadRelation("path shorter than 2".into()));
            }
            for w in p.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(Error::BadRelation("path is not composable".into()));
                }
            }
            Ok((quiver.arrows[p[0]].source, quiver.arrows[*p.last().unwrap()].target))
        };
        let (source, target) = endpoints(first)?;
        for (_, p) in &terms {
            if endpoints(p)? != (source, target) {
                return Err(Error::BadRelation("terms have different endpoints".into()));
            }
        }
        Ok(Relation { terms, source, target })
    }
}

/// One relation per vertex `i`: `Σ_{s(α)=i} α*α − Σ_{e(α)=i} αα*`, on the
/// double quiver of `q`. Vertices without arrows get no relation.
pub fn gp_relations(q: &Quiver) -> Result<Vec<Relation>> {
    let dq = double_quiver(q)?;
    let m = q.arrows.len();
    let mut out = Vec::new();
    for i in 0..q.num_vertices {
        let mut terms = Vec::new();
        for (k, a) in q.arrows.iter().enumerate() {
            if a.source == i {
                terms.push((Q::one(), vec![k, k + m]));
            }
        }
        for (k, a) in q.arrows.iter().enumerate() {
            if a.target == i {
                terms.push((-Q::one(), vec![k + m, k]));
            }
        }
        if !terms.is_empty() {
            out.push(Relation::new(&dq, terms)?);
        }
    }
    Ok(out)
}

/// A quiver with relations.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub quiver: Arc<Quiver>,
    pub relations: Vec<Relation>,
}

impl Algebra {
    pub fn preprojective(q: &Quiver) -> Result<Self> {
        Ok(Algebra { quiver: Arc::new(double_quiver(q)?), relations: gp_relations(q)? })
    }

    /// `Λ_n`, the preprojective algebra of type `A_n`.
    pub fn lambda(n: usize) -> Self {
        Self::preprojective(&Quiver::linear(n)).expect("linear quivers have no loops")
    }

    pub fn n(&self) -> usize {
        self.quiver.num_vertices
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub quiver: Arc<Quiver>,
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix>,
}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices || mats.len() != quiver.arrows.len() {
            return Err(Error::Shape("wrong number of dimensions or matrices".into()));
        }
        for (a, m) in quiver.arrows.iter().zip(&mats) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}x{} matrix",
                    a.id, dims[a.target], dims[a.source]
                )));
            }
        }
        Ok(Rep { quiver, dims, mats })
    }

    pub fn zero(quiver: Arc<Quiver>, dims: Vec<usize>) -> Self {
        let mats = quiver
            .arrows
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Rep { quiver, dims, mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mat(&self, id: &str) -> Option<&Matrix> {
        self.quiver.arrow_index(id).map(|k| &self.mats[k])
    }

    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let s = self.quiver.arrows[path[0]].source;
        let mut m = Matrix::identity(self.dims[s]);
        for &a in path {
            m = self.mats[a].mul(&m);
        }
        m
    }
}

pub fn check_relations(x: &Rep, rels: &[Relation]) -> Result<bool> {
    for r in rels {
        for (_, p) in &r.terms {
            if p.iter().any(|&a| a >= x.quiver.arrows.len()) {
                return Err(Error::Shape("relation uses an unknown arrow".into()));
            }
        }
        let mut sum = Matrix::zeros(x.dims[r.target], x.dims[r.source]);
        for (c, p) in &r.terms {
            sum = sum.add(&x.path_matrix(p).scale(c));
        }
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn direct_sum(x: &Rep, y: &Rep) -> Result<Rep> {
    if x.quiver != y.quiver {
        return Err(Error::QuiverMismatch);
    }
    let dims = x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect();
    let mats = x.mats.iter().zip(&y.mats).map(|(a, b)| a.block_diag(b)).collect();
    Ok(Rep { quiver: x.quiver.clone(), dims, mats })
}

/// Offsets of the blocks `Hom(X_s, Y_t)` inside a direct sum, row-major within a block.
fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut total = 0;
    for s in sizes {
        offs.push(total);
        total += s;
    }
    (offs, total)
}

/// The differential `d0(φ)_a = Y_a φ_{s(a)} − φ_{e(a)} X_a`.
pub(crate) fn d0_matrix(x: &Rep, y: &Rep) -> Matrix {
    let qv = &x.quiver;
    let (c0, n0) = offsets((0..qv.num_vertices).map(|i| y.dims[i] * x.dims[i]));
    let (c1, n1) = offsets(qv.arrows.iter().map(|a| y.dims[a.target] * x.dims[a.source]));
    let mut d = Matrix::zeros(n1, n0);
    for (k, a) in qv.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ya, xa) = (&y.mats[k], &x.mats[k]);
        for r in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                let row = c1[k] + r * x.dims[s] + c;
                // Y_a φ_s: Σ_j Y_a[r][j] φ_s[j][c]
                for j in 0..y.dims[s] {
                    let v = ya.get(r, j);
                    if !v.is_zero() {
                        let col = c0[s] + j * x.dims[s] + c;
                        let cur = d.get(row, col) + v;
                        d.set(row, col, cur);
                    }
                }
                // − φ_t X_a: Σ_j φ_t[r][j] X_a[j][c]
                for j in 0..x.dims[t] {
                    let v = xa.get(j, c);
                    if !v.is_zero() {
                        let col = c0[t] + r * x.dims[t] + j;
                        let cur = d.get(row, col) - v;
                        d.set(row, col, cur);
                    }
                }
            }
        }
    }
    d
}

/// The differential induced by quadratic relations: a term `c·[a, b]` sends
/// `ψ` to `c (Y_b ψ_a + ψ_b X_a)`.
fn d1_matrix(x: &Rep, y: &Rep, rels: &[Relation]) -> Result<Matrix> {
    let qv = &x.quiver;
    let (c1, n1) = offsets(qv.arrows.iter().map(|a| y.dims[a.target] * x.dims[a.source]));
    let (c2, n2) = offsets(rels.iter().map(|r| y.dims[r.target] * x.dims[r.source]));
    let mut d = Matrix::zeros(n2, n1);
    for (ri, rel) in rels.iter().enumerate() {
        let (rs, rt) = (rel.source, rel.target);
        for (coef, path) in &rel.terms {
            if path.len() != 2 {
                return Err(Error::BadRelation("Ext¹ complex needs quadratic relations".into()));
            }
            let (a, b) = (path[0], path[1]);
            let mid = qv.arrows[a].target;
            for r in 0..y.dims[rt] {
                for c in 0..x.dims[rs] {
                    let row = c2[ri] + r * x.dims[rs] + c;
                    // Y_b ψ_a : Σ_j Y_b[r][j] ψ_a[j][c], ψ_a ∈ Hom(X_rs, Y_mid)
                    for j in 0..y.dims[mid] {
                        let v = y.mats[b].get(r, j);
                        if !v.is_zero() {
                            let col = c1[a] + j * x.dims[rs] + c;
                            let cur = d.get(row, col) + v * coef;
                            d.set(row, col, cur);
                        }
                    }
                    // ψ_b X_a : Σ_j ψ_b[r][j] X_a[j][c], ψ_b ∈ Hom(X_mid, Y_rt)
                    for j in 0..x.dims[mid] {
                        let v = x.mats[a].get(j, c);
                        if !v.is_zero() {
                            let col = c1[b] + r * x.dims[mid] + j;
                            let cur = d.get(row, col) + v * coef;
                            d.set(row, col, cur);
                        }
                    }
                }
            }
        }
    }
    Ok(d)
}

pub fn hom_dim(x: &Rep, y: &Rep) -> Result<usize> {
    if x.quiver != y.quiver {
        return Err(Error::QuiverMismatch);
    }
    let d0 = d0_matrix(x, y);
    Ok(d0.cols() - d0.rank())
}

/// `dim Ext¹(X,Y) = dim ker d1 − rank d0` for the complex
/// `⊕ Hom(X_i,Y_i) → ⊕_a Hom(X_{s(a)},Y_{e(a)}) → ⊕_i Hom(X_i,Y_i)`.
pub fn ext1_dim(alg: &Algebra, x: &Rep, y: &Rep) -> Result<usize> {
    if *x.quiver != *alg.quiver || *y.quiver != *alg.quiver {
        return Err(Error::QuiverMismatch);
    }
    if !check_relations(x, &alg.relations)? || !check_relations(y, &alg.relations)? {
        return Err(Error::RelationsFail);
    }
    let d0 = d0_matrix(x, y);
    let d1 = d1_matrix(x, y, &alg.relations)?;
    debug_assert!(d1.mul(&d0).is_zero(), "d1 ∘ d0 must vanish");
    Ok(d1.cols() - d1.rank() - d0.rank())
}

/// Euler form of the base quiver: `Σ x_i y_i − Σ_{α} x_{s(α)} y_{e(α)}`.
pub fn euler_form(q: &Quiver, x: &[usize], y: &[usize]) -> i64 {
    let diag: i64 = x.iter().zip(y).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = q.base_arrows().iter().map(|a| (x[a.source] * y[a.target]) as i64).sum();
    diag - arrows
}

/// Independent value of `dim Ext¹`: `hom(X,Y) + hom(Y,X) − (d_X, d_Y)` with the
/// symmetrised Euler form of the base quiver.
pub fn ext1_formula(x: &Rep, y: &Rep) -> Result<usize> {
    let h = (hom_dim(x, y)? + hom_dim(y, x)?) as i64;
    let v = h - euler_form(&x.quiver, &x.dims, &y.dims) - euler_form(&x.quiver, &y.dims, &x.dims);
    usize::try_from(v).map_err(|_| Error::Other("negative Ext¹ from formula".into()))
}

pub fn is_nilpotent(x: &Rep) -> bool {
    // W_{k+1} at vertex t is spanned by the images of W_k under arrows into t.
    let n = x.quiver.num_vertices;
    let mut spans: Vec<Matrix> = (0..n).map(|i| Matrix::identity(x.dims[i])).collect();
    for _ in 0..=x.total_dim() {
        if spans.iter().all(|m| m.cols() == 0 || m.is_zero()) {
            return true;
        }
        let mut next: Vec<Option<Matrix>> = vec![None; n];
        for (k, a) in x.quiver.arrows.iter().enumerate() {
            let img = x.mats[k].mul(&spans[a.source]);
            next[a.target] = Some(match next[a.target].take() {
                None => img,
                Some(prev) => prev.transpose().vstack(&img.transpose()).transpose(),
            });
        }
        spans = next
            .into_iter()
            .enumerate()
            .map(|(i, m)| column_basis(m.unwrap_or_else(|| Matrix::zeros(x.dims[i], 0))))
            .collect();
    }
    spans.iter().all(|m| m.cols() == 0 || m.is_zero())
}

fn column_basis(m: Matrix) -> Matrix {
    if m.cols() == 0 {
        return m;
    }
    // Row space of the transpose, via the kernel complement trick: keep
    // columns that raise the rank.
    let mut kept: Vec<usize> = Vec::new();
    let mut current = Matrix::zeros(0, m.rows());
    for c in 0..m.cols() {
        let col = Matrix::from_fn(1, m.rows(), |_, r| m.get(r, c).clone());
        let cand = current.vstack(&col);
        if cand.rank() > current.rows() {
            current = cand;
            kept.push(c);
        }
    }
    current.transpose()
}

/// The indecomposable `Q_n`-representation with socle `S_i` and top `S_j` (1-based).
pub fn segment_rep(i: usize, j: usize, n: usize) -> Result<Rep> {
    if i == 0 || i > j || j > n {
        return Err(Error::BadSegment(i, j));
    }
    let q = Arc::new(Quiver::linear(n));
    let dims: Vec<usize> = (1..=n).map(|v| usize::from(i <= v && v <= j)).collect();
    let mut x = Rep::zero(q, dims);
    // a{k}: k+1 -> k, inside the segment when i <= k < j.
    for k in i..j {
        x.mats[k - 1] = Matrix::identity(1);
    }
    Ok(x)
}

/// Samples a random point of the fibre of `(x, x*) ↦ x` over `x` inside the
/// module variety of the preprojective algebra. The relations are linear in
/// the reversed arrows, so the fibre is the kernel of one linear system; the
/// returned point is an integer combination of a kernel basis with
/// coefficients uniform in `[-pool, pool]`.
pub fn fiber_sample(x: &Rep, seed: u64, pool: i64) -> Result<Rep> {
    let base = &*x.quiver;
    let dq = Arc::new(double_quiver(base)?);
    let m = base.arrows.len();
    let d = &x.dims;
    // Unknowns: entries of X_{α*} (shape d_{s(α)} × d_{e(α)}).
    let (uoff, nunk) = offsets(base.arrows.iter().map(|a| d[a.source] * d[a.target]));
    let (eoff, neq) = offsets((0..base.num_vertices).map(|i| d[i] * d[i]));
    let mut sys = Matrix::zeros(neq, nunk);
    for (k, a) in base.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let xa = &x.mats[k];
        // + X_{α*} X_α at vertex s: entry (r,c) gets X*[r][j] X_α[j][c]
        for r in 0..d[s] {
            for c in 0..d[s] {
                for j in 0..d[t] {
                    let v = xa.get(j, c);
                    if !v.is_zero() {
                        let row = eoff[s] + r * d[s] + c;
                        let col = uoff[k] + r * d[t] + j;
                        let cur = sys.get(row, col) + v;
                        sys.set(row, col, cur);
                    }
                }
            }
        }
        // − X_α X_{α*} at vertex t: entry (r,c) gets −X_α[r][j] X*[j][c]
        for r in 0..d[t] {
            for c in 0..d[t] {
                for j in 0..d[s] {
                    let v = xa.get(r, j);
                    if !v.is_zero() {
                        let row = eoff[t] + r * d[t] + c;
                        let col = uoff[k] + j * d[t] + c;
                        let cur = sys.get(row, col) - v;
                        sys.set(row, col, cur);
                    }
                }
            }
        }
    }
    let basis = sys.kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = vec![Q::zero(); nunk];
    for v in &basis {
        let c = q(rng.gen_range(-pool..=pool));
        for (p, b) in point.iter_mut().zip(v) {
            if !b.is_zero() {
                *p += b * &c;
            }
        }
    }
    let mut mats = x.mats.clone();
    for (k, a) in base.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        mats.push(Matrix::from_fn(d[s], d[t], |r, c| point[uoff[k] + r * d[t] + c].clone()));
    }
    debug_assert_eq!(mats.len(), 2 * m);
    Rep::new(dq, x.dims.clone(), mats)
}

/// Dense-orbit test: `Σ d_i² − hom(x,x)` equals `Σ_{α∈Q_1} d_{s(α)} d_{e(α)}`.
/// Equivalently `ext¹(x,x) = 0`.
pub fn orbit_dim_check(x: &Rep, degree: &[usize]) -> Result<bool> {
    if x.dims != degree {
        return Err(Error::Shape("degree does not match the dimension vector".into()));
    }
    let squares: i64 = x.dims.iter().map(|d| (d * d) as i64).sum();
    let comp: i64 = x
        .quiver
        .base_arrows()
        .iter()
        .map(|a| (x.dims[a.source] * x.dims[a.target]) as i64)
        .sum();
    Ok(squares - hom_dim(x, x)? as i64 == comp)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepJson {
    pub quiver: String,
    pub dims: Vec<usize>,
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

/// Resolves quiver names `A{n}` (preprojective `Λ_n`) and `Q{n}` (linear).
pub fn quiver_by_name(name: &str) -> Result<Arc<Quiver>> {
    let parse_n = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("unknown quiver {name}")));
    if let Some(n) = name.strip_prefix('A') {
        Ok(Algebra::lambda(parse_n(n)?).quiver)
    } else if let Some(n) = name.strip_prefix('Q') {
        Ok(Arc::new(Quiver::linear(parse_n(n)?)))
    } else {
        Err(Error::Parse(format!("unknown quiver {name}")))
    }
}

impl Rep {
    pub fn to_json(&self) -> RepJson {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| {
                let rows = (0..m.rows()).map(|r| (0..m.cols()).map(|c| fmt_q(m.get(r, c))).collect()).collect();
                (a.id.clone(), rows)
            })
            .collect();
        RepJson { quiver: self.quiver.name.clone(), dims: self.dims.clone(), arrows }
    }

    /// Missing arrows are zero.
    pub fn from_json(j: &RepJson) -> Result<Rep> {
        let quiver = quiver_by_name(&j.quiver)?;
        if j.dims.len() != quiver.num_vertices {
            return Err(Error::Shape("dims length does not match the quiver".into()));
        }
        let mut x = Rep::zero(quiver.clone(), j.dims.clone());
        for (id, rows) in &j.arrows {
            let k = quiver.arrow_index(id).ok_or_else(|| Error::Parse(format!("unknown arrow {id}")))?;
            let (r, c) = (x.mats[k].rows(), x.mats[k].cols());
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Shape(format!("arrow {id} needs a {r}x{c} matrix")));
            }
            for (ri, row) in rows.iter().enumerate() {
                for (ci, s) in row.iter().enumerate() {
                    let v = parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational {s}")))?;
                    x.mats[k].set(ri, ci, v);
                }
            }
        }
        Ok(x)
    }
}
