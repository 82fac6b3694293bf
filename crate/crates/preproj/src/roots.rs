//! The bilinear lattice of the tubular algebra Δ, its elliptic root system,
//! Schur roots, the maps δ and ξ to the covering, and the edge criterion for
//! the component graph of `Λ₅`.
//!
//! Coordinates follow the diamond layout of Δ, top row first:
//!
//! | index | 0  | 1  | 2  | 3  | 4  | 5  | 6  | 7  | 8  | 9   |
//! |-------|----|----|----|----|----|----|----|----|----|-----|
//! | vertex| 2₂ | 4₁ | 1₂ | 3₁ | 5₀ | 2₁ | 4₀ | 1₁ | 3₀ | 5₋₁ |

use crate::error::{Error, Result};
use crate::fixtures;
use crate::linalg::{q, Matrix};
use crate::multiseg::TildeDim;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

pub const DIM: usize = 10;
pub type RootVec = [i64; DIM];

/// Vertices `(i, j)` of Δ inside the covering quiver, in coordinate order.
pub const VERTICES: [(usize, i64); DIM] =
    [(2, 2), (4, 1), (1, 2), (3, 1), (5, 0), (2, 1), (4, 0), (1, 1), (3, 0), (5, -1)];

const IDX_2_2: usize = 0;
const IDX_4_1: usize = 1;
const IDX_1_1: usize = 7;
const IDX_3_0: usize = 8;
const IDX_5_M1: usize = 9;

pub fn vertex_index(i: usize, j: i64) -> Option<usize> {
    VERTICES.iter().position(|&v| v == (i, j))
}

pub fn vertex_label(k: usize) -> String {
    let (i, j) = VERTICES[k];
    format!("{i}_{j}")
}

/// `E = I − (arrow counts) + (relation counts)`, so that `⟨d,e⟩ = dᵗ E e`.
pub fn ringel_form(n: usize, arrows: &[(usize, usize)], relations: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut e = vec![vec![0i64; n]; n];
    for (k, row) in e.iter_mut().enumerate() {
        row[k] = 1;
    }
    for &(s, t) in arrows {
        e[s][t] -= 1;
    }
    for &(s, t) in relations {
        e[s][t] += 1;
    }
    e
}

/// Arrows `α: i_j → (i−1)_j` and `α*: i_j → (i+1)_{j−1}` between vertices of Δ.
pub fn delta_arrows() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (k, &(i, j)) in VERTICES.iter().enumerate() {
        if let Some(t) = vertex_index(i.wrapping_sub(1), j) {
            out.push((k, t));
        }
        if let Some(t) = vertex_index(i + 1, j - 1) {
            out.push((k, t));
        }
    }
    out
}

/// The five zero relations of Δ, as (source, target) pairs.
pub fn delta_relations() -> Vec<(usize, usize)> {
    [((2, 2), (2, 1)), ((4, 1), (4, 0)), ((1, 2), (1, 1)), ((3, 1), (3, 0)), ((5, 0), (5, -1))]
        .iter()
        .map(|&(a, b)| (vertex_index(a.0, a.1).unwrap(), vertex_index(b.0, b.1).unwrap()))
        .collect()
}

/// `Φ = −E⁻¹Eᵗ`, required to be integral.
pub fn coxeter(e: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = e.len();
    let m = Matrix::from_fn(n, n, |r, c| q(e[r][c]));
    let inv = m.inverse().ok_or_else(|| Error::Other("singular bilinear form".into()))?;
    let phi = inv.mul(&m.transpose()).scale(&q(-1));
    let mut out = vec![vec![0i64; n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            let v = phi.get(r, c);
            if !v.is_integer() {
                return Err(Error::Other("Coxeter matrix is not integral".into()));
            }
            *x = v.to_integer().to_i64().ok_or_else(|| Error::Other("overflow".into()))?;
        }
    }
    Ok(out)
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn bil(e: &[Vec<i64>], d: &[i64], f: &[i64]) -> i64 {
    d.iter().zip(e).map(|(di, row)| di * row.iter().zip(f).map(|(a, b)| a * b).sum::<i64>()).sum()
}

/// `(ℤ¹⁰, ⟨−,−⟩, Φ)` with the radical generators.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub e: Vec<Vec<i64>>,
    pub phi: Vec<Vec<i64>>,
    pub h0: RootVec,
    pub hinf: RootVec,
}

impl Lattice {
    pub fn delta() -> &'static Lattice {
        static L: OnceLock<Lattice> = OnceLock::new();
        L.get_or_init(|| {
            let e = ringel_form(DIM, &delta_arrows(), &delta_relations());
            let phi = coxeter(&e).expect("Δ has an integral Coxeter matrix");
            Lattice { e, phi, h0: [0, 0, 1, 2, 1, 3, 3, 1, 2, 1], hinf: [1, 1, 1, 2, 1, 1, 1, 0, 0, 0] }
        })
    }

    pub fn form(&self, d: &RootVec, e: &RootVec) -> i64 {
        bil(&self.e, d, e)
    }

    pub fn q(&self, d: &RootVec) -> i64 {
        self.form(d, d)
    }

    pub fn apply_phi(&self, d: &RootVec) -> RootVec {
        to_root(&mat_vec(&self.phi, d))
    }

    pub fn phi_pow(&self, d: &RootVec, k: usize) -> RootVec {
        (0..k).fold(*d, |acc, _| self.apply_phi(&acc))
    }

    /// `(⟨d,h_∞⟩, ⟨h₀,d⟩)`.
    pub fn pairings(&self, d: &RootVec) -> (i64, i64) {
        (self.form(d, &self.hinf), self.form(&self.h0, d))
    }

    /// `h_{a,b} = a h₀ + b h_∞`.
    pub fn h(&self, a: i64, b: i64) -> RootVec {
        add(&scale(&self.h0, a), &scale(&self.hinf, b))
    }

    /// Whether `d` is a positive root: `q(d) ∈ {0,1}`, `d ≠ 0`, and
    /// `⟨d,h_∞⟩ > 0` or (`⟨d,h_∞⟩ = 0` and `⟨h₀,d⟩ > 0`).
    pub fn is_positive_root(&self, d: &RootVec) -> bool {
        let qd = self.q(d);
        let (a, b) = self.pairings(d);
        (qd == 0 || qd == 1) && (a > 0 || (a == 0 && b > 0))
    }

    pub fn rank(&self, d: &RootVec) -> usize {
        let mut v = *d;
        for k in 1..=6 {
            v = self.apply_phi(&v);
            if v == *d {
                return k;
            }
        }
        unreachable!("Φ has order 6")
    }

    pub fn classify(&self, d: &RootVec) -> Result<RootClass> {
        if !self.is_positive_root(d) {
            return Err(Error::NotPositiveRoot);
        }
        let rank = self.rank(d);
        let mut sum = [0i64; DIM];
        let mut v = *d;
        for _ in 0..rank {
            v = self.apply_phi(&v);
            sum = add(&sum, &v);
        }
        // The orbit sum is radical; read off its coordinates in h₀ (at 1₁) and h_∞ (at 2₂).
        let (a, b) = (sum[IDX_1_1], sum[IDX_2_2]);
        if self.h(a, b) != sum {
            return Err(Error::Other("orbit sum is not radical".into()));
        }
        let (pa, pb) = self.pairings(d);
        Ok(RootClass { slope: Slope::from_pairings(pa, pb)?, rank, ql: a.gcd(&b) as usize })
    }

    pub fn is_schur(&self, d: &RootVec) -> Result<bool> {
        if !self.is_positive_root(d) {
            return Err(Error::NotPositiveRoot);
        }
        let (a, b) = self.pairings(d);
        Ok(a.gcd(&b) <= 6)
    }
}

fn to_root(v: &[i64]) -> RootVec {
    let mut r = [0; DIM];
    r.copy_from_slice(v);
    r
}

pub fn add(a: &RootVec, b: &RootVec) -> RootVec {
    std::array::from_fn(|k| a[k] + b[k])
}

pub fn sub(a: &RootVec, b: &RootVec) -> RootVec {
    std::array::from_fn(|k| a[k] - b[k])
}

pub fn scale(a: &RootVec, s: i64) -> RootVec {
    std::array::from_fn(|k| a[k] * s)
}

/// Slopes in `ℚ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rational64),
    Infinity,
}

impl Slope {
    /// The slope `⟨h₀,d⟩/⟨d,h_∞⟩` from `(⟨d,h_∞⟩, ⟨h₀,d⟩)`.
    pub fn from_pairings(a: i64, b: i64) -> Result<Slope> {
        match (a, b) {
            (0, 0) => Err(Error::NotPositiveRoot),
            (0, _) => Ok(Slope::Infinity),
            _ => Ok(Slope::Finite(Rational64::new(b, a))),
        }
    }

    /// The primitive pair `(a₀, b₀)` with `b₀/a₀ = λ`, `a₀ > 0` or `(a₀,b₀) = (0,1)`.
    pub fn primitive(&self) -> (i64, i64) {
        match self {
            Slope::Infinity => (0, 1),
            Slope::Finite(r) => (*r.denom(), *r.numer()),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Infinity => write!(f, "inf"),
            Slope::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Slope::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl std::str::FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Slope::Infinity);
        }
        let bad = || Error::Parse(format!("bad slope {s}"));
        let r = match s.split_once('/') {
            Some((a, b)) => {
                let den: i64 = b.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Rational64::new(a.trim().parse().map_err(|_| bad())?, den)
            }
            None => Rational64::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Slope::Finite(r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootClass {
    pub slope: Slope,
    pub rank: usize,
    pub ql: usize,
}

/// The distinguished real roots, keyed by `(rank i, m, n)` where the roots in
/// a class have `⟨r,h_∞⟩ = 6m/i` and `⟨h₀,r⟩ = 6n/i`.
#[derive(Debug, Clone)]
pub struct BaseRoots {
    pub classes: BTreeMap<(usize, i64, i64), Vec<RootVec>>,
    /// Distinct vectors reached by the Φ′-orbits of the projective dimension vectors.
    pub orbit_count: usize,
    pub matches_fixture: bool,
    pub from_fixture: bool,
}

impl BaseRoots {
    pub fn all(&self) -> Vec<RootVec> {
        self.classes.values().flatten().copied().collect()
    }

    pub fn get(&self, rank: usize, m: i64, n: i64) -> &[RootVec] {
        self.classes.get(&(rank, m, n)).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Δ′: Δ without 4₁ and 1₁.
const DELTA_PRIME: [usize; 8] = [0, 2, 3, 4, 5, 6, 8, 9];

fn generate_base_roots(lat: &Lattice) -> (BTreeSet<RootVec>, usize) {
    let ep: Vec<Vec<i64>> = DELTA_PRIME.iter().map(|&r| DELTA_PRIME.iter().map(|&c| lat.e[r][c]).collect()).collect();
    let phip = coxeter(&ep).expect("Δ′ has an integral Coxeter matrix");
    let m = Matrix::from_fn(8, 8, |r, c| q(ep[r][c]));
    let inv = m.inverse().expect("E′ is unimodular");
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    for row in 0..8 {
        let mut v: Vec<i64> = (0..8).map(|c| inv.get(row, c).to_integer().to_i64().unwrap()).collect();
        for _ in 0..30 {
            found.insert(v.clone());
            v = mat_vec(&phip, &v);
        }
    }
    let orbit_count = found.len();
    // Close under the simple reflections of q′.
    let sym: Vec<Vec<i64>> = (0..8).map(|r| (0..8).map(|c| ep[r][c] + ep[c][r]).collect()).collect();
    let mut frontier: Vec<Vec<i64>> = found.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for i in 0..8 {
            let c: i64 = (0..8).map(|k| x[k] * sym[k][i]).sum();
            let mut y = x.clone();
            y[i] -= c;
            if found.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let roots = found
        .into_iter()
        .map(|v| {
            let mut full = [0i64; DIM];
            for (k, &idx) in DELTA_PRIME.iter().enumerate() {
                full[idx] = v[k];
            }
            let (a, b) = lat.pairings(&full);
            sub(&full, &lat.h(a.div_euclid(6), b.div_euclid(6)))
        })
        .collect();
    (roots, orbit_count)
}

fn group_roots(lat: &Lattice, roots: impl IntoIterator<Item = RootVec>) -> BTreeMap<(usize, i64, i64), Vec<RootVec>> {
    let mut classes: BTreeMap<(usize, i64, i64), Vec<RootVec>> = BTreeMap::new();
    for r in roots {
        let i = lat.rank(&r);
        let (a, b) = lat.pairings(&r);
        classes.entry((i, a * i as i64 / 6, b * i as i64 / 6)).or_default().push(r);
    }
    classes
}

/// Flattened transcribed table.
pub fn fixture_root_table() -> Result<BTreeMap<(usize, i64, i64), Vec<RootVec>>> {
    let mut out = BTreeMap::new();
    for (rank, entries) in fixtures::root_table()? {
        for e in entries {
            let roots = e
                .roots
                .iter()
                .map(|v| {
                    if v.len() == DIM {
                        Ok(to_root(v))
                    } else {
                        Err(Error::Parse("root vector must have 10 entries".into()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            out.insert((rank, e.mn[0], e.mn[1]), roots);
        }
    }
    Ok(out)
}

/// The 240 distinguished real roots generated from Δ′ and compared with the
/// transcribed table; on mismatch the table is used and a warning printed.
pub fn base_roots() -> &'static BaseRoots {
    static B: OnceLock<BaseRoots> = OnceLock::new();
    B.get_or_init(|| {
        let lat = Lattice::delta();
        let (generated, orbit_count) = generate_base_roots(lat);
        let fixture = fixture_root_table().ok();
        let fixture_set: Option<BTreeSet<RootVec>> = fixture.as_ref().map(|f| f.values().flatten().copied().collect());
        let matches = fixture_set.as_ref() == Some(&generated);
        if generated.len() == 240 || fixture.is_none() {
            if !matches {
                eprintln!("warning: generated base roots differ from the transcribed table");
            }
            BaseRoots { classes: group_roots(lat, generated), orbit_count, matches_fixture: matches, from_fixture: false }
        } else {
            eprintln!("warning: base-root generation produced {} roots; using the transcribed table", generated.len());
            let classes = group_roots(lat, fixture_set.unwrap_or_default());
            BaseRoots { classes, orbit_count, matches_fixture: matches, from_fixture: true }
        }
    })
}

/// `R^λ_ℓ(i) = { h_{a′,b′} + r | r ∈ R_{[a″,b″]}(i) }` with `(a,b) = ℓ(a₀,b₀)`,
/// `a = i a′ + a″`, `b = i b′ + b″`.
pub fn construct_class(slope: Slope, ql: usize, rank: usize) -> Result<Vec<RootVec>> {
    if ![2, 3, 6].contains(&rank) {
        return Err(Error::Other(format!("rank {rank} is not 2, 3 or 6")));
    }
    if ql == 0 {
        return Err(Error::Other("quasi-length must be positive".into()));
    }
    if ql.is_multiple_of(rank) {
        return Err(Error::EmptyClass);
    }
    let (a0, b0) = slope.primitive();
    let (a, b) = (ql as i64 * a0, ql as i64 * b0);
    let i = rank as i64;
    let shift = Lattice::delta().h(a.div_euclid(i), b.div_euclid(i));
    Ok(base_roots().get(rank, a.rem_euclid(i), b.rem_euclid(i)).iter().map(|r| add(&shift, r)).collect())
}

/// All Schur roots of slope `λ`: the imaginary root `h_{a₀,b₀}` followed by the
/// classes `R^λ_ℓ(i)` with `ℓ < i`.
pub fn schur_roots_of_slope(slope: Slope) -> Result<Vec<RootVec>> {
    let (a0, b0) = slope.primitive();
    let mut out = vec![Lattice::delta().h(a0, b0)];
    for rank in [2usize, 3, 6] {
        for ql in 1..rank {
            out.extend(construct_class(slope, ql, rank)?);
        }
    }
    Ok(out)
}

/// Pseudorandom positive roots: shifted base roots `h_{a′,b′} + r` and
/// imaginary roots `h_{a,b}`, spread over many slopes.
pub fn random_roots(count: usize, seed: u64) -> Vec<RootVec> {
    use rand::{Rng, SeedableRng};
    let lat = Lattice::delta();
    let base = base_roots().all();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = if rng.gen_ratio(1, 10) {
            lat.h(rng.gen_range(0..4), rng.gen_range(-4..5))
        } else {
            let r = base[rng.gen_range(0..base.len())];
            add(&r, &lat.h(rng.gen_range(0..4), rng.gen_range(-4..5)))
        };
        if lat.is_positive_root(&d) {
            out.push(d);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The covering quiver

/// Signed dimension vector on vertices `i_j` of the covering quiver.
pub type CoverVec = BTreeMap<(usize, i64), i64>;

fn cover(entries: &[(usize, i64)]) -> CoverVec {
    entries.iter().map(|&v| (v, 1)).collect()
}

/// Dimension vectors `p₁ … p₅` of the projective covering modules whose classes vanish.
pub fn p_vectors() -> [CoverVec; 5] {
    [
        cover(&[(1, 3), (2, 2), (3, 1), (4, 0), (5, -1)]),
        cover(&[(2, 2), (1, 2), (3, 1), (2, 1), (4, 0), (3, 0), (5, -1), (4, -1)]),
        cover(&[(3, 2), (2, 2), (4, 1), (1, 2), (3, 1), (5, 0), (2, 1), (4, 0), (3, 0)]),
        cover(&[(4, 1), (3, 1), (5, 0), (2, 1), (4, 0), (1, 1), (3, 0), (2, 0)]),
        cover(&[(5, 1), (4, 1), (3, 1), (2, 1), (1, 1)]),
    ]
}

fn row(i: usize, j: i64) -> i64 {
    i as i64 + 2 * j
}

fn shifted(v: &CoverVec, z: i64) -> CoverVec {
    v.iter().map(|(&(i, j), &c)| ((i, j + z), c)).collect()
}

fn axpy(acc: &mut CoverVec, v: &CoverVec, k: i64) {
    for (&key, &c) in v {
        let e = acc.entry(key).or_insert(0);
        *e += k * c;
        if *e == 0 {
            acc.remove(&key);
        }
    }
}

/// Top (highest row) and socle (lowest row) vertex of a p-vector.
fn extremes(v: &CoverVec) -> ((usize, i64), (usize, i64)) {
    let top = *v.keys().max_by_key(|&&(i, j)| row(i, j)).unwrap();
    let soc = *v.keys().min_by_key(|&&(i, j)| row(i, j)).unwrap();
    (top, soc)
}

/// The class in `K₀(Δ)` of a covering dimension vector: entries outside the
/// window of rows `3 ≤ i + 2j ≤ 6` are removed by subtracting shifted
/// p-vectors, which have zero class.
pub fn xi_signed(d: &CoverVec) -> RootVec {
    let ps = p_vectors();
    let tops: Vec<_> = ps.iter().map(|p| extremes(p).0).collect();
    let socles: Vec<_> = ps.iter().map(|p| extremes(p).1).collect();
    let mut v: CoverVec = d.iter().filter(|(_, &c)| c != 0).map(|(&k, &c)| (k, c)).collect();
    // Rows above the window, highest first.
    while let Some((&(i, j), &c)) = v.iter().filter(|(&(i, j), _)| row(i, j) > 6).max_by_key(|(&(i, j), _)| row(i, j)) {
        let k = tops.iter().position(|t| t.0 == i).expect("every vertex tops some p-vector");
        axpy(&mut v, &shifted(&ps[k], j - tops[k].1), -c);
    }
    // Rows below the window, lowest first.
    while let Some((&(i, j), &c)) = v.iter().filter(|(&(i, j), _)| row(i, j) < 3).min_by_key(|(&(i, j), _)| row(i, j)) {
        let k = socles.iter().position(|s| s.0 == i).expect("every vertex is the socle of some p-vector");
        axpy(&mut v, &shifted(&ps[k], j - socles[k].1), -c);
    }
    let mut out = [0i64; DIM];
    for (&(i, j), &c) in &v {
        out[vertex_index(i, j).expect("support inside the window")] = c;
    }
    out
}

pub fn xi_map(d: &TildeDim) -> RootVec {
    let cv: CoverVec = d.iter().map(|(i, j, c)| ((i, j), c as i64)).collect();
    xi_signed(&cv)
}

fn embed(r: &RootVec) -> CoverVec {
    VERTICES.iter().zip(r).filter(|(_, &c)| c != 0).map(|(&v, &c)| (v, c)).collect()
}

/// δ on `R⁺`, lifting a root to an indecomposable covering dimension vector.
pub fn delta_map(r: &RootVec) -> Result<TildeDim> {
    let lat = Lattice::delta();
    if !lat.is_positive_root(r) {
        return Err(Error::NotPositiveRoot);
    }
    let (a, b) = lat.pairings(r);
    let [p1, p2, p3, p4, p5] = p_vectors();
    let mut v = embed(r);
    let neg = |x: i64| -x.min(0);
    if a == 0 {
        // R^∞
        axpy(&mut v, &p1, neg(r[IDX_5_M1]));
        axpy(&mut v, &p3, neg(r[IDX_3_0]));
        axpy(&mut v, &p5, neg(r[IDX_1_1]));
    } else if b == 0 {
        // R⁰
        axpy(&mut v, &p2, neg(r[IDX_2_2]));
        axpy(&mut v, &p4, neg(r[IDX_4_1]));
    } else if b < 0 {
        // R^{+−}
        axpy(&mut v, &p2, -r[IDX_2_2]);
        axpy(&mut v, &p4, -r[IDX_4_1]);
    }
    let mut out = TildeDim::new();
    for ((i, j), c) in v {
        if c < 0 {
            return Err(Error::Other(format!("δ produced a negative entry at {i}_{j}")));
        }
        out.add(i, j, c as usize);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Edges

/// How the critical-pair definition is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CriticalReading {
    /// Both roots in one `R^μ_ℓ(6)`, so equal quasi-lengths.
    #[default]
    Literal,
    /// Both of rank 6 and the same slope; quasi-lengths may differ.
    Relaxed,
}

pub fn critical(d: &RootVec, e: &RootVec, reading: CriticalReading) -> Result<bool> {
    let lat = Lattice::delta();
    let (cd, ce) = (lat.classify(d)?, lat.classify(e)?);
    let same_tube = cd.rank == 6
        && ce.rank == 6
        && cd.slope == ce.slope
        && (reading == CriticalReading::Relaxed || cd.ql == ce.ql);
    Ok(same_tube && lat.form(d, e) == 0 && lat.form(e, d) == 0 && cd.ql + ce.ql >= 7)
}

/// The edge criterion between the components of two Schur roots.
pub fn edge(d: &RootVec, e: &RootVec, reading: CriticalReading) -> Result<bool> {
    let lat = Lattice::delta();
    if lat.form(d, e) < 0 || lat.form(e, d) < 0 {
        return Ok(false);
    }
    if !critical(d, e, reading)? {
        return Ok(true);
    }
    let mut v = *e;
    for _ in 1..=6 {
        v = lat.apply_phi(&v);
        let x = lat.form(d, &v);
        if !x.is_zero() {
            return Ok(x < 0);
        }
    }
    Ok(false)
}
