//! Euler characteristics of flag varieties `Φ_{𝐢,x}` and the expansions `δ_x`.
//!
//! Two evaluation routes:
//! * coordinate counting, for modules with monomial arrow matrices that admit a
//!   grading separating the basis vectors at every vertex (a one-parameter torus
//!   then acts with the coordinate flags as its fixed points);
//! * point counting over `F_p` for several primes, interpolation of the count
//!   polynomial and evaluation at `q = 1`, for everything else.

use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, Q};
use crate::quiver::{d0_matrix, is_nilpotent, Rep};
use crate::shuffle::{content, Word, WordPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// 0/1 matrices with at most one 1 per row and column whose coefficient
/// quiver (basis vectors as nodes, nonzero entries as edges) is a forest.
pub fn is_tree_basis(x: &Rep) -> bool {
    let offs = vertex_offsets(x);
    let total = x.total_dim();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for (k, a) in x.quiver.arrows.iter().enumerate() {
        let m = &x.mats[k];
        if !is_partial_permutation(m) || m.entries().any(|v| !v.is_zero() && *v != q(1)) {
            return false;
        }
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    let (u, v) = (find(&mut parent, offs[a.source] + c), find(&mut parent, offs[a.target] + r));
                    if u == v {
                        return false;
                    }
                    parent[u] = v;
                }
            }
        }
    }
    true
}

fn is_partial_permutation(m: &Matrix) -> bool {
    let row_ok = (0..m.rows()).all(|r| (0..m.cols()).filter(|&c| !m.get(r, c).is_zero()).count() <= 1);
    let col_ok = (0..m.cols()).all(|c| (0..m.rows()).filter(|&r| !m.get(r, c).is_zero()).count() <= 1);
    row_ok && col_ok
}

fn vertex_offsets(x: &Rep) -> Vec<usize> {
    let mut offs = Vec::with_capacity(x.dims.len());
    let mut acc = 0;
    for &d in &x.dims {
        offs.push(acc);
        acc += d;
    }
    offs
}

/// At most one nonzero entry in every row and column of every arrow matrix.
pub fn is_monomial(x: &Rep) -> bool {
    x.mats.iter().all(is_partial_permutation)
}

/// Whether integer weights on the basis vectors, with one degree per arrow
/// (`w(target) = w(source) + deg(arrow)` along every nonzero entry), can be
/// chosen pairwise distinct on the basis of each vertex.
pub fn has_separating_grading(x: &Rep) -> bool {
    let offs = vertex_offsets(x);
    let nb = x.total_dim();
    let na = x.quiver.arrows.len();
    let mut eqs: Vec<Vec<Q>> = Vec::new();
    for (k, a) in x.quiver.arrows.iter().enumerate() {
        let m = &x.mats[k];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    let mut row = vec![Q::zero(); nb + na];
                    row[offs[a.target] + r] += q(1);
                    row[offs[a.source] + c] -= q(1);
                    row[nb + k] -= q(1);
                    eqs.push(row);
                }
            }
        }
    }
    let system = to_matrix(&eqs, nb + na);
    let base_rank = system.rank();
    for (v, &d) in x.dims.iter().enumerate() {
        for i in 0..d {
            for j in i + 1..d {
                let mut diff = vec![Q::zero(); nb + na];
                diff[offs[v] + i] = q(1);
                diff[offs[v] + j] = q(-1);
                let aug = system.vstack(&to_matrix(&[diff], nb + na));
                if aug.rank() == base_rank {
                    return false;
                }
            }
        }
    }
    true
}

fn to_matrix(rows: &[Vec<Q>], cols: usize) -> Matrix {
    Matrix::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
}

/// Modules on which coordinate counting computes Euler characteristics.
pub fn coordinate_countable(x: &Rep) -> bool {
    is_monomial(x) && has_separating_grading(x)
}

struct CoordModule {
    letters: Vec<u8>,
    /// Bitmask of the basis vectors hit by the arrows out of each basis vector.
    images: Vec<u64>,
}

impl CoordModule {
    fn new(x: &Rep) -> Result<Self> {
        let total = x.total_dim();
        if total > 40 {
            return Err(Error::Other("module too large for coordinate counting".into()));
        }
        let offs = vertex_offsets(x);
        let mut letters = Vec::with_capacity(total);
        for (v, &d) in x.dims.iter().enumerate() {
            letters.extend(std::iter::repeat_n(v as u8 + 1, d));
        }
        let mut images = vec![0u64; total];
        for (k, a) in x.quiver.arrows.iter().enumerate() {
            let m = &x.mats[k];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_zero() {
                        images[offs[a.source] + c] |= 1 << (offs[a.target] + r);
                    }
                }
            }
        }
        Ok(CoordModule { letters, images })
    }

    fn full(&self) -> u64 {
        if self.letters.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.letters.len()) - 1
        }
    }

    fn addable(&self, s: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.letters.len()).filter(move |&b| s & (1 << b) == 0 && self.images[b] & !s == 0)
    }

    /// Words of coordinate composition series completing the submodule `s`.
    fn expansion(&self, s: u64, memo: &mut HashMap<u64, BTreeMap<Word, i64>>) -> BTreeMap<Word, i64> {
        if s == self.full() {
            return BTreeMap::from([(Vec::new(), 1)]);
        }
        if let Some(r) = memo.get(&s) {
            return r.clone();
        }
        let mut out: BTreeMap<Word, i64> = BTreeMap::new();
        for b in self.addable(s).collect::<Vec<_>>() {
            for (mut w, c) in self.expansion(s | 1 << b, memo) {
                w.push(self.letters[b]);
                *out.entry(w).or_insert(0) += c;
            }
        }
        memo.insert(s, out.clone());
        out
    }

    /// Coordinate series of type `word` completing `s`; `word` is consumed from its end.
    fn count(&self, s: u64, word: &[u8], memo: &mut HashMap<u64, i64>) -> i64 {
        let Some((&last, rest)) = word.split_last() else {
            return i64::from(s == self.full());
        };
        if let Some(&r) = memo.get(&s) {
            return r;
        }
        let mut total = 0;
        for b in self.addable(s).collect::<Vec<_>>() {
            if self.letters[b] == last {
                total += self.count(s | 1 << b, rest, memo);
            }
        }
        memo.insert(s, total);
        total
    }
}

/// `δ_x` by coordinate counting. The caller is responsible for `coordinate_countable(x)`.
pub fn coordinate_expansion(x: &Rep) -> Result<WordPoly> {
    let cm = CoordModule::new(x)?;
    Ok(cm.expansion(0, &mut HashMap::new()).into_iter().collect())
}

// ---------------------------------------------------------------------------
// Counting over F_p

#[derive(Clone)]
struct FpRep {
    p: u64,
    dims: Vec<usize>,
    ends: Vec<(usize, usize)>,
    /// Row-major matrices, `dims[target] x dims[source]`.
    mats: Vec<Vec<u64>>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn reduce_q(v: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = v.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = v.numer().mod_floor(&pb).to_u64()?;
    Some(num * inv_mod(den, p) % p)
}

fn reduce_matrix(m: &Matrix, p: u64) -> Option<Vec<u64>> {
    m.entries().map(|v| reduce_q(v, p)).collect()
}

/// Rank and kernel basis of a `rows x cols` matrix over `F_p`.
fn fp_kernel(mut m: Vec<u64>, rows: usize, cols: usize, p: u64) -> (usize, Vec<Vec<u64>>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else { continue };
        for k in 0..cols {
            m.swap(piv * cols + k, r * cols + k);
        }
        let inv = inv_mod(m[r * cols + c], p);
        for k in 0..cols {
            m[r * cols + k] = m[r * cols + k] * inv % p;
        }
        for i in 0..rows {
            let f = m[i * cols + c];
            if i != r && f != 0 {
                for k in 0..cols {
                    m[i * cols + k] = (m[i * cols + k] + (p - f) * m[r * cols + k]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row * cols + f]) % p;
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

impl FpRep {
    fn from_rep(x: &Rep, p: u64) -> Option<Self> {
        let mats = x.mats.iter().map(|m| reduce_matrix(m, p)).collect::<Option<Vec<_>>>()?;
        let ends = x.quiver.arrows.iter().map(|a| (a.source, a.target)).collect();
        Some(FpRep { p, dims: x.dims.clone(), ends, mats })
    }

    /// Vectors at vertex `i` killed by every arrow out of `i`.
    fn socle(&self, i: usize) -> Vec<Vec<u64>> {
        let d = self.dims[i];
        let mut stacked = Vec::new();
        let mut rows = 0;
        for (k, &(s, t)) in self.ends.iter().enumerate() {
            if s == i {
                stacked.extend_from_slice(&self.mats[k]);
                rows += self.dims[t];
            }
        }
        fp_kernel(stacked, rows, d, self.p).1
    }

    /// The quotient by the line spanned by `v` (a socle vector at vertex `i`).
    fn quotient(&self, i: usize, v: &[u64]) -> FpRep {
        let p = self.p;
        let d = self.dims[i];
        let piv = v.iter().position(|&c| c != 0).expect("nonzero vector");
        let inv = inv_mod(v[piv], p);
        let v: Vec<u64> = v.iter().map(|&c| c * inv % p).collect();
        let keep: Vec<usize> = (0..d).filter(|&c| c != piv).collect();
        let mut out = self.clone();
        out.dims[i] = d - 1;
        for (k, &(s, t)) in self.ends.iter().enumerate() {
            let m = &self.mats[k];
            if s == i {
                // Restrict to the lifts e_c, c ≠ piv.
                let rows = self.dims[t];
                out.mats[k] = (0..rows).flat_map(|r| keep.iter().map(move |&c| m[r * d + c])).collect();
            } else if t == i {
                // w ↦ w − w_piv v, then drop the pivot coordinate.
                let cols = self.dims[s];
                out.mats[k] = keep
                    .iter()
                    .flat_map(|&r| {
                        let v = &v;
                        (0..cols).map(move |c| (m[r * cols + c] + (p - m[piv * cols + c]) * v[r]) % p)
                    })
                    .collect();
            }
        }
        out
    }

    /// Point counts of all flag varieties, keyed by word.
    fn expansion(&self) -> BTreeMap<Word, u64> {
        if self.dims.iter().all(|&d| d == 0) {
            return BTreeMap::from([(Vec::new(), 1)]);
        }
        let mut out: BTreeMap<Word, u64> = BTreeMap::new();
        for i in 0..self.dims.len() {
            if self.dims[i] == 0 {
                continue;
            }
            let basis = self.socle(i);
            for v in lines(&basis, self.p) {
                for (mut w, c) in self.quotient(i, &v).expansion() {
                    w.push(i as u8 + 1);
                    *out.entry(w).or_insert(0) += c;
                }
            }
        }
        out
    }
}

/// One representative per line in the span of `basis`.
fn lines(basis: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let len = basis[0].len();
    let mut out = Vec::new();
    // Coefficient vectors whose first nonzero entry is 1.
    for lead in 0..k {
        let free = k - lead - 1;
        let combos = p.pow(free as u32);
        for idx in 0..combos {
            let mut coef = vec![0u64; k];
            coef[lead] = 1;
            let mut t = idx;
            for c in coef.iter_mut().skip(lead + 1) {
                *c = t % p;
                t /= p;
            }
            let mut v = vec![0u64; len];
            for (c, b) in coef.iter().zip(basis) {
                if *c != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y) % p;
                    }
                }
            }
            out.push(v);
        }
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Per-prime point counts used by [`fp_expansion`].
#[derive(Debug, Clone)]
pub struct PointCounts {
    pub primes: Vec<u64>,
    pub skipped: Vec<u64>,
    pub counts: Vec<BTreeMap<Word, u64>>,
}

/// Counts `F_p`-points of every flag variety for `needed` good primes. A prime
/// is bad when it divides a denominator or changes `dim End(x)`.
pub fn point_counts(x: &Rep, needed: usize) -> Result<PointCounts> {
    let d0 = d0_matrix(x, x);
    let hom_q = d0.cols() - d0.rank();
    let mut res = PointCounts { primes: Vec::new(), skipped: Vec::new(), counts: Vec::new() };
    let mut p = 2;
    while res.primes.len() < needed {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let (Some(fx), Some(d0p)) = (FpRep::from_rep(x, p), reduce_matrix(&d0, p)) else {
            res.skipped.push(p);
            continue;
        };
        let (rank, _) = fp_kernel(d0p, d0.rows(), d0.cols(), p);
        if d0.cols() - rank != hom_q {
            res.skipped.push(p);
            continue;
        }
        res.primes.push(p);
        res.counts.push(fx.expansion());
    }
    Ok(res)
}

/// Value at `t` of the polynomial through `(xs[k], ys[k])`.
fn lagrange_at(xs: &[u64], ys: &[u64], t: i64) -> Q {
    let mut acc = Q::zero();
    for (k, (&xk, &yk)) in xs.iter().zip(ys).enumerate() {
        let mut term = q(yk as i64);
        for (m, &xm) in xs.iter().enumerate() {
            if m != k {
                term = term * q(t - xm as i64) / q(xk as i64 - xm as i64);
            }
        }
        acc += term;
    }
    acc
}

/// `δ_x` from point counts: the flag variety of `x` has at most the dimension
/// `D = Σ d_i(d_i−1)/2` of the full flag variety, so its count polynomial is fixed
/// by `D+1` primes; two further primes check it.
pub fn fp_expansion(x: &Rep) -> Result<WordPoly> {
    let degree: usize = x.dims.iter().map(|d| d * d.saturating_sub(1) / 2).sum();
    let checks = 2;
    let pc = point_counts(x, degree + 1 + checks)?;
    let (fit, check) = pc.primes.split_at(degree + 1);
    let mut words: Vec<&Word> = pc.counts.iter().flat_map(|m| m.keys()).collect();
    words.sort();
    words.dedup();
    let mut out = WordPoly::zero();
    for w in words {
        let ys: Vec<u64> = pc.counts.iter().map(|m| m.get(w).copied().unwrap_or(0)).collect();
        let (yfit, ycheck) = ys.split_at(degree + 1);
        for (&pk, &yk) in check.iter().zip(ycheck) {
            if lagrange_at(fit, yfit, pk as i64) != q(yk as i64) {
                return Err(Error::NotPolynomialCount(format!("word {w:?} at p = {pk}")));
            }
        }
        let chi = lagrange_at(fit, yfit, 1);
        if !chi.is_integer() {
            return Err(Error::NotPolynomialCount(format!("non-integral value for word {w:?}")));
        }
        let v = chi.to_integer().to_i64().ok_or_else(|| Error::Other("coefficient overflow".into()))?;
        out.add_term(w.clone(), v);
    }
    Ok(out)
}

fn check_nilpotent(x: &Rep) -> Result<()> {
    if is_nilpotent(x) {
        Ok(())
    } else {
        Err(Error::Other("module is not nilpotent".into()))
    }
}

/// `δ_x = Σ_𝐢 χ(Φ_{𝐢,x}) w[𝐢]`.
pub fn delta_expansion(x: &Rep) -> Result<WordPoly> {
    check_nilpotent(x)?;
    if coordinate_countable(x) {
        coordinate_expansion(x)
    } else {
        fp_expansion(x)
    }
}

/// `χ(Φ_{𝐢,x})` for one word `𝐢`.
pub fn flag_count(x: &Rep, word: &[u8]) -> Result<i64> {
    if content(word, x.dims.len()).as_deref() != Some(&x.dims[..]) {
        return Err(Error::ContentMismatch);
    }
    check_nilpotent(x)?;
    if coordinate_countable(x) {
        let cm = CoordModule::new(x)?;
        Ok(cm.count(0, word, &mut HashMap::new()))
    } else {
        Ok(fp_expansion(x)?.coeff(word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::quiver::{direct_sum, Algebra};
    use crate::shuffle::minor_module;

    fn example5() -> Rep {
        let alg = Algebra::lambda(2);
        Rep::new(alg.quiver, vec![2, 2], vec![Matrix::from_ints(2, 2, &[1, 0, 0, 0]), Matrix::zeros(2, 2)]).unwrap()
    }

    fn simple(n: usize, i: usize) -> Rep {
        let alg = Algebra::lambda(n);
        let mut d = vec![0; n];
        d[i - 1] = 1;
        Rep::zero(alg.quiver, d)
    }

    #[test]
    fn example_module_word_2121() {
        let x = example5();
        assert!(is_tree_basis(&x));
        assert_eq!(flag_count(&x, &[2, 1, 2, 1]).unwrap(), 3);
        assert_eq!(fp_expansion(&x).unwrap().coeff(&[2, 1, 2, 1]), 3);
    }

    #[test]
    fn simple_and_doubled_simple() {
        let s1 = simple(2, 1);
        assert_eq!(flag_count(&s1, &[1]).unwrap(), 1);
        let s11 = direct_sum(&s1, &s1).unwrap();
        assert_eq!(flag_count(&s11, &[1, 1]).unwrap(), 2);
        assert_eq!(fp_expansion(&s11).unwrap().coeff(&[1, 1]), 2);
    }

    #[test]
    fn content_mismatch_rejected() {
        assert_eq!(flag_count(&simple(2, 1), &[2]), Err(Error::ContentMismatch));
    }

    #[test]
    fn generic_matrix_is_not_tree() {
        let alg = Algebra::lambda(2);
        let x = Rep::new(alg.quiver, vec![2, 2], vec![Matrix::from_ints(2, 2, &[1, 2, 3, 4]), Matrix::zeros(2, 2)])
            .unwrap();
        assert!(!is_tree_basis(&x));
        assert!(!is_monomial(&x));
    }

    #[test]
    fn square_skew_module_is_graded_but_not_forest() {
        let x = minor_module(&[1, 2], &[3, 4], 3).unwrap();
        assert!(!is_tree_basis(&x));
        assert!(coordinate_countable(&x));
        assert_eq!(coordinate_expansion(&x).unwrap(), fp_expansion(&x).unwrap());
    }

    #[test]
    fn lines_in_plane() {
        let basis = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(lines(&basis, 5).len(), 6);
    }
}
