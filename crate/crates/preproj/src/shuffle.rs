//! Word polynomials in the shuffle algebra, derivations, skew tableaux and minors.
//!
//! Words are written `w[...]`: the first letter labels the top
//! of a composition series and the last letter its socle.

use crate::error::{Error, Result};
use crate::linalg::{q, Matrix};
use crate::quiver::{Algebra, Rep};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Word = Vec<u8>;

/// Finitely supported integer combination of words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Word, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub word: Vec<u8>,
    pub coeff: i64,
}

impl WordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, 1);
        p
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: &[u8]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> WordPoly {
        let mut out = WordPoly::zero();
        for (w, c) in self.iter() {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn coeff_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.iter().map(|(w, c)| TermJson { word: w.clone(), coeff: c }).collect()
    }

    pub fn from_json(terms: &[TermJson]) -> WordPoly {
        let mut p = WordPoly::zero();
        for t in terms {
            p.add_term(t.word.clone(), t.coeff);
        }
        p
    }
}

impl FromIterator<(Word, i64)> for WordPoly {
    fn from_iter<T: IntoIterator<Item = (Word, i64)>>(iter: T) -> Self {
        let mut p = WordPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.iter() {
            let letters: Vec<String> = w.iter().map(u8::to_string).collect();
            let body = format!("w[{}]", letters.join(","));
            let mag = c.abs();
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

fn shuffle_words(u: &[u8], v: &[u8], prefix: &mut Word, out: &mut BTreeMap<Word, i64>, k: i64) {
    if u.is_empty() || v.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        *out.entry(w).or_insert(0) += k;
        return;
    }
    prefix.push(u[0]);
    shuffle_words(&u[1..], v, prefix, out, k);
    prefix.pop();
    prefix.push(v[0]);
    shuffle_words(u, &v[1..], prefix, out, k);
    prefix.pop();
}

/// The shuffle product, extended bilinearly.
pub fn shuffle(p: &WordPoly, r: &WordPoly) -> WordPoly {
    let mut acc = BTreeMap::new();
    for (u, a) in p.iter() {
        for (v, b) in r.iter() {
            shuffle_words(u, v, &mut Vec::new(), &mut acc, a * b);
        }
    }
    acc.into_iter().collect()
}

/// `E_i`: strips a leading letter `i`, kills words starting otherwise.
pub fn derivation(i: u8, p: &WordPoly) -> WordPoly {
    p.iter().filter(|(w, _)| w.first() == Some(&i)).map(|(w, c)| (w[1..].to_vec(), c)).collect()
}

/// Word reversal ζ.
pub fn reverse(p: &WordPoly) -> WordPoly {
    p.iter().map(|(w, c)| (w.iter().rev().copied().collect(), c)).collect()
}

/// Splits `word` into complementary subwords of contents `d1` and `d2`, one
/// entry per choice of positions.
pub fn comult_expand(word: &[u8], d1: &[usize], d2: &[usize]) -> Result<Vec<(Word, Word)>> {
    if d1.len() != d2.len() {
        return Err(Error::ContentMismatch);
    }
    let n = d1.len();
    let total: Vec<usize> = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
    if content(word, n) != Some(total) {
        return Err(Error::ContentMismatch);
    }
    let mut out = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut need = d1.to_vec();
    fn go(word: &[u8], need: &mut Vec<usize>, l: &mut Word, r: &mut Word, out: &mut Vec<(Word, Word)>) {
        let Some((&c, rest)) = word.split_first() else {
            if need.iter().all(|&x| x == 0) {
                out.push((l.clone(), r.clone()));
            }
            return;
        };
        let v = c as usize - 1;
        if need[v] > 0 {
            need[v] -= 1;
            l.push(c);
            go(rest, need, l, r, out);
            l.pop();
            need[v] += 1;
        }
        r.push(c);
        go(rest, need, l, r, out);
        r.pop();
    }
    go(word, &mut need, &mut left, &mut right, &mut out);
    Ok(out)
}

/// Letter multiplicities of `word` over `{1..n}`, or `None` if a letter is out of range.
pub fn content(word: &[u8], n: usize) -> Option<Vec<usize>> {
    let mut d = vec![0; n];
    for &c in word {
        if c == 0 || c as usize > n {
            return None;
        }
        d[c as usize - 1] += 1;
    }
    Some(d)
}

/// All words with the given content, in lexicographic order.
pub fn words_with_content(d: &[usize]) -> Vec<Word> {
    fn go(d: &mut Vec<usize>, cur: &mut Word, out: &mut Vec<Word>) {
        if d.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..d.len() {
            if d[i] > 0 {
                d[i] -= 1;
                cur.push(i as u8 + 1);
                go(d, cur, out);
                cur.pop();
                d[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut d.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// A skew diagram `λ/μ`; row `b` (1-based) holds the cells `(a, b)` with `μ_b < a ≤ λ_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
}

impl SkewShape {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>) -> Result<Self> {
        let dec = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
        if lambda.len() != mu.len() || !dec(&lambda) || !dec(&mu) || mu.iter().zip(&lambda).any(|(m, l)| m > l) {
            return Err(Error::Shape("not a skew diagram".into()));
        }
        Ok(SkewShape { lambda, mu })
    }

    /// The shape attached to the minor on `rows` and `cols` of the unitriangular matrix.
    pub fn from_minor(rows: &[usize], cols: &[usize]) -> Result<Self> {
        let k = rows.len();
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if k == 0 || cols.len() != k || !increasing(rows) || !increasing(cols) || rows[0] == 0 {
            return Err(Error::BadMinor("rows and columns must be increasing sequences of equal length".into()));
        }
        if rows.iter().zip(cols).any(|(i, j)| i > j) {
            return Err(Error::ZeroMinor);
        }
        let lambda = (0..k).map(|b| cols[k - 1 - b] + b).collect();
        let mu = (0..k).map(|b| rows[k - 1 - b] + b).collect();
        Self::new(lambda, mu)
    }

    /// Cells `(a, b)` row by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 1..=self.lambda.len() {
            for a in self.mu[b - 1] + 1..=self.lambda[b - 1] {
                out.push((a, b));
            }
        }
        out
    }

    pub fn contains(&self, (a, b): (usize, usize)) -> bool {
        b >= 1 && b <= self.lambda.len() && self.mu[b - 1] < a && a <= self.lambda[b - 1]
    }

    /// All standard Young tableaux, each as the list of cells in increasing order.
    pub fn standard_tableaux(&self) -> Vec<Vec<(usize, usize)>> {
        let cells = self.cells();
        let mut out = Vec::new();
        let mut placed = vec![false; cells.len()];
        let mut order = Vec::new();
        self.extend(&cells, &mut placed, &mut order, &mut out);
        out
    }

    fn extend(
        &self,
        cells: &[(usize, usize)],
        placed: &mut [bool],
        order: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if order.len() == cells.len() {
            out.push(order.clone());
            return;
        }
        for (k, &(a, b)) in cells.iter().enumerate() {
            if placed[k] {
                continue;
            }
            let ready = |c: (usize, usize)| !self.contains(c) || order.contains(&c);
            if ready((a - 1, b)) && ready((a, b - 1)) {
                placed[k] = true;
                order.push((a, b));
                self.extend(cells, placed, order, out);
                order.pop();
                placed[k] = false;
            }
        }
    }
}

/// `Σ_y w[y]` over standard tableaux `y` of the minor's skew shape.
pub fn syt_minor(rows: &[usize], cols: &[usize], n: usize) -> Result<WordPoly> {
    if cols.iter().any(|&j| j > n + 1) {
        return Err(Error::BadMinor(format!("column index exceeds {}", n + 1)));
    }
    let shape = SkewShape::from_minor(rows, cols)?;
    Ok(shape
        .standard_tableaux()
        .into_iter()
        .map(|y| (y.iter().rev().map(|&(a, b)| (a - b) as u8).collect(), 1))
        .collect())
}

/// The module with one basis vector per cell of `shape`, placed at vertex
/// `a − b`; `a{i}` moves a cell one step left and `a{i}*` one step up.
pub fn skew_module(shape: &SkewShape, n: usize) -> Result<Rep> {
    let cells = shape.cells();
    if cells.iter().any(|&(a, b)| a <= b || a - b > n) {
        return Err(Error::Shape("cell content outside 1..n".into()));
    }
    let alg = Algebra::lambda(n);
    let mut idx = vec![Vec::new(); n];
    for &c in &cells {
        idx[c.0 - c.1 - 1].push(c);
    }
    let dims: Vec<usize> = idx.iter().map(Vec::len).collect();
    let pos = |c: (usize, usize)| idx[c.0 - c.1 - 1].iter().position(|&x| x == c);
    let mut x = Rep::zero(alg.quiver.clone(), dims);
    for (k, arr) in alg.quiver.arrows.iter().enumerate() {
        let starred = k >= n - 1;
        let mut m = Matrix::zeros(x.dims[arr.target], x.dims[arr.source]);
        for (col, &(a, b)) in idx[arr.source].iter().enumerate() {
            let dest = if starred { (a, b - 1) } else { (a - 1, b) };
            if shape.contains(dest) {
                let row = pos(dest).expect("destination content matches the arrow target");
                m.set(row, col, q(1));
            }
        }
        x.mats[k] = m;
    }
    Ok(x)
}

/// The laminated module of a nonzero minor.
pub fn minor_module(rows: &[usize], cols: &[usize], n: usize) -> Result<Rep> {
    skew_module(&SkewShape::from_minor(rows, cols)?, n)
}
