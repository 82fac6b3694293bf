//! Multisegments, dense orbits of `Q_n` and the map ψ.

use crate::error::{Error, Result};
use crate::quiver::{direct_sum, segment_rep, Quiver, Rep};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// A formal sum `Σ m_ij [i,j]`, segments 1-based with `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multisegment {
    segs: BTreeMap<(usize, usize), usize>,
}

impl Multisegment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_segments(segs: &[(usize, usize, usize)]) -> Result<Self> {
        let mut m = Self::new();
        for &(i, j, k) in segs {
            m.add(i, j, k)?;
        }
        Ok(m)
    }

    pub fn add(&mut self, i: usize, j: usize, mult: usize) -> Result<()> {
        if i == 0 || i > j {
            return Err(Error::BadSegment(i, j));
        }
        if mult > 0 {
            *self.segs.entry((i, j)).or_default() += mult;
        }
        Ok(())
    }

    pub fn plus(&self, other: &Multisegment) -> Multisegment {
        let mut out = self.clone();
        for (&(i, j), &k) in &other.segs {
            *out.segs.entry((i, j)).or_default() += k;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// Segments with multiplicities in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.segs.iter().map(|(&(i, j), &k)| (i, j, k))
    }

    pub fn num_segments(&self) -> usize {
        self.segs.values().sum()
    }

    pub fn max_vertex(&self) -> usize {
        self.segs.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Vec<[usize; 3]> {
        self.iter().map(|(i, j, k)| [i, j, k]).collect()
    }

    pub fn from_json(v: &[[usize; 3]]) -> Result<Self> {
        let t: Vec<_> = v.iter().map(|a| (a[0], a[1], a[2])).collect();
        Self::from_segments(&t)
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(i, j, k)| if k == 1 { format!("[{i},{j}]") } else { format!("{k}[{i},{j}]") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    /// Parses `2[1,1]+[2,3]`; `0` or the empty string is the empty multisegment.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut m = Multisegment::new();
        if s.is_empty() || s == "0" {
            return Ok(m);
        }
        let bad = || Error::Parse(format!("bad multisegment {s}"));
        for part in s.split('+') {
            let open = part.find('[').ok_or_else(bad)?;
            let mult = if open == 0 { 1 } else { part[..open].parse().map_err(|_| bad())? };
            let inner = part[open..].strip_prefix('[').and_then(|p| p.strip_suffix(']')).ok_or_else(bad)?;
            let (i, j) = inner.split_once(',').ok_or_else(bad)?;
            m.add(i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?, mult)?;
        }
        Ok(m)
    }
}

/// `d_k = Σ_{i ≤ k ≤ j} m_ij`, of length `n` (at least the largest vertex used).
pub fn degree(m: &Multisegment, n: usize) -> Vec<usize> {
    let mut d = vec![0; n.max(m.max_vertex())];
    for (i, j, k) in m.iter() {
        for x in &mut d[i - 1..j] {
            *x += k;
        }
    }
    d
}

/// The multisegment of the dense orbit in `rep(Q_n, d)`: peel off `[a,b]`
/// with `a` the first nonzero position and `b` the end of the nonzero run.
pub fn msm_max(d: &[usize]) -> Multisegment {
    let mut d = d.to_vec();
    let mut m = Multisegment::new();
    while let Some(a) = d.iter().position(|&x| x > 0) {
        let b = (a..d.len()).take_while(|&k| d[k] > 0).last().unwrap_or(a);
        for x in &mut d[a..=b] {
            *x -= 1;
        }
        m.add(a + 1, b + 1, 1).expect("a <= b");
    }
    m
}

/// A point of the orbit `O_m` in `rep(Q_n)`.
pub fn rep_of(m: &Multisegment, n: usize) -> Result<Rep> {
    if m.max_vertex() > n {
        return Err(Error::BadSegment(1, m.max_vertex()));
    }
    let mut x = Rep::zero(Arc::new(Quiver::linear(n)), vec![0; n]);
    for (i, j, k) in m.iter() {
        let s = segment_rep(i, j, n)?;
        for _ in 0..k {
            x = direct_sum(&x, &s)?;
        }
    }
    Ok(x)
}

/// A dimension vector on the covering quiver, vertices `i_j` with `1 ≤ i ≤ n`
/// and level `j ∈ ℤ`. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TildeDim {
    entries: BTreeMap<(i64, usize), usize>,
}

impl TildeDim {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples(t: &[(usize, i64, usize)]) -> Self {
        let mut d = Self::new();
        for &(i, lvl, c) in t {
            d.add(i, lvl, c);
        }
        d
    }

    pub fn add(&mut self, i: usize, level: i64, count: usize) {
        if count > 0 {
            *self.entries.entry((level, i)).or_default() += count;
        }
    }

    pub fn get(&self, i: usize, level: i64) -> usize {
        self.entries.get(&(level, i)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(vertex, level, count)` ordered by level, then vertex.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(l, i), &c)| (i, l, c))
    }

    pub fn min_level(&self) -> Option<i64> {
        self.entries.keys().next().map(|&(l, _)| l)
    }

    pub fn shift(&self, z: i64) -> TildeDim {
        TildeDim { entries: self.entries.iter().map(|(&(l, i), &c)| ((l + z, i), c)).collect() }
    }

    /// Representative of the shift class with lowest level 0.
    pub fn canonical(&self) -> TildeDim {
        match self.min_level() {
            Some(l) => self.shift(-l),
            None => self.clone(),
        }
    }

    pub fn same_class(&self, other: &TildeDim) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn max_vertex(&self) -> usize {
        self.entries.keys().map(|&(_, i)| i).max().unwrap_or(0)
    }

    /// `d(j)`, the slice at level `j`, as a vector of length `n`.
    pub fn level(&self, j: i64, n: usize) -> Vec<usize> {
        (1..=n).map(|i| self.get(i, j)).collect()
    }

    pub fn levels(&self) -> Vec<i64> {
        let mut ls: Vec<i64> = self.entries.keys().map(|&(l, _)| l).collect();
        ls.dedup();
        ls
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> Vec<(usize, i64, usize)> {
        self.iter().collect()
    }
}

/// `Σ_j msm_max(d(j))`.
pub fn msm_max_tilde(d: &TildeDim) -> Multisegment {
    let n = d.max_vertex();
    d.levels().into_iter().fold(Multisegment::new(), |acc, j| acc.plus(&msm_max(&d.level(j, n))))
}

fn exceptional() -> [(TildeDim, Multisegment); 2] {
    let e1 = TildeDim::from_triples(&[
        (1, 2, 1), (2, 1, 1), (4, 0, 1), (1, 1, 1), (3, 0, 2), (5, -1, 1), (2, 0, 1), (4, -1, 1),
    ]);
    let e2 = TildeDim::from_triples(&[
        (2, 2, 1), (4, 1, 1), (1, 2, 1), (3, 1, 2), (5, 0, 1), (2, 1, 1), (4, 0, 1), (5, -1, 1),
    ]);
    let m1 = "2[1,1]+[2,2]+[2,4]+[3,3]+[4,5]".parse().expect("literal");
    let m2 = "[1,2]+[2,4]+[3,3]+[4,4]+2[5,5]".parse().expect("literal");
    [(e1, m1), (e2, m2)]
}

/// The two shift classes on which ψ differs from `msm_max_tilde`.
pub fn psi_exceptional() -> Vec<TildeDim> {
    exceptional().into_iter().map(|(d, _)| d).collect()
}

/// ψ for `n = 5`. The Schur-root precondition is left to the caller.
pub fn psi(d: &TildeDim) -> Multisegment {
    let c = d.canonical();
    for (e, m) in exceptional() {
        if e.canonical() == c {
            return m;
        }
    }
    msm_max_tilde(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degree_examples() {
        let m: Multisegment = "[1,5]+[2,3]+[3,3]+[5,5]".parse().unwrap();
        assert_eq!(degree(&m, 5), vec![1, 2, 3, 1, 2]);
        assert_eq!(degree(&Multisegment::new(), 3), vec![0, 0, 0]);
        assert_eq!(degree(&"2[1,1]".parse().unwrap(), 2), vec![2, 0]);
    }

    #[test]
    fn msm_max_examples() {
        assert_eq!(msm_max(&[1, 2, 3, 1, 2]).to_string(), "[1,5]+[2,3]+[3,3]+[5,5]");
        assert!(msm_max(&[0, 0, 0]).is_empty());
        assert_eq!(msm_max(&[2, 0]).to_string(), "2[1,1]");
    }

    #[test]
    fn parse_and_display() {
        let m: Multisegment = " 2[1,1] + [2,4]".parse().unwrap();
        assert_eq!(m.to_string(), "2[1,1]+[2,4]");
        assert!("[3,1]".parse::<Multisegment>().is_err());
        assert!("[1,".parse::<Multisegment>().is_err());
        assert_eq!(Multisegment::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn rep_of_semisimple() {
        let m: Multisegment = "[1,1]+[2,2]+[3,3]+[4,4]".parse().unwrap();
        let x = rep_of(&m, 4).unwrap();
        assert_eq!(x.dims, vec![1, 1, 1, 1]);
        assert!(x.mats.iter().all(|a| a.is_zero()));
        let s = rep_of(&"[2,4]".parse().unwrap(), 5).unwrap();
        assert_eq!(s, segment_rep(2, 4, 5).unwrap());
    }

    #[test]
    fn psi_exceptions() {
        let [(e1, _), (e2, _)] = exceptional();
        assert_eq!(psi(&e1).to_string(), "2[1,1]+[2,2]+[2,4]+[3,3]+[4,5]");
        assert_eq!(psi(&e2.shift(7)).to_string(), "[1,2]+[2,4]+[3,3]+[4,4]+2[5,5]");
        assert_ne!(psi(&e1), msm_max_tilde(&e1));
        let single = TildeDim::from_triples(&[(1, 3, 1), (2, 3, 2), (3, 3, 1)]);
        assert_eq!(psi(&single), msm_max(&[1, 2, 1]));
    }

    #[test]
    fn canonical_has_min_level_zero() {
        let d = TildeDim::from_triples(&[(1, -3, 1), (2, 4, 1)]);
        assert_eq!(d.canonical().min_level(), Some(0));
        assert!(d.same_class(&d.shift(-11)));
    }

    proptest! {
        #[test]
        fn degree_inverts_msm_max(d in proptest::collection::vec(0usize..4, 1..7)) {
            prop_assert_eq!(degree(&msm_max(&d), d.len()), d);
        }

        #[test]
        fn msm_max_tilde_is_shift_invariant(
            t in proptest::collection::vec((1usize..6, -3i64..4, 1usize..3), 0..8),
            z in -5i64..5,
        ) {
            let d = TildeDim::from_triples(&t);
            prop_assert_eq!(msm_max_tilde(&d), msm_max_tilde(&d.shift(z)));
        }
    }
}
