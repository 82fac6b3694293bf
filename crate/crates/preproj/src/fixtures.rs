//! Bundled data tables. Setting `PREPROJ_FIXTURES` to a directory makes every
//! loader read `<dir>/<name>` instead of the compiled-in copy.

use crate::error::{Error, Result};
use crate::multiseg::Multisegment;
use crate::quiver::{Rep, RepJson};
use crate::shuffle::{TermJson, WordPoly};
use serde::Deserialize;

pub const ENV_VAR: &str = "PREPROJ_FIXTURES";

const BUNDLED: &[(&str, &str)] = &[
    ("rootlist.json", include_str!("../../../fixtures/rootlist.json")),
    ("g4_edges.json", include_str!("../../../fixtures/g4_edges.json")),
    ("a2_multisegments.json", include_str!("../../../fixtures/a2_multisegments.json")),
    ("a3_multisegments.json", include_str!("../../../fixtures/a3_multisegments.json")),
    ("a4_multisegments.json", include_str!("../../../fixtures/a4_multisegments.json")),
    ("ex5.json", include_str!("../../../fixtures/ex5.json")),
    ("m31_fixture.json", include_str!("../../../fixtures/m31_fixture.json")),
    ("m31_poly.json", include_str!("../../../fixtures/m31_poly.json")),
    ("e3.json", include_str!("../../../fixtures/e3.json")),
    ("e5.json", include_str!("../../../fixtures/e5.json")),
];

/// Raw text of a fixture file.
pub fn load(name: &str) -> Result<String> {
    if let Ok(dir) = std::env::var(ENV_VAR) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path).map_err(|e| Error::Other(format!("{}: {e}", path.display())));
    }
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| Error::Other(format!("no fixture named {name}")))
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str) -> Result<T> {
    serde_json::from_str(&load(name)?).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

#[derive(Debug, Clone, Deserialize)]
pub struct RootEntry {
    pub mn: [i64; 2],
    pub roots: Vec<Vec<i64>>,
}

/// The transcribed table of distinguished real roots, keyed by rank 2, 3, 6.
pub fn root_table() -> Result<std::collections::BTreeMap<usize, Vec<RootEntry>>> {
    let raw: std::collections::BTreeMap<String, Vec<RootEntry>> = parse("rootlist.json")?;
    raw.into_iter()
        .map(|(k, v)| k.parse().map(|r| (r, v)).map_err(|_| Error::Parse(format!("rank key {k}"))))
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
pub struct EdgeFixture {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub sha256: String,
}

pub fn g4_edges() -> Result<EdgeFixture> {
    parse("g4_edges.json")
}

#[derive(Debug, Clone, Deserialize)]
struct MultisegFile {
    n: usize,
    multisegments: Vec<Vec<[usize; 3]>>,
    projective: Vec<usize>,
}

/// Indecomposable components of `Λ_n` (`n ∈ {2,3,4}`) as multisegments, plus
/// the 0-based positions of those whose generic module is projective.
pub fn indecomposables(n: usize) -> Result<(Vec<Multisegment>, Vec<usize>)> {
    let f: MultisegFile = parse(&format!("a{n}_multisegments.json"))?;
    if f.n != n {
        return Err(Error::Parse(format!("fixture for n = {n} declares n = {}", f.n)));
    }
    let ms = f.multisegments.iter().map(|m| Multisegment::from_json(m)).collect::<Result<Vec<_>>>()?;
    Ok((ms, f.projective.iter().map(|k| k - 1).collect()))
}

pub fn rep(name: &str) -> Result<Rep> {
    let j: RepJson = parse(name)?;
    Rep::from_json(&j)
}

pub fn word_poly(name: &str) -> Result<WordPoly> {
    let t: Vec<TermJson> = parse(name)?;
    Ok(WordPoly::from_json(&t))
}

/// A covering dimension vector stored as `[[vertex, level, count], ...]`.
pub fn tilde_dim(name: &str) -> Result<crate::multiseg::TildeDim> {
    let t: Vec<(usize, i64, usize)> = parse(name)?;
    Ok(crate::multiseg::TildeDim::from_triples(&t))
}
