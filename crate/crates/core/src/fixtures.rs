//! Bundled test inputs: the three displayed rank examples and the small Clifford signatures.

use serde_json::Value;

use crate::clifford::{BaseDivision, Classification, CliffordSignature};
use crate::codec::{comp_matrix_from_json, CodecError};
use crate::matalg::CompMatrix;

pub const FIXTURE_VERSION: u64 = 1;

const RAW: &[(&str, &str)] = &[
    ("z1", include_str!("../fixtures/z1.json")),
    ("z2", include_str!("../fixtures/z2.json")),
    ("z3", include_str!("../fixtures/z3.json")),
    ("cl01", include_str!("../fixtures/cl01.json")),
    ("cl10", include_str!("../fixtures/cl10.json")),
    ("cl02", include_str!("../fixtures/cl02.json")),
    ("cl11", include_str!("../fixtures/cl11.json")),
    ("cl20", include_str!("../fixtures/cl20.json")),
];

#[derive(Debug, Clone)]
pub struct RankFixture {
    pub name: String,
    pub matrix: CompMatrix,
    pub c_rank: usize,
}

#[derive(Debug, Clone)]
pub struct CliffordFixture {
    pub name: String,
    pub signature: CliffordSignature,
    pub expected: Classification,
}

#[derive(Debug, Clone)]
pub enum Fixture {
    Rank(RankFixture),
    Clifford(CliffordFixture),
}

impl Fixture {
    pub fn name(&self) -> &str {
        match self {
            Fixture::Rank(f) => &f.name,
            Fixture::Clifford(f) => &f.name,
        }
    }
}

/// Raw JSON text of a bundled fixture.
pub fn raw(name: &str) -> Option<&'static str> {
    RAW.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    RAW.iter().map(|(n, _)| *n)
}

fn invalid(name: &str, msg: &str) -> CodecError {
    CodecError::Invalid(format!("fixture {name}: {msg}"))
}

pub fn parse_fixture(text: &str) -> Result<Fixture, CodecError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CodecError::Invalid(e.to_string()))?;
    let name = v["name"].as_str().unwrap_or("?").to_string();
    if v["version"].as_u64() != Some(FIXTURE_VERSION) {
        return Err(invalid(&name, "unsupported version"));
    }
    let expected = &v["expected"];
    if let Some(m) = v.get("matrix") {
        let matrix = comp_matrix_from_json(m)?;
        let c_rank = expected["c_rank"].as_u64().ok_or_else(|| invalid(&name, "missing c_rank"))? as usize;
        return Ok(Fixture::Rank(RankFixture { name, matrix, c_rank }));
    }
    let pq: Vec<usize> = v["signature"]
        .as_array()
        .map(|a| a.iter().filter_map(|x| x.as_u64()).map(|x| x as usize).collect())
        .unwrap_or_default();
    if pq.len() != 2 {
        return Err(invalid(&name, "signature must be [p, q]"));
    }
    let signature = CliffordSignature::new(pq[0], pq[1]).map_err(|e| invalid(&name, &e.to_string()))?;
    let base = match expected["base"].as_str() {
        Some("R") => BaseDivision::R,
        Some("C") => BaseDivision::C,
        Some("H") => BaseDivision::H,
        _ => return Err(invalid(&name, "base must be R, C or H")),
    };
    let matrix_size = expected["matrix_size"].as_u64().ok_or_else(|| invalid(&name, "missing matrix_size"))?;
    let direct_sum = expected["direct_sum"].as_bool().ok_or_else(|| invalid(&name, "missing direct_sum"))?;
    Ok(Fixture::Clifford(CliffordFixture {
        name,
        signature,
        expected: Classification { base, matrix_size, direct_sum },
    }))
}

/// Every bundled fixture, parsed.
pub fn corpus_fixtures() -> Vec<Fixture> {
    RAW.iter()
        .map(|(n, s)| parse_fixture(s).unwrap_or_else(|e| panic!("bundled fixture {n} is broken: {e}")))
        .collect()
}

pub fn rank_fixture(name: &str) -> Option<RankFixture> {
    corpus_fixtures().into_iter().find_map(|f| match f {
        Fixture::Rank(r) if r.name == name => Some(r),
        _ => None,
    })
}

pub fn clifford_fixture(name: &str) -> Option<CliffordFixture> {
    corpus_fixtures().into_iter().find_map(|f| match f {
        Fixture::Clifford(c) if c.name == name => Some(c),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        let fs = corpus_fixtures();
        assert_eq!(fs.len(), 8);
        for (f, n) in fs.iter().zip(names()) {
            assert_eq!(f.name(), n);
        }
    }

    #[test]
    fn cl02_is_quaternionic() {
        let f = clifford_fixture("cl02").unwrap();
        assert_eq!(f.expected.base, BaseDivision::H);
        assert!(raw("nope").is_none());
    }
}
