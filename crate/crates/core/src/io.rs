//! File formats. Every rational is an exact string (`"3"`, `"-7/4"`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{Monomial, MvPoly};
use crate::polymatrix::PolyMatrix;
use crate::rational::{fmt_q, parse_q, Q};

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest variable count accepted from files.
pub const MAX_NVARS: usize = 4096;
/// Largest exponent accepted from files.
pub const MAX_EXPONENT: u32 = 1 << 16;
/// Largest matrix dimension accepted from files.
pub const MAX_DIM: usize = 4096;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &MvPoly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p
                .canonical_terms()
                .map(|(m, c)| TermJson { exp: m.exps().to_vec(), coeff: fmt_q(c) })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MvPoly> {
        if self.nvars > MAX_NVARS {
            return Err(Error::Parse(format!("too many variables ({})", self.nvars)));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exp.iter().any(|&e| e > MAX_EXPONENT) {
                    return Err(Error::Parse("exponent too large".into()));
                }
                Ok((t.exp.clone(), parse_q(&t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        MvPoly::from_terms(self.nvars, terms)
    }
}

/// Polynomial document: the polynomial plus optional direction and
/// variable names.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyFile {
    #[serde(default = "schema_version")]
    pub version: u32,
    pub poly: PolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

impl PolyFile {
    pub fn new(p: &MvPoly) -> Self {
        PolyFile {
            version: SCHEMA_VERSION,
            poly: PolyJson::from_poly(p),
            direction: None,
            variables: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_direction(mut self, e: &[Q]) -> Self {
        self.direction = Some(e.iter().map(fmt_q).collect());
        self
    }

    pub fn direction(&self) -> Result<Option<Vec<Q>>> {
        self.direction
            .as_ref()
            .map(|d| {
                let v = d.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
                check_dim(self.poly.nvars, v.len())?;
                Ok(v)
            })
            .transpose()
    }
}

/// Parses a polynomial document. A bare `{nvars, terms}` object is also
/// accepted.
pub fn parse_poly_file(text: &str) -> Result<PolyFile> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let file: PolyFile = if value.get("poly").is_some() {
        serde_json::from_value(value)?
    } else {
        PolyFile::new(&serde_json::from_value::<PolyJson>(value)?.to_poly()?)
    };
    file.poly.to_poly()?;
    file.direction()?;
    Ok(file)
}

pub fn poly_from_json(text: &str) -> Result<MvPoly> {
    parse_poly_file(text)?.poly.to_poly()
}

pub fn poly_to_json(p: &MvPoly) -> String {
    serde_json::to_string_pretty(&PolyFile::new(p)).expect("plain data")
}

pub fn matrix_to_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<QMatrix> {
    if rows.len() > MAX_DIM || rows.iter().any(|r| r.len() > MAX_DIM) {
        return Err(Error::Parse("matrix too large".into()));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = parsed.first() {
        for r in &parsed {
            check_dim(first.len(), r.len())?;
        }
    }
    QMatrix::from_rows(parsed)
}

pub fn matrix_to_json(m: &QMatrix) -> String {
    serde_json::to_string(&matrix_to_strings(m)).expect("plain data")
}

pub fn matrix_from_json(text: &str) -> Result<QMatrix> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text)?;
    matrix_from_strings(&rows)
}

pub fn matrix_to_csv(m: &QMatrix) -> String {
    let mut s = String::new();
    for r in matrix_to_strings(m) {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

pub fn matrix_from_csv(text: &str) -> Result<QMatrix> {
    let rows: Vec<Vec<String>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|s| s.trim().to_string()).collect())
        .collect();
    matrix_from_strings(&rows)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyMatrixJson {
    pub nvars: usize,
    pub entries: Vec<Vec<Vec<TermJson>>>,
}

pub fn polymatrix_to_json(m: &PolyMatrix) -> String {
    let entries = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|p| PolyJson::from_poly(p).terms).collect())
        .collect();
    serde_json::to_string_pretty(&PolyMatrixJson { nvars: m.nvars(), entries }).expect("plain data")
}

pub fn polymatrix_from_json(text: &str) -> Result<PolyMatrix> {
    let m: PolyMatrixJson = serde_json::from_str(text)?;
    if m.entries.len() > MAX_DIM {
        return Err(Error::Parse("matrix too large".into()));
    }
    let rows = m
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|terms| PolyJson { nvars: m.nvars, terms: terms.clone() }.to_poly())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(m.nvars, rows)
}

/// Functional value on one monomial.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctionalEntry {
    pub exp: Vec<u32>,
    pub value: String,
}

/// Certificate documents, tagged by `kind`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateFile {
    Gram {
        target: PolyJson,
        basis: Vec<PolyJson>,
        gram: Vec<Vec<String>>,
    },
    Separation {
        target: PolyJson,
        functional: Vec<FunctionalEntry>,
        basis: Vec<PolyJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_value: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_moment_matrix: Option<Vec<Vec<String>>>,
    },
    SosRecovery {
        nvars: usize,
        degree: u32,
        gram: Vec<Vec<String>>,
    },
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile> {
    Ok(serde_json::from_str(text)?)
}

pub fn functional_from_entries(entries: &[FunctionalEntry], nvars: usize) -> Result<BTreeMap<Monomial, Q>> {
    let mut map = BTreeMap::new();
    for e in entries {
        check_dim(nvars, e.exp.len())?;
        if e.exp.iter().any(|&x| x > MAX_EXPONENT) {
            return Err(Error::Parse("exponent too large".into()));
        }
        if map.insert(Monomial::new(e.exp.clone()), parse_q(&e.value)?).is_some() {
            return Err(Error::Parse(format!("duplicate functional entry {:?}", e.exp)));
        }
    }
    Ok(map)
}

pub fn functional_to_entries(map: &BTreeMap<Monomial, Q>) -> Vec<FunctionalEntry> {
    map.iter().rev().map(|(m, v)| FunctionalEntry { exp: m.exps().to_vec(), value: fmt_q(v) }).collect()
}

/// Parses a command-line vector of length `n`: `e0`..`e{n-1}` (unit
/// vectors), `ones`, `zero`, `I` (identity in symmetric upper-triangular
/// coordinates, so `n` must be triangular), or comma-separated rationals.
pub fn parse_vector(s: &str, n: usize) -> Result<Vec<Q>> {
    let s = s.trim();
    let zero = || vec![Q::from_integer(0.into()); n];
    let one = Q::from_integer(1.into());
    if let Some(idx) = s.strip_prefix('e') {
        if let Ok(i) = idx.parse::<usize>() {
            if i >= n {
                return Err(Error::Dimension { expected: n, got: i + 1 });
            }
            let mut v = zero();
            v[i] = one;
            return Ok(v);
        }
    }
    match s {
        "ones" => return Ok(vec![one; n]),
        "zero" => return Ok(zero()),
        "I" => {
            let d = triangular_side(n).ok_or_else(|| {
                Error::Parse(format!("I needs a triangular number of coordinates, got {n}"))
            })?;
            let mut v = zero();
            let mut k = 0;
            for i in 0..d {
                for j in i..d {
                    if i == j {
                        v[k] = one.clone();
                    }
                    k += 1;
                }
            }
            return Ok(v);
        }
        _ => {}
    }
    let v = s.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
    check_dim(n, v.len())?;
    Ok(v)
}

/// `d` with `d(d+1)/2 = n`.
pub fn triangular_side(n: usize) -> Option<usize> {
    (0..=n).find(|d| d * (d + 1) / 2 == n)
}

pub fn vector_to_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, qvec};

    #[test]
    fn poly_round_trip() {
        let x = |i| MvPoly::var(3, i);
        let p = &(&x(0).pow(2).scale(&qf(-3, 7)) + &(&x(1) * &x(2))) + &MvPoly::constant(3, q(5));
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
        let bare = r#"{"nvars":2,"terms":[{"exp":[1,1],"coeff":"1/2"}]}"#;
        assert_eq!(poly_from_json(bare).unwrap().coeff(&[1, 1]), qf(1, 2));
        assert!(poly_from_json(r#"{"nvars":2,"terms":[{"exp":[1],"coeff":"1"}]}"#).is_err());
        assert!(poly_from_json(r#"{"nvars":1,"terms":[{"exp":[1],"coeff":"1/0"}]}"#).is_err());
    }

    #[test]
    fn direction_is_checked() {
        let f = PolyFile::new(&MvPoly::var(2, 0)).with_direction(&qvec(&[1, 0]));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(parse_poly_file(&text).unwrap().direction().unwrap(), Some(qvec(&[1, 0])));
        let bad = text.replace("[\"1\",\"0\"]", "[\"1\"]");
        assert!(parse_poly_file(&bad).is_err());
    }

    #[test]
    fn matrix_formats() {
        let m = QMatrix::from_rows(vec![vec![qf(1, 2), q(-3)], vec![q(0), qf(7, 9)]]).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        assert_eq!(matrix_from_csv(&matrix_to_csv(&m)).unwrap(), m);
        assert!(matrix_from_csv("1,2\n3\n").is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("e1", 3).unwrap(), qvec(&[0, 1, 0]));
        assert_eq!(parse_vector("ones", 2).unwrap(), qvec(&[1, 1]));
        assert_eq!(parse_vector("I", 6).unwrap(), qvec(&[1, 0, 0, 1, 0, 1]));
        assert_eq!(parse_vector("1,1/2,-3", 3).unwrap(), vec![q(1), qf(1, 2), q(-3)]);
        assert!(parse_vector("e3", 3).is_err());
        assert!(parse_vector("I", 4).is_err());
        assert!(parse_vector("1,2", 3).is_err());
    }

    #[test]
    fn certificate_tagging() {
        let c = CertificateFile::SosRecovery { nvars: 2, degree: 1, gram: vec![vec!["1".into()]] };
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"kind\":\"sos_recovery\""));
        assert_eq!(parse_certificate(&text).unwrap(), c);
    }
}
