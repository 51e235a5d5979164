//! Wire formats: rationals as "num/den" strings, matrices as row-major
//! string arrays, and JSON documents for colligations, quasi-lattices,
//! divisors, rational functions, and CLI jobs. All parsers are total:
//! malformed input comes back as an error, never a panic.

use crate::arith::context::PAdicContext;
use crate::arith::matrix::Mat;
use crate::arith::poly::Poly;
use crate::arith::ratfun::RatFun;
use crate::arith::ratfunmat::RatFunMat;
use crate::arith::Rat;
use crate::colligation::divisor::{Divisor, DivisorPoint, Mult};
use crate::colligation::invariants::InvariantSignature;
use crate::colligation::Colligation;
use crate::lattice::quasi::{Exp, QuasiLattice};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid document: {0}")]
    Validation(String),
}

fn perr(msg: impl Into<String>) -> IoError {
    IoError::Parse(msg.into())
}

// ---- rationals ----

/// "num/den" with the denominator omitted when 1.
pub fn format_rational(x: &Rat) -> String {
    use num_traits::One;
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rat, IoError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(perr("empty rational"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    if den_str.contains('/') {
        return Err(perr(format!("too many slashes in {s:?}")));
    }
    let num = BigInt::from_str(num_str.trim())
        .map_err(|e| perr(format!("bad numerator {num_str:?}: {e}")))?;
    let den = BigInt::from_str(den_str.trim())
        .map_err(|e| perr(format!("bad denominator {den_str:?}: {e}")))?;
    if den.is_zero() {
        return Err(perr(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

pub fn format_matrix(m: &Mat<Rat>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rational(m.at(i, j))).collect())
        .collect()
}

pub fn parse_matrix(rows: &[Vec<String>]) -> Result<Mat<Rat>, IoError> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(IoError::Validation("ragged matrix rows".into()));
    }
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        for entry in row {
            data.push(parse_rational(entry)?);
        }
    }
    Ok(Mat::new(r, c, data))
}

// ---- colligations ----

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColligationDoc {
    pub alpha: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl ColligationDoc {
    pub fn from_colligation(g: &Colligation) -> Self {
        ColligationDoc {
            alpha: g.alpha(),
            m: g.block_count(),
            n: g.inner_size(),
            entries: format_matrix(g.entries()),
        }
    }

    pub fn to_colligation(&self) -> Result<Colligation, IoError> {
        let mat = parse_matrix(&self.entries)?;
        Colligation::new(self.alpha, self.m, self.n, mat)
            .map_err(|e| IoError::Validation(e.to_string()))
    }
}

pub fn parse_colligation_json(s: &str) -> Result<Colligation, IoError> {
    let doc: ColligationDoc = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    doc.to_colligation()
}

// ---- quasi-lattices ----

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ExpDoc {
    Int(i64),
    Tag(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuasiLatticeDoc {
    pub p: u64,
    pub dim: usize,
    /// Generator columns, each of length dim.
    pub columns: Vec<Vec<String>>,
    pub exponents: Vec<ExpDoc>,
}

impl QuasiLatticeDoc {
    pub fn from_lattice(m: &QuasiLattice) -> Self {
        QuasiLatticeDoc {
            p: m.ctx().prime(),
            dim: m.dim(),
            columns: m
                .columns()
                .iter()
                .map(|c| c.iter().map(format_rational).collect())
                .collect(),
            exponents: m
                .exponents()
                .iter()
                .map(|e| match e {
                    Exp::Fin(v) => ExpDoc::Int(*v),
                    Exp::NegInf => ExpDoc::Tag("-inf".into()),
                })
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<QuasiLattice, IoError> {
        let ctx = PAdicContext::new(self.p).map_err(|e| IoError::Validation(e.to_string()))?;
        if self.columns.len() != self.exponents.len() {
            return Err(IoError::Validation(
                "one exponent per generator column".into(),
            ));
        }
        let mut cols = Vec::with_capacity(self.columns.len());
        for col in &self.columns {
            if col.len() != self.dim {
                return Err(IoError::Validation(format!(
                    "column has {} entries, ambient dimension is {}",
                    col.len(),
                    self.dim
                )));
            }
            let mut parsed = Vec::with_capacity(col.len());
            for e in col {
                parsed.push(parse_rational(e)?);
            }
            cols.push(parsed);
        }
        let mut exps = Vec::with_capacity(self.exponents.len());
        for e in &self.exponents {
            exps.push(match e {
                ExpDoc::Int(v) if v.unsigned_abs() <= 1024 => Exp::Fin(*v),
                ExpDoc::Int(v) => {
                    return Err(IoError::Validation(format!("exponent {v} out of range")))
                }
                ExpDoc::Tag(t) if t == "-inf" => Exp::NegInf,
                ExpDoc::Tag(t) => {
                    return Err(IoError::Validation(format!(
                        "exponent must be an integer or \"-inf\", got {t:?}"
                    )))
                }
            });
        }
        if self.dim > 16 || cols.len() > 64 {
            return Err(IoError::Validation("document too large".into()));
        }
        Ok(QuasiLattice::new(ctx, self.dim, cols, exps))
    }
}

pub fn parse_quasilattice_json(s: &str) -> Result<QuasiLattice, IoError> {
    let doc: QuasiLatticeDoc = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    doc.to_lattice()
}

// ---- polynomials and rational functions ----

pub fn format_poly(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn parse_poly(coeffs: &[String]) -> Result<Poly, IoError> {
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        out.push(parse_rational(c)?);
    }
    Ok(Poly::new(out))
}

/// Coefficient lists in ascending degree order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatFunDoc {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl RatFunDoc {
    pub fn from_ratfun(f: &RatFun) -> Self {
        RatFunDoc {
            num: format_poly(f.num()),
            den: format_poly(f.den()),
        }
    }

    pub fn to_ratfun(&self) -> Result<RatFun, IoError> {
        if self.num.len() > 256 || self.den.len() > 256 {
            return Err(IoError::Validation("degree out of range".into()));
        }
        let num = parse_poly(&self.num)?;
        let den = parse_poly(&self.den)?;
        if den.is_zero() {
            return Err(IoError::Validation("zero denominator polynomial".into()));
        }
        Ok(RatFun::new(num, den))
    }
}

pub fn parse_ratfun_json(s: &str) -> Result<RatFun, IoError> {
    let doc: RatFunDoc = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    doc.to_ratfun()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatFunMatDoc {
    pub rows: usize,
    pub cols: usize,
    /// num[i][j] is the coefficient list of the numerator polynomial.
    pub num: Vec<Vec<Vec<String>>>,
    pub den: Vec<String>,
}

impl RatFunMatDoc {
    pub fn from_ratfunmat(f: &RatFunMat) -> Self {
        RatFunMatDoc {
            rows: f.rows(),
            cols: f.cols(),
            num: (0..f.rows())
                .map(|i| (0..f.cols()).map(|j| format_poly(f.num().at(i, j))).collect())
                .collect(),
            den: format_poly(f.den()),
        }
    }

    pub fn to_ratfunmat(&self) -> Result<RatFunMat, IoError> {
        if self.rows > 16 || self.cols > 16 || self.den.len() > 256 {
            return Err(IoError::Validation("document too large".into()));
        }
        if self.num.len() != self.rows || self.num.iter().any(|r| r.len() != self.cols) {
            return Err(IoError::Validation("numerator grid shape mismatch".into()));
        }
        let den = parse_poly(&self.den)?;
        if den.is_zero() {
            return Err(IoError::Validation("zero denominator polynomial".into()));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for row in &self.num {
            for coeffs in row {
                if coeffs.len() > 256 {
                    return Err(IoError::Validation("degree out of range".into()));
                }
                entries.push(parse_poly(coeffs)?);
            }
        }
        Ok(RatFunMat::new(
            Mat::new(self.rows, self.cols, entries),
            den,
        ))
    }
}

/// Inverse of `divisor_to_doc`.
pub fn divisor_from_doc(entries: &[DivisorEntryDoc]) -> Result<Divisor, IoError> {
    let mut out = Divisor::empty();
    for e in entries {
        let point = match &e.point {
            PointDoc::Rational(s) if s == "inf" => DivisorPoint::Infinity,
            PointDoc::Rational(s) => DivisorPoint::Finite(parse_rational(s)?),
            PointDoc::MinPoly { min_poly } => {
                if min_poly.len() > 256 {
                    return Err(IoError::Validation("degree out of range".into()));
                }
                let p = parse_poly(min_poly)?;
                if p.degree().map_or(true, |d| d < 2) {
                    return Err(IoError::Validation(
                        "symbolic points need degree at least 2".into(),
                    ));
                }
                DivisorPoint::Irreducible(p)
            }
        };
        let mult = match &e.mult {
            MultDoc::Int(v) => Mult::Fin(*v),
            MultDoc::Tag(t) if t == "inf" => Mult::Inf,
            MultDoc::Tag(t) => {
                return Err(IoError::Validation(format!(
                    "multiplicity must be an integer or \"inf\", got {t:?}"
                )))
            }
        };
        out.insert(point, mult);
    }
    Ok(out)
}

// ---- divisors ----

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PointDoc {
    Rational(String),
    MinPoly { min_poly: Vec<String> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MultDoc {
    Int(u64),
    Tag(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DivisorEntryDoc {
    pub point: PointDoc,
    pub mult: MultDoc,
}

pub fn divisor_to_doc(d: &Divisor) -> Vec<DivisorEntryDoc> {
    d.iter()
        .map(|(p, m)| DivisorEntryDoc {
            point: match p {
                DivisorPoint::Finite(r) => PointDoc::Rational(format_rational(r)),
                DivisorPoint::Infinity => PointDoc::Rational("inf".into()),
                DivisorPoint::Irreducible(poly) => PointDoc::MinPoly {
                    min_poly: format_poly(poly),
                },
            },
            mult: match m {
                Mult::Fin(v) => MultDoc::Int(*v),
                Mult::Inf => MultDoc::Tag("inf".into()),
            },
        })
        .collect()
}

// ---- invariant signatures ----

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignatureDoc {
    pub corner: Vec<Vec<String>>,
    /// moments[i][j] is the sequence b[i] d^k c[j], k ascending from 0.
    pub moments: Vec<Vec<Vec<String>>>,
    pub traces: Vec<String>,
}

pub fn signature_to_doc(sig: &InvariantSignature) -> SignatureDoc {
    SignatureDoc {
        corner: format_matrix(&sig.corner),
        moments: sig
            .moments
            .iter()
            .map(|row| {
                row.iter()
                    .map(|seq| seq.iter().map(format_rational).collect())
                    .collect()
            })
            .collect(),
        traces: sig.traces.iter().map(format_rational).collect(),
    }
}

// ---- CLI job documents ----

/// Combined input document for the building-facing commands. The op field,
/// when present, must match the invoked subcommand; params supply radii and
/// thresholds unless overridden by flags.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct JobParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JobDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colligation: Option<ColligationDoc>,
    /// Second operand for binary commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colligation2: Option<ColligationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<QuasiLatticeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<RatFunDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    #[serde(default, skip_serializing_if = "params_empty")]
    pub params: JobParams,
}

fn params_empty(p: &JobParams) -> bool {
    *p == JobParams::default()
}

pub fn parse_job_json(s: &str) -> Result<JobDoc, IoError> {
    serde_json::from_str(s).map_err(|e| perr(e.to_string()))
}
