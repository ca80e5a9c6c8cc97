//! JSON file formats for triple systems, Lie algebras, symmetric Lie algebras
//! and matrix symmetric pairs.
//!
//! Structure tensors are stored sparsely as `[i, j, k, l, value]` rows (Lie
//! algebras use `[i, j, k, value]`) in lexicographic index order. Rational
//! values are strings such as `"-1/2"`, float values are JSON numbers.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use trisym_core::lts::LieTripleSystem;
use trisym_core::numerics::{format_rational, parse_rational};
use trisym_core::symlie::{LieAlgebra, SymmetricLieAlgebra};
use trisym_core::sympair::{FixedGroupPolicy, MatrixSymmetricPair, Sigma};
use trisym_core::{Matrix, Rational, Scalar, TolerancePolicy};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] trisym_core::Error),
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Lts,
    LieAlgebra,
    SymmetricLieAlgebra,
    Pair,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Lts => "lts",
            Kind::LieAlgebra => "lie_algebra",
            Kind::SymmetricLieAlgebra => "symmetric_lie_algebra",
            Kind::Pair => "pair",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Float,
}

/// Scalars that can be written to and read from the tensor formats.
pub trait JsonScalar: Scalar {
    const FILE_MODE: Mode;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl JsonScalar for Rational {
    const FILE_MODE: Mode = Mode::Rational;

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
            _ => None,
        }
    }
}

impl JsonScalar for f64 {
    const FILE_MODE: Mode = Mode::Float;

    fn to_json(&self) -> Value {
        // + 0.0 turns -0.0 into 0.0
        Value::from(*self + 0.0)
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => parse_rational(s).map(|q| q.to_f64()),
            _ => None,
        }
    }
}

/// Triple system, Lie algebra or symmetric Lie algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub kind: Kind,
    pub name: String,
    pub mode: Mode,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub bracket: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaSpec {
    ConjugationBy(Vec<Vec<f64>>),
    TransposeInverse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub kind: Kind,
    pub name: String,
    pub ambient_n: usize,
    pub labels: Vec<String>,
    pub basis: Vec<Vec<Vec<f64>>>,
    pub sigma: SigmaSpec,
    pub policy: String,
    /// Default central direction for kernel-lattice searches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
}

/// Any file understood by the loaders.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyFile {
    Tensor(TensorFile),
    Pair(PairFile),
}

impl AnyFile {
    pub fn kind(&self) -> Kind {
        match self {
            AnyFile::Tensor(t) => t.kind,
            AnyFile::Pair(p) => p.kind,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            AnyFile::Tensor(t) => &t.name,
            AnyFile::Pair(p) => &p.name,
        }
    }

    pub fn render(&self) -> String {
        match self {
            AnyFile::Tensor(t) => render(t),
            AnyFile::Pair(p) => render(p),
        }
    }
}

pub fn parse(text: &str) -> Result<AnyFile, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let kind: Kind = serde_json::from_value(
        v.get("kind")
            .cloned()
            .ok_or_else(|| schema("missing \"kind\""))?,
    )?;
    Ok(match kind {
        Kind::Pair => AnyFile::Pair(serde_json::from_value(v)?),
        _ => AnyFile::Tensor(serde_json::from_value(v)?),
    })
}

pub fn read(path: &Path) -> Result<AnyFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// Pretty JSON with scalar arrays kept on one line, newline-terminated.
pub fn render<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| " ".repeat(n);
    match v {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 2), Value::String(k.clone()));
                write_value(out, val, indent + 2);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_value(out, x, indent + 2);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn check_mode<S: JsonScalar>(f: &TensorFile) -> Result<(), FormatError> {
    if S::FILE_MODE == Mode::Rational && f.mode == Mode::Float {
        return Err(schema("a float file cannot be read in rational mode"));
    }
    Ok(())
}

fn expect_kind(found: Kind, want: Kind) -> Result<(), FormatError> {
    if found != want {
        return Err(schema(format!("expected kind {}, found {}", want.name(), found.name())));
    }
    Ok(())
}

fn parse_entries<S: JsonScalar, const N: usize>(
    rows: &[Vec<Value>],
    dim: usize,
) -> Result<Vec<([usize; N], S)>, FormatError> {
    let mut out: Vec<([usize; N], S)> = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != N + 1 {
            return Err(schema(format!("bracket entries need {} fields, found {}", N + 1, row.len())));
        }
        let mut idx = [0usize; N];
        for (slot, v) in idx.iter_mut().zip(row) {
            let i = v
                .as_u64()
                .ok_or_else(|| schema(format!("bad index {v}")))? as usize;
            if i >= dim {
                return Err(schema(format!("index {i} out of range for dimension {dim}")));
            }
            *slot = i;
        }
        let val = S::from_json(&row[N]).ok_or_else(|| schema(format!("bad value {}", row[N])))?;
        if out.iter().any(|(j, _)| *j == idx) {
            return Err(schema(format!("duplicate entry {idx:?}")));
        }
        out.push((idx, val));
    }
    Ok(out)
}

fn entry_rows<S: JsonScalar, const N: usize>(entries: impl Iterator<Item = ([usize; N], S)>) -> Vec<Vec<Value>> {
    entries
        .map(|(idx, v)| {
            let mut row: Vec<Value> = idx.iter().map(|&i| Value::from(i)).collect();
            row.push(v.to_json());
            row
        })
        .collect()
}

fn check_labels(labels: &Option<Vec<String>>, dim: usize) -> Result<(), FormatError> {
    match labels {
        Some(l) if l.len() != dim => Err(schema(format!("{} labels for dimension {dim}", l.len()))),
        _ => Ok(()),
    }
}

pub fn lts_to_file<S: JsonScalar>(name: &str, m: &LieTripleSystem<S>) -> TensorFile {
    TensorFile {
        kind: Kind::Lts,
        name: name.to_string(),
        mode: S::FILE_MODE,
        dim: m.dim(),
        labels: m.labels().map(<[String]>::to_vec),
        bracket: entry_rows(m.nonzero_entries().map(|(i, v)| (i, v.clone()))),
        theta: None,
    }
}

pub fn lts_from_file<S: JsonScalar>(f: &TensorFile) -> Result<LieTripleSystem<S>, FormatError> {
    expect_kind(f.kind, Kind::Lts)?;
    check_mode::<S>(f)?;
    check_labels(&f.labels, f.dim)?;
    let entries = parse_entries::<S, 4>(&f.bracket, f.dim)?;
    let m = LieTripleSystem::from_entries(f.dim, entries)?;
    Ok(match &f.labels {
        Some(l) => m.with_labels(l.clone())?,
        None => m,
    })
}

fn algebra_rows<S: JsonScalar>(g: &LieAlgebra<S>) -> Vec<Vec<Value>> {
    entry_rows(g.nonzero_entries().map(|(i, v)| (i, v.clone())))
}

pub fn la_to_file<S: JsonScalar>(name: &str, g: &LieAlgebra<S>) -> TensorFile {
    TensorFile {
        kind: Kind::LieAlgebra,
        name: name.to_string(),
        mode: S::FILE_MODE,
        dim: g.dim(),
        labels: g.labels().map(<[String]>::to_vec),
        bracket: algebra_rows(g),
        theta: None,
    }
}

fn algebra_from(f: &TensorFile) -> Result<(), FormatError> {
    check_labels(&f.labels, f.dim)
}

pub fn la_from_file<S: JsonScalar>(f: &TensorFile) -> Result<LieAlgebra<S>, FormatError> {
    expect_kind(f.kind, Kind::LieAlgebra)?;
    check_mode::<S>(f)?;
    algebra_from(f)?;
    let g = LieAlgebra::from_entries(f.dim, parse_entries::<S, 3>(&f.bracket, f.dim)?)?;
    Ok(match &f.labels {
        Some(l) => g.with_labels(l.clone())?,
        None => g,
    })
}

fn matrix_rows<S: JsonScalar>(m: &Matrix<S>) -> Vec<Vec<Value>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(JsonScalar::to_json).collect())
        .collect()
}

fn matrix_from_rows<S: JsonScalar>(rows: &[Vec<Value>], n: usize) -> Result<Matrix<S>, FormatError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(schema(format!("expected a {n}x{n} matrix")));
    }
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| S::from_json(v).ok_or_else(|| schema(format!("bad matrix entry {v}"))))
                .collect::<Result<Vec<S>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(parsed)?)
}

pub fn sla_to_file<S: JsonScalar>(name: &str, s: &SymmetricLieAlgebra<S>) -> TensorFile {
    TensorFile {
        kind: Kind::SymmetricLieAlgebra,
        theta: Some(matrix_rows(s.theta())),
        ..la_to_file(name, s.algebra())
    }
}

/// Algebra and involution of a symmetric Lie algebra file, before the
/// involution and automorphism checks.
pub fn sla_parts_from_file<S: JsonScalar>(f: &TensorFile) -> Result<(LieAlgebra<S>, Matrix<S>), FormatError> {
    expect_kind(f.kind, Kind::SymmetricLieAlgebra)?;
    let theta = f.theta.as_ref().ok_or_else(|| schema("missing \"theta\""))?;
    let g = la_from_file(&TensorFile {
        kind: Kind::LieAlgebra,
        theta: None,
        ..f.clone()
    })?;
    let theta = matrix_from_rows(theta, f.dim)?;
    Ok((g, theta))
}

pub fn sla_from_file<S: JsonScalar>(
    f: &TensorFile,
    tol: &TolerancePolicy,
) -> Result<SymmetricLieAlgebra<S>, FormatError> {
    let (g, theta) = sla_parts_from_file(f)?;
    Ok(SymmetricLieAlgebra::new(g, theta, tol)?)
}

fn policy_from_name(name: &str) -> Result<FixedGroupPolicy, FormatError> {
    [FixedGroupPolicy::FullFixedGroup, FixedGroupPolicy::IdentityComponentHeuristic]
        .into_iter()
        .find(|p| p.name() == name)
        .ok_or_else(|| schema(format!("unknown policy {name:?}")))
}

pub fn parse_policy(name: &str) -> Result<FixedGroupPolicy, FormatError> {
    policy_from_name(name)
}

fn f64_rows(m: &Matrix<f64>) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x + 0.0).collect()).collect()
}

pub fn pair_to_file(pair: &MatrixSymmetricPair, direction: Option<Vec<f64>>) -> PairFile {
    use trisym_core::sympair::PointedSymmetricSpace;
    PairFile {
        kind: Kind::Pair,
        name: pair.name().to_string(),
        ambient_n: pair.ambient_n(),
        labels: pair.labels().to_vec(),
        basis: pair.basis().iter().map(f64_rows).collect(),
        sigma: match pair.sigma() {
            Sigma::Conjugation { j, .. } => SigmaSpec::ConjugationBy(f64_rows(j)),
            Sigma::TransposeInverse => SigmaSpec::TransposeInverse,
        },
        policy: pair.policy().name().to_string(),
        direction: direction.map(|d| d.into_iter().map(|x| x + 0.0).collect()),
    }
}

fn f64_matrix(rows: &[Vec<f64>], n: usize) -> Result<Matrix<f64>, FormatError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(schema(format!("expected a {n}x{n} matrix")));
    }
    Ok(Matrix::from_rows(rows.to_vec())?)
}

/// Builds the pair; errors from the pair constructor are returned unchanged
/// as [`FormatError::Core`].
pub fn pair_from_file(f: &PairFile, tol: &TolerancePolicy) -> Result<MatrixSymmetricPair, FormatError> {
    expect_kind(f.kind, Kind::Pair)?;
    let n = f.ambient_n;
    let basis = f
        .basis
        .iter()
        .map(|m| f64_matrix(m, n))
        .collect::<Result<Vec<_>, _>>()?;
    if f.labels.len() != basis.len() {
        return Err(schema(format!("{} labels for {} basis matrices", f.labels.len(), basis.len())));
    }
    if let Some(d) = &f.direction {
        if d.len() != basis.len() {
            return Err(schema("direction length differs from the basis size"));
        }
    }
    let sigma = match &f.sigma {
        SigmaSpec::ConjugationBy(j) => Sigma::conjugation(f64_matrix(j, n)?)?,
        SigmaSpec::TransposeInverse => Sigma::TransposeInverse,
    };
    let policy = policy_from_name(&f.policy)?;
    Ok(MatrixSymmetricPair::new(
        f.name.clone(),
        basis,
        f.labels.clone(),
        sigma,
        policy,
        tol,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use trisym_core::gallery;

    #[test]
    fn lts_round_trip() {
        let m = gallery::u_minus_lts::<Rational>(2);
        let text = render(&lts_to_file("u2-minus", &m));
        let AnyFile::Tensor(f) = parse(&text).unwrap() else { panic!() };
        assert_eq!(lts_from_file::<Rational>(&f).unwrap(), m);
        assert_eq!(render(&f), text);
        // rational files can be read as floats, not the other way round
        let mf = lts_from_file::<f64>(&f).unwrap();
        let ff = lts_to_file("x", &mf);
        assert!(lts_from_file::<Rational>(&ff).is_err());
    }

    #[test]
    fn rendering_keeps_rows_inline() {
        let f = lts_to_file("sphere2", &gallery::sphere_lts::<Rational>(2));
        let text = render(&f);
        assert!(text.contains("[0, 1, 1, 0, \"1\"]"), "{text}");
        assert!(text.starts_with("{\n  \"kind\": \"lts\",\n"));
    }

    #[test]
    fn schema_errors() {
        let bad = r#"{"kind": "lts", "name": "x", "mode": "rational", "dim": 2, "bracket": [[0, 0, 0, 2, "1"]]}"#;
        let AnyFile::Tensor(f) = parse(bad).unwrap() else { panic!() };
        assert!(matches!(lts_from_file::<Rational>(&f), Err(FormatError::Schema(_))));
        assert!(parse(r#"{"kind": "nope"}"#).is_err());
        assert!(parse("not json").is_err());
        let dup = r#"{"kind": "lts", "name": "x", "mode": "rational", "dim": 1, "bracket": [[0,0,0,0,"1"],[0,0,0,0,"2"]]}"#;
        let AnyFile::Tensor(f) = parse(dup).unwrap() else { panic!() };
        assert!(lts_from_file::<Rational>(&f).is_err());
    }

    #[test]
    fn pair_round_trip() {
        let pair = gallery::u_pair(2, FixedGroupPolicy::FullFixedGroup);
        let f = pair_to_file(&pair, Some(gallery::u_identity_direction(2)));
        let text = render(&f);
        let AnyFile::Pair(g) = parse(&text).unwrap() else { panic!() };
        assert_eq!(g, f);
        let back = pair_from_file(&g, &TolerancePolicy::default()).unwrap();
        assert_eq!(back.basis(), pair.basis());
        assert!(text.contains("\"conjugation_by\""));
    }

    #[test]
    fn sla_round_trip() {
        let s = gallery::u_symmetric::<Rational>(2);
        let f = sla_to_file("u2", &s);
        let t = TolerancePolicy::default();
        assert_eq!(sla_from_file::<Rational>(&f, &t).unwrap(), s);
    }
}
