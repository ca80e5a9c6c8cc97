//! Command implementations. Each command returns a [`Report`]; the binary
//! only parses arguments and prints.

use std::f64::consts::SQRT_2;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use trisym_core::lts::{
    center, center_laterality, direct_product, ideal_closure, quotient, verify_axioms, AxiomReport, GridConstraint,
    GridPathSystem, LieTripleSystem, Subspace,
};
use trisym_core::numerics::parse_rational;
use trisym_core::period::{
    grid_loop_period_check, kernel_lattice_1d, product_lattice, quotient_projection_discreteness,
    subgroup_discreteness, Discreteness, Generators, KernelLattice, SubgroupSearchConfig, Verdict, Witness,
};
use trisym_core::symlie::{
    lie_center, standard_embedding, symmetric_lie_center, triple_from_involution, SymmetricLieAlgebra,
};
use trisym_core::sympair::{reflection_law_residuals, Geodesic, MatrixSymmetricPair, PointedSymmetricSpace};
use trisym_core::{gallery, Error as CoreError, Matrix, Rational, ScalarMode, TolerancePolicy};

use crate::fixtures;
use crate::format::{self, AnyFile, FormatError, JsonScalar, Kind, Mode, PairFile, TensorFile};
use crate::sampling;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Settings shared by all commands.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub tol: TolerancePolicy,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            tol: TolerancePolicy::default(),
            seed: 42,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
}

impl From<CoreError> for CommandError {
    fn from(e: CoreError) -> Self {
        CommandError::Format(FormatError::Core(e))
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

/// Errors that mean "the input is well formed but violates an invariant".
pub fn is_invariant_failure(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::InvolutionDefect { .. }
            | CoreError::NotAutomorphism { .. }
            | CoreError::ClosureDefect(_)
            | CoreError::AxiomDefect(_)
            | CoreError::JacobiDefect(_)
            | CoreError::NotAnIdeal
    )
}

fn invariant_error(e: &FormatError) -> Option<&CoreError> {
    match e {
        FormatError::Core(c) if is_invariant_failure(c) => Some(c),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub ok: bool,
    pub body: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            ok: true,
            body: Map::new(),
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.body.insert(key.to_string(), value.into());
        self
    }

    fn fail(mut self, e: impl std::fmt::Display) -> Self {
        self.ok = false;
        self.set("error", e.to_string());
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_INVARIANT
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("ok".into(), json!(self.ok));
        m.extend(self.body.clone());
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        format::render(&self.to_value())
    }

    /// `key: value` lines with nested objects flattened to dotted keys.
    pub fn to_text(&self) -> String {
        fn walk(prefix: &str, v: &Value, out: &mut String) {
            match v {
                Value::Object(m) => {
                    for (k, x) in m {
                        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        walk(&key, x, out);
                    }
                }
                Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
                other => out.push_str(&format!("{prefix}: {other}\n")),
            }
        }
        let mut out = String::new();
        walk("", &self.to_value(), &mut out);
        out
    }
}

fn vectors_json<S: JsonScalar>(vs: &[Vec<S>]) -> Value {
    Value::Array(vs.iter().map(|v| Value::Array(v.iter().map(JsonScalar::to_json).collect())).collect())
}

fn f64_json(v: f64) -> Value {
    json!(v + 0.0)
}

fn f64s_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| f64_json(*x)).collect())
}

fn matrix_json(m: &Matrix<f64>) -> Value {
    Value::Array((0..m.rows()).map(|r| f64s_json(m.row(r))).collect())
}

fn subspace_json<S: JsonScalar>(s: &Subspace<S>) -> Value {
    json!({ "dim": s.dim(), "basis": vectors_json(s.basis()) })
}

fn axioms_json(r: &AxiomReport) -> Value {
    json!({
        "ok": r.ok,
        "worst_violation": r.worst_violation,
        "witness": r.witness.as_ref().map(|w| json!({ "axiom": w.axiom.name(), "indices": w.indices })),
    })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Rational => ScalarMode::ExactRational.name(),
        Mode::Float => ScalarMode::Float64.name(),
    }
}

fn header(r: &mut Report, f: &TensorFile) {
    r.set("name", f.name.clone())
        .set("kind", f.kind.name())
        .set("mode", mode_name(f.mode))
        .set("dim", f.dim);
}

/// Parses `"a,b,c;d,e,f"` into vectors.
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<String>>, CommandError> {
    let vs: Vec<Vec<String>> = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|v| v.split(',').map(|x| x.trim().to_string()).collect())
        .collect();
    if vs.iter().any(|v| v.iter().any(String::is_empty)) {
        return Err(usage(format!("malformed vector list {text:?}")));
    }
    Ok(vs)
}

fn parse_f64(x: &str) -> Result<f64, CommandError> {
    match x.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => parse_rational(x)
            .map(|q| trisym_core::Scalar::to_f64(&q))
            .ok_or_else(|| usage(format!("not a number: {x:?}"))),
    }
}

pub fn parse_f64_vector(text: &str) -> Result<Vec<f64>, CommandError> {
    let vs = parse_vectors(text)?;
    if vs.len() != 1 {
        return Err(usage(format!("expected one vector, got {text:?}")));
    }
    vs[0].iter().map(|x| parse_f64(x)).collect()
}

fn parse_scalar_vectors<S: JsonScalar>(text: &str, dim: usize) -> Result<Vec<Vec<S>>, CommandError> {
    parse_vectors(text)?
        .iter()
        .map(|v| {
            if v.len() != dim {
                return Err(usage(format!("vector of length {} in a space of dimension {dim}", v.len())));
            }
            v.iter()
                .map(|x| S::from_json(&Value::String(x.clone())).ok_or_else(|| usage(format!("not a number: {x:?}"))))
                .collect()
        })
        .collect()
}

fn read_tensor(path: &Path) -> Result<TensorFile, CommandError> {
    match format::read(path)? {
        AnyFile::Tensor(t) => Ok(t),
        AnyFile::Pair(_) => Err(usage(format!("{} is a pair file", path.display()))),
    }
}

fn read_pair(path: &Path, ctx: &Context) -> Result<(PairFile, MatrixSymmetricPair), CommandError> {
    match format::read(path)? {
        AnyFile::Pair(p) => {
            let pair = format::pair_from_file(&p, &ctx.tol)?;
            Ok((p, pair))
        }
        AnyFile::Tensor(_) => Err(usage(format!("{} is not a pair file", path.display()))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandError> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------- check

pub fn check(path: &Path, ctx: &Context) -> Result<Report, CommandError> {
    match format::read(path)? {
        AnyFile::Tensor(f) => match (f.kind, f.mode) {
            (Kind::Lts, Mode::Rational) => check_lts::<Rational>(&f, ctx),
            (Kind::Lts, Mode::Float) => check_lts::<f64>(&f, ctx),
            (Kind::LieAlgebra, Mode::Rational) => check_la::<Rational>(&f, ctx),
            (Kind::LieAlgebra, Mode::Float) => check_la::<f64>(&f, ctx),
            (Kind::SymmetricLieAlgebra, Mode::Rational) => check_sla::<Rational>(&f, ctx),
            (Kind::SymmetricLieAlgebra, Mode::Float) => check_sla::<f64>(&f, ctx),
            (Kind::Pair, _) => unreachable!("pair files parse as AnyFile::Pair"),
        },
        AnyFile::Pair(p) => check_pair(&p, ctx),
    }
}

fn check_lts<S: JsonScalar>(f: &TensorFile, ctx: &Context) -> Result<Report, CommandError> {
    let m = format::lts_from_file::<S>(f)?;
    let mut r = Report::new("check");
    header(&mut r, f);
    let axioms = verify_axioms(&m, &ctx.tol);
    r.ok = axioms.ok;
    r.set("axioms", axioms_json(&axioms));
    Ok(r)
}

fn check_la<S: JsonScalar>(f: &TensorFile, ctx: &Context) -> Result<Report, CommandError> {
    let g = format::la_from_file::<S>(f)?;
    let mut r = Report::new("check");
    header(&mut r, f);
    let (defect, witness) = g.jacobi_defect(&ctx.tol);
    r.ok = witness.is_none();
    r.set("jacobi", json!({ "ok": r.ok, "worst_violation": defect, "witness": witness }));
    Ok(r)
}

fn check_sla<S: JsonScalar>(f: &TensorFile, ctx: &Context) -> Result<Report, CommandError> {
    let (g, theta) = format::sla_parts_from_file::<S>(f)?;
    let mut r = Report::new("check");
    header(&mut r, f);
    let (defect, witness) = g.jacobi_defect(&ctx.tol);
    r.set("jacobi", json!({ "ok": witness.is_none(), "worst_violation": defect, "witness": witness }));
    let s = match SymmetricLieAlgebra::new(g, theta, &ctx.tol) {
        Ok(s) => s,
        Err(e) if is_invariant_failure(&e) => return Ok(r.fail(e)),
        Err(e) => return Err(e.into()),
    };
    r.set("automorphism_defect", s.automorphism_defect());
    let m = match triple_from_involution(&s, &ctx.tol) {
        Ok(m) => m,
        Err(e) if is_invariant_failure(&e) => return Ok(r.fail(e)),
        Err(e) => return Err(e.into()),
    };
    let axioms = verify_axioms(&m, &ctx.tol);
    r.ok = axioms.ok;
    r.set("minus_dim", m.dim()).set("derived_axioms", axioms_json(&axioms));
    Ok(r)
}

fn check_pair(p: &PairFile, ctx: &Context) -> Result<Report, CommandError> {
    let mut r = Report::new("check");
    r.set("name", p.name.clone())
        .set("kind", Kind::Pair.name())
        .set("policy", p.policy.clone());
    let pair = match format::pair_from_file(p, &ctx.tol) {
        Ok(pair) => pair,
        Err(e) => match invariant_error(&e) {
            Some(c) => return Ok(r.fail(c)),
            None => return Err(e.into()),
        },
    };
    let m = pair.derived_lts()?;
    let axioms = verify_axioms(&m, &ctx.tol);
    let worst = reflection_worst(&pair, 20, ctx)?;
    r.ok = axioms.ok && worst <= ctx.tol.membership_tol;
    r.set("lie_dim", pair.lie_dim())
        .set("minus_dim", m.dim())
        .set("derived_axioms", axioms_json(&axioms))
        .set("reflection_samples", 20)
        .set("reflection_worst_residual", worst);
    Ok(r)
}

/// Largest reflection-law residual over `samples` seeded triples of points.
pub fn reflection_worst(pair: &MatrixSymmetricPair, samples: usize, ctx: &Context) -> Result<f64, CommandError> {
    let mut rng = sampling::rng(ctx.seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let mut point = || {
            let v = sampling::random_minus_vector(pair, &mut rng, 1.0);
            pair.exp_point(&v, 1.0)
        };
        let (x, y, z) = (point()?, point()?, point()?);
        worst = worst.max(reflection_law_residuals(pair, &x, &y, &z)?.max());
    }
    Ok(worst)
}

// ---------------------------------------------------------------- center

pub fn center_cmd(path: &Path, grid: Option<(usize, GridConstraint)>, ctx: &Context) -> Result<Report, CommandError> {
    match format::read(path)? {
        AnyFile::Tensor(f) => match (f.kind, f.mode) {
            (Kind::Lts, Mode::Rational) => center_lts::<Rational>(&f, grid, ctx),
            (Kind::Lts, Mode::Float) => center_lts::<f64>(&f, grid, ctx),
            (Kind::LieAlgebra, Mode::Rational) => center_la::<Rational>(&f, ctx),
            (Kind::LieAlgebra, Mode::Float) => center_la::<f64>(&f, ctx),
            (Kind::SymmetricLieAlgebra, Mode::Rational) => center_sla::<Rational>(&f, ctx),
            (Kind::SymmetricLieAlgebra, Mode::Float) => center_sla::<f64>(&f, ctx),
            (Kind::Pair, _) => unreachable!(),
        },
        AnyFile::Pair(p) => {
            let pair = format::pair_from_file(&p, &ctx.tol)?;
            let m = pair.derived_lts()?;
            let z = center(&m, &ctx.tol);
            let mut r = Report::new("center");
            r.set("name", p.name).set("kind", Kind::Pair.name()).set("center", subspace_json(&z));
            Ok(r)
        }
    }
}

fn center_lts<S: JsonScalar>(
    f: &TensorFile,
    grid: Option<(usize, GridConstraint)>,
    ctx: &Context,
) -> Result<Report, CommandError> {
    let m = format::lts_from_file::<S>(f)?;
    let mut r = Report::new("center");
    header(&mut r, f);
    let z = center(&m, &ctx.tol);
    let lat = center_laterality(&m, &z, &ctx.tol);
    r.set("center", subspace_json(&z))
        .set("laterality", json!({ "left": lat.left, "middle": lat.middle, "right": lat.right }));
    if let Some((t, constraint)) = grid {
        let g = GridPathSystem::new(m, t, constraint)?;
        let zg = center(g.system(), &ctx.tol);
        let lifted = g.lift_subspace(&z, &ctx.tol)?;
        let equal = zg.same_as(&lifted);
        r.ok = equal;
        r.set(
            "grid",
            json!({
                "grid_size": t,
                "constraint": constraint.name(),
                "dim": g.system().dim(),
                "center_dim": zg.dim(),
                "lifted_center_dim": lifted.dim(),
                "equal": equal,
            }),
        );
    }
    Ok(r)
}

fn center_la<S: JsonScalar>(f: &TensorFile, ctx: &Context) -> Result<Report, CommandError> {
    let g = format::la_from_file::<S>(f)?;
    let mut r = Report::new("center");
    header(&mut r, f);
    r.set("lie_center", subspace_json(&lie_center(&g, &ctx.tol)));
    Ok(r)
}

fn center_sla<S: JsonScalar>(f: &TensorFile, ctx: &Context) -> Result<Report, CommandError> {
    let mut r = Report::new("center");
    header(&mut r, f);
    let s = match format::sla_from_file::<S>(f, &ctx.tol) {
        Ok(s) => s,
        Err(e) => match invariant_error(&e) {
            Some(c) => return Ok(r.fail(c)),
            None => return Err(e.into()),
        },
    };
    let zg = symmetric_lie_center(&s, &ctx.tol)?;
    let m = triple_from_involution(&s, &ctx.tol)?;
    r.set("lie_center", subspace_json(&zg))
        .set("minus_center", subspace_json(&center(&m, &ctx.tol)));
    Ok(r)
}

// ---------------------------------------------------------------- embed

pub fn embed(path: &Path, out: Option<&Path>, ctx: &Context) -> Result<Report, CommandError> {
    let f = read_tensor(path)?;
    if f.kind != Kind::Lts {
        return Err(usage("embed expects a Lie triple system file"));
    }
    match f.mode {
        Mode::Rational => embed_lts::<Rational>(&f, out, ctx),
        Mode::Float => embed_lts::<f64>(&f, out, ctx),
    }
}

fn embed_lts<S: JsonScalar>(f: &TensorFile, out: Option<&Path>, ctx: &Context) -> Result<Report, CommandError> {
    let m = format::lts_from_file::<S>(f)?;
    let mut r = Report::new("embed");
    header(&mut r, f);
    let emb = match standard_embedding(&m, &ctx.tol) {
        Ok(e) => e,
        Err(e) if is_invariant_failure(&e) => return Ok(r.fail(e)),
        Err(e) => return Err(e.into()),
    };
    let s = &emb.algebra;
    let (jacobi, jacobi_witness) = s.algebra().jacobi_defect(&ctx.tol);
    let block = emb.m_block(&ctx.tol)?.without_labels();
    let plain = m.clone().without_labels();
    let block_diff = block.max_coeff_diff(&plain).unwrap_or(f64::INFINITY);
    let roundtrip = if S::FILE_MODE == Mode::Rational {
        block == plain
    } else {
        block_diff <= ctx.tol.eq_tol
    };
    let zm = center(&m, &ctx.tol);
    let zs = lie_center(s.algebra(), &ctx.tol);
    let coincides = zs.same_as(&emb.embed_subspace(&zm, &ctx.tol)?);
    let automorphism = s.automorphism_defect();
    r.ok = jacobi_witness.is_none() && roundtrip && coincides && automorphism <= ctx.tol.eq_tol;
    r.set("h_dim", emb.h_dim())
        .set("m_dim", emb.m_dim)
        .set("s_dim", s.dim())
        .set("jacobi_defect", jacobi)
        .set("automorphism_defect", automorphism)
        .set("m_block_roundtrip", roundtrip)
        .set("m_block_max_diff", block_diff)
        .set(
            "center",
            json!({
                "dim": zm.dim(),
                "coincides_with_embedded_center": coincides,
                "report": if coincides { "center of S(m) coincides with z(m)" } else { "center of S(m) differs from z(m)" },
            }),
        );
    if let Some(out) = out {
        let file = format::sla_to_file(&format!("S({})", f.name), s);
        write_file(out, &format::render(&file))?;
        r.set("written", out.display().to_string());
    }
    Ok(r)
}

// ---------------------------------------------------------------- quotient / product

pub fn quotient_cmd(path: &Path, ideal: &str, out: Option<&Path>, ctx: &Context) -> Result<Report, CommandError> {
    let f = read_tensor(path)?;
    if f.kind != Kind::Lts {
        return Err(usage("quotient expects a Lie triple system file"));
    }
    match f.mode {
        Mode::Rational => quotient_lts::<Rational>(&f, ideal, out, ctx),
        Mode::Float => quotient_lts::<f64>(&f, ideal, out, ctx),
    }
}

fn quotient_lts<S: JsonScalar>(
    f: &TensorFile,
    ideal: &str,
    out: Option<&Path>,
    ctx: &Context,
) -> Result<Report, CommandError> {
    let m = format::lts_from_file::<S>(f)?;
    let vs = parse_scalar_vectors::<S>(ideal, m.dim())?;
    let n = Subspace::span(m.dim(), &vs, &ctx.tol)?;
    let mut r = Report::new("quotient");
    header(&mut r, f);
    let c = ideal_closure(&m, &n, &ctx.tol);
    r.set("ideal", subspace_json(&n))
        .set("closure", json!({ "left": c.left, "middle": c.middle, "right": c.right }));
    let q = match quotient(&m, &n, &ctx.tol) {
        Ok(q) => q,
        Err(e) if is_invariant_failure(&e) => return Ok(r.fail(e)),
        Err(e) => return Err(e.into()),
    };
    r.set("quotient_dim", q.system.dim())
        .set("complement", q.complement.clone())
        .set("quotient_axioms", axioms_json(&verify_axioms(&q.system, &ctx.tol)));
    if let Some(out) = out {
        write_file(out, &format::render(&format::lts_to_file(&format!("{}/n", f.name), &q.system)))?;
        r.set("written", out.display().to_string());
    }
    Ok(r)
}

pub fn product(a: &Path, b: &Path, out: Option<&Path>, ctx: &Context) -> Result<Report, CommandError> {
    let (fa, fb) = (read_tensor(a)?, read_tensor(b)?);
    if fa.kind != Kind::Lts || fb.kind != Kind::Lts {
        return Err(usage("product expects two Lie triple system files"));
    }
    match (fa.mode, fb.mode) {
        (Mode::Rational, Mode::Rational) => product_lts::<Rational>(&fa, &fb, out, ctx),
        _ => product_lts::<f64>(&fa, &fb, out, ctx),
    }
}

fn product_lts<S: JsonScalar>(
    fa: &TensorFile,
    fb: &TensorFile,
    out: Option<&Path>,
    ctx: &Context,
) -> Result<Report, CommandError> {
    let ma: LieTripleSystem<S> = format::lts_from_file(fa)?;
    let mb: LieTripleSystem<S> = format::lts_from_file(fb)?;
    let p = direct_product(&ma, &mb)?;
    let (za, zb, zp) = (center(&ma, &ctx.tol), center(&mb, &ctx.tol), center(&p, &ctx.tol));
    let axioms = verify_axioms(&p, &ctx.tol);
    let mut r = Report::new("product");
    r.ok = axioms.ok && zp.dim() == za.dim() + zb.dim();
    r.set("name", format!("{} x {}", fa.name, fb.name))
        .set("dim", p.dim())
        .set("center_dims", json!([za.dim(), zb.dim(), zp.dim()]))
        .set("axioms", axioms_json(&axioms));
    if let Some(out) = out {
        write_file(out, &format::render(&format::lts_to_file(&format!("{} x {}", fa.name, fb.name), &p)))?;
        r.set("written", out.display().to_string());
    }
    Ok(r)
}

// ---------------------------------------------------------------- pair-exp / geodesic

pub fn pair_exp(path: &Path, x: &str, t: f64, ctx: &Context) -> Result<Report, CommandError> {
    let (_, pair) = read_pair(path, ctx)?;
    let x = parse_f64_vector(x)?;
    let p = pair.exp_point(&x, t)?;
    let base = pair.base_point();
    let mut r = Report::new("pair-exp");
    r.set("name", pair.name())
        .set("t", t)
        .set("tangent_residual", pair.tangent_residual(&x)?)
        .set("point", matrix_json(&p))
        .set("is_base_point", pair.same_point(&p, &base)?)
        .set("distance_to_base", pair.point_residual(&p, &base)?);
    Ok(r)
}

/// `(s, t)` pairs on `[-2, 2]²` with step `4 / (n - 1)`.
pub fn sample_grid(n: usize) -> Vec<(f64, f64)> {
    let n = n.max(2);
    let pts: Vec<f64> = (0..n).map(|i| -2.0 + 4.0 * i as f64 / (n - 1) as f64).collect();
    pts.iter().flat_map(|&s| pts.iter().map(move |&t| (s, t))).collect()
}

pub fn geodesic(path: &Path, velocity: Option<&str>, samples: usize, ctx: &Context) -> Result<Report, CommandError> {
    let (file, pair) = read_pair(path, ctx)?;
    let v = match velocity {
        Some(v) => parse_f64_vector(v)?,
        None => {
            let mut rng = sampling::rng(ctx.seed);
            sampling::random_minus_vector(&pair, &mut rng, 1.0)
        }
    };
    let geo = Geodesic::new(&pair, v)?;
    let grid = sample_grid(samples);
    let translation = geo.translation_residual(&grid)?;
    let one_parameter = geo.one_parameter_residual(&grid)?;
    let mut r = Report::new("geodesic");
    r.ok = translation <= ctx.tol.membership_tol;
    r.set("name", file.name)
        .set("velocity", f64s_json(geo.velocity()))
        .set("samples", grid.len())
        .set("translation_residual", translation)
        .set("one_parameter_residual", one_parameter)
        .set("velocity_residual", geo.velocity_residual(1e-5)?);
    Ok(r)
}

// ---------------------------------------------------------------- period

#[derive(Debug, Clone, Default)]
pub struct PeriodArgs {
    pub pair: Option<PathBuf>,
    pub direction: Option<String>,
    pub t_max: f64,
    pub epsilon: f64,
    pub bound: u64,
    pub policy: Option<String>,
    pub subgroup: Option<String>,
    pub exact: bool,
}

fn witness_json(w: &Witness) -> Value {
    json!({ "coefficients": w.coefficients, "vector": f64s_json(&w.vector), "norm": w.norm })
}

fn discreteness_json(d: &Discreteness) -> Value {
    json!({
        "verdict": d.verdict.name(),
        "witness": d.witness.as_ref().map(witness_json),
        "shortest": d.shortest.as_ref().map(witness_json),
        "lattice_basis": d.lattice_basis.as_ref().map(|b| vectors_json(b)),
    })
}

fn lattice_json(l: &KernelLattice) -> Value {
    json!({
        "ambient_basis": l.ambient_basis.iter().map(|v| f64s_json(v)).collect::<Vec<_>>(),
        "generators": l.generators.iter().map(|v| f64s_json(v)).collect::<Vec<_>>(),
        "search_bound": l.search_bound,
        "verdict": l.verdict.name(),
        "witness": l.witness.as_ref().map(witness_json),
        "residuals": l.residuals,
        "caveat": l.caveat,
    })
}

/// Generators separated by `;` with comma-separated components, or a plain
/// comma-separated list of one-dimensional generators.
pub fn parse_generators(text: &str, exact: bool) -> Result<Generators, CommandError> {
    let raw: Vec<Vec<String>> = if text.contains(';') {
        parse_vectors(text)?
    } else {
        parse_vectors(text)?
            .into_iter()
            .flatten()
            .map(|x| vec![x])
            .collect()
    };
    if exact {
        let gens = raw
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| parse_rational(x).ok_or_else(|| usage(format!("not a rational: {x:?}"))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        Ok(Generators::Rational(gens))
    } else {
        let gens = raw
            .iter()
            .map(|v| v.iter().map(|x| parse_f64(x)).collect())
            .collect::<Result<Vec<Vec<f64>>, _>>()?;
        Ok(Generators::Float(gens))
    }
}

pub fn period(args: &PeriodArgs, ctx: &Context) -> Result<Report, CommandError> {
    let mode = if args.exact {
        ScalarMode::ExactRational
    } else {
        ScalarMode::Float64
    };
    let cfg = SubgroupSearchConfig::new(args.epsilon, args.bound, mode)?;
    let mut r = Report::new("period");
    r.set(
        "config",
        json!({ "epsilon": cfg.epsilon, "coefficient_bound": cfg.coefficient_bound, "mode": mode.name() }),
    );
    if let Some(text) = &args.subgroup {
        if args.pair.is_some() {
            return Err(usage("give either a pair file or --subgroup, not both"));
        }
        let gens = parse_generators(text, args.exact)?;
        let d = subgroup_discreteness(&gens, &cfg)?;
        r.set("generators", vectors_json(&gens.to_f64()))
            .set("verdict", d.verdict.name())
            .set("discreteness", discreteness_json(&d));
        return Ok(r);
    }
    let path = args.pair.as_ref().ok_or_else(|| usage("period needs a pair file or --subgroup"))?;
    let (file, mut pair) = read_pair(path, ctx)?;
    if let Some(p) = &args.policy {
        pair = pair.with_policy(format::parse_policy(p)?);
    }
    let z = match (&args.direction, &file.direction) {
        (Some(d), _) => parse_f64_vector(d)?,
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(usage("the pair file has no direction; pass --direction")),
    };
    let lattice = kernel_lattice_1d(&pair, &z, args.t_max, &ctx.tol)?;
    r.set("name", file.name)
        .set("policy", pair.policy().name())
        .set("direction", f64s_json(&z))
        .set("t_max", args.t_max)
        .set("generator", lattice.generators.first().map(|g| g[0]))
        .set("verdict", lattice.verdict.name())
        .set("lattice", lattice_json(&lattice));
    Ok(r)
}

// ---------------------------------------------------------------- demos

#[derive(Debug, Clone)]
pub struct QuotientDemoArgs {
    pub slope: f64,
    pub control_slope: String,
    pub epsilon: f64,
    pub bound: u64,
    pub t_max: f64,
}

impl Default for QuotientDemoArgs {
    fn default() -> Self {
        Self {
            slope: SQRT_2,
            control_slope: "2".into(),
            epsilon: 1e-6,
            bound: 1_000_000,
            t_max: 10.0,
        }
    }
}

/// Kernel lattice of `U(2)/O(2)` along `i·I`, and its square in `z × z`.
pub fn u2_square_lattice(ctx: &Context, t_max: f64) -> Result<(KernelLattice, KernelLattice), CommandError> {
    let pair = gallery::u_pair(2, trisym_core::sympair::FixedGroupPolicy::FullFixedGroup);
    let l = kernel_lattice_1d(&pair, &gallery::u_identity_direction(2), t_max, &ctx.tol)?;
    let sq = product_lattice(&l, &l);
    Ok((l, sq))
}

/// The lattice `Λ × Λ ⊂ z × z` projected along the line `{(x, c·x)}`.
///
/// Coordinates are measured in units of the generator of `Λ`, so the
/// projected group is generated by the images of `(1, 0)` and `(0, 1)`.
pub fn quotient_demo(args: &QuotientDemoArgs, ctx: &Context) -> Result<Report, CommandError> {
    let (l, sq) = u2_square_lattice(ctx, args.t_max)?;
    let Some(unit) = l.generators.first().map(|g| g[0]) else {
        return Err(usage("no kernel generator found for U(2)/O(2)"));
    };
    let gens: Vec<Vec<f64>> = sq.generators.iter().map(|g| g.iter().map(|x| x / unit).collect()).collect();
    let cfg = SubgroupSearchConfig::new(args.epsilon, args.bound, ScalarMode::Float64)?;
    let main = quotient_projection_discreteness(
        &Generators::Float(gens.clone()),
        &Generators::Float(vec![vec![1.0, args.slope]]),
        &cfg,
    )?;

    let exact = SubgroupSearchConfig::new(args.epsilon, args.bound, ScalarMode::ExactRational)?;
    let control_gens = Generators::Float(gens.clone()).to_rational()?;
    let c = parse_rational(&args.control_slope)
        .ok_or_else(|| usage(format!("control slope {:?} is not rational", args.control_slope)))?;
    let control = quotient_projection_discreteness(
        &Generators::Rational(control_gens.clone()),
        &Generators::Rational(vec![vec![Rational::from_integer(1.into()), c]]),
        &exact,
    )?;
    let zero = quotient_projection_discreteness(&Generators::Rational(control_gens), &Generators::Rational(vec![]), &exact)?;

    let witness_ok = main
        .result
        .witness
        .as_ref()
        .is_some_and(|w| w.norm < args.epsilon && w.coefficients.iter().all(|c| c.unsigned_abs() <= args.bound));
    let mut r = Report::new("quotient-demo");
    r.ok = witness_ok && control.result.verdict == Verdict::Discrete && zero.result.verdict == Verdict::Discrete;
    r.set("unit", unit)
        .set("lattice", lattice_json(&sq))
        .set("generators_in_units", gens.iter().map(|g| f64s_json(g)).collect::<Vec<_>>())
        .set("slope", args.slope)
        .set("verdict", main.result.verdict.name())
        .set("projected", main.projected.iter().map(|v| f64s_json(v)).collect::<Vec<_>>())
        .set("discreteness", discreteness_json(&main.result))
        .set(
            "lemma",
            main.lemma.as_ref().map(|p| {
                json!({ "x": f64s_json(&p.x), "y": f64s_json(&p.y), "defect": p.defect, "distance_to_ideal": p.distance_to_ideal })
            }),
        )
        .set(
            "rational_control",
            json!({ "slope": args.control_slope, "verdict": control.result.verdict.name(), "discreteness": discreteness_json(&control.result) }),
        )
        .set(
            "zero_ideal_control",
            json!({ "verdict": zero.result.verdict.name(), "discreteness": discreteness_json(&zero.result) }),
        );
    Ok(r)
}

pub fn loop_demo(grids: &[usize], t_max: f64, ctx: &Context) -> Result<Report, CommandError> {
    let pair = gallery::u_pair(2, trisym_core::sympair::FixedGroupPolicy::FullFixedGroup);
    let z = gallery::u_identity_direction(2);
    let m = gallery::u_minus_lts::<Rational>(2);
    let zm = center(&m, &ctx.tol);
    let mut r = Report::new("loop-demo");
    let mut rows = Vec::new();
    for &t in grids {
        let rep = grid_loop_period_check(&pair, &z, t, t_max, &ctx.tol)?;
        let g = GridPathSystem::new(m.clone(), t, GridConstraint::LoopZeroAtBothEnds)?;
        let equal = center(g.system(), &ctx.tol).same_as(&g.lift_subspace(&zm, &ctx.tol)?);
        r.ok &= rep.only_zero_loop && equal;
        rows.push(json!({
            "grid_size": t,
            "period": rep.period,
            "returning_values": f64s_json(&rep.returning_values),
            "pointwise_loops": rep.pointwise_loops,
            "step_bounded_loops": rep.step_bounded_loops.iter().map(|l| f64s_json(l)).collect::<Vec<_>>(),
            "only_zero_loop": rep.only_zero_loop,
            "center_of_loops_equals_loops_of_center": equal,
        }));
    }
    r.set("name", pair.name()).set("grids", rows);
    Ok(r)
}

pub fn gallery_cmd(out: &Path) -> Result<Report, CommandError> {
    let written = fixtures::write_gallery(out)?;
    let mut r = Report::new("gallery");
    r.set("dir", out.display().to_string()).set("files", written.len());
    Ok(r)
}
