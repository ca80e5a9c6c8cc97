//! The shipped fixture corpus and its manifest.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use trisym_core::gallery;
use trisym_core::lts::{GridConstraint, GridPathSystem, LieTripleSystem};
use trisym_core::numerics::Matrix;
use trisym_core::symlie::{LieAlgebra, SymmetricLieAlgebra};
use trisym_core::sympair::{FixedGroupPolicy, MatrixSymmetricPair, Sigma};
use trisym_core::{Rational, TolerancePolicy};

use crate::format::{self, AnyFile, FormatError, Kind};

/// Directory of the fixtures checked into the repository.
pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub kind: Kind,
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureManifest {
    pub fixtures: Vec<FixtureEntry>,
}

impl FixtureManifest {
    pub fn load(dir: &Path) -> Result<Self, FormatError> {
        let path = dir.join(MANIFEST);
        let text = std::fs::read_to_string(&path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let m: FixtureManifest = serde_json::from_str(&text)?;
        for e in &m.fixtures {
            let file = format::read(&dir.join(&e.path))?;
            if file.kind() != e.kind {
                return Err(FormatError::Schema(format!(
                    "{}: manifest kind {} but file kind {}",
                    e.name,
                    e.kind.name(),
                    file.kind().name()
                )));
            }
        }
        Ok(m)
    }

    pub fn get(&self, name: &str) -> Option<&FixtureEntry> {
        self.fixtures.iter().find(|e| e.name == name)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &FixtureEntry> {
        self.fixtures.iter().filter(move |e| e.kind == kind)
    }
}

/// A fixture file with its manifest entry.
pub struct Fixture {
    pub entry: FixtureEntry,
    pub file: AnyFile,
}

fn extension(kind: Kind) -> &'static str {
    match kind {
        Kind::Lts => "lts",
        Kind::LieAlgebra => "la",
        Kind::SymmetricLieAlgebra => "sla",
        Kind::Pair => "pair",
    }
}

fn fixture(name: &str, file: AnyFile, expected: Option<Value>) -> Fixture {
    let kind = file.kind();
    Fixture {
        entry: FixtureEntry {
            name: name.to_string(),
            kind,
            path: format!("{name}.{}.json", extension(kind)),
            expected,
        },
        file,
    }
}

fn lts(name: &str, m: &LieTripleSystem<Rational>, expected: Value) -> Fixture {
    fixture(name, AnyFile::Tensor(format::lts_to_file(name, m)), Some(expected))
}

fn la(name: &str, g: &LieAlgebra<Rational>, expected: Value) -> Fixture {
    fixture(name, AnyFile::Tensor(format::la_to_file(name, g)), Some(expected))
}

fn sla(name: &str, s: &SymmetricLieAlgebra<Rational>, expected: Value) -> Fixture {
    fixture(name, AnyFile::Tensor(format::sla_to_file(name, s)), Some(expected))
}

fn pair(name: &str, p: &MatrixSymmetricPair, direction: Option<Vec<f64>>, expected: Value) -> Fixture {
    fixture(name, AnyFile::Pair(format::pair_to_file(p, direction)), Some(expected))
}

/// `GL(n)/O(n)` with `σ(g) = (gᵀ)⁻¹`.
pub fn gl_pair(n: usize) -> MatrixSymmetricPair {
    let basis: Vec<Matrix<f64>> = (0..n * n)
        .map(|k| {
            let mut m = Matrix::zeros(n, n);
            m[(k / n, k % n)] = 1.0;
            m
        })
        .collect();
    let labels = (0..n * n).map(|k| format!("E{}{}", k / n, k % n)).collect();
    MatrixSymmetricPair::new(
        format!("GL({n})/O({n})"),
        basis,
        labels,
        Sigma::TransposeInverse,
        FixedGroupPolicy::FullFixedGroup,
        &TolerancePolicy::default(),
    )
    .expect("gl(n) basis")
}

/// Coordinates of the identity matrix in the basis of [`gl_pair`].
pub fn gl_identity_direction(n: usize) -> Vec<f64> {
    (0..n * n).map(|k| if k / n == k % n { 1.0 } else { 0.0 }).collect()
}

/// `[e0, e1] = e2`, `[e1, e2] = e1`: antisymmetric but not a Lie bracket.
pub fn broken_jacobi() -> LieAlgebra<Rational> {
    let one = Rational::from_integer(1.into());
    LieAlgebra::from_entries(
        3,
        [
            ([0, 1, 2], one.clone()),
            ([1, 0, 2], -one.clone()),
            ([1, 2, 1], one.clone()),
            ([2, 1, 1], -one),
        ],
    )
    .expect("indices < 3")
}

/// Heisenberg with `θ = diag(1, 1, -1)`: involutive, not an automorphism.
pub fn broken_sla_file() -> format::TensorFile {
    let mut f = format::sla_to_file("broken", &gallery::heisenberg_symmetric::<Rational>());
    f.theta = Some(vec![
        vec![json!("1"), json!("0"), json!("0")],
        vec![json!("0"), json!("1"), json!("0")],
        vec![json!("0"), json!("0"), json!("-1")],
    ]);
    f
}

fn lts_expect(axioms: bool, center: usize, h: Option<usize>) -> Value {
    let mut v = json!({ "axioms": axioms, "center_dim": center });
    if let Some(h) = h {
        v["h_dim"] = json!(h);
    }
    v
}

/// Every fixture of the gallery, in manifest order.
pub fn gallery() -> Vec<Fixture> {
    let tol = TolerancePolicy::default();
    let mut out = Vec::new();
    for n in 2..=3 {
        out.push(lts(&format!("abelian{n}"), &gallery::abelian_lts(n), lts_expect(true, n, Some(0))));
    }
    for n in 2..=4 {
        out.push(lts(
            &format!("sphere{n}"),
            &gallery::sphere_lts(n),
            lts_expect(true, 0, Some(n * (n - 1) / 2)),
        ));
    }
    for n in 2..=4 {
        out.push(lts(
            &format!("u{n}-minus"),
            &gallery::u_minus_lts(n),
            lts_expect(true, 1, Some(n * (n - 1) / 2)),
        ));
    }
    out.push(lts("broken", &gallery::broken_lts(), json!({ "axioms": false })));
    let loop4 = GridPathSystem::new(gallery::u_minus_lts::<Rational>(2), 4, GridConstraint::LoopZeroAtBothEnds)
        .expect("T = 4");
    out.push(lts("u2-minus-loop4", loop4.system(), lts_expect(true, 2, None)));
    let path3 = GridPathSystem::new(gallery::sphere_lts::<Rational>(3), 3, GridConstraint::PathZeroAtStart)
        .expect("T = 3");
    out.push(lts("sphere3-path3", path3.system(), lts_expect(true, 0, None)));

    out.push(la("so3", &gallery::so3(), json!({ "jacobi": true, "center_dim": 0 })));
    out.push(la("heisenberg", &gallery::heisenberg(), json!({ "jacobi": true, "center_dim": 1 })));
    out.push(la("broken-jacobi", &broken_jacobi(), json!({ "jacobi": false })));

    for n in 2..=4 {
        out.push(sla(
            &format!("u{n}"),
            &gallery::u_symmetric(n),
            json!({ "valid": true, "center_dim": 1, "minus_dim": n * (n + 1) / 2 }),
        ));
    }
    out.push(sla("su2", &gallery::su2_symmetric(), json!({ "valid": true, "center_dim": 0, "minus_dim": 2 })));
    out.push(sla(
        "heisenberg",
        &gallery::heisenberg_symmetric(),
        json!({ "valid": true, "center_dim": 1, "minus_dim": 2 }),
    ));
    let hflip = gallery::flip_symmetric(&gallery::heisenberg::<Rational>(), &tol).expect("flip");
    out.push(sla("heisenberg-flip", &hflip, json!({ "valid": true, "center_dim": 2, "minus_dim": 3 })));
    let sflip = gallery::flip_symmetric(&gallery::so3::<Rational>(), &tol).expect("flip");
    out.push(sla("so3-flip", &sflip, json!({ "valid": true, "center_dim": 0, "minus_dim": 3 })));
    out.push(sla(
        "gl2-transpose",
        &gallery::gl_transpose_symmetric(2),
        json!({ "valid": true, "center_dim": 1, "minus_dim": 3 }),
    ));
    out.push(fixture(
        "broken",
        AnyFile::Tensor(broken_sla_file()),
        Some(json!({ "valid": false })),
    ));

    let full = FixedGroupPolicy::FullFixedGroup;
    for n in 2..=4 {
        out.push(pair(
            &format!("u{n}_o{n}"),
            &gallery::u_pair(n, full),
            Some(gallery::u_identity_direction(n)),
            json!({ "period": std::f64::consts::PI, "verdict": "discrete" }),
        ));
    }
    out.push(pair(
        "so3_so2",
        &gallery::so_pair(2, FixedGroupPolicy::IdentityComponentHeuristic),
        None,
        json!({ "reflection_laws": true }),
    ));
    out.push(pair(
        "u2_plus",
        &gallery::u_group_pair(2),
        Some(gallery::u_group_direction(2)),
        json!({ "period": 2.0 * std::f64::consts::PI, "verdict": "discrete" }),
    ));
    out.push(pair(
        "gl2_o2",
        &gl_pair(2),
        Some(gl_identity_direction(2)),
        json!({ "verdict": "inconclusive" }),
    ));
    out
}

pub fn manifest(fixtures: &[Fixture]) -> FixtureManifest {
    FixtureManifest {
        fixtures: fixtures.iter().map(|f| f.entry.clone()).collect(),
    }
}

/// Writes the gallery and its manifest into `dir`; returns the written paths.
pub fn write_gallery(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let fixtures = gallery();
    let mut written = Vec::with_capacity(fixtures.len() + 1);
    for f in &fixtures {
        let path = dir.join(&f.entry.path);
        std::fs::write(&path, f.file.render())?;
        written.push(path);
    }
    let path = dir.join(MANIFEST);
    std::fs::write(&path, format::render(&manifest(&fixtures)))?;
    written.push(path);
    Ok(written)
}
