//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::Rng;
use trisym::commands::{self, Context, QuotientDemoArgs};
use trisym::fixtures::{self, FixtureManifest};
use trisym::format::{self, AnyFile, Kind};
use trisym::sampling;
use trisym_core::lts::{center, GridConstraint, GridPathSystem, LieTripleSystem, Subspace};
use trisym_core::period::{kernel_lattice_1d, product_lattice, Verdict};
use trisym_core::symlie::{lie_center, standard_embedding};
use trisym_core::sympair::{
    exp_center_morphism_check, reflection_law_residuals, FixedGroupPolicy, Geodesic, MatrixSymmetricPair,
    PointedSymmetricSpace,
};
use trisym_core::{gallery, Rational, TolerancePolicy};

const PERIOD_TOL: f64 = 1e-8;
const AC1_TIME: Duration = Duration::from_secs(5);
const JACOBI_TOL: f64 = 1e-9;
const AC5_COUNT: usize = 100;
const AC6_SAMPLES: usize = 1000;
const AC6_TOL: f64 = 1e-9;
const AC7_SAMPLES: usize = 100;
const AC7_TOL: f64 = 1e-8;
const AC8_NORM: f64 = 1e-6;
const AC8_BOUND: u64 = 1_000_000;
const AC8_TIME: Duration = Duration::from_secs(10);
const AC11_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn dir() -> PathBuf {
    fixtures::default_dir()
}

fn manifest() -> FixtureManifest {
    FixtureManifest::load(&dir()).expect("fixture manifest")
}

fn pair(name: &str) -> MatrixSymmetricPair {
    let e = manifest().get(name).cloned().unwrap_or_else(|| panic!("fixture {name}"));
    match format::read(&dir().join(&e.path)).expect("readable") {
        AnyFile::Pair(p) => format::pair_from_file(&p, &TolerancePolicy::default()).expect("valid pair"),
        AnyFile::Tensor(_) => panic!("{name} is not a pair"),
    }
}

fn pair_direction(name: &str) -> Vec<f64> {
    let e = manifest().get(name).cloned().expect("fixture");
    match format::read(&dir().join(&e.path)).expect("readable") {
        AnyFile::Pair(p) => p.direction.expect("direction"),
        AnyFile::Tensor(_) => panic!("{name} is not a pair"),
    }
}

fn lts(name: &str) -> LieTripleSystem<Rational> {
    let e = manifest().get(name).cloned().unwrap_or_else(|| panic!("fixture {name}"));
    match format::read(&dir().join(&e.path)).expect("readable") {
        AnyFile::Tensor(t) => format::lts_from_file(&t).expect("valid tensor"),
        AnyFile::Pair(_) => panic!("{name} is a pair"),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn period_of<P: PointedSymmetricSpace>(space: &P, z: &[f64]) -> Result<(f64, Verdict, Duration), String> {
    let start = Instant::now();
    let l = kernel_lattice_1d(space, z, 10.0, &TolerancePolicy::default()).map_err(|e| e.to_string())?;
    let g = l.generators.first().map(|g| g[0]).ok_or("no generator found")?;
    Ok((g, l.verdict, start.elapsed()))
}

fn ac1() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let name = format!("u{n}_o{n}");
        let (g, v, t) = period_of(&pair(&name), &pair_direction(&name))?;
        ensure((g - PI).abs() <= PERIOD_TOL, || format!("n={n}: generator {g}"))?;
        ensure(v == Verdict::Discrete, || format!("n={n}: verdict {}", v.name()))?;
        ensure(t < AC1_TIME, || format!("n={n}: took {t:?}"))?;
        parts.push(format!("n={n} |g-pi|={:.1e} {:.2}s", (g - PI).abs(), t.as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn ac2() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let (space, _, _) = period_of(&pair(&format!("u{n}_o{n}")), &gallery::u_identity_direction(n))?;
        let (group, v, _) = period_of(&gallery::u_plus_group(n), &gallery::u_identity_direction(n))?;
        ensure((group - 2.0 * PI).abs() <= PERIOD_TOL, || format!("U({n})+: generator {group}"))?;
        ensure(v == Verdict::Discrete, || format!("U({n})+: verdict {}", v.name()))?;
        ensure((group / space).round() == 2.0, || format!("n={n}: ratio {}", group / space))?;
        parts.push(format!("n={n} ratio {:.12}", group / space));
    }
    // the group as the symmetric space (U x U)/diagonal
    let (g, _, _) = period_of(&pair("u2_plus"), &pair_direction("u2_plus"))?;
    ensure((g - 2.0 * PI).abs() <= PERIOD_TOL, || format!("u2_plus: generator {g}"))?;
    parts.push("u2_plus 2pi".into());
    Ok(parts.join(", "))
}

fn ac3() -> Outcome {
    let tol = TolerancePolicy::default();
    for n in 2..=4 {
        let m = lts(&format!("u{n}-minus"));
        let z = center(&m, &tol);
        let expected = Subspace::span(m.dim(), &[gallery::u_minus_identity_direction::<Rational>(n)], &tol)
            .map_err(|e| e.to_string())?;
        ensure(z.dim() == 1 && z.same_as(&expected), || format!("center(u({n})-) = {:?}", z.basis()))?;

        let e = manifest().get(&format!("u{n}")).cloned().ok_or("missing sla fixture")?;
        let AnyFile::Tensor(f) = format::read(&dir().join(&e.path)).map_err(|e| e.to_string())? else {
            return Err("u(n) fixture is not a tensor".into());
        };
        let s = format::sla_from_file::<Rational>(&f, &tol).map_err(|e| e.to_string())?;
        let zg = lie_center(s.algebra(), &tol);
        let expected = Subspace::span(s.dim(), &[gallery::u_identity_direction::<Rational>(n)], &tol)
            .map_err(|e| e.to_string())?;
        ensure(zg.dim() == 1 && zg.same_as(&expected), || format!("z(u({n})) = {:?}", zg.basis()))?;
    }
    Ok("n=2..4 exact, dim 1".into())
}

fn ac4() -> Outcome {
    let tol = TolerancePolicy::default();
    let m = manifest();
    let mut count = 0;
    for e in m.of_kind(Kind::Lts) {
        let expected = e.expected.clone().unwrap_or_default();
        if expected["axioms"] != true {
            continue;
        }
        let sys = lts(&e.name);
        let emb = standard_embedding(&sys, &tol).map_err(|err| format!("{}: {err}", e.name))?;
        let s = &emb.algebra;
        let (jacobi, _) = s.algebra().jacobi_defect(&tol);
        ensure(jacobi <= JACOBI_TOL, || format!("{}: Jacobi defect {jacobi}", e.name))?;
        ensure(s.automorphism_defect() == 0.0, || format!("{}: theta defect", e.name))?;
        let block = emb.m_block(&tol).map_err(|err| err.to_string())?;
        ensure(block.without_labels() == sys.clone().without_labels(), || {
            format!("{}: m-block differs", e.name)
        })?;
        let zs = lie_center(s.algebra(), &tol);
        let zm = emb.embed_subspace(&center(&sys, &tol), &tol).map_err(|err| err.to_string())?;
        ensure(zs.same_as(&zm), || format!("{}: center mismatch", e.name))?;
        if let Some(h) = expected["h_dim"].as_u64() {
            ensure(emb.h_dim() as u64 == h, || format!("{}: dim h = {} != {h}", e.name, emb.h_dim()))?;
        }
        count += 1;
    }
    for n in 2..=4 {
        let emb = standard_embedding(&lts(&format!("sphere{n}")), &tol).map_err(|e| e.to_string())?;
        ensure(emb.h_dim() == n * (n - 1) / 2, || format!("sphere{n}: dim h = {}", emb.h_dim()))?;
    }
    Ok(format!("{count} fixtures"))
}

fn ac5() -> Outcome {
    let tol = TolerancePolicy::default();
    let checks = sampling::random_sla_suite(AC5_COUNT, 42, &tol).map_err(|e| e.to_string())?;
    let ideals: usize = checks.iter().map(|c| c.ideals).sum();
    for c in &checks {
        ensure(c.axioms_ok, || format!("{} (dim {}): axioms fail", c.name, c.dim))?;
        ensure(c.closure_failures == 0, || format!("{}: ideal without slot closure", c.name))?;
    }
    ensure(checks.len() == AC5_COUNT, || "suite too short".into())?;
    Ok(format!("{} algebras, {ideals} ideals checked", checks.len()))
}

fn reflection_suite<P: PointedSymmetricSpace>(
    space: &P,
    tangent: impl Fn(&mut rand_chacha::ChaCha8Rng) -> Vec<f64>,
    seed: u64,
) -> Result<f64, String> {
    let mut rng = sampling::rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..AC6_SAMPLES {
        let mut point = || space.exp_point(&tangent(&mut rng), 1.0).map_err(|e| e.to_string());
        let (x, y, z) = (point()?, point()?, point()?);
        let r = reflection_law_residuals(space, &x, &y, &z).map_err(|e| e.to_string())?;
        worst = worst.max(r.max());
    }
    Ok(worst)
}

fn ac6() -> Outcome {
    let u2 = pair("u2_o2");
    let so3 = pair("so3_so2");
    let gl2 = gallery::gl_plus_group(2);
    let w1 = reflection_suite(&u2, |r| sampling::random_minus_vector(&u2, r, 1.0), 42)?;
    let w2 = reflection_suite(&so3, |r| sampling::random_minus_vector(&so3, r, 1.0), 42)?;
    let w3 = reflection_suite(&gl2, |r| (0..4).map(|_| r.gen_range(-1.0..=1.0)).collect(), 42)?;
    for (name, w) in [("U(2)/O(2)", w1), ("SO(3)/SO(2)", w2), ("GL(2)+", w3)] {
        ensure(w <= AC6_TOL, || format!("{name}: residual {w:e}"))?;
    }
    Ok(format!("worst {:.1e} / {:.1e} / {:.1e}", w1, w2, w3))
}

fn ac7() -> Outcome {
    let tol = TolerancePolicy::default();
    let mut parts = Vec::new();
    for n in 2..=3 {
        let p = pair(&format!("u{n}_o{n}"));
        let z = gallery::u_identity_direction::<f64>(n);
        let mut rng = sampling::rng(42);
        let mut worst = 0.0f64;
        let mut total = 0;
        // 10 central x times 10 arbitrary y
        for i in 0..10 {
            let c = -2.0 + 4.0 * i as f64 / 9.0;
            let x: Vec<f64> = z.iter().map(|v| c * v).collect();
            let ys: Vec<Vec<f64>> = (0..AC7_SAMPLES / 10)
                .map(|_| sampling::random_minus_vector(&p, &mut rng, 1.5))
                .collect();
            let rep = exp_center_morphism_check(&p, &x, &ys, &tol).map_err(|e| e.to_string())?;
            worst = worst.max(rep.worst_residual);
            total += rep.samples;
        }
        ensure(worst < AC7_TOL, || format!("n={n}: residual {worst:e}"))?;
        ensure(total == AC7_SAMPLES, || format!("n={n}: {total} samples"))?;
        parts.push(format!("n={n} worst {worst:.1e}"));
    }
    Ok(parts.join(", "))
}

fn ac8() -> Outcome {
    let start = Instant::now();
    let r = commands::quotient_demo(&QuotientDemoArgs::default(), &Context::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let w = &r.body["discreteness"]["witness"];
    let norm = w["norm"].as_f64().ok_or("no witness")?;
    let coeffs: Vec<i64> = w["coefficients"]
        .as_array()
        .ok_or("no coefficients")?
        .iter()
        .filter_map(|c| c.as_i64())
        .collect();
    ensure(norm > 0.0 && norm < AC8_NORM, || format!("witness norm {norm:e}"))?;
    ensure(coeffs.iter().all(|c| c.unsigned_abs() <= AC8_BOUND), || format!("coefficients {coeffs:?}"))?;
    ensure(r.body["rational_control"]["verdict"] == "discrete", || "rational control not discrete".into())?;
    ensure(r.body["zero_ideal_control"]["verdict"] == "discrete", || "zero-ideal control not discrete".into())?;
    ensure(elapsed < AC8_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("norm {norm:.2e}, coefficients {coeffs:?}, {:.2}s", elapsed.as_secs_f64()))
}

fn ac9() -> Outcome {
    let tol = TolerancePolicy::default();
    let l2 = kernel_lattice_1d(&pair("u2_o2"), &pair_direction("u2_o2"), 10.0, &tol).map_err(|e| e.to_string())?;
    let l3 = kernel_lattice_1d(&pair("u3_o3"), &pair_direction("u3_o3"), 10.0, &tol).map_err(|e| e.to_string())?;
    let p = product_lattice(&l2, &l3);
    let expected = [[PI, 0.0], [0.0, PI]];
    ensure(p.generators.len() == 2, || format!("{} generators", p.generators.len()))?;
    for (g, e) in p.generators.iter().zip(&expected) {
        let d = g.iter().zip(e).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(d <= PERIOD_TOL, || format!("generator {g:?}"))?;
    }
    ensure(p.verdict == Verdict::Discrete, || format!("verdict {}", p.verdict.name()))?;
    Ok("generators (pi,0), (0,pi), discrete".into())
}

fn ac10() -> Outcome {
    let tol = TolerancePolicy::default();
    for name in ["u2-minus", "sphere3"] {
        let m = lts(name);
        let z = center(&m, &tol);
        for t in 3..=5 {
            let g = GridPathSystem::new(m.clone(), t, GridConstraint::LoopZeroAtBothEnds).map_err(|e| e.to_string())?;
            let lifted = g.lift_subspace(&z, &tol).map_err(|e| e.to_string())?;
            let zg = center(g.system(), &tol);
            ensure(zg.same_as(&lifted), || format!("{name}, T={t}: {} vs {}", zg.dim(), lifted.dim()))?;
        }
    }
    Ok("u2-minus, sphere3; T=3,4,5".into())
}

fn ac11() -> Outcome {
    let grid = commands::sample_grid(9);
    let mut parts = Vec::new();
    for name in ["u2_o2", "so3_so2"] {
        let p = pair(name);
        let mut rng = sampling::rng(42);
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let v = sampling::random_minus_vector(&p, &mut rng, 1.0);
            let geo = Geodesic::new(&p, v).map_err(|e| e.to_string())?;
            worst = worst.max(geo.translation_residual(&grid).map_err(|e| e.to_string())?);
        }
        ensure(worst < AC11_TOL, || format!("{name}: residual {worst:e}"))?;
        parts.push(format!("{name} worst {worst:.1e}"));
    }
    Ok(parts.join(", "))
}

fn main() {
    // the policy is part of the fixtures; fail loudly if it drifted
    assert_eq!(pair("so3_so2").policy(), FixedGroupPolicy::IdentityComponentHeuristic);
    let criteria: [Criterion; 11] = [
        ("AC1 u(n)/O(n) kernel lattice is pi", ac1),
        ("AC2 group-vs-space factor 2", ac2),
        ("AC3 exact centers of u(n)", ac3),
        ("AC4 standard-embedding suite", ac4),
        ("AC5 random symmetric Lie algebras", ac5),
        ("AC6 reflection-space laws", ac6),
        ("AC7 Exp-center lemma", ac7),
        ("AC8 sqrt2 non-discreteness demo", ac8),
        ("AC9 product lattice", ac9),
        ("AC10 grid loop center", ac10),
        ("AC11 geodesic translation law", ac11),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
