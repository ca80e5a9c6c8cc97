//! Seeded sampling: points of symmetric spaces and randomized symmetric Lie
//! algebras built from structured generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trisym_core::gallery;
use trisym_core::lts::{center, ideal_closure, IdealClosure, LieTripleSystem, Subspace};
use trisym_core::numerics::{rank, Matrix};
use trisym_core::symlie::{triple_from_involution, SymmetricLieAlgebra};
use trisym_core::sympair::{MatrixSymmetricPair, PointedSymmetricSpace};
use trisym_core::{Rational, Result, Scalar, TolerancePolicy};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(v - θv) / 2` for a uniform `v ∈ [-scale, scale]^d`.
pub fn random_minus_vector(pair: &MatrixSymmetricPair, rng: &mut impl Rng, scale: f64) -> Vec<f64> {
    let d = pair.lie_dim();
    let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-scale..=scale)).collect();
    let tv = pair.symmetric_algebra().theta().mul_vec(&v);
    v.iter().zip(&tv).map(|(a, b)| 0.5 * (a - b)).collect()
}

/// A point `Exp(x)` for a random tangent vector `x`. `tangent` maps a raw
/// coordinate vector into the tangent space at the base point.
pub fn random_point<P: PointedSymmetricSpace>(
    space: &P,
    rng: &mut impl Rng,
    scale: f64,
    tangent: impl Fn(Vec<f64>) -> Vec<f64>,
) -> Result<Matrix<f64>> {
    let v: Vec<f64> = (0..space.lie_dim()).map(|_| rng.gen_range(-scale..=scale)).collect();
    space.exp_point(&tangent(v), 1.0)
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Product of random elementary matrices `I + c·E_ij` with small integer `c`,
/// occasionally followed by a rational diagonal rescaling.
pub fn random_change_of_basis(d: usize, rng: &mut impl Rng) -> Matrix<Rational> {
    let mut p = Matrix::<Rational>::identity(d);
    if d < 2 {
        return p;
    }
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = q(rng.gen_range(-2..=2));
        // column operation: col_j += c·col_i
        for r in 0..d {
            let v = p[(r, i)].clone() * c.clone();
            p[(r, j)] = p[(r, j)].clone() + v;
        }
    }
    if rng.gen_bool(0.3) {
        let k = rng.gen_range(0..d);
        let s = Rational::from_ratio(rng.gen_range(1..=3), rng.gen_range(1..=3));
        for r in 0..d {
            p[(r, k)] = p[(r, k)].clone() * s.clone();
        }
    }
    p
}

/// The structured generators randomized by [`random_sla`].
pub fn base_slas(tol: &TolerancePolicy) -> Vec<(&'static str, SymmetricLieAlgebra<Rational>)> {
    let flip_h = gallery::flip_symmetric(&gallery::heisenberg::<Rational>(), tol).expect("flip");
    let flip_so3 = gallery::flip_symmetric(&gallery::so3::<Rational>(), tol).expect("flip");
    let su2 = gallery::su2_symmetric::<Rational>();
    let heis = gallery::heisenberg_symmetric::<Rational>();
    let su2_x_heis = su2.direct_product(&heis, tol).expect("product");
    vec![
        ("su2", su2),
        ("u2", gallery::u_symmetric(2)),
        ("u3", gallery::u_symmetric(3)),
        ("heisenberg", heis),
        ("heisenberg-flip", flip_h),
        ("so3-flip", flip_so3),
        ("gl2-transpose", gallery::gl_transpose_symmetric(2)),
        ("su2 x heisenberg", su2_x_heis),
    ]
}

/// A base symmetric Lie algebra in a random rational basis.
pub fn random_sla(
    bases: &[(&'static str, SymmetricLieAlgebra<Rational>)],
    rng: &mut impl Rng,
    tol: &TolerancePolicy,
) -> Result<(&'static str, SymmetricLieAlgebra<Rational>)> {
    let (name, s) = bases.choose(rng).expect("nonempty");
    let p = random_change_of_basis(s.dim(), rng);
    Ok((name, s.change_basis(&p, tol)?))
}

/// Outcome of the axiom and ideal checks on one derived triple system.
#[derive(Debug, Clone)]
pub struct DerivedCheck {
    pub name: &'static str,
    pub dim: usize,
    pub axioms_ok: bool,
    /// Ideals found (`[n, m, m] ⊆ n`) among the candidates.
    pub ideals: usize,
    /// Ideals violating `[m, n, m] ⊆ n` or `[m, m, n] ⊆ n`.
    pub closure_failures: usize,
}

/// Candidate subspaces: the center, the derived span `[m, m, m]`, the ideal
/// generated by a random vector and a few random low-dimensional spans.
pub fn candidate_subspaces(
    m: &LieTripleSystem<Rational>,
    rng: &mut impl Rng,
    tol: &TolerancePolicy,
) -> Result<Vec<Subspace<Rational>>> {
    let d = m.dim();
    let mut out = vec![center(m, tol), Subspace::zero(d), Subspace::whole(d, tol)];
    let derived: Vec<Vec<Rational>> = (0..d)
        .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
        .map(|(i, j, k)| m.column(i, j, k).to_vec())
        .collect();
    out.push(Subspace::span(d, &derived, tol)?);
    let random_vec = |rng: &mut dyn rand::RngCore| -> Vec<Rational> { (0..d).map(|_| q(rng.gen_range(-2..=2))).collect() };
    // smallest subspace containing v and closed under [·, m, m]
    if d > 0 {
        let mut span = vec![random_vec(rng)];
        loop {
            let sub = Subspace::span(d, &span, tol)?;
            let mut grown = sub.basis().to_vec();
            for x in sub.basis() {
                for j in 0..d {
                    for k in 0..d {
                        let mut ej = vec![q(0); d];
                        ej[j] = q(1);
                        let mut ek = vec![q(0); d];
                        ek[k] = q(1);
                        grown.push(m.bracket(x, &ej, &ek)?);
                    }
                }
            }
            let next = Subspace::span(d, &grown, tol)?;
            if next.dim() == sub.dim() {
                out.push(next);
                break;
            }
            span = next.basis().to_vec();
        }
    }
    for k in 1..=2.min(d) {
        let vs: Vec<Vec<Rational>> = (0..k).map(|_| random_vec(rng)).collect();
        out.push(Subspace::span(d, &vs, tol)?);
    }
    Ok(out)
}

pub fn check_derived(
    name: &'static str,
    s: &SymmetricLieAlgebra<Rational>,
    rng: &mut impl Rng,
    tol: &TolerancePolicy,
) -> Result<DerivedCheck> {
    let m = triple_from_involution(s, tol)?;
    let axioms_ok = trisym_core::lts::verify_axioms(&m, tol).ok;
    let mut ideals = 0;
    let mut closure_failures = 0;
    for n in candidate_subspaces(&m, rng, tol)? {
        let IdealClosure { left, middle, right } = ideal_closure(&m, &n, tol);
        if left {
            ideals += 1;
            if !(middle && right) {
                closure_failures += 1;
            }
        }
    }
    Ok(DerivedCheck {
        name,
        dim: m.dim(),
        axioms_ok,
        ideals,
        closure_failures,
    })
}

/// Runs [`check_derived`] on `count` random symmetric Lie algebras.
pub fn random_sla_suite(count: usize, seed: u64, tol: &TolerancePolicy) -> Result<Vec<DerivedCheck>> {
    let bases = base_slas(tol);
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let (name, s) = random_sla(&bases, &mut rng, tol)?;
            debug_assert_eq!(rank(s.theta(), tol), s.dim());
            check_derived(name, &s, &mut rng, tol)
        })
        .collect()
}
