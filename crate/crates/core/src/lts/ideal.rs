//! Centers, ideals, subsystems, quotients and products.

use alloc::vec;
use alloc::vec::Vec;

use super::{LieTripleSystem, LtsMorphism, Subspace};
use crate::numerics::{unit_vector, Matrix, Scalar, TolerancePolicy};
use crate::{Error, Result};

/// `z(m)`: the kernel of all maps `x ↦ [x, e_j, e_k]` stacked into one matrix.
pub fn center<S: Scalar>(m: &LieTripleSystem<S>, tol: &TolerancePolicy) -> Subspace<S> {
    let d = m.dim();
    if d == 0 {
        return Subspace::zero(0);
    }
    let mut a = Matrix::zeros(d * d * d, d);
    for j in 0..d {
        for k in 0..d {
            for l in 0..d {
                for i in 0..d {
                    a[((j * d + k) * d + l, i)] = m.coeff(i, j, k, l).clone();
                }
            }
        }
    }
    let kernel = S::nullspace(&a, tol);
    Subspace::span(d, &kernel, tol).expect("kernel vectors have length dim")
}

/// Which slots of the bracket a subspace annihilates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterLaterality {
    /// `[z, m, m] = 0`
    pub left: bool,
    /// `[m, z, m] = 0`
    pub middle: bool,
    /// `[m, m, z] = 0`
    pub right: bool,
}

impl CenterLaterality {
    pub fn all(&self) -> bool {
        self.left && self.middle && self.right
    }
}

fn vanishes<S: Scalar>(v: &[S], tol: f64) -> bool {
    v.iter().all(|x| x.is_negligible(tol))
}

fn bracket_tol<S: Scalar>(m: &LieTripleSystem<S>, tol: &TolerancePolicy) -> f64 {
    tol.eq_tol * m.scale()
}

pub fn center_laterality<S: Scalar>(
    m: &LieTripleSystem<S>,
    z: &Subspace<S>,
    tol: &TolerancePolicy,
) -> CenterLaterality {
    let d = m.dim();
    let t = bracket_tol(m, tol);
    let basis: Vec<Vec<S>> = (0..d).map(|i| unit_vector(d, i)).collect();
    let mut out = CenterLaterality {
        left: true,
        middle: true,
        right: true,
    };
    for zv in z.basis() {
        for a in &basis {
            for b in &basis {
                let br = |x: &[S], y: &[S], w: &[S]| m.bracket(x, y, w).expect("dimensions");
                out.left &= vanishes(&br(zv, a, b), t);
                out.middle &= vanishes(&br(a, zv, b), t);
                out.right &= vanishes(&br(a, b, zv), t);
            }
        }
    }
    out
}

/// `[n, n, n] ⊆ n`.
pub fn is_subsystem<S: Scalar>(
    m: &LieTripleSystem<S>,
    n: &Subspace<S>,
    _tol: &TolerancePolicy,
) -> bool {
    let b = n.basis();
    for x in b {
        for y in b {
            for z in b {
                let v = m.bracket(x, y, z).expect("subspace lives in m");
                if !n.contains(&v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Slot-wise ideal conditions for a subspace `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealClosure {
    /// `[n, m, m] ⊆ n`
    pub left: bool,
    /// `[m, n, m] ⊆ n`
    pub middle: bool,
    /// `[m, m, n] ⊆ n`
    pub right: bool,
}

pub fn ideal_closure<S: Scalar>(
    m: &LieTripleSystem<S>,
    n: &Subspace<S>,
    _tol: &TolerancePolicy,
) -> IdealClosure {
    let d = m.dim();
    let basis: Vec<Vec<S>> = (0..d).map(|i| unit_vector(d, i)).collect();
    let mut out = IdealClosure {
        left: true,
        middle: true,
        right: true,
    };
    for x in n.basis() {
        for a in &basis {
            for b in &basis {
                if out.left {
                    out.left = n.contains(&m.bracket(x, a, b).expect("dims"));
                }
                if out.middle {
                    out.middle = n.contains(&m.bracket(a, x, b).expect("dims"));
                }
                if out.right {
                    out.right = n.contains(&m.bracket(a, b, x).expect("dims"));
                }
            }
        }
    }
    out
}

/// `[n, m, m] ⊆ n`. The other two slot conditions follow from the axioms;
/// debug builds assert them.
pub fn is_ideal<S: Scalar>(m: &LieTripleSystem<S>, n: &Subspace<S>, tol: &TolerancePolicy) -> bool {
    let c = ideal_closure(m, n, tol);
    debug_assert!(!c.left || (c.middle && c.right), "ideal without slot closure: {c:?}");
    c.left
}

/// `m / n` together with the projection and the section used to build it.
#[derive(Debug, Clone)]
pub struct Quotient<S: Scalar> {
    pub system: LieTripleSystem<S>,
    /// Certified projection `m → m/n`.
    pub projection: LtsMorphism<S>,
    /// Indices of the standard basis vectors of `m` whose classes form the
    /// basis of `m/n`.
    pub complement: Vec<usize>,
}

/// Quotient by an ideal. The basis of `m/n` consists of the classes of the
/// standard basis vectors picked greedily to complete a basis of `n`.
pub fn quotient<S: Scalar>(
    m: &LieTripleSystem<S>,
    n: &Subspace<S>,
    tol: &TolerancePolicy,
) -> Result<Quotient<S>> {
    if n.parent_dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: n.parent_dim(),
        });
    }
    if !is_ideal(m, n, tol) {
        return Err(Error::NotAnIdeal);
    }
    let d = m.dim();
    let comp = n.complement_indices(tol);
    let q = comp.len();
    // basis (n-basis, e_comp) of m; its inverse gives the projection rows
    let mut full: Vec<Vec<S>> = n.basis().to_vec();
    full.extend(comp.iter().map(|&i| unit_vector(d, i)));
    let mut proj = Matrix::zeros(q, d);
    if d > 0 {
        let inv = S::left_inverse(&full, tol).ok_or(Error::Singular)?;
        for r in 0..q {
            for c in 0..d {
                proj[(r, c)] = inv[(n.dim() + r, c)].clone();
            }
        }
    }
    let system = LieTripleSystem::from_brackets(q, |a, b, c| {
        proj.mul_vec(m.column(comp[a], comp[b], comp[c]))
    })?;
    let projection = LtsMorphism::new(m.clone(), system.clone(), proj)?.certify(tol);
    if !projection.is_certified() {
        return Err(Error::ClosureDefect(alloc::format!(
            "quotient projection residual {:?}",
            projection.worst_residual()
        )));
    }
    Ok(Quotient {
        system,
        projection,
        complement: comp,
    })
}

/// `m1 × m2` with mixed brackets zero.
pub fn direct_product<S: Scalar>(
    m1: &LieTripleSystem<S>,
    m2: &LieTripleSystem<S>,
) -> Result<LieTripleSystem<S>> {
    let (d1, d2) = (m1.dim(), m2.dim());
    let d = d1 + d2;
    LieTripleSystem::from_brackets(d, |i, j, k| {
        let mut col = vec![S::zero(); d];
        if i < d1 && j < d1 && k < d1 {
            col[..d1].clone_from_slice(m1.column(i, j, k));
        } else if i >= d1 && j >= d1 && k >= d1 {
            col[d1..].clone_from_slice(m2.column(i - d1, j - d1, k - d1));
        }
        col
    })
}

/// The bracket of `m` restricted to a subsystem, in the subsystem's basis.
pub fn restrict<S: Scalar>(
    m: &LieTripleSystem<S>,
    n: &Subspace<S>,
    _tol: &TolerancePolicy,
) -> Result<LieTripleSystem<S>> {
    let b = n.basis();
    let mut failure = None;
    let sys = LieTripleSystem::from_brackets(n.dim(), |i, j, k| {
        let v = m.bracket(&b[i], &b[j], &b[k]).expect("dims");
        match n.coordinates(&v) {
            Some(c) => c,
            None => {
                failure.get_or_insert([i, j, k]);
                vec![S::zero(); b.len()]
            }
        }
    })?;
    match failure {
        Some(idx) => Err(Error::ClosureDefect(alloc::format!(
            "[b{}, b{}, b{}] leaves the subspace",
            idx[0], idx[1], idx[2]
        ))),
        None => Ok(sys),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::lts::verify_axioms;
    use crate::numerics::Rational;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn e(d: usize, i: usize) -> Vec<Rational> {
        unit_vector(d, i)
    }

    #[test]
    fn centers_of_basic_systems() {
        let a = LieTripleSystem::<Rational>::abelian(3);
        assert_eq!(center(&a, &tol()).dim(), 3);
        let s = gallery::sphere_lts::<Rational>(3);
        assert_eq!(center(&s, &tol()).dim(), 0);
        assert_eq!(center(&s.to_f64(), &tol()).dim(), 0);
    }

    #[test]
    fn u2_minus_center_is_scalar_line() {
        let m = gallery::u_minus_lts::<Rational>(2);
        let z = center(&m, &tol());
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&gallery::u_minus_identity_direction::<Rational>(2)));
        assert!(center_laterality(&m, &z, &tol()).all());
    }

    #[test]
    fn subsystems_and_ideals_of_the_sphere() {
        let t = tol();
        let s = gallery::sphere_lts::<Rational>(3);
        let plane = Subspace::span(3, &[e(3, 0), e(3, 1)], &t).unwrap();
        assert!(is_subsystem(&s, &plane, &t));
        assert!(is_subsystem(&s, &Subspace::zero(3), &t));
        let line = Subspace::span(3, &[e(3, 0)], &t).unwrap();
        assert!(!is_ideal(&s, &line, &t));
        assert!(is_ideal(&s, &Subspace::whole(3, &t), &t));
        assert!(is_ideal(&s, &center(&s, &t), &t));
    }

    #[test]
    fn quotients() {
        let t = tol();
        let s = gallery::sphere_lts::<Rational>(3);
        let q0 = quotient(&s, &Subspace::zero(3), &t).unwrap();
        assert_eq!(q0.system, s);
        let qa = quotient(&s, &Subspace::whole(3, &t), &t).unwrap();
        assert_eq!(qa.system.dim(), 0);
        let line = Subspace::span(3, &[e(3, 0)], &t).unwrap();
        assert!(matches!(quotient(&s, &line, &t), Err(Error::NotAnIdeal)));

        let u = gallery::u_minus_lts::<Rational>(2);
        let z = center(&u, &t);
        let q = quotient(&u, &z, &t).unwrap();
        assert_eq!(q.system.dim(), 2);
        assert!(q.projection.is_certified());
        assert!(verify_axioms(&q.system, &t).ok);
        assert_eq!(center(&q.system, &t).dim(), 0);
    }

    #[test]
    fn products() {
        let t = tol();
        let s = gallery::sphere_lts::<Rational>(3);
        let p = direct_product(&s, &s).unwrap();
        assert_eq!(p.dim(), 6);
        assert_eq!(center(&p, &t).dim(), 0);
        assert!(verify_axioms(&p, &t).ok);
        let zero = LieTripleSystem::<Rational>::abelian(0);
        assert_eq!(direct_product(&s, &zero).unwrap(), s);
        let a = LieTripleSystem::<Rational>::abelian(2);
        assert!(direct_product(&a, &a).unwrap().is_abelian());
    }

    #[test]
    fn restriction_to_a_plane() {
        let t = tol();
        let s = gallery::sphere_lts::<Rational>(3);
        let plane = Subspace::span(3, &[e(3, 0), e(3, 1)], &t).unwrap();
        assert_eq!(restrict(&s, &plane, &t).unwrap(), gallery::sphere_lts(2));
    }
}
