//! Builders for the standard fixtures.
//!
//! Complex matrices are realified as `Z = A + iB ↦ [[A, -B], [B, A]]`.
//! The basis of `u(n)` is ordered with `g₊ = o(n)` first
//! (`E_pq - E_qp`, `p < q`), then `g₋ = i·Sym(n)`: the diagonal `i·E_pp`
//! followed by `i(E_pq + E_qp)`, `p < q`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lts::LieTripleSystem;
use crate::numerics::{CoordinateSolver, Matrix, Scalar, TolerancePolicy};
use crate::symlie::{LieAlgebra, SymmetricLieAlgebra};
use crate::sympair::{FixedGroupPolicy, GroupPlus, MatrixSymmetricPair, Sigma};
use crate::Result;

pub fn abelian_lts<S: Scalar>(n: usize) -> LieTripleSystem<S> {
    LieTripleSystem::abelian(n)
}

/// Sphere triple system `[x, y, z] = ⟨y, z⟩x - ⟨x, z⟩y` on `ℝⁿ`.
pub fn sphere_lts<S: Scalar>(n: usize) -> LieTripleSystem<S> {
    LieTripleSystem::from_brackets(n, |i, j, k| {
        let mut col = vec![S::zero(); n];
        if j == k {
            col[i] = col[i].clone() + S::one();
        }
        if i == k {
            col[j] = col[j].clone() - S::one();
        }
        col
    })
    .expect("columns of length n")
}

fn unit_matrix<S: Scalar>(n: usize, p: usize, q: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(n, n);
    m[(p, q)] = S::one();
    m
}

/// `A + iB` as a real `2n x 2n` matrix.
pub fn realify<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let n = a.rows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)].clone();
            m[(i + n, j + n)] = a[(i, j)].clone();
            m[(i + n, j)] = b[(i, j)].clone();
            m[(i, j + n)] = -b[(i, j)].clone();
        }
    }
    m
}

/// Realified basis of `u(n)` with labels.
pub fn u_basis<S: Scalar>(n: usize) -> (Vec<Matrix<S>>, Vec<String>) {
    let zero = Matrix::zeros(n, n);
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let a = unit_matrix::<S>(n, p, q).sub(&unit_matrix(n, q, p)).expect("shape");
            mats.push(realify(&a, &zero));
            labels.push(format!("o{p}{q}"));
        }
    }
    for p in 0..n {
        mats.push(realify(&zero, &unit_matrix(n, p, p)));
        labels.push(format!("i{p}{p}"));
    }
    for p in 0..n {
        for q in p + 1..n {
            let b = unit_matrix::<S>(n, p, q).add(&unit_matrix(n, q, p)).expect("shape");
            mats.push(realify(&zero, &b));
            labels.push(format!("s{p}{q}"));
        }
    }
    (mats, labels)
}

/// `dim o(n) = n(n-1)/2`.
pub fn u_plus_dim(n: usize) -> usize {
    n * (n - 1) / 2
}

pub fn u_algebra<S: Scalar>(n: usize) -> LieAlgebra<S> {
    let (mats, labels) = u_basis::<S>(n);
    LieAlgebra::from_matrix_basis(&mats, &TolerancePolicy::default())
        .and_then(|g| g.with_labels(labels))
        .expect("u(n) is closed under commutators")
}

/// `(u(n), θ)` with `θ(X) = X̄` (conjugation `diag(I, -I)` after realification).
pub fn u_symmetric<S: Scalar>(n: usize) -> SymmetricLieAlgebra<S> {
    let p = u_plus_dim(n);
    let diag: Vec<S> = (0..n * n)
        .map(|i| if i < p { S::one() } else { -S::one() })
        .collect();
    SymmetricLieAlgebra::new(u_algebra(n), Matrix::diagonal(&diag), &TolerancePolicy::default())
        .expect("conjugation is an involutive automorphism")
}

/// Coordinates of `i·I_n` in the `u(n)` basis.
pub fn u_identity_direction<S: Scalar>(n: usize) -> Vec<S> {
    let p = u_plus_dim(n);
    (0..n * n)
        .map(|i| if i >= p && i < p + n { S::one() } else { S::zero() })
        .collect()
}

/// Coordinates of `i·I_n` in the basis of `u(n)₋`.
pub fn u_minus_identity_direction<S: Scalar>(n: usize) -> Vec<S> {
    let p = u_plus_dim(n);
    u_identity_direction::<S>(n).split_off(p)
}

/// `u(n)₋ = i·Sym(n)` with `[x, y, z] = [[x, y], z]`, computed from matrix
/// commutators.
pub fn u_minus_lts<S: Scalar>(n: usize) -> LieTripleSystem<S> {
    let (mats, labels) = u_basis::<S>(n);
    let minus = mats[u_plus_dim(n)..].to_vec();
    let labels = labels[u_plus_dim(n)..].to_vec();
    triple_from_matrices(&minus)
        .and_then(|m| m.with_labels(labels))
        .expect("i·Sym(n) is closed under double commutators")
}

/// `[[X_a, X_b], X_c]` in the span of the given matrices.
pub fn triple_from_matrices<S: Scalar>(basis: &[Matrix<S>]) -> Result<LieTripleSystem<S>> {
    let tol = TolerancePolicy::default();
    let size = basis.first().map_or(0, |m| m.rows() * m.cols());
    let flat: Vec<Vec<S>> = basis.iter().map(|m| m.as_slice().to_vec()).collect();
    let solver = CoordinateSolver::new(size, flat, &tol)?;
    let mut failure = false;
    let m = LieTripleSystem::from_brackets(basis.len(), |a, b, c| {
        let v = basis[a]
            .commutator(&basis[b])
            .and_then(|x| x.commutator(&basis[c]))
            .expect("same shape");
        solver.coordinates(v.as_slice()).unwrap_or_else(|| {
            failure = true;
            vec![S::zero(); basis.len()]
        })
    })?;
    if failure {
        return Err(crate::Error::ClosureDefect("double commutator leaves the span".into()));
    }
    Ok(m)
}

/// Basis of `so(n+1)`: `E_ab - E_ba` for `1 ≤ a < b ≤ n` (the `so(n)` part),
/// then `X_a = E_0a - E_a0`.
pub fn so_basis<S: Scalar>(n: usize) -> (Vec<Matrix<S>>, Vec<String>) {
    let size = n + 1;
    let rot = |a: usize, b: usize| unit_matrix::<S>(size, a, b).sub(&unit_matrix(size, b, a)).expect("shape");
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            mats.push(rot(a, b));
            labels.push(format!("r{a}{b}"));
        }
    }
    for a in 1..=n {
        mats.push(rot(0, a));
        labels.push(format!("x{a}"));
    }
    (mats, labels)
}

/// `so(3)` with `[e_i, e_j] = ε_ijk e_k`.
pub fn so3<S: Scalar>() -> LieAlgebra<S> {
    let mut entries = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        entries.push(([i, j, k], S::one()));
        entries.push(([j, i, k], -S::one()));
    }
    LieAlgebra::from_entries(3, entries).expect("indices < 3")
}

/// `su(2) ≅ so(3)` with `θ = Ad(diag(1, -1))`, fixing the third basis vector.
pub fn su2_symmetric<S: Scalar>() -> SymmetricLieAlgebra<S> {
    let theta = Matrix::diagonal(&[-S::one(), -S::one(), S::one()]);
    SymmetricLieAlgebra::new(so3(), theta, &TolerancePolicy::default()).expect("automorphism")
}

/// Heisenberg algebra `[e_0, e_1] = e_2`.
pub fn heisenberg<S: Scalar>() -> LieAlgebra<S> {
    LieAlgebra::from_entries(3, [([0, 1, 2], S::one()), ([1, 0, 2], -S::one())]).expect("indices < 3")
}

/// Heisenberg algebra with `θ = diag(-1, -1, 1)`.
pub fn heisenberg_symmetric<S: Scalar>() -> SymmetricLieAlgebra<S> {
    let theta = Matrix::diagonal(&[-S::one(), -S::one(), S::one()]);
    SymmetricLieAlgebra::new(heisenberg(), theta, &TolerancePolicy::default()).expect("automorphism")
}

/// `(g × g, flip)` with `flip(x, y) = (y, x)`.
pub fn flip_symmetric<S: Scalar>(g: &LieAlgebra<S>, tol: &TolerancePolicy) -> Result<SymmetricLieAlgebra<S>> {
    let d = g.dim();
    let mut theta = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        theta[(i, i + d)] = S::one();
        theta[(i + d, i)] = S::one();
    }
    SymmetricLieAlgebra::new(g.direct_product(g)?, theta, tol)
}

/// `gl(n)` in the basis `E_pq` (row-major), with `θ(X) = -Xᵀ`.
pub fn gl_transpose_symmetric<S: Scalar>(n: usize) -> SymmetricLieAlgebra<S> {
    let basis: Vec<Matrix<S>> = (0..n * n).map(|k| unit_matrix(n, k / n, k % n)).collect();
    let tol = TolerancePolicy::default();
    let g = LieAlgebra::from_matrix_basis(&basis, &tol).expect("gl(n) is closed");
    let mut theta = Matrix::zeros(n * n, n * n);
    for p in 0..n {
        for q in 0..n {
            theta[(q * n + p, p * n + q)] = -S::one();
        }
    }
    SymmetricLieAlgebra::new(g, theta, &tol).expect("-Xᵀ is an involutive automorphism")
}

/// A tensor that breaks antisymmetry: only `c[0][0][1][1] = 1`.
pub fn broken_lts<S: Scalar>() -> LieTripleSystem<S> {
    LieTripleSystem::from_entries(2, [([0, 0, 1, 1], S::one())]).expect("indices < 2")
}

fn to_f64_all(ms: &[Matrix<Rat>]) -> Vec<Matrix<f64>> {
    ms.iter().map(Matrix::to_f64).collect()
}

type Rat = crate::numerics::Rational;

/// `U(n)/O(n)` realified, `σ(g) = JgJ⁻¹` with `J = diag(I, -I)`.
pub fn u_pair(n: usize, policy: FixedGroupPolicy) -> MatrixSymmetricPair {
    let (mats, labels) = u_basis::<Rat>(n);
    let mut j = Matrix::identity(2 * n);
    for i in n..2 * n {
        j[(i, i)] = -1.0;
    }
    MatrixSymmetricPair::new(
        format!("U({n})/O({n})"),
        to_f64_all(&mats),
        labels,
        Sigma::conjugation(j).expect("J is invertible"),
        policy,
        &TolerancePolicy::default(),
    )
    .expect("valid pair")
}

/// `SO(n+1)/SO(n)` with `σ(g) = JgJ⁻¹`, `J = diag(1, -I_n)`. The fixed group
/// of σ is `S(O(1) x O(n))`; the sphere is the quotient by its identity
/// component.
pub fn so_pair(n: usize, policy: FixedGroupPolicy) -> MatrixSymmetricPair {
    let (mats, labels) = so_basis::<Rat>(n);
    let mut j = Matrix::identity(n + 1);
    for i in 1..=n {
        j[(i, i)] = -1.0;
    }
    MatrixSymmetricPair::new(
        format!("SO({})/SO({n})", n + 1),
        to_f64_all(&mats),
        labels,
        Sigma::conjugation(j).expect("J is invertible"),
        policy,
        &TolerancePolicy::default(),
    )
    .expect("valid pair")
}

/// `(U(n) x U(n), swap)`: the group `U(n)` seen as the symmetric space
/// `(U(n) x U(n)) / Δ`, realified into `4n x 4n` block-diagonal matrices.
pub fn u_group_pair(n: usize) -> MatrixSymmetricPair {
    let (mats, labels) = u_basis::<Rat>(n);
    let m = 2 * n;
    let zero = Matrix::<f64>::zeros(m, m);
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for (x, l) in mats.iter().zip(&labels) {
        basis.push(x.to_f64().block_diag(&zero));
        names.push(format!("{l}_1"));
    }
    for (x, l) in mats.iter().zip(&labels) {
        basis.push(zero.block_diag(&x.to_f64()));
        names.push(format!("{l}_2"));
    }
    let mut swap = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        swap[(i, i + m)] = 1.0;
        swap[(i + m, i)] = 1.0;
    }
    MatrixSymmetricPair::new(
        format!("U({n})xU({n})/U({n})"),
        basis,
        names,
        Sigma::conjugation(swap).expect("swap is invertible"),
        FixedGroupPolicy::FullFixedGroup,
        &TolerancePolicy::default(),
    )
    .expect("valid pair")
}

/// Coordinates of `½(i·I, -i·I)` in the basis of [`u_group_pair`].
pub fn u_group_direction(n: usize) -> Vec<f64> {
    let d: Vec<f64> = u_identity_direction::<f64>(n);
    let mut v: Vec<f64> = d.iter().map(|x| 0.5 * x).collect();
    v.extend(d.iter().map(|x| -0.5 * x));
    v
}

/// `U(n)⁺`: the group `U(n)` with `g·h = gh⁻¹g`, realified.
pub fn u_plus_group(n: usize) -> GroupPlus {
    let (mats, labels) = u_basis::<Rat>(n);
    GroupPlus::new(format!("U({n})+"), to_f64_all(&mats), labels, &TolerancePolicy::default())
        .expect("valid basis")
}

/// `GL(n)⁺` with the basis `E_pq`.
pub fn gl_plus_group(n: usize) -> GroupPlus {
    let basis: Vec<Matrix<f64>> = (0..n * n).map(|k| unit_matrix(n, k / n, k % n)).collect();
    let labels = (0..n * n).map(|k| format!("E{}{}", k / n, k % n)).collect();
    GroupPlus::new(format!("GL({n})+"), basis, labels, &TolerancePolicy::default()).expect("valid basis")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::verify_axioms;

    #[test]
    fn realification_is_multiplicative() {
        // (i)(i) = -1
        let one = Matrix::<Rat>::identity(1);
        let zero = Matrix::<Rat>::zeros(1, 1);
        let i = realify(&zero, &one);
        let minus_one = realify(&one.scale(&Rat::from_i64(-1)), &zero);
        assert_eq!(i.mul(&i).unwrap(), minus_one);
    }

    #[test]
    fn u_basis_dimensions() {
        for n in 1..=4 {
            let (m, l) = u_basis::<Rat>(n);
            assert_eq!(m.len(), n * n);
            assert_eq!(l.len(), n * n);
            assert_eq!(u_minus_lts::<Rat>(n).dim(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn fixtures_pass_axioms() {
        let t = TolerancePolicy::default();
        for n in 2..=4 {
            assert!(verify_axioms(&sphere_lts::<Rat>(n), &t).ok);
            assert!(verify_axioms(&u_minus_lts::<Rat>(n), &t).ok);
        }
        assert!(!verify_axioms(&broken_lts::<Rat>(), &t).ok);
        gl_transpose_symmetric::<Rat>(2);
        heisenberg_symmetric::<Rat>();
    }
}
