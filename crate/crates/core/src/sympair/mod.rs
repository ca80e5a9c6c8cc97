//! Matrix symmetric pairs `(G, σ, K)` and groups seen as symmetric spaces.
//!
//! Everything here is `f64`: exponentials are transcendental.

mod geodesic;

use alloc::string::String;
use alloc::vec::Vec;

pub use geodesic::{
    exp_center_morphism_check, reflection_law_residuals, Geodesic, LemmaReport, ReflectionResiduals,
};

use crate::lts::LieTripleSystem;
use crate::numerics::{inverse, matrix_exp_f64, matrix_log, CoordinateSolver, Matrix, TolerancePolicy};
use crate::symlie::{eigensplit, triple_from_involution, LieAlgebra, SymmetricLieAlgebra};
use crate::{Error, Result};

/// How the subgroup `K` between `(G^σ)₀` and `G^σ` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedGroupPolicy {
    /// `K = G^σ`: membership is `σ(k) = k` within `membership_tol`.
    FullFixedGroup,
    /// `K = (G^σ)₀`, tested heuristically: besides `σ(k) = k`, `k` (or `k`
    /// times a short step `exp(0.1·Y)`, `Y ∈ g₊`) must have a real logarithm
    /// in `g₊` whose one-parameter path stays σ-fixed at steps of 0.1.
    IdentityComponentHeuristic,
}

impl FixedGroupPolicy {
    pub fn name(self) -> &'static str {
        match self {
            FixedGroupPolicy::FullFixedGroup => "full_fixed_group",
            FixedGroupPolicy::IdentityComponentHeuristic => "identity_component_heuristic",
        }
    }
}

/// Group involution.
#[derive(Debug, Clone, PartialEq)]
pub enum Sigma {
    /// `g ↦ J g J⁻¹`
    Conjugation { j: Matrix<f64>, j_inv: Matrix<f64> },
    /// `g ↦ (gᵀ)⁻¹`
    TransposeInverse,
}

impl Sigma {
    /// Conjugation by `J`; requires `J² = ±I`.
    pub fn conjugation(j: Matrix<f64>) -> Result<Self> {
        let j_inv = inverse(&j)?;
        let sq = j.mul(&j)?;
        let id = Matrix::identity(j.rows());
        let plus = sq.max_abs_diff(&id);
        let minus = sq.add(&id)?.max_abs();
        if plus.min(minus) > 1e-12 * j.max_abs() * j.max_abs() {
            return Err(Error::InvolutionDefect {
                defect: plus.min(minus),
            });
        }
        Ok(Sigma::Conjugation { j, j_inv })
    }

    pub fn apply(&self, g: &Matrix<f64>) -> Result<Matrix<f64>> {
        match self {
            Sigma::Conjugation { j, j_inv } => j.mul(g)?.mul(j_inv),
            Sigma::TransposeInverse => inverse(&g.transpose()),
        }
    }

    /// Derivative at the identity.
    pub fn theta(&self, x: &Matrix<f64>) -> Result<Matrix<f64>> {
        match self {
            Sigma::Conjugation { j, j_inv } => j.mul(x)?.mul(j_inv),
            Sigma::TransposeInverse => Ok(x.transpose().scale(&-1.0)),
        }
    }
}

/// A point `gK` of `G/K`, held through a representative.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetPoint {
    rep: Matrix<f64>,
}

impl CosetPoint {
    pub fn new(rep: Matrix<f64>) -> Result<Self> {
        if !rep.is_square() {
            return Err(Error::NotSquare {
                rows: rep.rows(),
                cols: rep.cols(),
            });
        }
        Ok(Self { rep })
    }

    pub fn rep(&self) -> &Matrix<f64> {
        &self.rep
    }

    pub fn into_rep(self) -> Matrix<f64> {
        self.rep
    }
}

/// Pointed symmetric space realized by matrices: points are represented by
/// invertible matrices, tangent vectors by coordinates in a Lie algebra basis.
pub trait PointedSymmetricSpace {
    fn name(&self) -> &str;
    fn tolerance(&self) -> &TolerancePolicy;
    /// Dimension of the Lie algebra whose coordinates are accepted.
    fn lie_dim(&self) -> usize;
    /// Matrix `Σ xᵢ Xᵢ`.
    fn element(&self, x: &[f64]) -> Result<Matrix<f64>>;
    /// Relative distance of `x` from the tangent space at the base point.
    fn tangent_residual(&self, x: &[f64]) -> Result<f64>;
    /// Relative size of `[[x, y], z]` over basis tangent vectors `y, z`.
    fn center_residual(&self, x: &[f64]) -> Result<f64>;
    fn base_point(&self) -> Matrix<f64>;
    /// Representative of `Exp(t·x)`.
    fn exp_point(&self, x: &[f64], t: f64) -> Result<Matrix<f64>>;
    /// Symmetric-space multiplication on representatives.
    fn mul(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<Matrix<f64>>;
    /// Scale-free distance between the points represented by `p` and `q`.
    fn point_residual(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<f64>;
    /// Equality of points, including any policy beyond the residual test.
    fn same_point(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<bool>;
}

fn flatten(ms: &[Matrix<f64>]) -> Vec<Vec<f64>> {
    ms.iter().map(|m| m.as_slice().to_vec()).collect()
}

fn combination(coeffs: &[f64], mats: &[Matrix<f64>]) -> Result<Matrix<f64>> {
    if coeffs.len() != mats.len() {
        return Err(Error::DimensionMismatch {
            expected: mats.len(),
            found: coeffs.len(),
        });
    }
    Matrix::linear_combination(coeffs, mats)
}

fn rel_frobenius(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    let d = a.sub(b).map(|m| m.frobenius_norm()).unwrap_or(f64::INFINITY);
    let s = b.frobenius_norm().max(a.frobenius_norm());
    if s == 0.0 {
        0.0
    } else {
        d / s
    }
}

fn double_bracket_residual(x: &Matrix<f64>, tangent: &[Matrix<f64>]) -> Result<f64> {
    let xn = x.frobenius_norm();
    if xn == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for y in tangent {
        let xy = x.commutator(y)?;
        for z in tangent {
            let r = xy.commutator(z)?.frobenius_norm();
            worst = worst.max(r / (xn * y.frobenius_norm() * z.frobenius_norm()));
        }
    }
    Ok(worst)
}

/// Concrete symmetric pair `(G, σ, K)` with `G` a matrix group given by a
/// basis of its Lie algebra.
#[derive(Debug, Clone)]
pub struct MatrixSymmetricPair {
    name: String,
    ambient_n: usize,
    basis: Vec<Matrix<f64>>,
    labels: Vec<String>,
    sigma: Sigma,
    policy: FixedGroupPolicy,
    tol: TolerancePolicy,
    solver: CoordinateSolver<f64>,
    algebra: SymmetricLieAlgebra<f64>,
    plus: Vec<Matrix<f64>>,
    minus: Vec<Matrix<f64>>,
}

impl MatrixSymmetricPair {
    /// Validates the basis, computes `θ = dσ` in it and splits `g = g₊ ⊕ g₋`.
    pub fn new(
        name: String,
        basis: Vec<Matrix<f64>>,
        labels: Vec<String>,
        sigma: Sigma,
        policy: FixedGroupPolicy,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::Invalid("empty Lie algebra basis".into()));
        };
        let n = first.rows();
        if basis.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Invalid("basis matrices must all be n x n".into()));
        }
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: labels.len(),
            });
        }
        if let Sigma::Conjugation { j, .. } = &sigma {
            if j.rows() != n || j.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: j.rows(),
                });
            }
        }
        let flat = flatten(&basis);
        if crate::numerics::span_basis(&flat, tol)?.len() != basis.len() {
            return Err(Error::Invalid("Lie algebra basis is linearly dependent".into()));
        }
        let solver = CoordinateSolver::new(n * n, flat, tol)?;
        let d = basis.len();
        let mut theta = Matrix::zeros(d, d);
        for (j, x) in basis.iter().enumerate() {
            let tx = sigma.theta(x)?;
            let c = solver
                .coordinates(tx.as_slice())
                .ok_or_else(|| Error::ClosureDefect("θ does not preserve the Lie algebra".into()))?;
            for (i, v) in c.into_iter().enumerate() {
                theta[(i, j)] = v;
            }
        }
        let algebra = LieAlgebra::from_matrix_basis(&basis, tol)?;
        let algebra = SymmetricLieAlgebra::new(algebra, theta, tol)?;
        let split = eigensplit(&algebra, tol)?;
        let to_mats = |vs: &[Vec<f64>]| -> Result<Vec<Matrix<f64>>> {
            vs.iter().map(|v| combination(v, &basis)).collect()
        };
        let plus = to_mats(split.plus.basis())?;
        let minus = to_mats(split.minus.basis())?;
        Ok(Self {
            name,
            ambient_n: n,
            basis,
            labels,
            sigma,
            policy,
            tol: *tol,
            solver,
            algebra,
            plus,
            minus,
        })
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn basis(&self) -> &[Matrix<f64>] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    pub fn policy(&self) -> FixedGroupPolicy {
        self.policy
    }

    pub fn with_policy(mut self, policy: FixedGroupPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// `(g, θ)` in the given basis.
    pub fn symmetric_algebra(&self) -> &SymmetricLieAlgebra<f64> {
        &self.algebra
    }

    pub fn plus_matrices(&self) -> &[Matrix<f64>] {
        &self.plus
    }

    pub fn minus_matrices(&self) -> &[Matrix<f64>] {
        &self.minus
    }

    /// Triple system on `g₋`, in the basis of the eigenspace split.
    pub fn derived_lts(&self) -> Result<LieTripleSystem<f64>> {
        triple_from_involution(&self.algebra, &self.tol)
    }

    /// Coordinates of a matrix in the Lie algebra basis, if it lies in `g`.
    pub fn coordinates(&self, x: &Matrix<f64>) -> Option<Vec<f64>> {
        self.solver.coordinates(x.as_slice())
    }

    pub fn sigma_of(&self, g: &Matrix<f64>) -> Result<Matrix<f64>> {
        self.sigma.apply(g)
    }

    /// `‖σ(k) - k‖_F / ‖k‖_F`.
    pub fn fixed_residual(&self, k: &Matrix<f64>) -> Result<f64> {
        Ok(rel_frobenius(&self.sigma.apply(k)?, k))
    }

    /// Membership in `K` according to the pair's policy.
    pub fn in_k(&self, k: &Matrix<f64>) -> Result<bool> {
        if self.fixed_residual(k)? > self.tol.membership_tol {
            return Ok(false);
        }
        Ok(match self.policy {
            FixedGroupPolicy::FullFixedGroup => true,
            FixedGroupPolicy::IdentityComponentHeuristic => self.in_identity_component(k)?,
        })
    }

    fn in_plus(&self, l: &Matrix<f64>) -> Result<bool> {
        let Some(c) = self.solver.coordinates(l.as_slice()) else {
            // logarithms carry ~1e-12 relative error; the solver uses eq_tol
            return Ok(false);
        };
        let tc = self.algebra.theta().mul_vec(&c);
        let diff: f64 = tc.iter().zip(&c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let scale = c.iter().map(|v| v.abs()).fold(1.0, f64::max);
        Ok(diff <= 1e-8 * scale)
    }

    fn in_identity_component(&self, k: &Matrix<f64>) -> Result<bool> {
        let n = self.ambient_n;
        let mut steps: Vec<Matrix<f64>> = Vec::with_capacity(self.plus.len() + 2);
        steps.push(Matrix::identity(n));
        for y in &self.plus {
            steps.push(y.clone());
        }
        if self.plus.len() > 1 {
            let ones = alloc::vec![1.0; self.plus.len()];
            steps.push(Matrix::linear_combination(&ones, &self.plus)?);
        }
        for (idx, y) in steps.iter().enumerate() {
            let candidate = if idx == 0 {
                k.clone()
            } else {
                let yn = y.frobenius_norm();
                k.mul(&matrix_exp_f64(&y.scale(&(0.1 / yn))))?
            };
            let Ok(l) = matrix_log(&candidate) else {
                continue;
            };
            if !self.in_plus(&l)? {
                continue;
            }
            let segments = libm::ceil(l.frobenius_norm() / 0.1).max(1.0) as usize;
            let mut on_path = true;
            for s in 0..=segments {
                let p = matrix_exp_f64(&l.scale(&(s as f64 / segments as f64)));
                if self.fixed_residual(&p)? > self.tol.membership_tol {
                    on_path = false;
                    break;
                }
            }
            if on_path {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn base(&self) -> CosetPoint {
        CosetPoint {
            rep: Matrix::identity(self.ambient_n),
        }
    }

    /// `Exp(t·x) = exp(t·x)K` for `x ∈ g₋` (coordinates in the Lie basis).
    pub fn exp_pair(&self, x: &[f64], t: f64) -> Result<CosetPoint> {
        let r = self.tangent_residual(x)?;
        if r > self.tol.eq_tol.max(1e-12) * 10.0 {
            return Err(Error::NotInMinusSpace { residual: r });
        }
        let xm = combination(x, &self.basis)?.scale(&t);
        Ok(CosetPoint {
            rep: matrix_exp_f64(&xm),
        })
    }

    /// `k = q⁻¹p` and its σ-defect.
    pub fn coset_residual(&self, p: &CosetPoint, q: &CosetPoint) -> Result<f64> {
        let k = inverse(&q.rep)?.mul(&p.rep)?;
        self.fixed_residual(&k)
    }

    pub fn coset_eq(&self, p: &CosetPoint, q: &CosetPoint) -> Result<bool> {
        let k = inverse(&q.rep)?.mul(&p.rep)?;
        self.in_k(&k)
    }

    /// `gK · hK = g σ(g)⁻¹ σ(h) K`.
    pub fn coset_mul(&self, p: &CosetPoint, q: &CosetPoint) -> Result<CosetPoint> {
        let sg = self.sigma.apply(&p.rep)?;
        let sh = self.sigma.apply(&q.rep)?;
        Ok(CosetPoint {
            rep: p.rep.mul(&inverse(&sg)?)?.mul(&sh)?,
        })
    }
}

impl PointedSymmetricSpace for MatrixSymmetricPair {
    fn name(&self) -> &str {
        &self.name
    }

    fn tolerance(&self) -> &TolerancePolicy {
        &self.tol
    }

    fn lie_dim(&self) -> usize {
        self.basis.len()
    }

    fn element(&self, x: &[f64]) -> Result<Matrix<f64>> {
        combination(x, &self.basis)
    }

    fn tangent_residual(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.len(),
                found: x.len(),
            });
        }
        let tx = self.algebra.theta().mul_vec(x);
        let s: f64 = tx.iter().zip(x).map(|(a, b)| (a + b) * (a + b)).sum();
        let n: f64 = x.iter().map(|a| a * a).sum();
        Ok(if n == 0.0 { 0.0 } else { libm::sqrt(s / n) / 2.0 })
    }

    fn center_residual(&self, x: &[f64]) -> Result<f64> {
        double_bracket_residual(&self.element(x)?, &self.minus)
    }

    fn base_point(&self) -> Matrix<f64> {
        Matrix::identity(self.ambient_n)
    }

    fn exp_point(&self, x: &[f64], t: f64) -> Result<Matrix<f64>> {
        Ok(self.exp_pair(x, t)?.rep)
    }

    fn mul(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<Matrix<f64>> {
        let sg = self.sigma.apply(p)?;
        let sh = self.sigma.apply(q)?;
        p.mul(&inverse(&sg)?)?.mul(&sh)
    }

    fn point_residual(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<f64> {
        let k = inverse(q)?.mul(p)?;
        self.fixed_residual(&k)
    }

    fn same_point(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<bool> {
        let k = inverse(q)?.mul(p)?;
        self.in_k(&k)
    }
}

/// A matrix group `G` with `g·h = g h⁻¹ g`; its exponential is `exp_G`.
#[derive(Debug, Clone)]
pub struct GroupPlus {
    name: String,
    ambient_n: usize,
    basis: Vec<Matrix<f64>>,
    labels: Vec<String>,
    tol: TolerancePolicy,
}

impl GroupPlus {
    pub fn new(name: String, basis: Vec<Matrix<f64>>, labels: Vec<String>, tol: &TolerancePolicy) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::Invalid("empty Lie algebra basis".into()));
        };
        let n = first.rows();
        if basis.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Invalid("basis matrices must all be n x n".into()));
        }
        // closure under commutators
        LieAlgebra::from_matrix_basis(&basis, tol)?;
        Ok(Self {
            name,
            ambient_n: n,
            basis,
            labels,
            tol: *tol,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self) -> &[Matrix<f64>] {
        &self.basis
    }
}

/// `g·h = g h⁻¹ g`.
pub fn group_plus_mul(g: &Matrix<f64>, h: &Matrix<f64>) -> Result<Matrix<f64>> {
    g.mul(&inverse(h)?)?.mul(g)
}

impl PointedSymmetricSpace for GroupPlus {
    fn name(&self) -> &str {
        &self.name
    }

    fn tolerance(&self) -> &TolerancePolicy {
        &self.tol
    }

    fn lie_dim(&self) -> usize {
        self.basis.len()
    }

    fn element(&self, x: &[f64]) -> Result<Matrix<f64>> {
        combination(x, &self.basis)
    }

    fn tangent_residual(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.len(),
                found: x.len(),
            });
        }
        Ok(0.0)
    }

    fn center_residual(&self, x: &[f64]) -> Result<f64> {
        double_bracket_residual(&self.element(x)?, &self.basis)
    }

    fn base_point(&self) -> Matrix<f64> {
        Matrix::identity(self.ambient_n)
    }

    fn exp_point(&self, x: &[f64], t: f64) -> Result<Matrix<f64>> {
        Ok(matrix_exp_f64(&self.element(x)?.scale(&t)))
    }

    fn mul(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<Matrix<f64>> {
        group_plus_mul(p, q)
    }

    fn point_residual(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<f64> {
        Ok(rel_frobenius(p, q))
    }

    fn same_point(&self, p: &Matrix<f64>, q: &Matrix<f64>) -> Result<bool> {
        Ok(self.point_residual(p, q)? <= self.tol.membership_tol)
    }
}
