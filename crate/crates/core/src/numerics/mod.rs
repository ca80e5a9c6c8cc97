//! Scalar and linear-algebra substrate.
//!
//! Two scalar modes are supported: exact rationals ([`Rational`]) and `f64`.
//! Exact mode decides equality with no tolerance; float mode always compares
//! through a [`TolerancePolicy`].

mod exact;
mod float;
mod matrix;

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

pub use float::{inverse, matrix_exp_f64, matrix_log, matrix_sqrt, EXP_TAYLOR_ORDER};
pub use matrix::Matrix;

use crate::{Error, Result};

/// Arbitrary-precision rational number used by the exact mode.
pub type Rational = num_rational::BigRational;

/// Which arithmetic a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    ExactRational,
    Float64,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::ExactRational => "rational",
            ScalarMode::Float64 => "float",
        }
    }
}

/// Tolerances used by float-mode decisions. Exact mode ignores them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Equality of computed values (identities, brackets, residuals).
    pub eq_tol: f64,
    /// Relative singular-value threshold for rank decisions.
    pub rank_tol: f64,
    /// Coset and group-membership decisions.
    pub membership_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            rank_tol: 1e-9,
            membership_tol: 1e-8,
        }
    }
}

impl TolerancePolicy {
    /// Policy with all three tolerances set to `tol`.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol, tol)
    }

    pub fn new(eq_tol: f64, rank_tol: f64, membership_tol: f64) -> Result<Self> {
        let ok = |t: f64| t.is_finite() && t >= 0.0;
        if !(ok(eq_tol) && ok(rank_tol) && ok(membership_tol)) {
            return Err(Error::Invalid("tolerances must be finite and non-negative".into()));
        }
        Ok(Self {
            eq_tol,
            rank_tol,
            membership_tol,
        })
    }
}

/// Field of scalars a structure tensor can live in.
///
/// The linear-algebra kernels differ per mode (row reduction for rationals,
/// singular values for floats), so they are part of the trait.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> f64 {
        libm::fabs(self.to_f64())
    }

    /// Zero test: exact in rational mode, `|x| <= tol` in float mode.
    fn is_negligible(&self, tol: f64) -> bool;

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self);

    /// Basis of `{v : A v = 0}`.
    fn nullspace(a: &Matrix<Self>, tol: &TolerancePolicy) -> Vec<Vec<Self>>;

    /// Indices of a greedily selected independent subset, in input order.
    fn independent_indices(vectors: &[Vec<Self>], tol: &TolerancePolicy) -> Vec<usize>;

    /// A `k x n` matrix `M` with `M B = I_k` for the `n x k` matrix `B` whose
    /// columns are the (independent) `basis` vectors.
    fn left_inverse(basis: &[Vec<Self>], tol: &TolerancePolicy) -> Option<Matrix<Self>>;
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        libm::fabs(*self) <= tol
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn nullspace(a: &Matrix<Self>, tol: &TolerancePolicy) -> Vec<Vec<Self>> {
        float::nullspace(a, tol.rank_tol)
    }

    fn independent_indices(vectors: &[Vec<Self>], tol: &TolerancePolicy) -> Vec<usize> {
        float::independent_indices(vectors, tol.rank_tol)
    }

    fn left_inverse(basis: &[Vec<Self>], _tol: &TolerancePolicy) -> Option<Matrix<Self>> {
        float::left_inverse(basis)
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num.into(), den.into())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn nullspace(a: &Matrix<Self>, _tol: &TolerancePolicy) -> Vec<Vec<Self>> {
        exact::nullspace(a)
    }

    fn independent_indices(vectors: &[Vec<Self>], _tol: &TolerancePolicy) -> Vec<usize> {
        exact::independent_indices(vectors)
    }

    fn left_inverse(basis: &[Vec<Self>], _tol: &TolerancePolicy) -> Option<Matrix<Self>> {
        exact::left_inverse(basis)
    }
}

/// Parses `"num/den"`, an integer, or a finite decimal such as `"1.25"` or
/// `"-3e-2"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    use core::str::FromStr;
    use num_bigint::BigInt;

    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut all = alloc::string::String::from(int_part);
    all.push_str(frac_part);
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if negative { -value } else { value })
}

/// Canonical text form of a rational: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(value: &Rational) -> alloc::string::String {
    use alloc::string::ToString;
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exact rational equal to the binary value of a finite `f64`.
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// Basis of the kernel of `a`. Vectors are independent and span a space of
/// dimension `cols - rank(a)`.
pub fn nullspace<S: Scalar>(a: &Matrix<S>, tol: &TolerancePolicy) -> Vec<Vec<S>> {
    S::nullspace(a, tol)
}

/// Rank of `a` (column count minus kernel dimension).
pub fn rank<S: Scalar>(a: &Matrix<S>, tol: &TolerancePolicy) -> usize {
    a.cols() - S::nullspace(a, tol).len()
}

/// Independent subset of `vectors` spanning the same subspace, kept in input order.
pub fn span_basis<S: Scalar>(vectors: &[Vec<S>], tol: &TolerancePolicy) -> Result<Vec<Vec<S>>> {
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                found: bad.len(),
            });
        }
    }
    Ok(S::independent_indices(vectors, tol)
        .into_iter()
        .map(|i| vectors[i].clone())
        .collect())
}

/// `e^X` by scaling and squaring. Exact inputs are rejected.
pub fn matrix_exp<S: Scalar>(x: &Matrix<S>, _tol: &TolerancePolicy) -> Result<Matrix<f64>> {
    if S::MODE == ScalarMode::ExactRational {
        return Err(Error::ExactExponential);
    }
    if x.rows() != x.cols() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    Ok(matrix_exp_f64(&x.to_f64()))
}

/// Inverse of a square matrix in either mode (row reduction or least squares).
pub fn invert<S: Scalar>(m: &Matrix<S>, tol: &TolerancePolicy) -> Result<Matrix<S>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let cols: Vec<Vec<S>> = (0..m.cols()).map(|j| m.column(j)).collect();
    if S::independent_indices(&cols, tol).len() != cols.len() {
        return Err(Error::Singular);
    }
    S::left_inverse(&cols, tol).ok_or(Error::Singular)
}

/// Expresses vectors in a fixed basis and decides span membership.
#[derive(Debug, Clone)]
pub struct CoordinateSolver<S: Scalar> {
    basis: Vec<Vec<S>>,
    left_inverse: Option<Matrix<S>>,
    ambient: usize,
    tol: f64,
}

impl<S: Scalar> CoordinateSolver<S> {
    /// `basis` must be linearly independent, all of length `ambient`.
    pub fn new(ambient: usize, basis: Vec<Vec<S>>, tol: &TolerancePolicy) -> Result<Self> {
        if let Some(bad) = basis.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        let left_inverse = if basis.is_empty() {
            None
        } else {
            Some(S::left_inverse(&basis, tol).ok_or(Error::Singular)?)
        };
        Ok(Self {
            basis,
            left_inverse,
            ambient,
            tol: tol.eq_tol,
        })
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Least-squares coordinates of `v` (exact solution in rational mode).
    pub fn project(&self, v: &[S]) -> Vec<S> {
        match &self.left_inverse {
            Some(m) => m.mul_vec(v),
            None => Vec::new(),
        }
    }

    /// `v - B c` for the projected coordinates `c`.
    pub fn residual(&self, v: &[S]) -> Vec<S> {
        let c = self.project(v);
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            for (ri, bi) in r.iter_mut().zip(b) {
                ri.add_product(&-ci.clone(), bi);
            }
        }
        r
    }

    /// Relative residual norm `|v - Bc| / max(|v|, 1e-300)`; zero in exact
    /// mode iff `v` lies in the span.
    pub fn relative_residual(&self, v: &[S]) -> f64 {
        let r = self.residual(v);
        if S::MODE == ScalarMode::ExactRational {
            return if r.iter().all(Zero::is_zero) {
                0.0
            } else {
                norm(&r).max(f64::MIN_POSITIVE)
            };
        }
        let vn = norm(v);
        if vn == 0.0 {
            return 0.0;
        }
        norm(&r) / vn
    }

    /// Coordinates of `v` when it lies in the span, `None` otherwise.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if v.len() != self.ambient {
            return None;
        }
        if self.contains(v) {
            Some(self.project(v))
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if S::MODE == ScalarMode::ExactRational {
            self.residual(v).iter().all(Zero::is_zero)
        } else {
            self.relative_residual(v) <= self.tol
        }
    }
}

/// Euclidean norm computed in `f64`.
pub fn norm<S: Scalar>(v: &[S]) -> f64 {
    libm::sqrt(v.iter().map(|x| {
        let f = x.to_f64();
        f * f
    }).sum::<f64>())
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_product(x, y);
    }
    acc
}

pub fn axpy<S: Scalar>(alpha: &S, x: &[S], y: &mut [S]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        yi.add_product(alpha, xi);
    }
}

pub fn scaled<S: Scalar>(alpha: &S, x: &[S]) -> Vec<S> {
    x.iter().map(|v| alpha.clone() * v.clone()).collect()
}

pub fn unit_vector<S: Scalar>(dim: usize, index: usize) -> Vec<S> {
    let mut v = alloc::vec![S::zero(); dim];
    v[index] = S::one();
    v
}

pub fn to_f64_vec<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let tol = TolerancePolicy::default();
        assert!(nullspace(&Matrix::<f64>::identity(3), &tol).is_empty());
        assert!(nullspace(&Matrix::<Rational>::identity(3), &tol).is_empty());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let tol = TolerancePolicy::default();
        assert_eq!(nullspace(&Matrix::<f64>::zeros(2, 3), &tol).len(), 3);
        assert_eq!(nullspace(&Matrix::<Rational>::zeros(2, 3), &tol).len(), 3);
    }

    #[test]
    fn rank_one_kernel_direction() {
        let tol = TolerancePolicy::default();
        let a = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        let ker = nullspace(&a, &tol);
        assert_eq!(ker.len(), 1);
        // hand row reduction: x + y = 0
        assert_eq!(ker[0][0].clone() + ker[0][1].clone(), q(0));
        assert_ne!(ker[0][0], q(0));

        let af = a.to_f64();
        let kf = nullspace(&af, &tol);
        assert_eq!(kf.len(), 1);
        assert!((kf[0][0] + kf[0][1]).abs() < 1e-12);
    }

    #[test]
    fn span_examples() {
        let tol = TolerancePolicy::default();
        let collinear = vec![vec![1.0, 0.0], vec![2.0, 0.0]];
        assert_eq!(span_basis(&collinear, &tol).unwrap().len(), 1);
        let empty: Vec<Vec<f64>> = vec![];
        assert!(span_basis(&empty, &tol).unwrap().is_empty());
        let plane = vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
        assert_eq!(span_basis(&plane, &tol).unwrap().len(), 2);
        let ragged = vec![vec![1.0], vec![1.0, 2.0]];
        assert!(span_basis(&ragged, &tol).is_err());
    }

    #[test]
    fn exp_rejects_exact_mode() {
        let tol = TolerancePolicy::default();
        let x = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(matrix_exp(&x, &tol), Err(Error::ExactExponential));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let tol = TolerancePolicy::default();
        let e = matrix_exp(&Matrix::<f64>::zeros(3, 3), &tol).unwrap();
        assert!(e.max_abs_diff(&Matrix::identity(3)) == 0.0);
    }

    #[test]
    fn exp_of_rotation_generator() {
        let tol = TolerancePolicy::default();
        let t = core::f64::consts::FRAC_PI_2;
        let x = Matrix::from_rows(vec![vec![0.0, -t], vec![t, 0.0]]).unwrap();
        let e = matrix_exp(&x, &tol).unwrap();
        // closed form: [[cos t, -sin t], [sin t, cos t]]
        let expected = Matrix::from_rows(vec![
            vec![libm::cos(t), -libm::sin(t)],
            vec![libm::sin(t), libm::cos(t)],
        ])
        .unwrap();
        assert!(e.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("3/6"), Some(Rational::from_ratio(1, 2)));
        assert_eq!(parse_rational("-7"), Some(q(-7)));
        assert_eq!(parse_rational("1.25"), Some(Rational::from_ratio(5, 4)));
        assert_eq!(parse_rational("-2.5e-1"), Some(Rational::from_ratio(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(format_rational(&Rational::from_ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&q(5)), "5");
    }

    #[test]
    fn solver_membership() {
        let tol = TolerancePolicy::default();
        let basis = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let s = CoordinateSolver::new(3, basis, &tol).unwrap();
        assert_eq!(s.coordinates(&[q(1), q(2), q(1)]), Some(vec![q(1), q(1)]));
        assert_eq!(s.coordinates(&[q(1), q(0), q(0)]), None);

        let fb = vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]];
        let fs = CoordinateSolver::new(3, fb, &tol).unwrap();
        let c = fs.coordinates(&[1.0, 2.0, 1.0]).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - 1.0).abs() < 1e-12);
        assert!(fs.coordinates(&[1.0, 0.0, 0.0]).is_none());
    }
}
