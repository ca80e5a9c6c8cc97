use alloc::vec::Vec;

use super::PointedSymmetricSpace;
use crate::numerics::{Matrix, TolerancePolicy};
use crate::{Error, Result};

/// One-parameter subspace `α_v(t) = Exp(t·v)` through the base point.
#[derive(Debug, Clone)]
pub struct Geodesic<'a, P: PointedSymmetricSpace> {
    space: &'a P,
    velocity: Vec<f64>,
}

impl<'a, P: PointedSymmetricSpace> Geodesic<'a, P> {
    pub fn new(space: &'a P, velocity: Vec<f64>) -> Result<Self> {
        let r = space.tangent_residual(&velocity)?;
        if r > space.tolerance().eq_tol.max(1e-12) * 10.0 {
            return Err(Error::NotInMinusSpace { residual: r });
        }
        Ok(Self { space, velocity })
    }

    pub fn velocity(&self) -> &[f64] {
        &self.velocity
    }

    pub fn space(&self) -> &P {
        self.space
    }

    /// `α_v(t)`.
    pub fn point(&self, t: f64) -> Result<Matrix<f64>> {
        self.space.exp_point(&self.velocity, t)
    }

    /// `τ_{α,s} = μ_{α(s/2)} ∘ μ_{α(0)}` applied to `p`.
    pub fn translate(&self, s: f64, p: &Matrix<f64>) -> Result<Matrix<f64>> {
        let reflected = self.space.mul(&self.space.base_point(), p)?;
        self.space.mul(&self.point(s / 2.0)?, &reflected)
    }

    /// Relative error of the central difference `(α(h) - α(-h)) / 2h` of the
    /// representative curve against `v`.
    pub fn velocity_residual(&self, h: f64) -> Result<f64> {
        let v = self.space.element(&self.velocity)?;
        let fd = self.point(h)?.sub(&self.point(-h)?)?.scale(&(0.5 / h));
        let n = v.frobenius_norm();
        Ok(if n == 0.0 {
            fd.frobenius_norm()
        } else {
            fd.sub(&v)?.frobenius_norm() / n
        })
    }

    /// Largest residual of `α(2s - t) = α(s)·α(t)` over the given pairs.
    pub fn one_parameter_residual(&self, samples: &[(f64, f64)]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &(s, t) in samples {
            let lhs = self.point(2.0 * s - t)?;
            let rhs = self.space.mul(&self.point(s)?, &self.point(t)?)?;
            worst = worst.max(self.space.point_residual(&lhs, &rhs)?);
        }
        Ok(worst)
    }

    /// Largest residual of `τ_{α,s}(α(t)) = α(t + s)` over the given pairs.
    pub fn translation_residual(&self, samples: &[(f64, f64)]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &(s, t) in samples {
            let lhs = self.translate(s, &self.point(t)?)?;
            worst = worst.max(self.space.point_residual(&lhs, &self.point(t + s)?)?);
        }
        Ok(worst)
    }
}

/// Residuals of `x·x = x`, `x·(x·y) = y` and `x·(y·z) = (x·y)·(x·z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionResiduals {
    pub idempotent: f64,
    pub involutive: f64,
    pub distributive: f64,
}

impl ReflectionResiduals {
    pub fn max(&self) -> f64 {
        self.idempotent.max(self.involutive).max(self.distributive)
    }
}

pub fn reflection_law_residuals<P: PointedSymmetricSpace>(
    space: &P,
    x: &Matrix<f64>,
    y: &Matrix<f64>,
    z: &Matrix<f64>,
) -> Result<ReflectionResiduals> {
    let xx = space.mul(x, x)?;
    let xy = space.mul(x, y)?;
    let x_xy = space.mul(x, &xy)?;
    let yz = space.mul(y, z)?;
    let xz = space.mul(x, z)?;
    Ok(ReflectionResiduals {
        idempotent: space.point_residual(&xx, x)?,
        involutive: space.point_residual(&x_xy, y)?,
        distributive: space.point_residual(&space.mul(x, &yz)?, &space.mul(&xy, &xz)?)?,
    })
}

/// Result of checking `Exp(2x - y) = Exp(x)·Exp(y)` on samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub samples: usize,
    pub residuals: Vec<f64>,
    pub worst_residual: f64,
    /// `worst_residual ≤ membership_tol`.
    pub ok: bool,
}

/// Checks `Exp(2x - y) = Exp(x)·Exp(y)` for a central `x` and each `y`.
pub fn exp_center_morphism_check<P: PointedSymmetricSpace>(
    space: &P,
    x: &[f64],
    ys: &[Vec<f64>],
    tol: &TolerancePolicy,
) -> Result<LemmaReport> {
    let c = space.center_residual(x)?;
    if c > tol.eq_tol.max(1e-12) * 10.0 {
        return Err(Error::NotCentral { residual: c });
    }
    let ex = space.exp_point(x, 1.0)?;
    let mut residuals = Vec::with_capacity(ys.len());
    for y in ys {
        if y.len() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        let lhs_arg: Vec<f64> = x.iter().zip(y).map(|(a, b)| 2.0 * a - b).collect();
        let lhs = space.exp_point(&lhs_arg, 1.0)?;
        let rhs = space.mul(&ex, &space.exp_point(y, 1.0)?)?;
        residuals.push(space.point_residual(&lhs, &rhs)?);
    }
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    Ok(LemmaReport {
        samples: ys.len(),
        worst_residual: worst,
        ok: worst <= tol.membership_tol,
        residuals,
    })
}
