use alloc::vec::Vec;

use super::LieTripleSystem;
use crate::numerics::{unit_vector, Matrix, Scalar, TolerancePolicy};
use crate::{Error, Result};

/// Linear map between two triple systems. The `certified` flag is only set
/// by [`LtsMorphism::certify`] after checking `A[x,y,z] = [Ax,Ay,Az]` on all
/// basis triples.
#[derive(Debug, Clone)]
pub struct LtsMorphism<S: Scalar> {
    source: LieTripleSystem<S>,
    target: LieTripleSystem<S>,
    matrix: Matrix<S>,
    certified: bool,
    worst_residual: Option<f64>,
}

impl<S: Scalar> LtsMorphism<S> {
    /// `matrix` is `target.dim() x source.dim()`.
    pub fn new(
        source: LieTripleSystem<S>,
        target: LieTripleSystem<S>,
        matrix: Matrix<S>,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        Ok(Self {
            source,
            target,
            matrix,
            certified: false,
            worst_residual: None,
        })
    }

    pub fn identity(m: &LieTripleSystem<S>) -> Self {
        Self::new(m.clone(), m.clone(), Matrix::identity(m.dim())).expect("square")
    }

    pub fn source(&self) -> &LieTripleSystem<S> {
        &self.source
    }

    pub fn target(&self) -> &LieTripleSystem<S> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Largest residual found by the last certification run.
    pub fn worst_residual(&self) -> Option<f64> {
        self.worst_residual
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source.dim(),
                found: v.len(),
            });
        }
        Ok(self.matrix.mul_vec(v))
    }

    /// Checks bracket compatibility and sets the flag accordingly.
    pub fn certify(mut self, tol: &TolerancePolicy) -> Self {
        let d = self.source.dim();
        let images: Vec<Vec<S>> = (0..d).map(|i| self.matrix.column(i)).collect();
        let scale = self.matrix.max_abs().max(1.0);
        let coeff_scale = self
            .source
            .coeffs()
            .iter()
            .chain(self.target.coeffs())
            .map(Scalar::magnitude)
            .fold(1.0, f64::max);
        let limit = tol.eq_tol * coeff_scale * scale * scale * scale;
        let mut ok = true;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.matrix.mul_vec(self.source.column(i, j, k));
                    let rhs = self
                        .target
                        .bracket(&images[i], &images[j], &images[k])
                        .expect("dimensions checked");
                    for (a, b) in lhs.into_iter().zip(rhs) {
                        let r = a - b;
                        worst = worst.max(r.magnitude());
                        if !r.is_negligible(limit) {
                            ok = false;
                        }
                    }
                }
            }
        }
        self.certified = ok;
        self.worst_residual = Some(worst);
        self
    }

    /// Composition `other ∘ self`, uncertified.
    pub fn then(&self, other: &LtsMorphism<S>) -> Result<LtsMorphism<S>> {
        let matrix = other.matrix.mul(&self.matrix)?;
        LtsMorphism::new(self.source.clone(), other.target.clone(), matrix)
    }

    /// Image of the `i`-th source basis vector.
    pub fn image_of_basis(&self, i: usize) -> Vec<S> {
        self.matrix.mul_vec(&unit_vector(self.source.dim(), i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::numerics::Rational;

    #[test]
    fn identity_and_zero_maps_certify() {
        let tol = TolerancePolicy::default();
        let m = gallery::sphere_lts::<Rational>(3);
        assert!(LtsMorphism::identity(&m).certify(&tol).is_certified());
        let zero = LtsMorphism::new(m.clone(), m.clone(), Matrix::zeros(3, 3)).unwrap();
        assert!(zero.certify(&tol).is_certified());
    }

    #[test]
    fn scaling_is_not_a_morphism() {
        let tol = TolerancePolicy::default();
        let m = gallery::sphere_lts::<Rational>(3);
        let two = Matrix::identity(3).scale(&Rational::from_i64(2));
        let f = LtsMorphism::new(m.clone(), m, two).unwrap().certify(&tol);
        assert!(!f.is_certified());
        // left side scales by 2, right side by 8: residual 6 on [e1,e2,e2] = e1
        assert_eq!(f.worst_residual(), Some(6.0));
    }

    #[test]
    fn shape_is_checked() {
        let m = gallery::sphere_lts::<f64>(2);
        assert!(LtsMorphism::new(m.clone(), m, Matrix::zeros(3, 2)).is_err());
    }
}
