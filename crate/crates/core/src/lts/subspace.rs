use alloc::vec::Vec;

use crate::numerics::{span_basis, unit_vector, CoordinateSolver, Scalar, TolerancePolicy};
use crate::{Error, Result};

/// Linear subspace of `S^parent_dim`, held as an explicit independent basis.
///
/// Membership is decided by the projection residual: exactly in rational
/// mode, `≤ eq_tol · ‖v‖` in float mode.
#[derive(Debug, Clone)]
pub struct Subspace<S: Scalar> {
    solver: CoordinateSolver<S>,
}

impl<S: Scalar> Subspace<S> {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(parent_dim: usize, vectors: &[Vec<S>], tol: &TolerancePolicy) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != parent_dim) {
            return Err(Error::DimensionMismatch {
                expected: parent_dim,
                found: bad.len(),
            });
        }
        let basis = span_basis(vectors, tol)?;
        Ok(Self {
            solver: CoordinateSolver::new(parent_dim, basis, tol)?,
        })
    }

    pub fn zero(parent_dim: usize) -> Self {
        Self {
            solver: CoordinateSolver::new(parent_dim, Vec::new(), &TolerancePolicy::default())
                .expect("empty basis"),
        }
    }

    pub fn whole(parent_dim: usize, tol: &TolerancePolicy) -> Self {
        let basis = (0..parent_dim).map(|i| unit_vector(parent_dim, i)).collect();
        Self {
            solver: CoordinateSolver::new(parent_dim, basis, tol).expect("standard basis"),
        }
    }

    pub fn parent_dim(&self) -> usize {
        self.solver.ambient()
    }

    pub fn dim(&self) -> usize {
        self.solver.basis().len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        self.solver.basis()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        v.len() == self.parent_dim() && self.solver.contains(v)
    }

    /// Relative distance of `v` from the subspace.
    pub fn residual(&self, v: &[S]) -> f64 {
        self.solver.relative_residual(v)
    }

    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        self.solver.coordinates(v)
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.parent_dim() == self.parent_dim() && other.basis().iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces (mutual containment).
    pub fn same_as(&self, other: &Subspace<S>) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other) && other.contains_subspace(self)
    }

    /// Indices `i` such that the unit vectors `e_i` complete this basis to a
    /// basis of the parent space (greedy, ascending).
    pub fn complement_indices(&self, tol: &TolerancePolicy) -> Vec<usize> {
        let d = self.parent_dim();
        let mut vectors: Vec<Vec<S>> = self.basis().to_vec();
        vectors.extend((0..d).map(|i| unit_vector(d, i)));
        S::independent_indices(&vectors, tol)
            .into_iter()
            .filter(|&i| i >= self.dim())
            .map(|i| i - self.dim())
            .collect()
    }

    /// Image under the linear map `x ↦ A x`, as a subspace of the target.
    pub fn image(&self, map: &crate::numerics::Matrix<S>, tol: &TolerancePolicy) -> Result<Self> {
        if map.cols() != self.parent_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.parent_dim(),
                found: map.cols(),
            });
        }
        let images: Vec<Vec<S>> = self.basis().iter().map(|v| map.mul_vec(v)).collect();
        Self::span(map.rows(), &images, tol)
    }

    /// `self ⊕ other` inside `S^(n1 + n2)`.
    pub fn direct_sum(&self, other: &Subspace<S>, tol: &TolerancePolicy) -> Result<Self> {
        let (n1, n2) = (self.parent_dim(), other.parent_dim());
        let mut vectors = Vec::with_capacity(self.dim() + other.dim());
        for v in self.basis() {
            let mut w = v.clone();
            w.resize(n1 + n2, S::zero());
            vectors.push(w);
        }
        for v in other.basis() {
            let mut w = alloc::vec![S::zero(); n1];
            w.extend(v.iter().cloned());
            vectors.push(w);
        }
        Self::span(n1 + n2, &vectors, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use alloc::vec;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn span_reduces_and_tests_membership() {
        let tol = TolerancePolicy::default();
        let s = Subspace::span(3, &[vec![q(1), q(0), q(1)], vec![q(2), q(0), q(2)]], &tol).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[q(-3), q(0), q(-3)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        assert_eq!(s.complement_indices(&tol), vec![0, 1]);
    }

    #[test]
    fn float_membership_uses_relative_residual() {
        let tol = TolerancePolicy::default();
        let s = Subspace::span(2, &[vec![1.0, 1.0]], &tol).unwrap();
        assert!(s.contains(&[1e6, 1e6 + 1e-6]));
        assert!(!s.contains(&[1.0, 1.001]));
    }

    #[test]
    fn direct_sum_and_equality() {
        let tol = TolerancePolicy::default();
        let a = Subspace::span(2, &[vec![q(1), q(1)]], &tol).unwrap();
        let b = Subspace::<Rational>::zero(1);
        let ab = a.direct_sum(&b, &tol).unwrap();
        assert_eq!(ab.parent_dim(), 3);
        assert_eq!(ab.dim(), 1);
        let c = Subspace::span(3, &[vec![q(2), q(2), q(0)]], &tol).unwrap();
        assert!(ab.same_as(&c));
    }
}
