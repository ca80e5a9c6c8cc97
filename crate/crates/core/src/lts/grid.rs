use alloc::vec;
use alloc::vec::Vec;

use super::{LieTripleSystem, Subspace};
use crate::numerics::{Scalar, TolerancePolicy};
use crate::{Error, Result};

/// Boundary condition of a grid curve `γ(t_0), ..., γ(t_{T-1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridConstraint {
    /// `γ(t_0) = 0`
    PathZeroAtStart,
    /// `γ(t_0) = γ(t_{T-1}) = 0`
    LoopZeroAtBothEnds,
}

impl GridConstraint {
    fn min_grid(self) -> usize {
        match self {
            GridConstraint::PathZeroAtStart => 2,
            GridConstraint::LoopZeroAtBothEnds => 3,
        }
    }

    fn pinned(self) -> usize {
        self.min_grid() - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            GridConstraint::PathZeroAtStart => "path",
            GridConstraint::LoopZeroAtBothEnds => "loop",
        }
    }
}

/// Finite-grid surrogate of a path or loop triple system: curves sampled on
/// `T` nodes with the pinned nodes removed, bracket taken node by node.
///
/// Coordinates are ordered node-major: free node `a` occupies
/// `a * dim(base) .. (a + 1) * dim(base)`.
#[derive(Debug, Clone)]
pub struct GridPathSystem<S: Scalar> {
    base: LieTripleSystem<S>,
    grid_size: usize,
    constraint: GridConstraint,
    system: LieTripleSystem<S>,
}

impl<S: Scalar> GridPathSystem<S> {
    pub fn new(base: LieTripleSystem<S>, grid_size: usize, constraint: GridConstraint) -> Result<Self> {
        if grid_size < constraint.min_grid() {
            return Err(Error::GridTooSmall {
                grid: grid_size,
                constraint: constraint.name(),
            });
        }
        let nodes = grid_size - constraint.pinned();
        let d = base.dim();
        let system = LieTripleSystem::from_brackets(nodes * d, |i, j, k| {
            let mut col = vec![S::zero(); nodes * d];
            let node = i / d;
            if j / d == node && k / d == node {
                col[node * d..(node + 1) * d].clone_from_slice(base.column(i % d, j % d, k % d));
            }
            col
        })?;
        Ok(Self {
            base,
            grid_size,
            constraint,
            system,
        })
    }

    pub fn base(&self) -> &LieTripleSystem<S> {
        &self.base
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn constraint(&self) -> GridConstraint {
        self.constraint
    }

    /// Number of unpinned nodes.
    pub fn free_nodes(&self) -> usize {
        self.grid_size - self.constraint.pinned()
    }

    pub fn system(&self) -> &LieTripleSystem<S> {
        &self.system
    }

    pub fn into_system(self) -> LieTripleSystem<S> {
        self.system
    }

    /// Grid curves with every free node in `sub`.
    pub fn lift_subspace(&self, sub: &Subspace<S>, tol: &TolerancePolicy) -> Result<Subspace<S>> {
        let d = self.base.dim();
        if sub.parent_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: sub.parent_dim(),
            });
        }
        let nodes = self.free_nodes();
        let mut vectors = Vec::with_capacity(nodes * sub.dim());
        for a in 0..nodes {
            for v in sub.basis() {
                let mut w = vec![S::zero(); nodes * d];
                w[a * d..(a + 1) * d].clone_from_slice(v);
                vectors.push(w);
            }
        }
        Subspace::span(nodes * d, &vectors, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::lts::{center, verify_axioms};
    use crate::numerics::Rational;

    #[test]
    fn dimensions_and_errors() {
        let a = LieTripleSystem::<Rational>::abelian(1);
        let p = GridPathSystem::new(a.clone(), 3, GridConstraint::PathZeroAtStart).unwrap();
        assert_eq!(p.system().dim(), 2);
        assert!(p.system().is_abelian());
        let l = GridPathSystem::new(a.clone(), 5, GridConstraint::LoopZeroAtBothEnds).unwrap();
        assert_eq!(l.system().dim(), 3);
        assert!(GridPathSystem::new(a.clone(), 1, GridConstraint::PathZeroAtStart).is_err());
        assert_eq!(
            GridPathSystem::new(a, 2, GridConstraint::LoopZeroAtBothEnds).unwrap_err(),
            Error::GridTooSmall {
                grid: 2,
                constraint: "loop"
            }
        );
    }

    #[test]
    fn grid_centers() {
        let t = TolerancePolicy::default();
        let u = gallery::u_minus_lts::<Rational>(2);
        let g = GridPathSystem::new(u.clone(), 4, GridConstraint::LoopZeroAtBothEnds).unwrap();
        assert!(verify_axioms(g.system(), &t).ok);
        let z = center(g.system(), &t);
        assert_eq!(z.dim(), 2);
        assert!(z.same_as(&g.lift_subspace(&center(&u, &t), &t).unwrap()));

        let s = gallery::sphere_lts::<Rational>(3);
        let p = GridPathSystem::new(s, 3, GridConstraint::PathZeroAtStart).unwrap();
        assert_eq!(center(p.system(), &t).dim(), 0);
    }
}
