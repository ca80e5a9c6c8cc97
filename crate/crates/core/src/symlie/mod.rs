//! Symmetric Lie algebras `(g, θ)`, their triple systems and the standard
//! embedding.

mod algebra;

use alloc::vec;
use alloc::vec::Vec;

pub use algebra::LieAlgebra;

use crate::lts::{verify_axioms, LieTripleSystem, Subspace};
use crate::numerics::{CoordinateSolver, Matrix, Scalar, TolerancePolicy};
use crate::{Error, Result};

/// Lie algebra with an involutive automorphism `θ` (a `dim x dim` matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricLieAlgebra<S> {
    algebra: LieAlgebra<S>,
    theta: Matrix<S>,
}

impl<S: Scalar> SymmetricLieAlgebra<S> {
    /// Checks `θ² = I` and `θ[x, y] = [θx, θy]` on basis pairs.
    pub fn new(algebra: LieAlgebra<S>, theta: Matrix<S>, tol: &TolerancePolicy) -> Result<Self> {
        let d = algebra.dim();
        if theta.rows() != d || theta.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: theta.rows(),
            });
        }
        let sq = theta.mul(&theta)?;
        let defect = sq.sub(&Matrix::identity(d))?;
        if defect.as_slice().iter().any(|x| !x.is_negligible(tol.eq_tol)) {
            return Err(Error::InvolutionDefect {
                defect: defect.max_abs(),
            });
        }
        let s = Self { algebra, theta };
        let auto = s.automorphism_defect();
        let limit = tol.eq_tol * s.algebra.scale() * { let m = s.theta.max_abs().max(1.0); m * m };
        if (S::MODE == crate::ScalarMode::ExactRational && auto > 0.0) || auto > limit {
            return Err(Error::NotAutomorphism { defect: auto });
        }
        Ok(s)
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn theta(&self) -> &Matrix<S> {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `max |θ[e_i, e_j] - [θe_i, θe_j]|`.
    pub fn automorphism_defect(&self) -> f64 {
        let d = self.dim();
        let cols: Vec<Vec<S>> = (0..d).map(|j| self.theta.column(j)).collect();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let lhs = self.theta.mul_vec(self.algebra.column(i, j));
                let rhs = self.algebra.bracket(&cols[i], &cols[j]).expect("dims");
                for (a, b) in lhs.into_iter().zip(rhs) {
                    worst = worst.max((a - b).magnitude());
                }
            }
        }
        worst
    }

    pub fn to_f64(&self) -> SymmetricLieAlgebra<f64> {
        SymmetricLieAlgebra {
            algebra: self.algebra.to_f64(),
            theta: self.theta.to_f64(),
        }
    }

    /// Same algebra and involution written in the basis `f_j = Σ_i p[(i,j)] e_i`.
    pub fn change_basis(&self, p: &Matrix<S>, tol: &TolerancePolicy) -> Result<Self> {
        let algebra = self.algebra.change_basis(p, tol)?;
        let pinv = crate::numerics::invert(p, tol)?;
        let theta = pinv.mul(&self.theta)?.mul(p)?;
        Self::new(algebra, theta, tol)
    }

    /// `(g1 × g2, θ1 ⊕ θ2)`.
    pub fn direct_product(&self, other: &Self, tol: &TolerancePolicy) -> Result<Self> {
        Self::new(
            self.algebra.direct_product(&other.algebra)?,
            self.theta.block_diag(&other.theta),
            tol,
        )
    }
}

/// The `(±1)`-eigenspaces of `θ`.
#[derive(Debug, Clone)]
pub struct EigenSplit<S: Scalar> {
    pub plus: Subspace<S>,
    pub minus: Subspace<S>,
}

/// Splits `g = g₊ ⊕ g₋` via the kernels of `θ ∓ I` and checks that `g₊` is a
/// subalgebra.
pub fn eigensplit<S: Scalar>(s: &SymmetricLieAlgebra<S>, tol: &TolerancePolicy) -> Result<EigenSplit<S>> {
    let d = s.dim();
    let id = Matrix::identity(d);
    let plus = Subspace::span(d, &S::nullspace(&s.theta.sub(&id)?, tol), tol)?;
    let minus = Subspace::span(d, &S::nullspace(&s.theta.add(&id)?, tol), tol)?;
    if plus.dim() + minus.dim() != d {
        return Err(Error::InvolutionDefect {
            defect: (d - plus.dim() - minus.dim()) as f64,
        });
    }
    for x in plus.basis() {
        for y in plus.basis() {
            if !plus.contains(&s.algebra.bracket(x, y)?) {
                return Err(Error::ClosureDefect("g₊ is not a subalgebra".into()));
            }
        }
    }
    Ok(EigenSplit { plus, minus })
}

/// Triple system `[x, y, z] = [[x, y], z]` on `g₋`, in the basis returned by
/// [`eigensplit`].
pub fn triple_from_involution<S: Scalar>(
    s: &SymmetricLieAlgebra<S>,
    tol: &TolerancePolicy,
) -> Result<LieTripleSystem<S>> {
    let split = eigensplit(s, tol)?;
    triple_on_basis(s.algebra(), &split.minus, tol)
}

/// `[[x, y], z]` restricted to a subspace that is closed under it, written in
/// the subspace's basis.
pub fn triple_on_basis<S: Scalar>(
    g: &LieAlgebra<S>,
    sub: &Subspace<S>,
    _tol: &TolerancePolicy,
) -> Result<LieTripleSystem<S>> {
    let b = sub.basis();
    let brackets: Vec<Vec<Vec<S>>> = b
        .iter()
        .map(|x| b.iter().map(|y| g.bracket(x, y).expect("dims")).collect())
        .collect();
    let mut failure = None;
    let m = LieTripleSystem::from_brackets(b.len(), |i, j, k| {
        let v = g.bracket(&brackets[i][j], &b[k]).expect("dims");
        sub.coordinates(&v).unwrap_or_else(|| {
            failure.get_or_insert([i, j, k]);
            vec![S::zero(); b.len()]
        })
    })?;
    match failure {
        Some(idx) => Err(Error::ClosureDefect(alloc::format!(
            "[[x{}, x{}], x{}] leaves the subspace",
            idx[0], idx[1], idx[2]
        ))),
        None => Ok(m),
    }
}

/// `g⁺`: the same space with `[x, y, z] = ¼[[x, y], z]`.
pub fn g_plus<S: Scalar>(g: &LieAlgebra<S>) -> LieTripleSystem<S> {
    let d = g.dim();
    let quarter = S::from_ratio(1, 4);
    LieTripleSystem::from_brackets(d, |i, j, k| {
        let mut col = vec![S::zero(); d];
        for (m, cm) in g.column(i, j).iter().enumerate() {
            if cm.is_zero() {
                continue;
            }
            let w = quarter.clone() * cm.clone();
            for (o, c) in col.iter_mut().zip(g.column(m, k)) {
                o.add_product(&w, c);
            }
        }
        col
    })
    .expect("dim³ columns of length dim")
}

/// `z(g)`: the common kernel of all `ad(e_j)` acting on the first slot.
pub fn lie_center<S: Scalar>(g: &LieAlgebra<S>, tol: &TolerancePolicy) -> Subspace<S> {
    let d = g.dim();
    if d == 0 {
        return Subspace::zero(0);
    }
    let mut a = Matrix::zeros(d * d, d);
    for j in 0..d {
        for k in 0..d {
            for i in 0..d {
                a[(j * d + k, i)] = g.coeff(i, j, k).clone();
            }
        }
    }
    Subspace::span(d, &S::nullspace(&a, tol), tol).expect("kernel vectors have length dim")
}

/// `z(g)` of a symmetric Lie algebra, after checking that it is θ-invariant.
pub fn symmetric_lie_center<S: Scalar>(
    s: &SymmetricLieAlgebra<S>,
    tol: &TolerancePolicy,
) -> Result<Subspace<S>> {
    let z = lie_center(s.algebra(), tol);
    for v in z.basis() {
        if !z.contains(&s.theta.mul_vec(v)) {
            return Err(Error::ClosureDefect("center is not θ-invariant".into()));
        }
    }
    Ok(z)
}

/// `S(m) = h ⊕ m` with `h` spanned by the operators `L(e_i, e_j)`.
#[derive(Debug, Clone)]
pub struct StandardEmbedding<S: Scalar> {
    /// Basis order: `h` first, then `m`; θ is `+1` on `h` and `-1` on `m`.
    pub algebra: SymmetricLieAlgebra<S>,
    /// The chosen basis of `h` as `dim(m) x dim(m)` matrices.
    pub h_operators: Vec<Matrix<S>>,
    /// Index pairs `(i, j)` of the operators kept for the basis of `h`.
    pub h_pairs: Vec<(usize, usize)>,
    pub m_dim: usize,
}

impl<S: Scalar> StandardEmbedding<S> {
    pub fn h_dim(&self) -> usize {
        self.h_operators.len()
    }

    /// `x ∈ m` as a vector of `S(m)`.
    pub fn embed(&self, x: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.h_dim()];
        v.extend(x.iter().cloned());
        v
    }

    /// The embedded copy of a subspace of `m`.
    pub fn embed_subspace(&self, sub: &Subspace<S>, tol: &TolerancePolicy) -> Result<Subspace<S>> {
        let vs: Vec<Vec<S>> = sub.basis().iter().map(|x| self.embed(x)).collect();
        Subspace::span(self.h_dim() + self.m_dim, &vs, tol)
    }

    /// The `m`-block of `triple_from_involution(S(m))`: `[[x, y], z]` on the
    /// embedded standard basis of `m`.
    pub fn m_block(&self, tol: &TolerancePolicy) -> Result<LieTripleSystem<S>> {
        let n = self.h_dim() + self.m_dim;
        let m_basis: Vec<Vec<S>> = (0..self.m_dim)
            .map(|i| crate::numerics::unit_vector(n, self.h_dim() + i))
            .collect();
        let sub = Subspace::span(n, &m_basis, tol)?;
        triple_on_basis(self.algebra.algebra(), &sub, tol)
    }
}

/// Builds `S(m)`: `[A, B] = AB - BA`, `[A, x] = Ax`, `[x, y] = L(x, y)`.
pub fn standard_embedding<S: Scalar>(
    m: &LieTripleSystem<S>,
    tol: &TolerancePolicy,
) -> Result<StandardEmbedding<S>> {
    let report = verify_axioms(m, tol);
    if let Some(w) = report.witness {
        return Err(Error::AxiomDefect(alloc::format!(
            "{} fails at {:?}",
            w.axiom.name(),
            w.indices
        )));
    }
    let d = m.dim();
    let mut pairs = Vec::with_capacity(d * d);
    let mut ops = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            pairs.push((i, j));
            ops.push(m.operator(i, j));
        }
    }
    let flat: Vec<Vec<S>> = ops.iter().map(|o| o.as_slice().to_vec()).collect();
    let keep = S::independent_indices(&flat, tol);
    let h_ops: Vec<Matrix<S>> = keep.iter().map(|&n| ops[n].clone()).collect();
    let h_pairs: Vec<(usize, usize)> = keep.iter().map(|&n| pairs[n]).collect();
    let h = h_ops.len();
    let solver = CoordinateSolver::new(d * d, keep.iter().map(|&n| flat[n].clone()).collect(), tol)?;
    let coords = |mat: &Matrix<S>| -> Result<Vec<S>> {
        solver
            .coordinates(mat.as_slice())
            .ok_or_else(|| Error::ClosureDefect("operator outside the span of h".into()))
    };
    // L(e_i, e_j) in the h basis
    let mut l_coords = Vec::with_capacity(d * d);
    for o in &ops {
        l_coords.push(coords(o)?);
    }
    let mut hh = Vec::with_capacity(h * h);
    for a in &h_ops {
        for b in &h_ops {
            hh.push(coords(&a.commutator(b)?)?);
        }
    }
    let n = h + d;
    let algebra = LieAlgebra::from_brackets(n, |p, q| {
        let mut col = vec![S::zero(); n];
        match (p < h, q < h) {
            (true, true) => col[..h].clone_from_slice(&hh[p * h + q]),
            (true, false) => {
                // [A, e_j] = A e_j
                for (l, slot) in col[h..].iter_mut().enumerate() {
                    *slot = h_ops[p][(l, q - h)].clone();
                }
            }
            (false, true) => {
                for (l, slot) in col[h..].iter_mut().enumerate() {
                    *slot = -h_ops[q][(l, p - h)].clone();
                }
            }
            (false, false) => col[..h].clone_from_slice(&l_coords[(p - h) * d + (q - h)]),
        }
        col
    })?;
    algebra.verify_jacobi(tol)?;
    let mut diag = vec![S::one(); h];
    diag.extend((0..d).map(|_| -S::one()));
    let algebra = SymmetricLieAlgebra::new(algebra, Matrix::diagonal(&diag), tol)?;
    Ok(StandardEmbedding {
        algebra,
        h_operators: h_ops,
        h_pairs,
        m_dim: d,
    })
}
