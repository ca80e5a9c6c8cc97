use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::numerics::{CoordinateSolver, Matrix, Scalar, TolerancePolicy};
use crate::{Error, Result};

/// Finite-dimensional Lie algebra with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    coeffs: Vec<S>,
    labels: Option<Vec<String>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Row-major `dim³` coefficients. No identities are checked here; see
    /// [`LieAlgebra::verify_jacobi`].
    pub fn new(dim: usize, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != dim.pow(3) {
            return Err(Error::DimensionMismatch {
                expected: dim.pow(3),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            dim,
            coeffs,
            labels: None,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![S::zero(); dim.pow(3)],
            labels: None,
        }
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = ([usize; 3], S)>) -> Result<Self> {
        let mut g = Self::abelian(dim);
        for (idx, v) in entries {
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: bad,
                });
            }
            g.coeffs[(idx[0] * dim + idx[1]) * dim + idx[2]] = v;
        }
        Ok(g)
    }

    pub fn from_brackets(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<S>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(dim.pow(3));
        for i in 0..dim {
            for j in 0..dim {
                let col = f(i, j);
                if col.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: col.len(),
                    });
                }
                coeffs.extend(col);
            }
        }
        Self::new(dim, coeffs)
    }

    /// Structure constants of the matrix Lie algebra spanned by `basis`
    /// (assumed independent) under the commutator.
    pub fn from_matrix_basis(basis: &[Matrix<S>], tol: &TolerancePolicy) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Ok(Self::abelian(0));
        };
        let flat: Vec<Vec<S>> = basis.iter().map(|m| m.as_slice().to_vec()).collect();
        let solver = CoordinateSolver::new(first.rows() * first.cols(), flat, tol)?;
        let mut failure = None;
        let g = Self::from_brackets(basis.len(), |i, j| {
            let c = basis[i].commutator(&basis[j]).expect("same shape");
            solver.coordinates(c.as_slice()).unwrap_or_else(|| {
                failure.get_or_insert((i, j));
                vec![S::zero(); basis.len()]
            })
        })?;
        match failure {
            Some((i, j)) => Err(Error::ClosureDefect(alloc::format!(
                "[X{i}, X{j}] is outside the span of the basis"
            ))),
            None => Ok(g),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &S {
        &self.coeffs[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]`.
    pub fn column(&self, i: usize, j: usize) -> &[S] {
        let o = (i * self.dim + j) * self.dim;
        &self.coeffs[o..o + self.dim]
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = ([usize; 3], &S)> + '_ {
        let d = self.dim;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(n, c)| ([n / (d * d), (n / d) % d, n % d], c))
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi.clone() * yj.clone();
                for (o, c) in out.iter_mut().zip(self.column(i, j)) {
                    o.add_product(&w, c);
                }
            }
        }
        Ok(out)
    }

    /// `ad(e_i)` as a matrix: column `j` is `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.column(i, j).iter().enumerate() {
                m[(k, j)] = c.clone();
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_f64(&self) -> LieAlgebra<f64> {
        LieAlgebra {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
            labels: self.labels.clone(),
        }
    }

    pub(crate) fn scale(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(1.0, f64::max)
    }

    /// Largest residual of `[x,x] = 0` and the Jacobi identity over basis
    /// elements, with the first failing triple.
    pub fn jacobi_defect(&self, tol: &TolerancePolicy) -> (f64, Option<[usize; 3]>) {
        let d = self.dim;
        let scale = self.scale();
        let mut worst = 0.0f64;
        let mut witness = None;
        let mut note = |r: &[S], t: f64, idx: [usize; 3], worst: &mut f64| {
            for x in r {
                *worst = worst.max(x.magnitude());
                if !x.is_negligible(t) && witness.is_none() {
                    witness = Some(idx);
                }
            }
        };
        for i in 0..d {
            for j in 0..d {
                let r: Vec<S> = self
                    .column(i, j)
                    .iter()
                    .zip(self.column(j, i))
                    .map(|(a, b)| a.clone() + b.clone())
                    .collect();
                note(&r, tol.eq_tol * scale, [i, j, j], &mut worst);
            }
        }
        let mut r = vec![S::zero(); d];
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    r.iter_mut().for_each(|x| *x = S::zero());
                    // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, cm) in self.column(a, b).iter().enumerate() {
                            if cm.is_zero() {
                                continue;
                            }
                            for (o, x) in r.iter_mut().zip(self.column(m, c)) {
                                o.add_product(cm, x);
                            }
                        }
                    }
                    note(&r, tol.eq_tol * scale * scale, [i, j, k], &mut worst);
                }
            }
        }
        (worst, witness)
    }

    pub fn verify_jacobi(&self, tol: &TolerancePolicy) -> Result<()> {
        match self.jacobi_defect(tol).1 {
            Some(idx) => Err(Error::JacobiDefect(idx)),
            None => Ok(()),
        }
    }

    /// `g1 × g2` with the factors commuting.
    pub fn direct_product(&self, other: &Self) -> Result<Self> {
        let (d1, d2) = (self.dim, other.dim);
        Self::from_brackets(d1 + d2, |i, j| {
            let mut col = vec![S::zero(); d1 + d2];
            if i < d1 && j < d1 {
                col[..d1].clone_from_slice(self.column(i, j));
            } else if i >= d1 && j >= d1 {
                col[d1..].clone_from_slice(other.column(i - d1, j - d1));
            }
            col
        })
    }

    /// Structure constants in the basis `f_j = Σ_i p[(i, j)] e_i`.
    pub fn change_basis(&self, p: &Matrix<S>, tol: &TolerancePolicy) -> Result<Self> {
        let pinv = crate::numerics::invert(p, tol)?;
        if p.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows(),
            });
        }
        let cols: Vec<Vec<S>> = (0..self.dim).map(|j| p.column(j)).collect();
        Self::from_brackets(self.dim, |i, j| {
            pinv.mul_vec(&self.bracket(&cols[i], &cols[j]).expect("dims"))
        })
    }
}
