//! Lie triple systems stored as dense structure tensors.
//!
//! A system of dimension `d` is given by coefficients `c[i][j][k][l]` with
//! `[e_i, e_j, e_k] = Σ_l c[i][j][k][l] e_l`. The axioms are
//!
//! * `[x, x, y] = 0`,
//! * `[x, y, z] + [y, z, x] + [z, x, y] = 0`,
//! * `[x, y, [u, v, w]] = [[x, y, u], v, w] + [u, [x, y, v], w] + [u, v, [x, y, w]]`.
//!
//! All three are multilinear, so checking them on basis tuples is sufficient.

mod grid;
mod ideal;
mod morphism;
mod subspace;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use grid::{GridConstraint, GridPathSystem};
pub use ideal::{
    center, center_laterality, direct_product, ideal_closure, is_ideal, is_subsystem, quotient,
    restrict, CenterLaterality, IdealClosure, Quotient,
};
pub use morphism::LtsMorphism;
pub use subspace::Subspace;

use crate::numerics::{Matrix, Scalar, TolerancePolicy};
use crate::{Error, Result};

/// Default cap on the dimension of a dense triple system. Axiom checks cost
/// `O(dim⁵)`.
pub const DEFAULT_MAX_DIM: usize = 32;

/// Finite-dimensional Lie triple system.
#[derive(Debug, Clone, PartialEq)]
pub struct LieTripleSystem<S> {
    dim: usize,
    coeffs: Vec<S>,
    labels: Option<Vec<String>>,
}

impl<S: Scalar> LieTripleSystem<S> {
    /// Builds a system from a row-major `dim⁴` coefficient array.
    pub fn new(dim: usize, coeffs: Vec<S>) -> Result<Self> {
        Self::with_cap(dim, coeffs, DEFAULT_MAX_DIM)
    }

    pub fn with_cap(dim: usize, coeffs: Vec<S>, cap: usize) -> Result<Self> {
        if dim > cap {
            return Err(Error::DimTooLarge { dim, cap });
        }
        let expected = dim.pow(4);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self {
            dim,
            coeffs,
            labels: None,
        })
    }

    /// Abelian system (zero bracket).
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![S::zero(); dim.pow(4)],
            labels: None,
        }
    }

    /// Builds a system from sparse entries `(i, j, k, l, value)`; later
    /// entries for the same index overwrite earlier ones.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = ([usize; 4], S)>,
    ) -> Result<Self> {
        let mut m = Self::abelian(dim);
        if dim > DEFAULT_MAX_DIM {
            return Err(Error::DimTooLarge {
                dim,
                cap: DEFAULT_MAX_DIM,
            });
        }
        for (idx, v) in entries {
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: bad,
                });
            }
            let at = m.offset(idx[0], idx[1], idx[2]) + idx[3];
            m.coeffs[at] = v;
        }
        Ok(m)
    }

    /// Builds a system whose bracket on basis triples is given by `f`.
    pub fn from_brackets(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Vec<S>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(dim.pow(4));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let col = f(i, j, k);
                    if col.len() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            found: col.len(),
                        });
                    }
                    coeffs.extend(col);
                }
            }
        }
        Self::new(dim, coeffs)
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

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.coeffs[self.offset(i, j, k) + l]
    }

    /// `[e_i, e_j, e_k]` as a coefficient vector.
    pub fn column(&self, i: usize, j: usize, k: usize) -> &[S] {
        let o = self.offset(i, j, k);
        &self.coeffs[o..o + self.dim]
    }

    /// Nonzero coefficients in lexicographic index order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ([usize; 4], &S)> + '_ {
        let d = self.dim;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(n, c)| {
            ([n / (d * d * d), (n / (d * d)) % d, (n / d) % d, n % d], c)
        })
    }

    /// Trilinear bracket `[x, y, z]`.
    pub fn bracket(&self, x: &[S], y: &[S], z: &[S]) -> Result<Vec<S>> {
        for v in [x, y, z] {
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
                let xy = xi.clone() * yj.clone();
                for (k, zk) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let w = xy.clone() * zk.clone();
                    for (o, c) in out.iter_mut().zip(self.column(i, j, k)) {
                        o.add_product(&w, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The operator `L(e_i, e_j) = [e_i, e_j, ·]` as a `dim x dim` matrix.
    pub fn operator(&self, i: usize, j: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            for (l, c) in self.column(i, j, k).iter().enumerate() {
                m[(l, k)] = c.clone();
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> LieTripleSystem<f64> {
        LieTripleSystem {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Largest coefficient magnitude (1 for the zero tensor), used to scale
    /// float tolerances.
    fn scale(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(1.0, f64::max)
    }

    /// The system with bracket `-[x, y, z]`.
    pub fn negated(&self) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Largest coefficient difference; `None` on dimension mismatch.
    pub fn max_coeff_diff(&self, other: &Self) -> Option<f64> {
        if self.dim != other.dim {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a.clone() - b.clone()).magnitude())
                .fold(0.0, f64::max),
        )
    }
}

use num_traits::Zero;

/// Which defining identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `[x, x, y] = 0`
    Antisymmetry,
    /// `[x, y, z] + [y, z, x] + [z, x, y] = 0`
    Cyclic,
    /// `L(x, y)` acts as a derivation of the bracket.
    Derivation,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Antisymmetry => "[x,x,y]=0",
            Axiom::Cyclic => "[x,y,z]+[y,z,x]+[z,x,y]=0",
            Axiom::Derivation => "[x,y,[u,v,w]]=[[x,y,u],v,w]+[u,[x,y,v],w]+[u,v,[x,y,w]]",
        }
    }
}

/// First failing basis tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub ok: bool,
    /// Largest residual magnitude seen over all checked tuples.
    pub worst_violation: f64,
    pub witness: Option<AxiomWitness>,
}

struct Tally {
    worst: f64,
    witness: Option<AxiomWitness>,
}

impl Tally {
    fn record<S: Scalar>(&mut self, residual: &[S], tol: f64, axiom: Axiom, idx: &[usize]) {
        let mut failed = false;
        for r in residual {
            let m = r.magnitude();
            if m > self.worst {
                self.worst = m;
            }
            if !r.is_negligible(tol) {
                failed = true;
            }
        }
        if failed && self.witness.is_none() {
            self.witness = Some(AxiomWitness {
                axiom,
                indices: idx.to_vec(),
            });
        }
    }
}

/// Checks the three defining identities on all basis tuples.
pub fn verify_axioms<S: Scalar>(m: &LieTripleSystem<S>, tol: &TolerancePolicy) -> AxiomReport {
    let d = m.dim;
    let scale = m.scale();
    let lin_tol = tol.eq_tol * scale;
    let quad_tol = tol.eq_tol * scale * scale;
    let mut tally = Tally {
        worst: 0.0,
        witness: None,
    };

    // polarized antisymmetry: [e_i,e_j,·] + [e_j,e_i,·] = 0 (i = j gives [x,x,y] = 0)
    let mut antisymmetric = true;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let r: Vec<S> = m
                    .column(i, j, k)
                    .iter()
                    .zip(m.column(j, i, k))
                    .map(|(a, b)| a.clone() + b.clone())
                    .collect();
                tally.record(&r, lin_tol, Axiom::Antisymmetry, &[i, j, k]);
                if r.iter().any(|x| !x.is_negligible(lin_tol)) {
                    antisymmetric = false;
                }
            }
        }
    }

    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let r: Vec<S> = (0..d)
                    .map(|l| {
                        m.coeff(i, j, k, l).clone()
                            + m.coeff(j, k, i, l).clone()
                            + m.coeff(k, i, j, l).clone()
                    })
                    .collect();
                tally.record(&r, lin_tol, Axiom::Cyclic, &[i, j, k]);
            }
        }
    }

    // sparse columns T[i][j][k] = [e_i, e_j, e_k]
    let sparse: Vec<Vec<(usize, S)>> = (0..d * d * d)
        .map(|n| {
            m.coeffs[n * d..(n + 1) * d]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (l, c.clone()))
                .collect()
        })
        .collect();
    let col = |i: usize, j: usize, k: usize| &sparse[(i * d + j) * d + k];

    let mut r = vec![S::zero(); d];
    for x in 0..d {
        // with antisymmetry, the (y, x) identity is the negation of (x, y)
        let y_start = if antisymmetric { x + 1 } else { 0 };
        for y in y_start..d {
            if (0..d).all(|u| col(x, y, u).is_empty()) {
                continue;
            }
            for u in 0..d {
                for v in 0..d {
                    for w in 0..d {
                        r.iter_mut().for_each(|e| *e = S::zero());
                        // [x, y, [u, v, w]]
                        for (l, a) in col(u, v, w) {
                            for (o, b) in col(x, y, *l) {
                                r[*o].add_product(a, b);
                            }
                        }
                        // - [[x,y,u],v,w] - [u,[x,y,v],w] - [u,v,[x,y,w]]
                        for (l, a) in col(x, y, u) {
                            let na = -a.clone();
                            for (o, b) in col(*l, v, w) {
                                r[*o].add_product(&na, b);
                            }
                        }
                        for (l, a) in col(x, y, v) {
                            let na = -a.clone();
                            for (o, b) in col(u, *l, w) {
                                r[*o].add_product(&na, b);
                            }
                        }
                        for (l, a) in col(x, y, w) {
                            let na = -a.clone();
                            for (o, b) in col(u, v, *l) {
                                r[*o].add_product(&na, b);
                            }
                        }
                        tally.record(&r, quad_tol, Axiom::Derivation, &[x, y, u, v, w]);
                    }
                }
            }
        }
    }

    AxiomReport {
        ok: tally.witness.is_none(),
        worst_violation: tally.worst,
        witness: tally.witness,
    }
}
