//! Kernel lattices of `Exp` on the center and discreteness decisions.
//!
//! For the matrix models shipped here the total space is usually not simply
//! connected, so the lattices computed are kernels of `Exp` restricted to the
//! center and carry [`KERNEL_LATTICE_CAVEAT`].

mod lattice;
mod loops;
mod subgroup;

use alloc::vec;
use alloc::vec::Vec;

pub use loops::{evaluate_grid_loop, grid_loop_period_check, GridLoopReport, LoopEvaluation};
pub use subgroup::{
    lemma_sequence, quotient_projection_discreteness, subgroup_discreteness, Discreteness, Generators,
    LemmaPair, QuotientDiscreteness, SubgroupSearchConfig, Witness, MAX_GENERATORS,
};

use crate::numerics::TolerancePolicy;
use crate::sympair::PointedSymmetricSpace;
use crate::{Error, Result};

/// Attached to every lattice computed from a matrix model.
pub const KERNEL_LATTICE_CAVEAT: &str = "kernel lattice of Exp on the center of a matrix model that is \
not simply connected; the period group of a finite-dimensional triple system is trivial, so this \
lattice is not a period group";

/// Number of scan intervals used by [`kernel_lattice_1d`].
pub const SCAN_POINTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Discrete,
    NonDiscreteWitness,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Discrete => "discrete",
            Verdict::NonDiscreteWitness => "non_discrete_witness",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Verdict of a product: a witness in either factor wins, then any
    /// inconclusive factor.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (NonDiscreteWitness, _) | (_, NonDiscreteWitness) => NonDiscreteWitness,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Discrete,
        }
    }
}

/// Subgroup of the center found by a kernel search or given by generators.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelLattice {
    /// Directions spanning the searched part of the center (Lie coordinates).
    pub ambient_basis: Vec<Vec<f64>>,
    /// Generators, in coordinates with respect to `ambient_basis`.
    pub generators: Vec<Vec<f64>>,
    pub search_bound: f64,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub residuals: Vec<f64>,
    pub caveat: Option<&'static str>,
}

impl KernelLattice {
    /// The lattice of the zero-dimensional space.
    pub fn zero() -> Self {
        Self {
            ambient_basis: Vec::new(),
            generators: Vec::new(),
            search_bound: 0.0,
            verdict: Verdict::Discrete,
            witness: None,
            residuals: Vec::new(),
            caveat: None,
        }
    }

    /// Subgroup of `ℝ^d` (standard basis) generated by `generators`.
    pub fn from_generators(generators: Vec<Vec<f64>>, cfg: &SubgroupSearchConfig) -> Result<Self> {
        let gens = Generators::Float(generators);
        let d = gens.ambient_dim()?;
        let r = subgroup_discreteness(&gens, cfg)?;
        let Generators::Float(generators) = gens else { unreachable!() };
        Ok(Self {
            ambient_basis: (0..d).map(|i| crate::numerics::unit_vector(d, i)).collect(),
            generators,
            search_bound: cfg.coefficient_bound as f64,
            verdict: r.verdict,
            witness: r.witness,
            residuals: Vec::new(),
            caveat: None,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_basis.len()
    }

    /// Generators as Lie-coordinate vectors `Σ_j g_j·b_j`.
    pub fn generator_vectors(&self) -> Vec<Vec<f64>> {
        let m = self.ambient_basis.first().map_or(0, Vec::len);
        self.generators
            .iter()
            .map(|g| {
                let mut v = vec![0.0; m];
                for (c, b) in g.iter().zip(&self.ambient_basis) {
                    v.iter_mut().zip(b).for_each(|(o, x)| *o += c * x);
                }
                v
            })
            .collect()
    }
}

fn golden_min(f: &mut impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

/// Smallest `t ∈ (0, t_max]` with `Exp(t·z)` equal to the base point.
///
/// The residual `t ↦ d(Exp(t·z), b)` is scanned on [`SCAN_POINTS`] intervals,
/// each local minimum is refined by golden-section search, and the first one
/// that the space accepts as the base point becomes the generator. The verdict
/// is `Discrete` when the residual leaves the base point by more than
/// `10·membership_tol` before the root.
pub fn kernel_lattice_1d<P: PointedSymmetricSpace>(
    space: &P,
    z: &[f64],
    t_max: f64,
    tol: &TolerancePolicy,
) -> Result<KernelLattice> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::Invalid("t_max must be positive".into()));
    }
    if z.iter().all(|x| *x == 0.0) {
        return Err(Error::Invalid("direction must be nonzero".into()));
    }
    let limit = 10.0 * tol.eq_tol.max(1e-12);
    let r = space.tangent_residual(z)?;
    if r > limit {
        return Err(Error::NotInMinusSpace { residual: r });
    }
    let c = space.center_residual(z)?;
    if c > limit {
        return Err(Error::CenterMismatch { residual: c });
    }
    let base = space.base_point();
    let mut residual = |t: f64| space.point_residual(&space.exp_point(z, t)?, &base);

    let h = t_max / SCAN_POINTS as f64;
    let mut scan = Vec::with_capacity(SCAN_POINTS + 1);
    for i in 0..=SCAN_POINTS {
        scan.push(residual(i as f64 * h)?);
    }
    let gap_limit = 10.0 * tol.membership_tol;
    let mut lattice = KernelLattice {
        ambient_basis: vec![z.to_vec()],
        generators: Vec::new(),
        search_bound: t_max,
        verdict: Verdict::Inconclusive,
        witness: None,
        residuals: Vec::new(),
        caveat: Some(KERNEL_LATTICE_CAVEAT),
    };
    for i in 1..=SCAN_POINTS {
        let is_min = scan[i] <= scan[i - 1] && (i == SCAN_POINTS || scan[i] <= scan[i + 1]);
        if !is_min {
            continue;
        }
        let hi = ((i + 1) as f64 * h).min(t_max);
        let (t, r) = golden_min(&mut residual, (i - 1) as f64 * h, hi)?;
        if r > tol.membership_tol || t <= 0.0 {
            continue;
        }
        if !space.same_point(&space.exp_point(z, t)?, &base)? {
            continue;
        }
        let gap = scan[1..i].iter().cloned().fold(0.0, f64::max);
        lattice.generators.push(vec![t]);
        lattice.residuals = vec![r, gap];
        if gap > gap_limit {
            lattice.verdict = Verdict::Discrete;
        }
        return Ok(lattice);
    }
    Ok(lattice)
}

/// `Λ₁ × Λ₂` with generators block-embedded.
pub fn product_lattice(l1: &KernelLattice, l2: &KernelLattice) -> KernelLattice {
    let (d1, d2) = (l1.ambient_dim(), l2.ambient_dim());
    let m1 = l1.ambient_basis.first().map_or(0, Vec::len);
    let m2 = l2.ambient_basis.first().map_or(0, Vec::len);
    let pad = |left: usize, v: &[f64], right: usize| {
        let mut out = vec![0.0; left];
        out.extend_from_slice(v);
        out.resize(left + v.len() + right, 0.0);
        out
    };
    let mut ambient_basis: Vec<Vec<f64>> = l1.ambient_basis.iter().map(|b| pad(0, b, m2)).collect();
    ambient_basis.extend(l2.ambient_basis.iter().map(|b| pad(m1, b, 0)));
    let mut generators: Vec<Vec<f64>> = l1.generators.iter().map(|g| pad(0, g, d2)).collect();
    generators.extend(l2.generators.iter().map(|g| pad(d1, g, 0)));

    let (k1, k2) = (l1.generators.len(), l2.generators.len());
    let embed = |w: &Witness, first: bool| {
        let mut coefficients = vec![0; k1 + k2];
        let off = if first { 0 } else { k1 };
        coefficients[off..off + w.coefficients.len()].copy_from_slice(&w.coefficients);
        Witness {
            coefficients,
            vector: if first { pad(0, &w.vector, d2) } else { pad(d1, &w.vector, 0) },
            norm: w.norm,
        }
    };
    let witness = match (&l1.witness, &l2.witness) {
        (Some(w), _) => Some(embed(w, true)),
        (None, Some(w)) => Some(embed(w, false)),
        _ => None,
    };
    let mut residuals = l1.residuals.clone();
    residuals.extend_from_slice(&l2.residuals);
    KernelLattice {
        ambient_basis,
        generators,
        search_bound: l1.search_bound.max(l2.search_bound),
        verdict: l1.verdict.and(l2.verdict),
        witness,
        residuals,
        caveat: l1.caveat.or(l2.caveat),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::sympair::FixedGroupPolicy;
    use core::f64::consts::{PI, SQRT_2};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    /// Independent oracle: `e^{2it} = 1` first holds at `t = π`, so
    /// `exp(t·iI)` lies in `O(n)` (real matrices) first at `t = π`.
    #[test]
    fn u_over_o_generator_is_pi() {
        for n in 2..=3 {
            let pair = gallery::u_pair(n, FixedGroupPolicy::FullFixedGroup);
            let z = gallery::u_identity_direction::<f64>(n);
            let l = kernel_lattice_1d(&pair, &z, 10.0, &tol()).unwrap();
            assert_eq!(l.verdict, Verdict::Discrete);
            assert!((l.generators[0][0] - PI).abs() < 1e-8, "{l:?}");
            assert_eq!(l.caveat, Some(KERNEL_LATTICE_CAVEAT));
        }
    }

    #[test]
    fn group_case_generator_is_two_pi() {
        let g = gallery::u_plus_group(2);
        let z = gallery::u_identity_direction::<f64>(2);
        let l = kernel_lattice_1d(&g, &z, 10.0, &tol()).unwrap();
        assert!((l.generators[0][0] - 2.0 * PI).abs() < 1e-8, "{l:?}");
        let pair = gallery::u_group_pair(2);
        let l = kernel_lattice_1d(&pair, &gallery::u_group_direction(2), 10.0, &tol()).unwrap();
        assert!((l.generators[0][0] - 2.0 * PI).abs() < 1e-8, "{l:?}");
    }

    #[test]
    fn short_scan_finds_nothing() {
        let pair = gallery::u_pair(2, FixedGroupPolicy::FullFixedGroup);
        let z = gallery::u_identity_direction::<f64>(2);
        let l = kernel_lattice_1d(&pair, &z, 3.0, &tol()).unwrap();
        assert_eq!(l.verdict, Verdict::Inconclusive);
        assert!(l.generators.is_empty());
    }

    #[test]
    fn non_central_direction_is_rejected() {
        let pair = gallery::u_pair(2, FixedGroupPolicy::FullFixedGroup);
        let v = vec![0.0, 0.0, 0.0, 1.0];
        assert!(matches!(
            kernel_lattice_1d(&pair, &v, 10.0, &tol()),
            Err(Error::CenterMismatch { .. })
        ));
    }

    #[test]
    fn products() {
        let z2 = gallery::u_identity_direction::<f64>(2);
        let z3 = gallery::u_identity_direction::<f64>(3);
        let l2 = kernel_lattice_1d(&gallery::u_pair(2, FixedGroupPolicy::FullFixedGroup), &z2, 10.0, &tol()).unwrap();
        let l3 = kernel_lattice_1d(&gallery::u_pair(3, FixedGroupPolicy::FullFixedGroup), &z3, 10.0, &tol()).unwrap();
        let p = product_lattice(&l2, &l3);
        assert_eq!(p.verdict, Verdict::Discrete);
        assert_eq!(p.generators.len(), 2);
        assert!((p.generators[0][0] - PI).abs() < 1e-8 && p.generators[0][1] == 0.0);
        assert!((p.generators[1][1] - PI).abs() < 1e-8 && p.generators[1][0] == 0.0);
        assert_eq!(p.ambient_basis[0].len(), 4 + 9);

        assert_eq!(product_lattice(&l2, &KernelLattice::zero()), l2);

        let dense = KernelLattice::from_generators(vec![vec![1.0], vec![SQRT_2]], &SubgroupSearchConfig::default()).unwrap();
        let p = product_lattice(&l2, &dense);
        assert_eq!(p.verdict, Verdict::NonDiscreteWitness);
        let w = p.witness.unwrap();
        assert_eq!(w.coefficients[0], 0);
        assert_eq!(w.vector[0], 0.0);
        assert!(w.vector[1].abs() < 1e-6);
    }

    #[test]
    fn verdict_and() {
        use Verdict::*;
        assert_eq!(Discrete.and(Discrete), Discrete);
        assert_eq!(Discrete.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(NonDiscreteWitness), NonDiscreteWitness);
    }
}
