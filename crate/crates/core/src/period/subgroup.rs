use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::lattice::{enumerate, hermite_rows, lll, Embedding};
use super::Verdict;
use crate::lts::Subspace;
use crate::numerics::{rational_from_f64, CoordinateSolver, Rational, ScalarMode, TolerancePolicy};
use crate::{Error, Result};

/// Largest generator count accepted by the discreteness search.
pub const MAX_GENERATORS: usize = 8;

const NODE_CAP: usize = 4_000_000;
/// Weight multiplier used to split off exact integer relations.
const RELATION_WEIGHT: f64 = 1e6;
/// Relative size below which `Σ a_i g_i` counts as an exact relation.
const RELATION_TOL: f64 = 1e-13;

/// Generators of a subgroup of `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generators {
    Float(Vec<Vec<f64>>),
    Rational(Vec<Vec<Rational>>),
}

impl Generators {
    pub fn len(&self) -> usize {
        match self {
            Generators::Float(g) => g.len(),
            Generators::Rational(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Common length of the generators (`0` when there are none).
    pub fn ambient_dim(&self) -> Result<usize> {
        let lens: Vec<usize> = match self {
            Generators::Float(g) => g.iter().map(Vec::len).collect(),
            Generators::Rational(g) => g.iter().map(Vec::len).collect(),
        };
        let d = lens.first().copied().unwrap_or(0);
        if let Some(&bad) = lens.iter().find(|&&l| l != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad });
        }
        Ok(d)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            Generators::Float(g) => g.clone(),
            Generators::Rational(g) => g.iter().map(|v| crate::numerics::to_f64_vec(v)).collect(),
        }
    }

    /// Exact binary values of float generators.
    pub fn to_rational(&self) -> Result<Vec<Vec<Rational>>> {
        match self {
            Generators::Rational(g) => Ok(g.clone()),
            Generators::Float(g) => g
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|&x| {
                            rational_from_f64(x)
                                .ok_or_else(|| Error::Invalid("non-finite generator entry".into()))
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Parameters of the integer-combination search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubgroupSearchConfig {
    pub epsilon: f64,
    pub coefficient_bound: u64,
    pub mode: ScalarMode,
}

impl Default for SubgroupSearchConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            coefficient_bound: 1_000_000,
            mode: ScalarMode::Float64,
        }
    }
}

impl SubgroupSearchConfig {
    pub fn new(epsilon: f64, coefficient_bound: u64, mode: ScalarMode) -> Result<Self> {
        let cfg = Self {
            epsilon,
            coefficient_bound,
            mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::Invalid("epsilon must be positive".into()));
        }
        // keeps coefficients and their products inside i128
        if self.coefficient_bound == 0 || self.coefficient_bound > 1u64 << 40 {
            return Err(Error::Invalid("coefficient bound must be in 1..=2^40".into()));
        }
        Ok(())
    }
}

/// An integer combination `Σ a_i g_i` of the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub coefficients: Vec<i64>,
    pub vector: Vec<f64>,
    pub norm: f64,
}

impl Witness {
    /// Recomputes `Σ a_i g_i`.
    pub fn replay(&self, gens: &[Vec<f64>]) -> Vec<f64> {
        let d = gens.first().map_or(0, Vec::len);
        let mut w = vec![0.0; d];
        for (a, g) in self.coefficients.iter().zip(gens) {
            for (o, x) in w.iter_mut().zip(g) {
                *o += *a as f64 * x;
            }
        }
        w
    }

    fn from_coefficients(a: &[i128], emb: &Embedding) -> Self {
        let vector = emb.image(a);
        Self {
            coefficients: a.iter().map(|&x| x as i64).collect(),
            norm: norm(&vector),
            vector,
        }
    }
}

/// Outcome of a discreteness decision.
#[derive(Debug, Clone, PartialEq)]
pub struct Discreteness {
    pub verdict: Verdict,
    /// Nonzero combination shorter than `epsilon` (float mode).
    pub witness: Option<Witness>,
    /// Shortest nonzero combination within the bound, when it was determined.
    pub shortest: Option<Witness>,
    /// Basis of the generated lattice (exact mode).
    pub lattice_basis: Option<Vec<Vec<Rational>>>,
}

impl Discreteness {
    fn verdict_only(verdict: Verdict) -> Self {
        Self {
            verdict,
            witness: None,
            shortest: None,
            lattice_basis: None,
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

fn check_generators(gens: &Generators) -> Result<usize> {
    if gens.len() > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            max: MAX_GENERATORS,
            found: gens.len(),
        });
    }
    let d = gens.ambient_dim()?;
    if let Generators::Float(g) = gens {
        if g.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("non-finite generator entry".into()));
        }
    }
    Ok(d)
}

/// Decides whether the subgroup generated by `gens` is discrete.
///
/// Exact mode always answers `Discrete` with a lattice basis (float inputs are
/// read as their exact binary values). Float mode searches combinations with
/// coefficients bounded by `cfg.coefficient_bound`: a combination shorter than
/// `epsilon` is returned as a witness; `Discrete` requires the shortest
/// combination to exceed `10³·epsilon` and to be reached already with
/// coefficients at most `√bound`.
pub fn subgroup_discreteness(gens: &Generators, cfg: &SubgroupSearchConfig) -> Result<Discreteness> {
    cfg.validate()?;
    check_generators(gens)?;
    Ok(match cfg.mode {
        ScalarMode::ExactRational => exact_discreteness(&gens.to_rational()?),
        ScalarMode::Float64 => float_discreteness(&gens.to_f64(), cfg),
    })
}

fn exact_discreteness(gens: &[Vec<Rational>]) -> Discreteness {
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| v.iter().map(|x| x.numer() * (&den / x.denom())).collect())
        .collect();
    let basis = hermite_rows(rows)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rational::new(x, den.clone())).collect())
        .collect();
    Discreteness {
        lattice_basis: Some(basis),
        ..Discreteness::verdict_only(Verdict::Discrete)
    }
}

fn identity(k: usize) -> Vec<Vec<i128>> {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn l1(a: &[i128]) -> f64 {
    a.iter().map(|x| x.unsigned_abs() as f64).sum()
}

fn linf(a: &[i128]) -> u128 {
    a.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

/// Sign-normalized so that the first nonzero coefficient is positive.
fn canonical(mut a: Vec<i128>) -> Vec<i128> {
    if a.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        a.iter_mut().for_each(|x| *x = -*x);
    }
    a
}

/// Smallest coefficient norm first, then lexicographic.
fn coefficient_order(a: &[i128], b: &[i128]) -> Ordering {
    let sq = |v: &[i128]| v.iter().map(|x| x * x).sum::<i128>();
    sq(a).cmp(&sq(b)).then_with(|| a.cmp(b))
}

struct Candidate {
    coeffs: Vec<i128>,
    norm: f64,
}

/// Nonzero combinations within the coefficient bound whose image is at most
/// `reach` long, plus every other lattice point the enumeration visits.
fn candidates(
    basis: &[Vec<i128>],
    gens: &[Vec<f64>],
    bound: f64,
    reach: f64,
    scale: f64,
) -> Option<Vec<Candidate>> {
    let emb = Embedding {
        gens,
        weight: bound / reach,
    };
    let mut b = basis.to_vec();
    lll(&mut b, &emb)?;
    let radius = (gens.len() as f64 + 1.0) * bound * bound * (1.0 + 1e-9);
    let pts = enumerate(&b, &emb, radius, NODE_CAP)?;
    Some(
        pts.into_iter()
            .filter(|a| linf(a) as f64 <= bound)
            .map(canonical)
            .filter_map(|a| {
                let n = norm(&emb.image(&a));
                (n > RELATION_TOL * scale * l1(&a)).then_some(Candidate { coeffs: a, norm: n })
            })
            .collect(),
    )
}

fn float_discreteness(gens: &[Vec<f64>], cfg: &SubgroupSearchConfig) -> Discreteness {
    let k = gens.len();
    let scale = gens.iter().map(|g| norm(g)).fold(0.0, f64::max);
    if k == 0 || scale == 0.0 {
        return Discreteness::verdict_only(Verdict::Discrete);
    }
    let emb_of = |weight| Embedding { gens, weight };

    // split off exact relations so the enumeration does not walk along them
    let mut reduced = identity(k);
    if lll(&mut reduced, &emb_of(RELATION_WEIGHT / scale)).is_none() {
        return Discreteness::verdict_only(Verdict::Inconclusive);
    }
    let rel = emb_of(1.0);
    let free: Vec<Vec<i128>> = reduced
        .into_iter()
        .filter(|a| norm(&rel.image(a)) > RELATION_TOL * scale * l1(a))
        .collect();
    if free.is_empty() {
        return Discreteness::verdict_only(Verdict::Discrete);
    }

    let bound = cfg.coefficient_bound as f64;
    let eps = cfg.epsilon;
    match witness_search(&free, gens, bound, eps, scale) {
        None => return Discreteness::verdict_only(Verdict::Inconclusive),
        Some(Some(c)) => {
            return Discreteness {
                witness: Some(Witness::from_coefficients(&c.coeffs, &rel)),
                ..Discreteness::verdict_only(Verdict::NonDiscreteWitness)
            }
        }
        Some(None) => {}
    }

    // shortest combination within the bound; discrete only if it already
    // appears with coefficients up to √bound
    let Some(short) = shortest_within(&free, gens, bound, eps, scale) else {
        return Discreteness::verdict_only(Verdict::Inconclusive);
    };
    let stable = short.norm > 1e3 * eps && (linf(&short.coeffs) as f64) <= libm::sqrt(bound);
    Discreteness {
        shortest: Some(Witness::from_coefficients(&short.coeffs, &rel)),
        ..Discreteness::verdict_only(if stable { Verdict::Discrete } else { Verdict::Inconclusive })
    }
}

/// Witness of smallest coefficient norm, searched with coefficient bounds
/// doubling up to `bound`. `None` when the enumeration budget runs out.
fn witness_search(
    free: &[Vec<i128>],
    gens: &[Vec<f64>],
    bound: f64,
    eps: f64,
    scale: f64,
) -> Option<Option<Candidate>> {
    let pick = |level: f64| -> Option<Option<Candidate>> {
        let mut c: Vec<Candidate> = candidates(free, gens, level, eps, scale)?
            .into_iter()
            .filter(|c| c.norm < eps)
            .collect();
        c.sort_by(|a, b| coefficient_order(&a.coeffs, &b.coeffs));
        Some(c.into_iter().next())
    };
    let mut level = 1.0f64;
    loop {
        let level_now = level.min(bound);
        if let Some(c) = pick(level_now)? {
            // every combination with a smaller coefficient norm has
            // coefficients at most that norm
            let l2 = libm::sqrt(c.coeffs.iter().map(|x| (x * x) as f64).sum());
            let wide = libm::ceil(l2).min(bound);
            return Some(if wide > level_now { pick(wide)?.or(Some(c)) } else { Some(c) });
        }
        if level_now >= bound {
            return Some(None);
        }
        level *= 2.0;
    }
}

fn shortest_within(
    free: &[Vec<i128>],
    gens: &[Vec<f64>],
    bound: f64,
    start: f64,
    scale: f64,
) -> Option<Candidate> {
    let mut reach = start;
    for _ in 0..400 {
        let cands = candidates(free, gens, bound, reach, scale)?;
        let best = cands.into_iter().min_by(|a, b| {
            a.norm
                .total_cmp(&b.norm)
                .then_with(|| coefficient_order(&a.coeffs, &b.coeffs))
        });
        if let Some(c) = best.filter(|c| c.norm <= reach) {
            return Some(c);
        }
        reach *= 2.0;
    }
    None
}

/// Replay of a witness as a pair `x ∈ Π ∖ 𝔫`, `y ∈ 𝔫` with `2x - y` small.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `‖2x - y‖`.
    pub defect: f64,
    /// Distance from `x` to the ideal.
    pub distance_to_ideal: f64,
}

/// Discreteness of the image of a lattice in `ℝ^d / 𝔫`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientDiscreteness {
    pub result: Discreteness,
    /// Basis of the complement the generators were projected onto.
    pub complement: Vec<Vec<f64>>,
    /// Projected generators in complement coordinates.
    pub projected: Vec<Vec<f64>>,
    pub lemma: Option<LemmaPair>,
}

fn orthonormalize(vectors: &[Vec<f64>], start: Vec<Vec<f64>>, tol: f64) -> Vec<Vec<f64>> {
    let mut out = start;
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                w.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        let n = norm(&w);
        if n > tol * norm(v).max(1.0) {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Projects `gens` onto a complement of `ideal` and decides discreteness there.
///
/// Float mode projects orthogonally; exact mode uses standard basis vectors
/// completing the ideal. A witness `w = Σ a_i q(g_i)` is replayed as
/// `x = Σ a_i g_i` and `y = 2·(x - w)`, so `2x - y = 2w`.
pub fn quotient_projection_discreteness(
    gens: &Generators,
    ideal: &Generators,
    cfg: &SubgroupSearchConfig,
) -> Result<QuotientDiscreteness> {
    cfg.validate()?;
    let d = check_generators(gens)?;
    let ideal_dim = ideal.ambient_dim()?;
    if !ideal.is_empty() && ideal_dim != d {
        return Err(Error::IdealOutsideAmbient);
    }
    match cfg.mode {
        ScalarMode::Float64 => {
            let ivecs = ideal.to_f64();
            let ideal_on = orthonormalize(&ivecs, Vec::new(), 1e-12);
            let k = ideal_on.len();
            let standard: Vec<Vec<f64>> = (0..d).map(|i| crate::numerics::unit_vector(d, i)).collect();
            let complement = orthonormalize(&standard, ideal_on, 1e-8).split_off(k);
            let raw = gens.to_f64();
            let project = |v: &[f64]| -> Vec<f64> {
                complement
                    .iter()
                    .map(|c| c.iter().zip(v).map(|(a, b)| a * b).sum())
                    .collect()
            };
            let projected: Vec<Vec<f64>> = raw.iter().map(|g| project(g)).collect();
            let result = float_discreteness(&projected, cfg);
            let lemma = result.witness.as_ref().map(|w| {
                let x = w.replay(&raw);
                let perp: Vec<f64> = (0..d)
                    .map(|i| complement.iter().zip(&w.vector).map(|(c, wi)| c[i] * wi).sum())
                    .collect();
                let y: Vec<f64> = x.iter().zip(&perp).map(|(a, p)| 2.0 * (a - p)).collect();
                let diff: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 2.0 * a - b).collect();
                LemmaPair {
                    defect: norm(&diff),
                    distance_to_ideal: norm(&project(&x)),
                    x,
                    y,
                }
            });
            Ok(QuotientDiscreteness {
                result,
                complement,
                projected,
                lemma,
            })
        }
        ScalarMode::ExactRational => {
            let tol = TolerancePolicy::default();
            let ivecs = ideal.to_rational()?;
            let sub = Subspace::span(d, &ivecs, &tol)?;
            let comp = sub.complement_indices(&tol);
            let mut full: Vec<Vec<Rational>> = sub.basis().to_vec();
            let k = full.len();
            full.extend(comp.iter().map(|&i| crate::numerics::unit_vector(d, i)));
            let solver = CoordinateSolver::new(d, full, &tol)?;
            let projected: Vec<Vec<Rational>> = gens
                .to_rational()?
                .iter()
                .map(|g| {
                    let c = solver.coordinates(g).expect("full basis");
                    c[k..].to_vec()
                })
                .collect();
            let complement = comp
                .iter()
                .map(|&i| crate::numerics::unit_vector::<f64>(d, i))
                .collect();
            Ok(QuotientDiscreteness {
                result: exact_discreteness(&projected),
                complement,
                projected: projected.iter().map(|v| crate::numerics::to_f64_vec(v)).collect(),
                lemma: None,
            })
        }
    }
}

/// Lemma pairs for a decreasing list of `epsilon` values; stops at the first
/// `epsilon` without a witness.
pub fn lemma_sequence(
    gens: &Generators,
    ideal: &Generators,
    epsilons: &[f64],
    coefficient_bound: u64,
) -> Result<Vec<LemmaPair>> {
    let mut out = Vec::new();
    for &epsilon in epsilons {
        let cfg = SubgroupSearchConfig::new(epsilon, coefficient_bound, ScalarMode::Float64)?;
        match quotient_projection_discreteness(gens, ideal, &cfg)?.lemma {
            Some(p) => out.push(p),
            None => break,
        }
    }
    Ok(out)
}
