//! `f64` kernels: one-sided Jacobi SVD, Gram–Schmidt, Gauss–Jordan,
//! exponential, square root and logarithm.

use alloc::vec;
use alloc::vec::Vec;

use super::Matrix;
use crate::{Error, Result};

/// Degree of the truncated Taylor series used after scaling to `‖X‖₁ ≤ 1/2`.
/// The truncation error is below `0.5^19 / 19! ≈ 2e-23` relative.
pub const EXP_TAYLOR_ORDER: usize = 18;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Singular values and right singular vectors of `a` (`m x n`): columns of
/// `a V` are mutually orthogonal with norms `σ_j`.
pub(crate) fn jacobi_svd(a: &Matrix<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let (m, n) = (a.rows(), a.cols());
    // columns of A and of V, stored column-wise
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&u[p], &u[p]);
                let beta = dot(&u[q], &u[q]);
                let gamma = dot(&u[p], &u[q]);
                if gamma == 0.0 || libm::fabs(gamma) <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (u[p][i], u[q][i]);
                    u[p][i] = c * x - s * y;
                    u[q][i] = s * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[p][i], v[q][i]);
                    v[p][i] = c * x - s * y;
                    v[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = u.iter().map(|c| norm(c)).collect();
    (sigma, v)
}

/// Kernel basis: right singular vectors with `σ ≤ rank_tol · σ_max`.
pub(super) fn nullspace(a: &Matrix<f64>, rank_tol: f64) -> Vec<Vec<f64>> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    if a.rows() == 0 {
        return (0..n).map(|j| super::unit_vector(n, j)).collect();
    }
    let (sigma, v) = jacobi_svd(a);
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let threshold = rank_tol * smax;
    sigma
        .iter()
        .zip(v)
        .filter(|(s, _)| **s <= threshold)
        .map(|(_, vec)| vec)
        .collect()
}

/// Greedy selection: keep a vector when its component orthogonal to the
/// kept ones exceeds `rank_tol · max_i ‖v_i‖`.
pub(super) fn independent_indices(vectors: &[Vec<f64>], rank_tol: f64) -> Vec<usize> {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let threshold = rank_tol.max(1e-13) * scale;
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        // two Gram–Schmidt passes for stability
        for _ in 0..2 {
            for q in &ortho {
                let d = dot(&w, q);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= d * y;
                }
            }
        }
        let wn = norm(&w);
        if wn > threshold {
            ortho.push(w.iter().map(|x| x / wn).collect());
            chosen.push(idx);
        }
    }
    chosen
}

/// `(BᵀB)⁻¹ Bᵀ`.
pub(super) fn left_inverse(basis: &[Vec<f64>]) -> Option<Matrix<f64>> {
    let k = basis.len();
    let n = basis.first()?.len();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = dot(&basis[i], &basis[j]);
        }
    }
    let ginv = inverse(&gram).ok()?;
    let mut bt = Matrix::zeros(k, n);
    for (i, b) in basis.iter().enumerate() {
        for (j, x) in b.iter().enumerate() {
            bt[(i, j)] = *x;
        }
    }
    ginv.mul(&bt).ok()
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn inverse(a: &Matrix<f64>) -> Result<Matrix<f64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let scale = a.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Singular);
    }
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| libm::fabs(m[i][c]).total_cmp(&libm::fabs(m[j][c])))
            .unwrap_or(c);
        if libm::fabs(m[p][c]) <= 1e-14 * scale {
            return Err(Error::Singular);
        }
        m.swap(c, p);
        let inv = 1.0 / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c] == 0.0 {
                continue;
            }
            let f = row[c];
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= f * p;
            }
        }
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[i][n + j];
        }
    }
    Ok(out)
}

fn one_norm(a: &Matrix<f64>) -> f64 {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| libm::fabs(a[(i, j)])).sum::<f64>())
        .fold(0.0, f64::max)
}

fn add_scaled_identity(a: &mut Matrix<f64>, alpha: f64) {
    for i in 0..a.rows() {
        a[(i, i)] += alpha;
    }
}

/// `e^X` for square `X`: scale by `2^-s` so that `‖X‖₁ ≤ 1/2`, sum the
/// Taylor series to degree [`EXP_TAYLOR_ORDER`] (Horner form), square `s` times.
pub fn matrix_exp_f64(x: &Matrix<f64>) -> Matrix<f64> {
    let n = x.rows();
    let norm1 = one_norm(x);
    let mut s = 0u32;
    if norm1 > 0.5 {
        s = libm::ceil(libm::log2(norm1 / 0.5)) as u32;
    }
    let scaled = x.scale(&libm::ldexp(1.0, -(s as i32)));
    // Horner: I + A/1 (I + A/2 (I + ... (I + A/N)))
    let mut acc = Matrix::identity(n);
    for k in (1..=EXP_TAYLOR_ORDER).rev() {
        let mut next = scaled.mul(&acc).expect("square").scale(&(1.0 / k as f64));
        add_scaled_identity(&mut next, 1.0);
        acc = next;
    }
    for _ in 0..s {
        acc = acc.mul(&acc).expect("square");
    }
    acc
}

/// Principal square root by the Denman–Beavers iteration. Fails when the
/// iteration does not converge (e.g. eigenvalues on the closed negative axis).
pub fn matrix_sqrt(a: &Matrix<f64>) -> Result<Matrix<f64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut y = a.clone();
    let mut z = Matrix::identity(n);
    for _ in 0..100 {
        let yi = inverse(&y)?;
        let zi = inverse(&z)?;
        let y_next = y.add(&zi)?.scale(&0.5);
        let z_next = z.add(&yi)?.scale(&0.5);
        let delta = y_next.max_abs_diff(&y);
        y = y_next;
        z = z_next;
        if !y.max_abs().is_finite() {
            return Err(Error::Singular);
        }
        if delta <= 1e-15 * y.max_abs().max(1.0) {
            let check = y.mul(&y)?.max_abs_diff(a);
            if check <= 1e-10 * a.max_abs().max(1.0) {
                return Ok(y);
            }
            return Err(Error::Singular);
        }
    }
    Err(Error::Singular)
}

/// Principal logarithm by inverse scaling and squaring: repeated square
/// roots until `‖A - I‖₁ < 1/4`, then the series of `log(I + E)`.
pub fn matrix_log(a: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = a.rows();
    let mut m = a.clone();
    let mut k = 0u32;
    loop {
        let mut e = m.clone();
        add_scaled_identity(&mut e, -1.0);
        if one_norm(&e) < 0.25 {
            // log(I+E) = Σ (-1)^{j+1} E^j / j
            let mut term = e.clone();
            let mut acc = e.clone();
            for j in 2..=60 {
                term = term.mul(&e)?;
                let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
                acc = acc.add(&term.scale(&(sign / j as f64)))?;
            }
            return Ok(acc.scale(&libm::ldexp(1.0, k as i32)));
        }
        if k > 40 {
            return Err(Error::Singular);
        }
        m = matrix_sqrt(&m)?;
        k += 1;
        debug_assert!(m.rows() == n);
    }
}
