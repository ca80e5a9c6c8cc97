//! Rational row reduction.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Matrix, Rational};

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(super) fn nullspace(a: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let cols = a.cols();
    let mut rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| a.row(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let pivots = rref(&mut rows, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub(super) fn independent_indices(vectors: &[Vec<Rational>]) -> Vec<usize> {
    // echelon rows kept fully reduced against each other: (pivot column, row)
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (pc, row) in &echelon {
            if w[*pc].is_zero() {
                continue;
            }
            let f = w[*pc].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        if let Some(pc) = w.iter().position(|x| !x.is_zero()) {
            let inv = w[pc].recip();
            for x in w.iter_mut() {
                *x *= &inv;
            }
            for (_, row) in echelon.iter_mut() {
                if row[pc].is_zero() {
                    continue;
                }
                let f = row[pc].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
            echelon.push((pc, w));
            chosen.push(idx);
        }
    }
    chosen
}

/// Row-selection left inverse: picks `k` independent coordinates of the
/// columns and inverts that square block.
pub(super) fn left_inverse(basis: &[Vec<Rational>]) -> Option<Matrix<Rational>> {
    let k = basis.len();
    let n = basis.first()?.len();
    // rows of B^T; pivots of its echelon form give independent coordinates.
    let mut rows: Vec<Vec<Rational>> = basis.to_vec();
    let pivots = rref(&mut rows, n);
    if pivots.len() != k {
        return None;
    }
    // square block B_sel (k x k) with B_sel[r][j] = basis[j][pivots[r]]
    let mut aug: Vec<Vec<Rational>> = (0..k)
        .map(|r| {
            let mut row: Vec<Rational> = (0..k).map(|j| basis[j][pivots[r]].clone()).collect();
            row.extend((0..k).map(|j| if j == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut aug, k);
    if piv.len() != k || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    let mut out = Matrix::zeros(k, n);
    for i in 0..k {
        for r in 0..k {
            out[(i, pivots[r])] = aug[i][k + r].clone();
        }
    }
    Some(out)
}
