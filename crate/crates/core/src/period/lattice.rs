//! Integer lattice kernels: LLL reduction, Fincke–Pohst enumeration and
//! Hermite normal form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Coefficient vectors `a ∈ ℤ^k` viewed as `(a, weight·Σ a_i g_i)`.
pub(crate) struct Embedding<'a> {
    pub gens: &'a [Vec<f64>],
    pub weight: f64,
}

impl Embedding<'_> {
    pub fn image(&self, a: &[i128]) -> Vec<f64> {
        let d = self.gens.first().map_or(0, Vec::len);
        let mut w = vec![0.0; d];
        for (ai, g) in a.iter().zip(self.gens) {
            if *ai != 0 {
                let c = *ai as f64;
                for (o, x) in w.iter_mut().zip(g) {
                    *o += c * x;
                }
            }
        }
        w
    }

    fn vector(&self, a: &[i128]) -> Vec<f64> {
        let mut v: Vec<f64> = a.iter().map(|&x| x as f64).collect();
        v.extend(self.image(a).into_iter().map(|x| x * self.weight));
        v
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram–Schmidt coefficients `μ[i][j]` and squared norms `|b*_i|²`.
fn gso(vecs: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = vecs.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    let mut bsq = vec![0.0; n];
    for i in 0..n {
        let mut v = vecs[i].clone();
        for j in 0..i {
            mu[i][j] = if bsq[j] > 0.0 { dot(&vecs[i], &star[j]) / bsq[j] } else { 0.0 };
            for (o, s) in v.iter_mut().zip(&star[j]) {
                *o -= mu[i][j] * s;
            }
        }
        bsq[i] = dot(&v, &v);
        star.push(v);
    }
    (mu, bsq)
}

fn sub_multiple(target: &mut [i128], q: i128, src: &[i128]) -> Option<()> {
    for (t, s) in target.iter_mut().zip(src) {
        *t = t.checked_sub(q.checked_mul(*s)?)?;
    }
    Some(())
}

/// LLL-reduces `basis` in place (`δ = 0.99`). `None` on coefficient overflow.
pub(crate) fn lll(basis: &mut [Vec<i128>], emb: &Embedding) -> Option<()> {
    const DELTA: f64 = 0.99;
    let n = basis.len();
    let mut vecs: Vec<Vec<f64>> = basis.iter().map(|b| emb.vector(b)).collect();
    let mut k = 1;
    let mut steps = 0usize;
    while k < n {
        steps += 1;
        if steps > 200_000 {
            return None;
        }
        for j in (0..k).rev() {
            let (mu, _) = gso(&vecs[..=k]);
            let q = libm::round(mu[k][j]);
            if q != 0.0 {
                if q.abs() > 1e30 {
                    return None;
                }
                let src = basis[j].clone();
                sub_multiple(&mut basis[k], q as i128, &src)?;
                vecs[k] = emb.vector(&basis[k]);
            }
        }
        let (mu, bsq) = gso(&vecs[..=k]);
        if bsq[k] >= (DELTA - mu[k][k - 1] * mu[k][k - 1]) * bsq[k - 1] {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            vecs.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    Some(())
}

/// All nonzero `Σ x_i b_i` with embedded squared norm `≤ radius_sq`, as
/// coefficient vectors. `None` once more than `node_cap` nodes are visited.
pub(crate) fn enumerate(
    basis: &[Vec<i128>],
    emb: &Embedding,
    radius_sq: f64,
    node_cap: usize,
) -> Option<Vec<Vec<i128>>> {
    let n = basis.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let vecs: Vec<Vec<f64>> = basis.iter().map(|b| emb.vector(b)).collect();
    let (mu, bsq) = gso(&vecs);
    let mut x = vec![0i128; n];
    let mut out = Vec::new();
    let mut nodes = 0usize;

    struct Ctx<'a> {
        mu: &'a [Vec<f64>],
        bsq: &'a [f64],
        radius_sq: f64,
        node_cap: usize,
    }

    fn walk(
        ctx: &Ctx,
        level: usize,
        partial: f64,
        x: &mut Vec<i128>,
        nodes: &mut usize,
        out: &mut Vec<Vec<i128>>,
    ) -> Option<()> {
        let n = x.len();
        let center: f64 = -(level + 1..n).map(|j| x[j] as f64 * ctx.mu[j][level]).sum::<f64>();
        let room = (ctx.radius_sq - partial) / ctx.bsq[level];
        if room < 0.0 {
            return Some(());
        }
        let half = libm::sqrt(room);
        let lo = libm::ceil(center - half) as i128;
        let hi = libm::floor(center + half) as i128;
        for v in lo..=hi {
            *nodes += 1;
            if *nodes > ctx.node_cap {
                return None;
            }
            x[level] = v;
            let d = v as f64 - center;
            let p = partial + d * d * ctx.bsq[level];
            if p > ctx.radius_sq {
                continue;
            }
            if level == 0 {
                if x.iter().any(|&c| c != 0) {
                    out.push(x.clone());
                }
            } else {
                walk(ctx, level - 1, p, x, nodes, out)?;
            }
        }
        x[level] = 0;
        Some(())
    }

    let ctx = Ctx {
        mu: &mu,
        bsq: &bsq,
        radius_sq,
        node_cap,
    };
    walk(&ctx, n - 1, 0.0, &mut x, &mut nodes, &mut out)?;
    let k = basis[0].len();
    Some(
        out.into_iter()
            .map(|x| {
                let mut a = vec![0i128; k];
                for (xi, b) in x.iter().zip(basis) {
                    for (o, bj) in a.iter_mut().zip(b) {
                        *o += xi * bj;
                    }
                }
                a
            })
            .collect(),
    )
}

/// Row-style Hermite normal form; returns the nonzero rows.
pub(crate) fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let src = rows[r].clone();
                for (t, s) in rows[i].iter_mut().zip(&src) {
                    *t -= &q * s;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                rows[r].iter_mut().for_each(|x| *x = -x.clone());
            }
            let src = rows[r].clone();
            for i in 0..r {
                let q = rows[i][c].div_floor(&src[c]);
                for (t, s) in rows[i].iter_mut().zip(&src) {
                    *t -= &q * s;
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_of_dependent_rows() {
        let h = hermite_rows(big(&[&[4, 6], &[6, 9], &[2, 3]]));
        assert_eq!(h, big(&[&[2, 3]]));
        let h = hermite_rows(big(&[&[2, 0], &[1, 3], &[0, 0]]));
        assert_eq!(h, big(&[&[1, 3], &[0, 6]]));
        assert_eq!(hermite_rows(big(&[&[0, 0]])), Vec::<Vec<BigInt>>::new());
    }

    #[test]
    fn lll_finds_short_relation() {
        // 3·(1/3) - 1 = 0 makes (-1, 3) a very short vector
        let gens = vec![vec![1.0], vec![1.0 / 3.0]];
        let emb = Embedding { gens: &gens, weight: 1e6 };
        let mut b = vec![vec![1, 0], vec![0, 1]];
        lll(&mut b, &emb).unwrap();
        let w = emb.image(&b[0]);
        assert!(w[0].abs() < 1e-12, "{b:?}");
        assert_eq!(b[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn enumeration_counts_standard_lattice_points() {
        let gens = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let emb = Embedding { gens: &gens, weight: 0.0 };
        let b = vec![vec![1, 0], vec![0, 1]];
        // nonzero points of ℤ² with |a|² ≤ 2
        let pts = enumerate(&b, &emb, 2.0 + 1e-9, 1000).unwrap();
        assert_eq!(pts.len(), 8);
        assert!(enumerate(&b, &emb, 1e6, 10).is_none());
    }
}
