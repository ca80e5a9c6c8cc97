use alloc::vec;
use alloc::vec::Vec;

use super::kernel_lattice_1d;
use crate::numerics::TolerancePolicy;
use crate::sympair::PointedSymmetricSpace;
use crate::{Error, Result};

/// Node values are sampled at this many points per period.
const NODES_PER_PERIOD: i32 = 4;

/// Evaluation of one grid loop `t_0 = 0, t_1, ..., t_{T-1} = 0` along `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopEvaluation {
    /// Every node satisfies `Exp(t_i·z) = b`.
    pub pointwise_return: bool,
    pub max_step: f64,
    /// All increments are below half the period.
    pub step_bounded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridLoopReport {
    pub grid_size: usize,
    pub period: f64,
    /// Scanned node values with `Exp(t·z) = b`.
    pub returning_values: Vec<f64>,
    /// Number of scanned loops whose nodes all return to the base point.
    pub pointwise_loops: usize,
    /// Those loops whose increments are also below `period / 2`.
    pub step_bounded_loops: Vec<Vec<f64>>,
    pub only_zero_loop: bool,
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < 3 {
        return Err(Error::GridTooSmall {
            grid: grid_size,
            constraint: "loop",
        });
    }
    if grid_size > 5 {
        return Err(Error::Invalid("grid loop check supports T ≤ 5".into()));
    }
    Ok(())
}

pub fn evaluate_grid_loop<P: PointedSymmetricSpace>(
    space: &P,
    z: &[f64],
    nodes: &[f64],
    period: f64,
) -> Result<LoopEvaluation> {
    if nodes.len() < 3 || nodes[0] != 0.0 || nodes[nodes.len() - 1] != 0.0 {
        return Err(Error::Invalid("a grid loop has at least 3 nodes and ends at 0".into()));
    }
    let base = space.base_point();
    let mut pointwise_return = true;
    for &t in nodes {
        pointwise_return &= space.same_point(&space.exp_point(z, t)?, &base)?;
    }
    let max_step = nodes.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
    Ok(LoopEvaluation {
        pointwise_return,
        max_step,
        step_bounded: max_step < period / 2.0,
    })
}

/// Scans grid loops along a central direction `z` whose nodes are multiples of
/// `period / 4` in `[-2·period, 2·period]`, where `period` is the generator
/// found by [`kernel_lattice_1d`] within `t_max`.
pub fn grid_loop_period_check<P: PointedSymmetricSpace>(
    space: &P,
    z: &[f64],
    grid_size: usize,
    t_max: f64,
    tol: &TolerancePolicy,
) -> Result<GridLoopReport> {
    check_grid(grid_size)?;
    let lattice = kernel_lattice_1d(space, z, t_max, tol)?;
    let Some(period) = lattice.generators.first().map(|g| g[0]) else {
        return Err(Error::Invalid("no period found along the direction".into()));
    };
    let base = space.base_point();
    let values: Vec<f64> = (-2 * NODES_PER_PERIOD..=2 * NODES_PER_PERIOD)
        .map(|j| j as f64 * period / NODES_PER_PERIOD as f64)
        .collect();
    let mut returning_values = Vec::new();
    for &v in &values {
        if space.same_point(&space.exp_point(z, v)?, &base)? {
            returning_values.push(v);
        }
    }
    let zero = values.iter().position(|&v| v == 0.0).expect("0 is a node value");
    let returns: Vec<bool> = values.iter().map(|v| returning_values.contains(v)).collect();

    let interior = grid_size - 2;
    let mut idx = vec![0usize; interior];
    let mut pointwise_loops = 0;
    let mut step_bounded_loops = Vec::new();
    loop {
        let mut nodes = vec![values[zero]];
        nodes.extend(idx.iter().map(|&i| values[i]));
        nodes.push(values[zero]);
        if idx.iter().all(|&i| returns[i]) {
            pointwise_loops += 1;
            let max_step = nodes.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
            if max_step < period / 2.0 {
                step_bounded_loops.push(nodes);
            }
        }
        // odometer over interior node indices
        let mut k = 0;
        while k < interior {
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == interior {
            break;
        }
    }
    let only_zero_loop =
        step_bounded_loops.len() == 1 && step_bounded_loops[0].iter().all(|&t| t == 0.0);
    Ok(GridLoopReport {
        grid_size,
        period,
        returning_values,
        pointwise_loops,
        step_bounded_loops,
        only_zero_loop,
    })
}
