use rayon::prelude::*;

use super::{validate_axes, AxisSpec, Result};
use crate::model::{compute_entanglement, drift_stability, PhysicalParams};

/// Values on a 1D or 2D grid, stored row-major with the first axis outer.
///
/// Unstable points carry `E_N = 0` and no `nu_minus`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<AxisSpec>,
    pub values: Vec<f64>,
    pub nu_minus: Vec<Option<f64>>,
    pub stability: Vec<bool>,
    /// Maximum of `values` over stable points (0 when none is stable).
    pub max_value: f64,
    /// Axis coordinates of `max_value`, if any point is stable.
    pub argmax: Option<Vec<f64>>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.points).collect()
    }

    /// Axis coordinates of the flat index `idx`.
    pub fn coordinates(&self, idx: usize) -> Vec<f64> {
        grid_point(&self.axes, idx)
    }

    /// Number of stable points with `E_N > threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.values
            .iter()
            .zip(&self.stability)
            .filter(|(v, s)| **s && **v > threshold)
            .count()
    }
}

fn grid_len(axes: &[AxisSpec]) -> usize {
    axes.iter().map(|a| a.points).product()
}

fn grid_point(axes: &[AxisSpec], idx: usize) -> Vec<f64> {
    match axes {
        [a] => vec![a.value(idx)],
        [a, b] => vec![a.value(idx / b.points), b.value(idx % b.points)],
        _ => unreachable!("axes validated to 1 or 2 entries"),
    }
}

fn params_at(base: &PhysicalParams, axes: &[AxisSpec], coords: &[f64]) -> PhysicalParams {
    let mut p = *base;
    for (a, &x) in axes.iter().zip(coords) {
        a.parameter.apply(&mut p, x);
    }
    p
}

fn find_max(values: &[f64], stability: &[bool], axes: &[AxisSpec]) -> (f64, Option<Vec<f64>>) {
    let mut best: Option<(usize, f64)> = None;
    for (i, (&v, &s)) in values.iter().zip(stability).enumerate() {
        if s && best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    match best {
        Some((i, v)) => (v, Some(grid_point(axes, i))),
        None => (0.0, None),
    }
}

/// Evaluates the magnon-magnon entanglement at every grid point.
///
/// Each cell is computed independently and written by index, so the result
/// does not depend on the thread count of the ambient rayon pool.
pub fn sweep(base: &PhysicalParams, axes: &[AxisSpec]) -> Result<SweepResult> {
    validate_axes(axes)?;
    let cells: Vec<(bool, Option<f64>, f64)> = (0..grid_len(axes))
        .into_par_iter()
        .map(|idx| {
            let p = params_at(base, axes, &grid_point(axes, idx));
            let r = compute_entanglement(&p)?;
            Ok((r.stable, r.nu_minus, r.score()))
        })
        .collect::<Result<_>>()?;

    let stability: Vec<bool> = cells.iter().map(|c| c.0).collect();
    let nu_minus = cells.iter().map(|c| c.1).collect();
    let values: Vec<f64> = cells.iter().map(|c| c.2).collect();
    let (max_value, argmax) = find_max(&values, &stability, axes);
    Ok(SweepResult {
        axes: axes.to_vec(),
        values,
        nu_minus,
        stability,
        max_value,
        argmax,
    })
}

/// Hurwitz test only, on the same grid as [`sweep`]. `values` are all zero.
pub fn stability_region(base: &PhysicalParams, axes: &[AxisSpec]) -> Result<SweepResult> {
    validate_axes(axes)?;
    let stability: Vec<bool> = (0..grid_len(axes))
        .into_par_iter()
        .map(|idx| {
            let p = params_at(base, axes, &grid_point(axes, idx));
            Ok(drift_stability(&p)?.is_hurwitz)
        })
        .collect::<Result<_>>()?;
    let n = stability.len();
    Ok(SweepResult {
        axes: axes.to_vec(),
        values: vec![0.0; n],
        nu_minus: vec![None; n],
        stability,
        max_value: 0.0,
        argmax: None,
    })
}
