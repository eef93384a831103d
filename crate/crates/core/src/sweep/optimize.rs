//! Coarse grid scan followed by bounded Nelder-Mead refinement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Result, SweepError, SweepParameter};
use crate::model::{compute_entanglement, PhysicalParams};

/// A free parameter and its closed search interval, in axis units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeParameter {
    pub parameter: SweepParameter,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    /// Grid points per free axis in the initial scan (at least 17).
    pub grid_points: usize,
    /// Evaluation budget for the simplex stage.
    pub max_simplex_evaluations: usize,
    /// Stop when every simplex edge is shorter than this fraction of its
    /// axis range.
    pub x_tolerance: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            grid_points: 17,
            max_simplex_evaluations: 600,
            x_tolerance: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub best_params: PhysicalParams,
    pub best_value: f64,
    /// Free-parameter coordinates of `best_params`, in axis units.
    pub best_coordinates: Vec<f64>,
    /// Best value seen during the grid stage alone.
    pub grid_best_value: f64,
    pub evaluations: usize,
    /// Every evaluated point with its score, grid stage first.
    pub trace: Vec<(PhysicalParams, f64)>,
}

struct Objective<'a> {
    base: &'a PhysicalParams,
    free: &'a [FreeParameter],
    trace: Vec<(PhysicalParams, f64)>,
}

impl Objective<'_> {
    fn params(&self, x: &[f64]) -> PhysicalParams {
        point_params(self.base, self.free, x)
    }

    fn eval(&mut self, x: &[f64]) -> Result<f64> {
        let p = self.params(x);
        let v = compute_entanglement(&p)?.score();
        self.trace.push((p, v));
        Ok(v)
    }
}

fn point_params(base: &PhysicalParams, free: &[FreeParameter], x: &[f64]) -> PhysicalParams {
    let mut p = *base;
    for (f, &v) in free.iter().zip(x) {
        f.parameter.apply(&mut p, v);
    }
    p
}

fn clamp(free: &[FreeParameter], x: &mut [f64]) {
    for (f, v) in free.iter().zip(x.iter_mut()) {
        *v = v.clamp(f.lower, f.upper);
    }
}

fn validate(free: &[FreeParameter], opts: &OptimizeOptions) -> Result<()> {
    if free.is_empty() || free.len() > 3 {
        return Err(SweepError::Config(format!(
            "expected 1 to 3 free parameters, got {}",
            free.len()
        )));
    }
    for (i, f) in free.iter().enumerate() {
        if !f.lower.is_finite() || !f.upper.is_finite() || f.lower >= f.upper {
            return Err(SweepError::Config(format!(
                "free parameter `{}` needs finite bounds with lower < upper",
                f.parameter
            )));
        }
        if free[..i].iter().any(|g| g.parameter == f.parameter) {
            return Err(SweepError::Config(format!(
                "free parameter `{}` given twice",
                f.parameter
            )));
        }
    }
    if opts.grid_points < 17 {
        return Err(SweepError::Config("grid_points must be at least 17".into()));
    }
    Ok(())
}

/// Maximizes the magnon-magnon entanglement over 1-3 free parameters.
///
/// Unstable points score zero. The simplex starts at the best grid node
/// with edges one grid cell long, so the whole procedure is deterministic.
pub fn optimize(base: &PhysicalParams, free: &[FreeParameter], opts: &OptimizeOptions) -> Result<OptimizeResult> {
    validate(free, opts)?;
    let dim = free.len();
    let n = opts.grid_points;
    let cell: Vec<f64> = free.iter().map(|f| (f.upper - f.lower) / (n - 1) as f64).collect();
    let node = |idx: usize| -> Vec<f64> {
        let mut rem = idx;
        let mut x = vec![0.0; dim];
        for k in (0..dim).rev() {
            let i = rem % n;
            rem /= n;
            x[k] = if i + 1 == n {
                free[k].upper
            } else {
                free[k].lower + cell[k] * i as f64
            };
        }
        x
    };

    let total = n.pow(dim as u32);
    let grid: Vec<(PhysicalParams, f64)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let p = point_params(base, free, &node(idx));
            Ok((p, compute_entanglement(&p)?.score()))
        })
        .collect::<Result<_>>()?;

    let (grid_best_idx, grid_best_value) =
        grid.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, (_, v))| if *v > acc.1 { (i, *v) } else { acc },
        );

    let mut obj = Objective {
        base,
        free,
        trace: grid,
    };

    if grid_best_value > 0.0 {
        let start = node(grid_best_idx);
        nelder_mead(&mut obj, start, grid_best_value, &cell, opts)?;
    }

    let (best_idx, best_value) =
        obj.trace.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, (_, v))| if *v > acc.1 { (i, *v) } else { acc },
        );
    let best_params = obj.trace[best_idx].0;
    Ok(OptimizeResult {
        best_params,
        best_value,
        best_coordinates: free.iter().map(|f| f.parameter.value(&best_params)).collect(),
        grid_best_value,
        evaluations: obj.trace.len(),
        trace: obj.trace,
    })
}

/// Minimizes `-E_N` with the standard reflection/expansion/contraction/
/// shrink coefficients (1, 2, 1/2, 1/2). Trial points are clamped into the
/// box.
fn nelder_mead(
    obj: &mut Objective<'_>,
    start: Vec<f64>,
    start_value: f64,
    cell: &[f64],
    opts: &OptimizeOptions,
) -> Result<()> {
    let dim = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(start.clone(), -start_value)];
    for k in 0..dim {
        let mut x = start.clone();
        x[k] += cell[k];
        if x[k] > obj.free[k].upper {
            x[k] = start[k] - cell[k];
        }
        clamp(obj.free, &mut x);
        let f = -obj.eval(&x)?;
        simplex.push((x, f));
    }
    let budget_end = obj.trace.len() + opts.max_simplex_evaluations;
    let ranges: Vec<f64> = obj.free.iter().map(|f| f.upper - f.lower).collect();

    while obj.trace.len() < budget_end {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let small = simplex[1..].iter().all(|(x, _)| {
            x.iter()
                .zip(&simplex[0].0)
                .zip(&ranges)
                .all(|((a, b), r)| (a - b).abs() <= opts.x_tolerance * r)
        });
        if small {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            let worst = &simplex[dim].0;
            let mut x: Vec<f64> = centroid.iter().zip(worst).map(|(c, w)| c + t * (c - w)).collect();
            clamp(obj.free, &mut x);
            x
        };

        let xr = along(1.0);
        let fr = -obj.eval(&xr)?;
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = -obj.eval(&xe)?;
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[dim].1 {
            let x = along(0.5);
            let f = -obj.eval(&x)?;
            (x, f)
        } else {
            let x = along(-0.5);
            let f = -obj.eval(&x)?;
            (x, f)
        };
        if fc < simplex[dim].1.min(fr) {
            simplex[dim] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let mut x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
            clamp(obj.free, &mut x);
            let f = -obj.eval(&x)?;
            *vertex = (x, f);
        }
    }
    Ok(())
}
