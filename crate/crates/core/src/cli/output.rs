//! CSV result files. Floats use 9 significant digits in scientific notation
//! and lines end with `\n`, so identical runs give identical bytes.

use std::fmt::Write as _;

use crate::model::EntanglementResult;
use crate::sweep::{FreeParameter, OptimizeResult, SweepResult};

pub const RESULT_COLUMNS: [&str; 3] = ["stable", "nu_minus", "E_N"];

/// `1.23456789e-1` style, `nan` for missing values.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.8e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), fmt_float)
}

pub fn point_line(r: &EntanglementResult) -> String {
    format!(
        "stable={} nu_minus={} E_N={}",
        u8::from(r.stable),
        fmt_opt(r.nu_minus),
        fmt_float(r.score())
    )
}

pub fn point_csv(r: &EntanglementResult) -> String {
    format!(
        "{}\n{},{},{}\n",
        RESULT_COLUMNS.join(","),
        u8::from(r.stable),
        fmt_opt(r.nu_minus),
        fmt_float(r.score())
    )
}

pub fn sweep_header(result: &SweepResult) -> String {
    let mut cols: Vec<&str> = result.axes.iter().map(|a| a.parameter.column()).collect();
    cols.extend(RESULT_COLUMNS);
    cols.join(",")
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = sweep_header(result);
    out.push('\n');
    for idx in 0..result.len() {
        for x in result.coordinates(idx) {
            out.push_str(&fmt_float(x));
            out.push(',');
        }
        let stable = result.stability[idx];
        let _ = writeln!(
            out,
            "{},{},{}",
            u8::from(stable),
            fmt_opt(result.nu_minus[idx]),
            fmt_float(if stable { result.values[idx] } else { 0.0 })
        );
    }
    out
}

pub fn stability_csv(result: &SweepResult) -> String {
    let mut cols: Vec<&str> = result.axes.iter().map(|a| a.parameter.column()).collect();
    cols.push("stable");
    let mut out = cols.join(",");
    out.push('\n');
    for idx in 0..result.len() {
        for x in result.coordinates(idx) {
            out.push_str(&fmt_float(x));
            out.push(',');
        }
        let _ = writeln!(out, "{}", u8::from(result.stability[idx]));
    }
    out
}

/// Optimizer trace: one row per evaluation, grid stage first.
pub fn optimize_csv(free: &[FreeParameter], result: &OptimizeResult) -> String {
    let mut cols = vec!["evaluation"];
    cols.extend(free.iter().map(|f| f.parameter.column()));
    cols.push("E_N");
    let mut out = cols.join(",");
    out.push('\n');
    for (i, (p, v)) in result.trace.iter().enumerate() {
        out.push_str(&i.to_string());
        for f in free {
            out.push(',');
            out.push_str(&fmt_float(f.parameter.value(p)));
        }
        let _ = writeln!(out, ",{}", fmt_float(*v));
    }
    out
}

pub fn optimize_summary(free: &[FreeParameter], result: &OptimizeResult) -> String {
    let mut s = format!("best E_N={}", fmt_float(result.best_value));
    for (f, x) in free.iter().zip(&result.best_coordinates) {
        let _ = write!(s, " {}={}", f.parameter.column(), fmt_float(*x));
    }
    let _ = write!(s, " evaluations={}", result.evaluations);
    s
}
