//! gnuplot scripts for sweep CSV files.

use std::fmt::Write as _;
use std::path::{Component, Path, PathBuf};
use std::str::FromStr;

use super::output::RESULT_COLUMNS;
use super::CliError;
use crate::sweep::SweepParameter;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Heatmap,
    Curve,
}

impl FromStr for PlotKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "heatmap" => Ok(PlotKind::Heatmap),
            "curve" => Ok(PlotKind::Curve),
            other => Err(CliError::Config(format!("unknown plot kind `{other}`"))),
        }
    }
}

fn axis_label(p: SweepParameter) -> &'static str {
    match p {
        SweepParameter::DeltaC => "Δ_c / ω_b",
        SweepParameter::Delta1 => "Δ_1 / ω_b",
        SweepParameter::Delta2 => "Δ_2 / ω_b",
        SweepParameter::Theta => "θ (rad)",
        SweepParameter::GainPa => "G / 2π (Hz)",
        SweepParameter::KerrShift => "k / ω_b",
        SweepParameter::Temperature => "T (K)",
    }
}

/// Checks a sweep header and returns its coordinate parameters.
pub fn parse_sweep_header(header: &str) -> Result<Vec<SweepParameter>, CliError> {
    let cols: Vec<&str> = header.trim_end_matches('\r').split(',').collect();
    let n = cols.len();
    if !(4..=5).contains(&n) || cols[n - 3..] != RESULT_COLUMNS {
        return Err(CliError::Config(format!("unrecognized sweep CSV header `{header}`")));
    }
    cols[..n - 3]
        .iter()
        .map(|c| {
            SweepParameter::from_column(c)
                .ok_or_else(|| CliError::Config(format!("unknown coordinate column `{c}` in CSV header")))
        })
        .collect()
}

/// Path of `target` relative to directory `base`. Both must be absolute.
fn relative_to(target: &Path, base: &Path) -> PathBuf {
    let t: Vec<Component> = target.components().collect();
    let b: Vec<Component> = base.components().collect();
    let common = t.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let mut out = PathBuf::new();
    for _ in common..b.len() {
        out.push("..");
    }
    for c in &t[common..] {
        out.push(c.as_os_str());
    }
    out
}

/// Builds the script text. `csv_rel` is the CSV path relative to the
/// script, `png_name` the image file written next to it. A CSV without data
/// rows gets fixed unit ranges so the script still renders empty axes.
pub fn plot_script(
    header: &str,
    kind: PlotKind,
    csv_rel: &str,
    png_name: &str,
    empty: bool,
) -> Result<String, CliError> {
    let params = parse_sweep_header(header)?;
    let need = match kind {
        PlotKind::Heatmap => 2,
        PlotKind::Curve => 1,
    };
    if params.len() != need {
        return Err(CliError::Config(format!(
            "{:?} plot needs {need} coordinate column(s), CSV has {}",
            kind,
            params.len()
        )));
    }
    let value_col = need + 3;
    let mut s = String::new();
    s.push_str("# gnuplot script generated by magnomech\n");
    s.push_str("set encoding utf8\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile missing 'nan'\n");
    let _ = writeln!(s, "set terminal pngcairo size 800,640");
    let _ = writeln!(s, "set output '{png_name}'");
    let _ = writeln!(s, "set xlabel '{}'", axis_label(params[0]));
    s.push_str("set key off\n");
    if empty {
        s.push_str("set xrange [0:1]\nset yrange [0:1]\n");
    }
    match kind {
        PlotKind::Heatmap => {
            let _ = writeln!(s, "set ylabel '{}'", axis_label(params[1]));
            s.push_str("set cblabel 'E_N'\n");
            s.push_str("set view map\n");
            if !empty {
                s.push_str("set autoscale xfix\nset autoscale yfix\n");
            }
            s.push_str("set palette rgbformulae 33,13,10\n");
            let _ = writeln!(s, "splot '{csv_rel}' every ::1 using 1:2:{value_col} with image");
        }
        PlotKind::Curve => {
            s.push_str("set ylabel 'E_N'\n");
            s.push_str("set grid\n");
            let _ = writeln!(s, "plot '{csv_rel}' every ::1 using 1:{value_col} with lines lw 2");
        }
    }
    Ok(s)
}

/// Writes a gnuplot script for `csv` to `script`; the image lands next to
/// the script with the same stem.
pub fn emit_plot_script(csv: &Path, kind: PlotKind, script: &Path) -> Result<(), CliError> {
    let text =
        std::fs::read_to_string(csv).map_err(|e| CliError::Config(format!("cannot read {}: {e}", csv.display())))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let empty = lines.all(|l| l.trim().is_empty());

    let csv_abs = std::path::absolute(csv).map_err(|e| CliError::Internal(e.to_string()))?;
    let script_abs = std::path::absolute(script).map_err(|e| CliError::Internal(e.to_string()))?;
    let dir = script_abs.parent().unwrap_or(Path::new("/"));
    let rel = relative_to(&csv_abs, dir);
    let png = script_abs
        .file_stem()
        .map(|s| format!("{}.png", s.to_string_lossy()))
        .unwrap_or_else(|| "plot.png".into());

    let body = plot_script(header, kind, &rel.to_string_lossy(), &png, empty)?;
    std::fs::write(script, body).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", script.display())))
}
