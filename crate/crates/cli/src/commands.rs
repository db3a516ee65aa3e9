//! One function per subcommand, each producing a [`Table`].

use crate::config::{OutputFormat, RunConfig};
use crate::table::Table;
use crate::CliError;
use rayon::prelude::*;
use spinon_dcf::dcf::{intensity_sumrule, s2_pm};
use spinon_dcf::ed::{compare, spectral_lines, ChainSpec};
use spinon_dcf::formfactor::constants;
use std::f64::consts::TAU;

pub fn cmd_constants(cfg: &RunConfig) -> Result<Table, CliError> {
    let c = constants(&cfg.quadrature)?;
    let mut t = Table::new(&["name", "value", "rel_err"]);
    t.push(vec!["gamma_ratio".into(), c.gamma_ratio.into(), 0.0.into()]);
    t.push(vec![
        "a_plus_sq_half".into(),
        c.a_plus_sq_half.into(),
        c.a_plus_rel_err.into(),
    ]);
    t.push(vec![
        "a_minus_sq_half".into(),
        c.a_minus_sq_half.into(),
        c.a_minus_rel_err.into(),
    ]);
    t.push(vec![
        "prefactor".into(),
        c.prefactor.into(),
        c.prefactor_rel_err().into(),
    ]);
    Ok(t)
}

pub fn cmd_eval(k: f64, omega: f64, cfg: &RunConfig) -> Result<Table, CliError> {
    if !(omega >= 0.0) || !omega.is_finite() || !k.is_finite() {
        return Err(CliError::Usage(format!(
            "need finite k and omega >= 0, got k = {k}, omega = {omega}"
        )));
    }
    let v = s2_pm(k, omega, &cfg.quadrature)?;
    let mut t = Table::new(&["k", "omega", "region", "s_pm", "s_zz", "gamma_arg", "edge_flag"]);
    t.push(vec![
        v.k.into(),
        v.omega.into(),
        v.region.as_str().into(),
        v.s_pm.into(),
        v.s_zz.into(),
        v.gamma_arg.into(),
        v.edge_flag.as_str().into(),
    ]);
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub k_points: usize,
    pub omega_points: usize,
    pub k_max: f64,
    pub omega_max: f64,
}

impl ScanGrid {
    /// Endpoint-inclusive grids `k ∈ [0, k_max]`, `ω ∈ [0, ω_max]`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let axis = |n: usize, top: f64| (0..n).map(move |i| top * i as f64 / (n - 1) as f64);
        axis(self.k_points, self.k_max)
            .flat_map(|k| axis(self.omega_points, self.omega_max).map(move |w| (k, w)))
            .collect()
    }
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            k_points: 64,
            omega_points: 64,
            k_max: TAU,
            omega_max: TAU,
        }
    }
}

/// Sᶻᶻ on a rectangular grid, k-major. Points are farmed out to the pool and
/// collected back in index order.
pub fn cmd_scan(grid: &ScanGrid, cfg: &RunConfig) -> Result<Table, CliError> {
    if grid.k_points < 2 || grid.omega_points < 2 {
        return Err(CliError::Usage("scan resolutions must be at least 2".into()));
    }
    if !(grid.k_max > 0.0 && grid.omega_max > 0.0) {
        return Err(CliError::Usage("scan ranges must be positive".into()));
    }
    let values = grid
        .points()
        .into_par_iter()
        .map(|(k, w)| s2_pm(k, w, &cfg.quadrature).map(|v| (k, w, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["k", "omega", "s_zz", "region", "edge_flag"]);
    for (k, w, v) in values {
        t.push(vec![
            k.into(),
            w.into(),
            v.s_zz.into(),
            v.region.as_str().into(),
            v.edge_flag.as_str().into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_sumrule(k_points: usize, omega_points: usize, cfg: &RunConfig) -> Result<Table, CliError> {
    let s = intensity_sumrule(&cfg.quadrature, k_points, omega_points)?;
    let mut t = Table::new(&["k_points", "omega_points", "value", "refinement_delta"]);
    t.push(vec![
        s.k_points.into(),
        s.omega_points.into(),
        s.value.into(),
        s.error_estimate.into(),
    ]);
    Ok(t)
}

/// Every spectral line of σ⁻(k) on the ground state, labelled by the
/// finite-chain momentum 2πj/N.
pub fn cmd_ed(sites: usize, delta: f64, _cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = ChainSpec::new(sites, delta)?;
    let s = spectral_lines(&spec)?;
    let mut t = Table::new(&["momentum_index", "k", "omega", "weight"]);
    for l in &s.lines {
        t.push(vec![
            l.momentum_index.into(),
            spec.momentum(l.momentum_index).into(),
            l.omega.into(),
            l.weight.into(),
        ]);
    }
    Ok(t)
}

/// Band-edge match and windowed intensity ratios at interior k, under the
/// labeling that matched. The returned string summarises the decision.
pub fn cmd_compare(sites: usize, omega_points: usize, cfg: &RunConfig) -> Result<(Table, String), CliError> {
    let spec = ChainSpec::isotropic(sites)?;
    let c = compare(&spec, &cfg.quadrature, omega_points)?;
    let mut t = Table::new(&[
        "labeling",
        "momentum_index",
        "k",
        "lowest_omega",
        "lower_edge",
        "edge_deviation",
        "ed_windowed",
        "ed_total",
        "analytic",
        "ratio",
    ]);
    for r in &c.rows {
        let edge = c.band.rows.iter().find(|e| e.momentum_index == r.momentum_index);
        let (lowest, lower, dev) = edge.map_or((0.0, 0.0, 0.0), |e| (e.lowest_omega, e.lower_edge, e.deviation));
        t.push(vec![
            c.band.labeling.as_str().into(),
            r.momentum_index.into(),
            r.k.into(),
            lowest.into(),
            lower.into(),
            dev.into(),
            r.ed_windowed.into(),
            r.ed_total.into(),
            r.analytic.into(),
            r.ratio.into(),
        ]);
    }
    let scores: Vec<String> = c
        .band
        .scores
        .iter()
        .map(|s| {
            format!(
                "{} (edge deviation {:.6}, windowed share {:.6})",
                s.labeling.as_str(),
                s.mean_edge_deviation,
                s.windowed_fraction
            )
        })
        .collect();
    let summary = format!(
        "labeling: {}\nsites: {}\nground energy per site: {:.12}\nmean ratio: {:.6}\ncandidates: {}\n",
        c.band.labeling.as_str(),
        sites,
        c.band.ground_energy_per_site,
        c.mean_ratio(),
        scores.join("; ")
    );
    Ok((t, summary))
}

pub fn render(table: &Table, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    }
}

pub fn write_output(table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    let text = render(table, cfg.output_format);
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Cell;

    #[test]
    fn grid_order_is_k_major() {
        let g = ScanGrid {
            k_points: 2,
            omega_points: 3,
            k_max: 1.0,
            omega_max: 2.0,
        };
        assert_eq!(
            g.points(),
            vec![(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0)]
        );
    }

    #[test]
    fn eval_rejects_negative_omega() {
        assert!(matches!(
            cmd_eval(1.0, -1.0, &RunConfig::default()),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn eval_outside_band() {
        let t = cmd_eval(3.14159, 7.0, &RunConfig::default()).unwrap();
        assert_eq!(t.rows[0][2], Cell::Text("ABOVE".into()));
        assert_eq!(t.rows[0][4], Cell::Float(0.0));
    }
}
