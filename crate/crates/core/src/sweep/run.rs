use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dressed::to_dressed;
use crate::dynamics::{assemble, steady_state};
use crate::emission::{
    branching_ratio_from_intensities, branching_ratio_limits, branching_ratio_maxcoh,
    branching_ratio_nocoh, branching_ratio_operational, correlation_widths, line_intensity,
    symmetric_grid, uv_spectrum, visible_spectrum,
};
use crate::error::{Error, Result};
use crate::model::{DensityMatrix, RateSet};
use crate::sweep::config::{ModelKind, SweepConfig};

pub const CSV_HEADER: &str =
    "n_e,gamma_uv,p,R_numeric,R_maxcoh,R_nocoh,R_limit_low,R_limit_high,rho_DD,rho_BB,rho_aa,rho_cc";

/// Shortest decimal string that parses back to `v`: positional or
/// exponent notation, whichever is shorter.
pub fn format_number(v: f64) -> String {
    let plain = format!("{v}");
    let sci = format!("{v:e}");
    if sci.len() < plain.len() {
        sci
    } else {
        plain
    }
}

/// One grid point of a density sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n_e: f64,
    pub gamma_uv: f64,
    pub p: f64,
    pub r_numeric: f64,
    pub r_maxcoh: f64,
    pub r_nocoh: f64,
    pub r_limit_low: f64,
    pub r_limit_high: f64,
    pub rho_dd: f64,
    pub rho_bb: f64,
    pub rho_aa: f64,
    pub rho_cc: f64,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let fields = [
            self.n_e,
            self.gamma_uv,
            self.p,
            self.r_numeric,
            self.r_maxcoh,
            self.r_nocoh,
            self.r_limit_low,
            self.r_limit_high,
            self.rho_dd,
            self.rho_bb,
            self.rho_aa,
            self.rho_cc,
        ];
        let mut line = String::new();
        for (i, v) in fields.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&format_number(*v));
        }
        line
    }
}

/// Rate set for one density: `r_i = k_i * n_e`.
pub fn rates_at(cfg: &SweepConfig, n_e: f64, gamma_uv: f64, p: f64) -> Result<RateSet> {
    let mut rates = RateSet::simplified(
        cfg.gamma_vis,
        gamma_uv,
        cfg.k_vis * n_e,
        cfg.k_e * n_e,
        cfg.k_uv * n_e,
        p,
    )?
    .with_delta(cfg.delta)?;
    if cfg.model == ModelKind::FiveLevel {
        rates = rates.with_gamma_e(cfg.gamma_e_value())?;
    }
    Ok(rates)
}

/// Steady state of the configured model at one grid point.
pub fn steady_state_at(
    cfg: &SweepConfig,
    n_e: f64,
    gamma_uv: f64,
    p: f64,
) -> Result<(RateSet, DensityMatrix)> {
    let rates = rates_at(cfg, n_e, gamma_uv, p)?;
    let gen = assemble(&rates, cfg.model.variant())?;
    let state = steady_state(&gen).map_err(|e| match e {
        Error::SingularSystem(msg) => Error::SingularSystem(format!(
            "at n_e = {n_e}, gamma_uv = {gamma_uv}, p = {p}: {msg}"
        )),
        other => other,
    })?;
    Ok((rates, state))
}

fn compute_row(cfg: &SweepConfig, n_e: f64, gamma_uv: f64, p: f64) -> Result<SweepRow> {
    let (rates, state) = steady_state_at(cfg, n_e, gamma_uv, p)?;
    // with a detuning the coherence is complex; the dressed columns then use its real part
    let coh = if cfg.delta == 0.0 {
        state.coh_ab
    } else {
        Complex64::new(state.coh_ab.re, 0.0)
    };
    let dressed = to_dressed(state.pop_a, state.pop_b, coh)?;
    let limits = branching_ratio_limits(&rates)?;
    Ok(SweepRow {
        n_e,
        gamma_uv,
        p,
        r_numeric: branching_ratio_operational(&state, &rates)?,
        r_maxcoh: branching_ratio_maxcoh(&rates)?,
        r_nocoh: branching_ratio_nocoh(&rates)?,
        r_limit_low: limits.low_density,
        r_limit_high: limits.high_density,
        rho_dd: dressed.rho_dd_dark,
        rho_bb: dressed.rho_bb_bright,
        rho_aa: state.pop_a,
        rho_cc: state.pop_c,
    })
}

fn canonical(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

/// Every `(gamma_uv, p, n_e)` combination, ordered by those values. Grid
/// points run in parallel; the output order does not depend on scheduling.
pub fn run_density_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let mut gammas = cfg.gamma_uv_list.clone();
    gammas.sort_by(|a, b| canonical(*a, *b));
    gammas.dedup();
    let mut ps = cfg.p_list.clone();
    ps.sort_by(|a, b| canonical(*a, *b));
    ps.dedup();
    let grid = cfg.ne_grid();

    let mut points = Vec::with_capacity(gammas.len() * ps.len() * grid.len());
    for &g in &gammas {
        for &p in &ps {
            for &n in &grid {
                points.push((n, g, p));
            }
        }
    }

    let results: Vec<Result<SweepRow>> = points
        .par_iter()
        .map(|&(n, g, p)| compute_row(cfg, n, g, p))
        .collect();
    results.into_iter().collect()
}

/// Grid sections where `R_numeric` rises with density for `p` in {0, 1}.
pub fn monotonicity_warnings(rows: &[SweepRow]) -> Vec<String> {
    let mut warnings = Vec::new();
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.gamma_uv != b.gamma_uv || a.p != b.p || !(a.p == 0.0 || a.p == 1.0) {
            continue;
        }
        if b.r_numeric > a.r_numeric * (1.0 + 1e-12) {
            warnings.push(format!(
                "R_numeric increases from {} to {} between n_e = {} and {} (gamma_uv = {}, p = {})",
                a.r_numeric, b.r_numeric, a.n_e, b.n_e, a.gamma_uv, a.p
            ));
        }
    }
    warnings
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(io_err)
}

/// Result of the spectrum command: both Lorentzians on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub r0: f64,
    pub w_uv: f64,
    pub i_vis: f64,
    pub i_uv: f64,
    pub r_spectral: f64,
    pub omega: Vec<f64>,
    pub s_vis: Vec<f64>,
    pub s_uv: Vec<f64>,
}

impl SpectrumTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "# r0={},w_uv={},I_vis={},I_uv={},R_spectral={}",
            format_number(self.r0),
            format_number(self.w_uv),
            format_number(self.i_vis),
            format_number(self.i_uv),
            format_number(self.r_spectral)
        )
        .unwrap();
        s.push_str("omega,s_vis,s_uv\n");
        for ((w, v), u) in self.omega.iter().zip(&self.s_vis).zip(&self.s_uv) {
            writeln!(
                s,
                "{},{},{}",
                format_number(*w),
                format_number(*v),
                format_number(*u)
            )
            .unwrap();
        }
        s
    }
}

/// Steady-state spectra at density `n_e` for the first `gamma_uv` and `p` of
/// the config. `omega_max` defaults to 200 times the wider line.
pub fn run_spectrum_command(
    cfg: &SweepConfig,
    n_e: f64,
    omega_max: Option<f64>,
    points: usize,
) -> Result<SpectrumTable> {
    if points < 3 {
        return Err(Error::config("points", "need at least 3 grid points"));
    }
    if !(n_e.is_finite() && n_e > 0.0) {
        return Err(Error::config("ne", format!("{n_e} must be positive")));
    }
    let gamma_uv = cfg.gamma_uv_list[0];
    let p = cfg.p_list[0];
    let (rates, state) = steady_state_at(cfg, n_e, gamma_uv, p)?;
    let widths = correlation_widths(&rates)?;
    let omega_max = omega_max.unwrap_or(200.0 * widths.r0.max(widths.w_uv));
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::config(
            "omega-max",
            format!("{omega_max} must be positive"),
        ));
    }
    let grid = symmetric_grid(omega_max, points);
    let vis = visible_spectrum(&rates, &state, &grid)?;
    let uv = uv_spectrum(&rates, &state, &grid)?;
    let i_vis = line_intensity(&vis, rates.omega_vis())?;
    let i_uv = line_intensity(&uv, rates.omega_uv())?;
    let r_spectral = branching_ratio_from_intensities(i_vis, i_uv, &rates)?;
    Ok(SpectrumTable {
        r0: widths.r0,
        w_uv: widths.w_uv,
        i_vis,
        i_uv,
        r_spectral,
        omega: grid,
        s_vis: vis.values,
        s_uv: uv.values,
    })
}
