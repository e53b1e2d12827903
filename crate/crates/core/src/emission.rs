//! Stationary emission spectra, line intensities and branching ratios.
//!
//! Both lines are single Lorentzians. The visible line is emitted from the
//! superposition of `a` and `b` with weight
//! `W_vis = rho_aa + rho_bb + 2 p Re rho_ab` (twice the bright population at
//! `p = 1`); the UV line is emitted from `a` alone. Common prefactors are set
//! to one.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{DensityMatrix, RateSet};

/// Spectral density sampled on a caller-supplied grid of frequency offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub omega: Vec<f64>,
    pub values: Vec<f64>,
    /// Lorentzian half-width at half maximum.
    pub width: f64,
}

/// Half-widths of the visible (`r0`) and UV (`w_uv`) Lorentzians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationWidths {
    pub r0: f64,
    pub w_uv: f64,
}

pub fn correlation_widths(rates: &RateSet) -> Result<CorrelationWidths> {
    rates.require_simplified()?;
    Ok(CorrelationWidths {
        r0: 2.0 * rates.r_vis() + rates.r_uv() + rates.r_e(),
        w_uv: rates.r_uv() + rates.r_vis(),
    })
}

/// Visible-line emission weight `rho_aa + rho_bb + 2 p Re rho_ab`.
pub fn visible_weight(state: &DensityMatrix, p: f64) -> f64 {
    state.pop_a + state.pop_b + 2.0 * p * state.coh_ab.re
}

fn lorentzian(weight: f64, width: f64, grid: &[f64]) -> Result<Spectrum> {
    if width.is_nan() || width <= 0.0 {
        return Err(Error::ZeroWidth);
    }
    let values = grid
        .iter()
        .map(|w| weight * width / (PI * (w * w + width * width)))
        .collect();
    Ok(Spectrum {
        omega: grid.to_vec(),
        values,
        width,
    })
}

pub fn visible_spectrum(rates: &RateSet, state: &DensityMatrix, grid: &[f64]) -> Result<Spectrum> {
    let weight = visible_weight(state, rates.p());
    if weight < -1e-9 {
        return Err(Error::NegativeWeight(weight));
    }
    let widths = correlation_widths(rates)?;
    lorentzian(weight.max(0.0), widths.r0, grid)
}

pub fn uv_spectrum(rates: &RateSet, state: &DensityMatrix, grid: &[f64]) -> Result<Spectrum> {
    if state.pop_a < -1e-9 {
        return Err(Error::NegativeWeight(state.pop_a));
    }
    let widths = correlation_widths(rates)?;
    lorentzian(state.pop_a.max(0.0), widths.w_uv, grid)
}

/// Uniform grid of `points` samples on `[-omega_max, omega_max]`.
pub fn symmetric_grid(omega_max: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "a grid needs at least two points");
    let step = 2.0 * omega_max / (points - 1) as f64;
    (0..points)
        .map(|i| {
            // mirror the upper half so the grid is exactly symmetric
            let k = i as f64 - (points - 1) as f64 / 2.0;
            k * step
        })
        .collect()
}

/// Photon-number intensity `omega_line^3 * ∫ S(omega) d omega` (trapezoidal).
pub fn line_intensity(spec: &Spectrum, omega_line: f64) -> Result<f64> {
    let n = spec.omega.len();
    let half_span = if n >= 2 {
        0.5 * (spec.omega[n - 1] - spec.omega[0])
    } else {
        0.0
    };
    if half_span < 50.0 * spec.width {
        return Err(Error::TruncationError {
            half_span,
            width: spec.width,
        });
    }
    let integral: f64 = spec
        .omega
        .windows(2)
        .zip(spec.values.windows(2))
        .map(|(w, v)| 0.5 * (w[1] - w[0]) * (v[0] + v[1]))
        .sum();
    Ok(omega_line.powi(3) * integral)
}

/// Branching ratio from two line intensities.
///
/// Each decay constant is proportional to `omega^3` times the squared
/// dipole, so the intensities are rescaled by `gamma / omega^3` before the
/// ratio is taken.
pub fn branching_ratio_from_intensities(i_vis: f64, i_uv: f64, rates: &RateSet) -> Result<f64> {
    let vis = i_vis * rates.gamma_vis() / rates.omega_vis().powi(3);
    let uv = i_uv * rates.gamma_uv() / rates.omega_uv().powi(3);
    if uv == 0.0 {
        return Err(Error::DivisionByZero("UV line intensity"));
    }
    Ok(vis / uv)
}

/// `R = (gamma_vis / gamma_uv) * W_vis / rho_aa`.
pub fn branching_ratio_operational(state: &DensityMatrix, rates: &RateSet) -> Result<f64> {
    if state.pop_a <= 1e-300 {
        return Err(Error::DivisionByZero("rho_aa"));
    }
    if rates.gamma_uv() == 0.0 {
        return Err(Error::DivisionByZero("gamma_uv"));
    }
    Ok(rates.gamma_vis() / rates.gamma_uv() * visible_weight(state, rates.p()) / state.pop_a)
}

/// Maximal-coherence, deep-pump result `gamma_vis (4 / r_e + 1 / r_vis)`.
pub fn branching_ratio_maxcoh(rates: &RateSet) -> Result<f64> {
    if rates.r_e() == 0.0 {
        return Err(Error::DivisionByZero("r_e"));
    }
    if rates.r_vis() == 0.0 {
        return Err(Error::DivisionByZero("r_vis"));
    }
    Ok(rates.gamma_vis() * (4.0 / rates.r_e() + 1.0 / rates.r_vis()))
}

/// Exact result without interference:
/// `gamma_v (gamma_uv + 2 (gamma_v + r_v)) / (gamma_uv (gamma_v + r_v))`.
pub fn branching_ratio_nocoh(rates: &RateSet) -> Result<f64> {
    let gv = rates.gamma_vis();
    let gu = rates.gamma_uv();
    let s = gv + rates.r_vis();
    if gu == 0.0 {
        return Err(Error::DivisionByZero("gamma_uv"));
    }
    if s == 0.0 {
        return Err(Error::DivisionByZero("gamma_vis + r_vis"));
    }
    Ok(gv * (gu + 2.0 * s) / (gu * s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityLimits {
    pub low_density: f64,
    pub high_density: f64,
}

/// `(1 + 2 gamma_vis / gamma_uv, 2 gamma_vis / gamma_uv)`.
pub fn branching_ratio_limits(rates: &RateSet) -> Result<DensityLimits> {
    if rates.gamma_uv() == 0.0 {
        return Err(Error::DivisionByZero("gamma_uv"));
    }
    let high = 2.0 * rates.gamma_vis() / rates.gamma_uv();
    Ok(DensityLimits {
        low_density: 1.0 + high,
        high_density: high,
    })
}

/// Coherence-induced suppression of the visible line.
///
/// `nominal` is the usual estimate `gamma_uv (4 / r_e + 1 / r_vis)`; `exact`
/// is the quotient of the maximal-coherence ratio and the no-coherence
/// deep-pump ratio `2 gamma_vis / gamma_uv`, which is half of `nominal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuppressionFactor {
    pub nominal: f64,
    pub exact: f64,
}

pub fn suppression_factor(rates: &RateSet) -> Result<SuppressionFactor> {
    if rates.r_e() == 0.0 {
        return Err(Error::DivisionByZero("r_e"));
    }
    if rates.r_vis() == 0.0 {
        return Err(Error::DivisionByZero("r_vis"));
    }
    let bracket = 4.0 / rates.r_e() + 1.0 / rates.r_vis();
    Ok(SuppressionFactor {
        nominal: rates.gamma_uv() * bracket,
        exact: 0.5 * rates.gamma_uv() * bracket,
    })
}

/// Bright-state enhancement without the auxiliary pump: `4 gamma_vis / gamma_uv`.
pub fn enhancement_ratio(rates: &RateSet) -> Result<f64> {
    if rates.gamma_uv() == 0.0 {
        return Err(Error::DivisionByZero("gamma_uv"));
    }
    Ok(4.0 * rates.gamma_vis() / rates.gamma_uv())
}
