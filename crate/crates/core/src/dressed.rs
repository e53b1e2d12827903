//! Dark/bright basis for the upper pair `a`, `b`.
//!
//! With equal pump rates the collision-dressed states are
//! `|D> = (|a> - |b>)/sqrt(2)` and `|B> = (|a> + |b>)/sqrt(2)`. The mapping
//! assumes a real two-photon coherence, which holds at zero detuning.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::RateSet;

/// Largest imaginary part of `rho_ab` accepted by [`to_dressed`].
pub const REAL_COHERENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DressedPopulations {
    pub rho_dd_dark: f64,
    pub rho_bb_bright: f64,
    pub rho_db: f64,
}

/// Pump rates that define the dark and bright states when `r_a != r_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkBrightWeights {
    pub r_a: f64,
    pub r_b: f64,
}

fn real_coherence(coh_ab: Complex64) -> Result<f64> {
    if coh_ab.im.abs() > REAL_COHERENCE_TOL {
        return Err(Error::NonRealCoherence(coh_ab.im));
    }
    Ok(coh_ab.re)
}

pub fn to_dressed(pop_a: f64, pop_b: f64, coh_ab: Complex64) -> Result<DressedPopulations> {
    let x = real_coherence(coh_ab)?;
    Ok(DressedPopulations {
        rho_dd_dark: 0.5 * (pop_a + pop_b - 2.0 * x),
        rho_bb_bright: 0.5 * (pop_a + pop_b + 2.0 * x),
        rho_db: 0.5 * (pop_a - pop_b),
    })
}

/// Dressed populations for `|D> ∝ sqrt(r_b)|a> - sqrt(r_a)|b>` and
/// `|B> ∝ sqrt(r_a)|a> + sqrt(r_b)|b>`. Reduces to [`to_dressed`] when the
/// two rates are equal.
pub fn to_dressed_weighted(
    pop_a: f64,
    pop_b: f64,
    coh_ab: Complex64,
    weights: DarkBrightWeights,
) -> Result<DressedPopulations> {
    let x = real_coherence(coh_ab)?;
    let DarkBrightWeights { r_a, r_b } = weights;
    let total = r_a + r_b;
    if total.is_nan() || total <= 0.0 {
        return Err(Error::DivisionByZero("r_a + r_b"));
    }
    let cross = (r_a * r_b).sqrt();
    Ok(DressedPopulations {
        rho_dd_dark: (r_b * pop_a + r_a * pop_b - 2.0 * cross * x) / total,
        rho_bb_bright: (r_a * pop_a + r_b * pop_b + 2.0 * cross * x) / total,
        rho_db: (cross * (pop_a - pop_b) + (r_b - r_a) * x) / total,
    })
}

/// Inverse of [`to_dressed`]: returns `(pop_a, pop_b, coh_ab)`.
pub fn from_dressed(d: &DressedPopulations) -> (f64, f64, Complex64) {
    let sum = d.rho_bb_bright + d.rho_dd_dark;
    (
        0.5 * (sum + 2.0 * d.rho_db),
        0.5 * (sum - 2.0 * d.rho_db),
        Complex64::new(0.5 * (d.rho_bb_bright - d.rho_dd_dark), 0.0),
    )
}

/// Deep-pumping estimates of the dressed populations per unit `rho_cc`:
/// `(r_e / gamma_uv, 1 + r_e / (4 r_vis), r_e / r_vis)`.
///
/// Only meaningful when pumping dominates every decay and `gamma_uv` also
/// dominates `gamma_vis`; no validity check is made here.
pub fn asymptotic_dressed(rates: &RateSet) -> Result<DressedPopulations> {
    if rates.gamma_uv() == 0.0 {
        return Err(Error::DivisionByZero("gamma_uv"));
    }
    if rates.r_vis() == 0.0 {
        return Err(Error::DivisionByZero("r_vis"));
    }
    let re = rates.r_e();
    Ok(DressedPopulations {
        rho_dd_dark: re / rates.gamma_uv(),
        rho_bb_bright: 1.0 + re / (4.0 * rates.r_vis()),
        rho_db: re / rates.r_vis(),
    })
}

/// Time derivatives of the dressed populations under the reduced four-level
/// dynamics at `p = 1`, zero detuning.
///
/// The `rho_cc` feeds are `r_e / 2` into the dark state and
/// `2 r_vis + r_e / 2` into the bright state, matching the `r_e / 2` pumping
/// each of `a` and `b` receives from the eliminated level.
pub fn dressed_rhs(
    d: &DressedPopulations,
    rho_cc: f64,
    rates: &RateSet,
) -> Result<DressedPopulations> {
    rates.require_simplified()?;
    let gv = rates.gamma_vis();
    let gu = rates.gamma_uv();
    let r = rates.r_vis();
    let re = rates.r_e();
    let DressedPopulations {
        rho_dd_dark: dd,
        rho_bb_bright: bb,
        rho_db: db,
    } = *d;
    Ok(DressedPopulations {
        rho_dd_dark: -gv * dd - 0.5 * gu * (dd + db) + 0.5 * re * rho_cc,
        rho_bb_bright: -(2.0 * r + gv) * bb - 0.5 * gu * (bb + db) + (2.0 * r + 0.5 * re) * rho_cc,
        rho_db: -(r + gv + 0.5 * gu) * db - 0.25 * gu * (dd + bb),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn pure_states() {
        assert_eq!(
            to_dressed(0.5, 0.5, c(-0.5)).unwrap(),
            DressedPopulations {
                rho_dd_dark: 1.0,
                rho_bb_bright: 0.0,
                rho_db: 0.0
            }
        );
        assert_eq!(
            to_dressed(0.5, 0.5, c(0.5)).unwrap(),
            DressedPopulations {
                rho_dd_dark: 0.0,
                rho_bb_bright: 1.0,
                rho_db: 0.0
            }
        );
        let d = to_dressed(0.3, 0.1, c(0.0)).unwrap();
        assert!((d.rho_dd_dark - 0.2).abs() < 1e-15);
        assert!((d.rho_bb_bright - 0.2).abs() < 1e-15);
        assert!((d.rho_db - 0.1).abs() < 1e-15);
    }

    #[test]
    fn complex_coherence_rejected() {
        assert!(matches!(
            to_dressed(0.5, 0.5, Complex64::new(0.1, 1e-6)),
            Err(Error::NonRealCoherence(_))
        ));
        assert!(to_dressed(0.5, 0.5, Complex64::new(0.1, 1e-10)).is_ok());
    }

    #[test]
    fn inverse_of_dark_state() {
        let (a, b, ab) = from_dressed(&DressedPopulations {
            rho_dd_dark: 1.0,
            rho_bb_bright: 0.0,
            rho_db: 0.0,
        });
        assert_eq!((a, b, ab), (0.5, 0.5, c(-0.5)));
    }

    #[test]
    fn bare_populations_from_deep_pump_estimates() {
        // (r_e/gamma_uv, 1, 0) rho_cc with r_e >> gamma_uv
        let (re, gu, rho_cc) = (1e4, 1.0, 0.3);
        let (a, b, ab) = from_dressed(&DressedPopulations {
            rho_dd_dark: re / gu * rho_cc,
            rho_bb_bright: rho_cc,
            rho_db: 0.0,
        });
        let target = re / (2.0 * gu) * rho_cc;
        for v in [a, b, -ab.re] {
            assert!((v - target).abs() / target < 1e-3);
        }
    }

    #[test]
    fn asymptotic_values() {
        let rates = RateSet::simplified(1.0, 1.0, 300.0, 100.0, 1.0, 1.0).unwrap();
        let d = asymptotic_dressed(&rates).unwrap();
        assert!((d.rho_dd_dark - 100.0).abs() < 1e-12);
        assert!((d.rho_bb_bright - 1.0 - 1.0 / 12.0).abs() < 1e-12);
        assert!((d.rho_db - 1.0 / 3.0).abs() < 1e-12);

        let no_e = RateSet::simplified(1.0, 1.0, 300.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(
            asymptotic_dressed(&no_e).unwrap(),
            DressedPopulations {
                rho_dd_dark: 0.0,
                rho_bb_bright: 1.0,
                rho_db: 0.0
            }
        );

        let strong = RateSet::simplified(1.0, 1.0, 300.0, 1e3, 1.0, 1.0).unwrap();
        let s = asymptotic_dressed(&strong).unwrap();
        assert!(s.rho_dd_dark / s.rho_bb_bright > 100.0);

        let no_uv = RateSet::simplified(1.0, 0.0, 300.0, 10.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            asymptotic_dressed(&no_uv),
            Err(Error::DivisionByZero(_))
        ));
        let no_vis = RateSet::simplified(1.0, 1.0, 0.0, 10.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            asymptotic_dressed(&no_vis),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn asymptotic_estimate_leaves_small_residual() {
        let rates = RateSet::simplified(0.01, 1.0, 1e3, 1e3, 1.0, 1.0).unwrap();
        let d = asymptotic_dressed(&rates).unwrap();
        let rhs = dressed_rhs(&d, 1.0, &rates).unwrap();
        // residuals are set by the decay rates, not the pump rates
        let scale = rates.r_vis() * d.rho_bb_bright;
        assert!(rhs.rho_dd_dark.abs() < 10.0 * rates.gamma_uv() * d.rho_dd_dark);
        assert!(rhs.rho_bb_bright.abs() < 1e-2 * scale);
        assert!(rhs.rho_dd_dark != 0.0);
    }

    #[test]
    fn zero_rates_zero_derivative() {
        let rates = RateSet::simplified(0.0, 0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        let d = DressedPopulations {
            rho_dd_dark: 0.3,
            rho_bb_bright: 0.2,
            rho_db: 0.05,
        };
        assert_eq!(
            dressed_rhs(&d, 0.4, &rates).unwrap(),
            DressedPopulations::default()
        );
    }

    #[test]
    fn weighted_reduces_to_equal_form() {
        let w = DarkBrightWeights { r_a: 2.0, r_b: 2.0 };
        let x = to_dressed_weighted(0.3, 0.2, c(-0.1), w).unwrap();
        let y = to_dressed(0.3, 0.2, c(-0.1)).unwrap();
        assert!((x.rho_dd_dark - y.rho_dd_dark).abs() < 1e-15);
        assert!((x.rho_bb_bright - y.rho_bb_bright).abs() < 1e-15);
        assert!((x.rho_db - y.rho_db).abs() < 1e-15);
    }

    #[test]
    fn weighted_dark_state_is_dark() {
        // |D> = (sqrt(r_b)|a> - sqrt(r_a)|b>)/sqrt(r_a + r_b) as a pure state
        let (ra, rb) = (1.0_f64, 3.0_f64);
        let n = ra + rb;
        let (ca, cb) = (rb.sqrt() / n.sqrt(), -ra.sqrt() / n.sqrt());
        let d = to_dressed_weighted(
            ca * ca,
            cb * cb,
            c(ca * cb),
            DarkBrightWeights { r_a: ra, r_b: rb },
        )
        .unwrap();
        assert!((d.rho_dd_dark - 1.0).abs() < 1e-15);
        assert!(d.rho_bb_bright.abs() < 1e-15);
        assert!(d.rho_db.abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn round_trip(a in 0.0f64..1.0, b in 0.0f64..1.0, t in -1.0f64..1.0) {
            let x = t * (a * b).sqrt();
            let d = to_dressed(a, b, c(x)).unwrap();
            prop_assert!((d.rho_dd_dark + d.rho_bb_bright - (a + b)).abs() <= 1e-15);
            let (a2, b2, x2) = from_dressed(&d);
            prop_assert!((a2 - a).abs() <= 1e-15);
            prop_assert!((b2 - b).abs() <= 1e-15);
            prop_assert!((x2.re - x).abs() <= 1e-15);
        }
    }
}
