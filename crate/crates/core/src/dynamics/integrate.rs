//! Adaptive explicit time stepping of `dx/dt = G x`.
//!
//! Dormand-Prince 5(4) with local extrapolation and the first-same-as-last
//! stage reuse. The error norm is the maximum absolute component of the
//! embedded error estimate, so `tol` bounds the local error of every
//! accepted step directly. Nothing depends on wall-clock or thread state.

use crate::dynamics::generator::Generator;
use crate::error::{Error, Result};
use crate::model::{diagnose, DensityMatrix, STATE_DIM};

type Vector = [f64; STATE_DIM];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Hard cap on attempted steps; exceeding it is reported as stiffness.
pub const MAX_STEPS: usize = 1_000_000;

/// Step-control bookkeeping; deterministic for a given input.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Largest error norm among accepted steps (in units of `tol`).
    pub max_error_norm: f64,
}

/// Sampled solution at every accepted step, starting with the initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub stats: IntegrationStats,
}

impl Trajectory {
    pub fn final_state(&self) -> &DensityMatrix {
        self.states
            .last()
            .expect("trajectory always holds the initial state")
    }

    pub fn final_time(&self) -> f64 {
        *self
            .times
            .last()
            .expect("trajectory always holds the initial time")
    }
}

fn combine(y: &Vector, h: f64, terms: &[(f64, &Vector)]) -> Vector {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (w, k) in terms {
            acc += w * k[i];
        }
        *o += h * acc;
    }
    out
}

pub fn evolve(
    gen: &Generator,
    initial: &DensityMatrix,
    t_final: f64,
    dt_max: f64,
    tol: f64,
) -> Result<Trajectory> {
    evolve_with_step_limit(gen, initial, t_final, dt_max, tol, MAX_STEPS)
}

/// [`evolve`] with an explicit cap on attempted steps.
pub fn evolve_with_step_limit(
    gen: &Generator,
    initial: &DensityMatrix,
    t_final: f64,
    dt_max: f64,
    tol: f64,
    max_steps: usize,
) -> Result<Trajectory> {
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidIntegration(format!(
            "t_final = {t_final} must be positive"
        )));
    }
    if dt_max.is_nan() || dt_max <= 0.0 {
        return Err(Error::InvalidIntegration(format!(
            "dt_max = {dt_max} must be positive"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidIntegration(format!(
            "tol = {tol} must be positive"
        )));
    }
    if !diagnose(initial).is_valid() {
        return Err(Error::InvalidIntegration(
            "initial state is not a valid density matrix".into(),
        ));
    }

    let h_min = 1e-14 * t_final;
    let norm = gen.norm_inf();
    let mut h = dt_max.min(t_final);
    if norm > 0.0 {
        h = h.min(0.1 / norm);
    }

    let mut t = 0.0;
    let mut y = initial.to_vector();
    let mut k1 = gen.apply(&y);
    let mut times = vec![0.0];
    let mut states = vec![*initial];
    let mut stats = IntegrationStats::default();
    let mut attempts = 0usize;

    while t < t_final {
        attempts += 1;
        if attempts > max_steps {
            return Err(Error::StiffnessFailure { time: t, step: h });
        }
        let remaining = t_final - t;
        let last = h >= remaining;
        let step = if last { remaining } else { h };

        let k2 = gen.apply(&combine(&y, step, &[(A21, &k1)]));
        let k3 = gen.apply(&combine(&y, step, &[(A31, &k1), (A32, &k2)]));
        let k4 = gen.apply(&combine(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = gen.apply(&combine(
            &y,
            step,
            &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
        ));
        let k6 = gen.apply(&combine(
            &y,
            step,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ));
        let y_new = combine(
            &y,
            step,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
        );
        let k7 = gen.apply(&y_new);

        let mut err = 0.0f64;
        for i in 0..STATE_DIM {
            let e = step
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            err = err.max(e.abs());
        }
        let err_norm = err / tol;

        let factor = if err_norm == 0.0 {
            MAX_FACTOR
        } else {
            (SAFETY * err_norm.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
        };

        if err_norm <= 1.0 {
            t = if last { t_final } else { t + step };
            y = y_new;
            k1 = k7;
            stats.accepted += 1;
            stats.max_error_norm = stats.max_error_norm.max(err_norm);
            times.push(t);
            states.push(DensityMatrix::from_vector(&y));
            // a truncated final step says nothing about the natural step size
            if !last {
                h = (step * factor).min(dt_max);
            }
        } else {
            stats.rejected += 1;
            h = step * factor;
            if h < h_min {
                return Err(Error::StiffnessFailure { time: t, step: h });
            }
        }
    }

    Ok(Trajectory {
        times,
        states,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::generator::{assemble_five_level, GeneratorMatrix, Variant};
    use crate::model::{initial_state, InitialKind, RateSet};

    #[test]
    fn zero_generator_is_identity_flow() {
        let gen = Generator::from_matrix(GeneratorMatrix::zeros(), Variant::FiveLevel).unwrap();
        let init = initial_state(InitialKind::Uniform);
        let traj = evolve(&gen, &init, 10.0, 1.0, 1e-10).unwrap();
        assert!(traj.states.iter().all(|s| *s == init));
        assert_eq!(traj.final_time(), 10.0);
    }

    #[test]
    fn exponential_decay_accuracy() {
        // single decay a -> c at rate 1 (V subsystem, no pumping)
        let rates = RateSet::simplified(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let gen = crate::dynamics::assemble_v_subsystem(&rates).unwrap();
        let init = DensityMatrix {
            pop_a: 1.0,
            ..Default::default()
        };
        let traj = evolve(&gen, &init, 3.0, 0.5, 1e-12).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert!((s.pop_a - (-t).exp()).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn trace_preserved_five_level() {
        let rates = RateSet::simplified(1.0, 2.0, 5.0, 3.0, 0.5, 1.0)
            .unwrap()
            .with_gamma_e(20.0)
            .unwrap();
        let gen = assemble_five_level(&rates).unwrap();
        let traj = evolve(&gen, &initial_state(InitialKind::GroundD), 20.0, 1.0, 1e-9).unwrap();
        for s in &traj.states {
            assert!((s.trace() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let gen = Generator::from_matrix(GeneratorMatrix::zeros(), Variant::FiveLevel).unwrap();
        let init = initial_state(InitialKind::GroundC);
        assert!(evolve(&gen, &init, 0.0, 1.0, 1e-8).is_err());
        assert!(evolve(&gen, &init, 1.0, 0.0, 1e-8).is_err());
        assert!(evolve(&gen, &init, 1.0, 1.0, 0.0).is_err());
        let bad = DensityMatrix {
            pop_a: 2.0,
            ..Default::default()
        };
        assert!(evolve(&gen, &bad, 1.0, 1.0, 1e-8).is_err());
    }

    #[test]
    fn step_budget_reports_stiffness() {
        // pumping at 1e9 integrated to t = 1e3 needs ~1e12 explicit steps
        let rates = RateSet::simplified(1.0, 0.0, 1e9, 0.0, 0.0, 0.0).unwrap();
        let gen = crate::dynamics::assemble_v_subsystem(&rates).unwrap();
        let init = initial_state(InitialKind::GroundC);
        let err = evolve_with_step_limit(&gen, &init, 1e3, 1e3, 1e-10, 10_000).unwrap_err();
        assert!(matches!(err, Error::StiffnessFailure { .. }));
    }
}
