//! Rate constants, the five-level density matrix and state health checks.
//!
//! Levels: `a`, `b` are the upper pair of the V subsystem, `c` is their common
//! lower level, `d` is the lower level of the UV line from `a`, and `e` is the
//! auxiliary level that feeds `a` and `b`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Length of the real state vector a generator acts on.
pub const STATE_DIM: usize = 13;

/// Positions inside the real state vector.
pub mod idx {
    pub const POP_A: usize = 0;
    pub const POP_B: usize = 1;
    pub const POP_C: usize = 2;
    pub const POP_D: usize = 3;
    pub const POP_E: usize = 4;
    pub const RE_AB: usize = 5;
    pub const IM_AB: usize = 6;
    pub const RE_CA: usize = 7;
    pub const IM_CA: usize = 8;
    pub const RE_CB: usize = 9;
    pub const IM_CB: usize = 10;
    pub const RE_AD: usize = 11;
    pub const IM_AD: usize = 12;

    pub const POPULATIONS: [usize; 5] = [POP_A, POP_B, POP_C, POP_D, POP_E];
}

/// Plain parameter bag used to build a [`RateSet`].
///
/// Defaults are all-zero rates, `p = 0`, `delta = 0` and unit line frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateParams {
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gamma_uv: f64,
    pub gamma_e: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub r_e: f64,
    pub r_uv: f64,
    pub p: f64,
    pub delta: f64,
    pub omega_vis: f64,
    pub omega_uv: f64,
}

impl Default for RateParams {
    fn default() -> Self {
        RateParams {
            gamma_a: 0.0,
            gamma_b: 0.0,
            gamma_uv: 0.0,
            gamma_e: 0.0,
            r_a: 0.0,
            r_b: 0.0,
            r_e: 0.0,
            r_uv: 0.0,
            p: 0.0,
            delta: 0.0,
            omega_vis: 1.0,
            omega_uv: 1.0,
        }
    }
}

/// Validated decay and pump rates for one model instance.
///
/// All rates are non-negative and finite and `p` lies in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    params: RateParams,
}

impl RateSet {
    pub fn new(params: RateParams) -> Result<Self> {
        let named = [
            ("gamma_a", params.gamma_a),
            ("gamma_b", params.gamma_b),
            ("gamma_uv", params.gamma_uv),
            ("gamma_e", params.gamma_e),
            ("r_a", params.r_a),
            ("r_b", params.r_b),
            ("r_e", params.r_e),
            ("r_uv", params.r_uv),
        ];
        for (name, value) in named {
            if !value.is_finite() {
                return Err(Error::InvalidRates(format!("{name} is not finite")));
            }
            if value < 0.0 {
                return Err(Error::InvalidRates(format!("{name} = {value} is negative")));
            }
        }
        for (name, value) in [
            ("p", params.p),
            ("delta", params.delta),
            ("omega_vis", params.omega_vis),
            ("omega_uv", params.omega_uv),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidRates(format!("{name} is not finite")));
            }
        }
        if params.p.abs() > 1.0 {
            return Err(Error::InvalidRates(format!(
                "alignment factor p = {} outside [-1, 1]",
                params.p
            )));
        }
        Ok(RateSet { params })
    }

    /// Symmetric scheme: `gamma_a = gamma_b = gamma_vis`, `r_a = r_b = r_vis`.
    ///
    /// `gamma_e` starts at zero; set it with [`RateSet::with_gamma_e`] when the
    /// five-level generator is wanted.
    pub fn simplified(
        gamma_vis: f64,
        gamma_uv: f64,
        r_vis: f64,
        r_e: f64,
        r_uv: f64,
        p: f64,
    ) -> Result<Self> {
        RateSet::new(RateParams {
            gamma_a: gamma_vis,
            gamma_b: gamma_vis,
            gamma_uv,
            r_a: r_vis,
            r_b: r_vis,
            r_e,
            r_uv,
            p,
            ..RateParams::default()
        })
    }

    pub fn with_gamma_e(self, gamma_e: f64) -> Result<Self> {
        RateSet::new(RateParams {
            gamma_e,
            ..self.params
        })
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        RateSet::new(RateParams {
            delta,
            ..self.params
        })
    }

    pub fn with_p(self, p: f64) -> Result<Self> {
        RateSet::new(RateParams { p, ..self.params })
    }

    /// All rates and the detuning multiplied by `factor` (a change of time unit).
    pub fn scaled(self, factor: f64) -> Result<Self> {
        let p = self.params;
        RateSet::new(RateParams {
            gamma_a: p.gamma_a * factor,
            gamma_b: p.gamma_b * factor,
            gamma_uv: p.gamma_uv * factor,
            gamma_e: p.gamma_e * factor,
            r_a: p.r_a * factor,
            r_b: p.r_b * factor,
            r_e: p.r_e * factor,
            r_uv: p.r_uv * factor,
            delta: p.delta * factor,
            ..p
        })
    }

    pub fn params(&self) -> RateParams {
        self.params
    }

    pub fn is_simplified(&self) -> bool {
        self.params.gamma_a == self.params.gamma_b && self.params.r_a == self.params.r_b
    }

    pub(crate) fn require_simplified(&self) -> Result<()> {
        if self.is_simplified() {
            Ok(())
        } else {
            Err(Error::AsymmetricRates)
        }
    }

    pub fn gamma_a(&self) -> f64 {
        self.params.gamma_a
    }
    pub fn gamma_b(&self) -> f64 {
        self.params.gamma_b
    }
    /// Visible decay rate; equal to `gamma_a` (and `gamma_b` in the symmetric scheme).
    pub fn gamma_vis(&self) -> f64 {
        self.params.gamma_a
    }
    pub fn gamma_uv(&self) -> f64 {
        self.params.gamma_uv
    }
    pub fn gamma_e(&self) -> f64 {
        self.params.gamma_e
    }
    pub fn r_a(&self) -> f64 {
        self.params.r_a
    }
    pub fn r_b(&self) -> f64 {
        self.params.r_b
    }
    /// Visible pump rate; equal to `r_a` (and `r_b` in the symmetric scheme).
    pub fn r_vis(&self) -> f64 {
        self.params.r_a
    }
    pub fn r_e(&self) -> f64 {
        self.params.r_e
    }
    pub fn r_uv(&self) -> f64 {
        self.params.r_uv
    }
    pub fn p(&self) -> f64 {
        self.params.p
    }
    pub fn delta(&self) -> f64 {
        self.params.delta
    }
    pub fn omega_vis(&self) -> f64 {
        self.params.omega_vis
    }
    pub fn omega_uv(&self) -> f64 {
        self.params.omega_uv
    }
}

/// Populations of the five levels and the tracked coherences.
///
/// Only `coh_ab`, `coh_ca`, `coh_cb` and `coh_ad` are stored; their Hermitian
/// partners are implied.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DensityMatrix {
    pub pop_a: f64,
    pub pop_b: f64,
    pub pop_c: f64,
    pub pop_d: f64,
    pub pop_e: f64,
    pub coh_ab: Complex64,
    pub coh_ca: Complex64,
    pub coh_cb: Complex64,
    pub coh_ad: Complex64,
}

/// Starting configurations for time evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialKind {
    GroundD,
    GroundC,
    Uniform,
}

pub fn initial_state(kind: InitialKind) -> DensityMatrix {
    match kind {
        InitialKind::GroundD => DensityMatrix {
            pop_d: 1.0,
            ..DensityMatrix::default()
        },
        InitialKind::GroundC => DensityMatrix {
            pop_c: 1.0,
            ..DensityMatrix::default()
        },
        InitialKind::Uniform => DensityMatrix {
            pop_a: 0.2,
            pop_b: 0.2,
            pop_c: 0.2,
            pop_d: 0.2,
            pop_e: 0.2,
            ..DensityMatrix::default()
        },
    }
}

pub fn trace(state: &DensityMatrix) -> f64 {
    state.trace()
}

/// Deviations from a physical state. All zero for an exactly valid state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_defect: f64,
    pub min_population: f64,
    pub max_coherence_slack: f64,
}

pub fn diagnose(state: &DensityMatrix) -> StateDiagnostics {
    let pops = state.populations();
    let min_population = pops.iter().copied().fold(f64::INFINITY, f64::min);
    let pairs = [
        (state.coh_ab, state.pop_a, state.pop_b),
        (state.coh_ca, state.pop_c, state.pop_a),
        (state.coh_cb, state.pop_c, state.pop_b),
        (state.coh_ad, state.pop_a, state.pop_d),
    ];
    let max_coherence_slack = pairs
        .iter()
        .map(|(coh, pi, pj)| coh.norm_sqr() - pi * pj)
        .fold(f64::NEG_INFINITY, f64::max);
    StateDiagnostics {
        trace_defect: (state.trace() - 1.0).abs(),
        min_population,
        max_coherence_slack,
    }
}

impl StateDiagnostics {
    /// Trace within 1e-9, populations above -1e-9 and every tracked coherence
    /// inside the Cauchy-Schwarz bound up to 1e-9.
    pub fn is_valid(&self) -> bool {
        self.trace_defect <= 1e-9
            && self.min_population >= -1e-9
            && self.max_coherence_slack <= 1e-9
    }
}

impl DensityMatrix {
    pub fn trace(&self) -> f64 {
        self.pop_a + self.pop_b + self.pop_c + self.pop_d + self.pop_e
    }

    pub fn populations(&self) -> [f64; 5] {
        [self.pop_a, self.pop_b, self.pop_c, self.pop_d, self.pop_e]
    }

    pub fn to_vector(&self) -> [f64; STATE_DIM] {
        [
            self.pop_a,
            self.pop_b,
            self.pop_c,
            self.pop_d,
            self.pop_e,
            self.coh_ab.re,
            self.coh_ab.im,
            self.coh_ca.re,
            self.coh_ca.im,
            self.coh_cb.re,
            self.coh_cb.im,
            self.coh_ad.re,
            self.coh_ad.im,
        ]
    }

    pub fn from_vector(v: &[f64; STATE_DIM]) -> Self {
        DensityMatrix {
            pop_a: v[idx::POP_A],
            pop_b: v[idx::POP_B],
            pop_c: v[idx::POP_C],
            pop_d: v[idx::POP_D],
            pop_e: v[idx::POP_E],
            coh_ab: Complex64::new(v[idx::RE_AB], v[idx::IM_AB]),
            coh_ca: Complex64::new(v[idx::RE_CA], v[idx::IM_CA]),
            coh_cb: Complex64::new(v[idx::RE_CB], v[idx::IM_CB]),
            coh_ad: Complex64::new(v[idx::RE_AD], v[idx::IM_AD]),
        }
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.to_vector()
            .iter()
            .zip(other.to_vector().iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}
