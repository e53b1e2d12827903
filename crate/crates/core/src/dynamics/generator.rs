use nalgebra::SMatrix;

use crate::error::{Error, Result};
use crate::model::{idx::*, RateSet, STATE_DIM};

pub type GeneratorMatrix = SMatrix<f64, STATE_DIM, STATE_DIM>;

/// Which equations of motion a [`Generator`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Closed three-level `a, b, c` system with arbitrary `r_a, r_b, gamma_a, gamma_b`.
    VSubsystem,
    /// Full five-level scheme including the auxiliary level `e`.
    FiveLevel,
    /// Four-level scheme with `e` adiabatically eliminated.
    Reduced,
}

impl Variant {
    /// State-vector entries that take part in the dynamics. The remaining
    /// rows and columns are identically zero.
    pub fn active_indices(self) -> &'static [usize] {
        const V: [usize; 9] = [
            POP_A, POP_B, POP_C, RE_AB, IM_AB, RE_CA, IM_CA, RE_CB, IM_CB,
        ];
        const FIVE: [usize; 13] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];
        const REDUCED: [usize; 12] = [0, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12];
        match self {
            Variant::VSubsystem => &V,
            Variant::FiveLevel => &FIVE,
            Variant::Reduced => &REDUCED,
        }
    }

    pub fn population_indices(self) -> &'static [usize] {
        match self {
            Variant::VSubsystem => &[POP_A, POP_B, POP_C],
            Variant::FiveLevel => &[POP_A, POP_B, POP_C, POP_D, POP_E],
            Variant::Reduced => &[POP_A, POP_B, POP_C, POP_D],
        }
    }
}

/// Real linear operator `G` with `dx/dt = G x` on the 13-component state
/// `[a, b, c, d, e, Re ab, Im ab, Re ca, Im ca, Re cb, Im cb, Re ad, Im ad]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    matrix: GeneratorMatrix,
    variant: Variant,
}

impl Generator {
    /// Wrap an arbitrary matrix. Rows and columns outside the variant's active
    /// set must be zero.
    pub fn from_matrix(matrix: GeneratorMatrix, variant: Variant) -> Result<Self> {
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidRates(
                "generator has non-finite entries".into(),
            ));
        }
        let active = variant.active_indices();
        for i in 0..STATE_DIM {
            if active.contains(&i) {
                continue;
            }
            if matrix.row(i).iter().any(|&x| x != 0.0) || matrix.column(i).iter().any(|&x| x != 0.0)
            {
                return Err(Error::InvalidRates(format!(
                    "entry {i} is inactive for {variant:?} but has nonzero couplings"
                )));
            }
        }
        Ok(Generator { matrix, variant })
    }

    pub fn matrix(&self) -> &GeneratorMatrix {
        &self.matrix
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn apply(&self, x: &[f64; STATE_DIM]) -> [f64; STATE_DIM] {
        let mut out = [0.0; STATE_DIM];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, xj) in x.iter().enumerate() {
                acc += self.matrix[(i, j)] * xj;
            }
            *o = acc;
        }
        out
    }

    /// Column sums restricted to the five population rows. Zero for every
    /// column means the trace is conserved.
    pub fn population_column_sums(&self) -> [f64; STATE_DIM] {
        let mut sums = [0.0; STATE_DIM];
        for (j, s) in sums.iter_mut().enumerate() {
            *s = POPULATIONS.iter().map(|&i| self.matrix[(i, j)]).sum();
        }
        sums
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..STATE_DIM)
            .map(|i| self.matrix.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Adds the detuned decay of the two-photon coherence and its population source.
fn two_photon_block(m: &mut GeneratorMatrix, decay: f64, delta: f64, source: f64) {
    m[(RE_AB, RE_AB)] = -decay;
    m[(RE_AB, IM_AB)] = delta;
    m[(IM_AB, IM_AB)] = -decay;
    m[(IM_AB, RE_AB)] = -delta;
    // (source/2)(2 rho_cc - rho_aa - rho_bb)
    m[(RE_AB, POP_C)] = source;
    m[(RE_AB, POP_A)] = -0.5 * source;
    m[(RE_AB, POP_B)] = -0.5 * source;
}

/// Coupled decay of rho_ca and rho_cb; real and imaginary parts evolve alike.
fn one_photon_block(m: &mut GeneratorMatrix, decay_ca: f64, decay_cb: f64, cross: f64) {
    for (ca, cb) in [(RE_CA, RE_CB), (IM_CA, IM_CB)] {
        m[(ca, ca)] = -decay_ca;
        m[(ca, cb)] = -cross;
        m[(cb, cb)] = -decay_cb;
        m[(cb, ca)] = -cross;
    }
}

fn uv_polarization_block(m: &mut GeneratorMatrix, decay: f64) {
    m[(RE_AD, RE_AD)] = -decay;
    m[(IM_AD, IM_AD)] = -decay;
}

/// Three-level V system `a, b -> c` with collisional interference.
///
/// Supports unequal rates; the interference strength is `p sqrt(r_a r_b)`.
/// `gamma_uv`, `gamma_e`, `r_e` and `r_uv` are ignored.
pub fn assemble_v_subsystem(rates: &RateSet) -> Result<Generator> {
    let (ga, gb, ra, rb) = (rates.gamma_a(), rates.gamma_b(), rates.r_a(), rates.r_b());
    let s = rates.p() * (ra * rb).sqrt();
    let mut m = GeneratorMatrix::zeros();

    m[(POP_A, POP_A)] = -(ra + ga);
    m[(POP_A, POP_C)] = ra;
    m[(POP_A, RE_AB)] = -s;

    m[(POP_B, POP_B)] = -(rb + gb);
    m[(POP_B, POP_C)] = rb;
    m[(POP_B, RE_AB)] = -s;

    m[(POP_C, POP_A)] = ra + ga;
    m[(POP_C, POP_B)] = rb + gb;
    m[(POP_C, POP_C)] = -(ra + rb);
    m[(POP_C, RE_AB)] = 2.0 * s;

    two_photon_block(&mut m, 0.5 * (ra + rb + ga + gb), rates.delta(), s);
    one_photon_block(
        &mut m,
        0.5 * (2.0 * ra + rb + ga),
        0.5 * (2.0 * rb + ra + gb),
        0.5 * s,
    );

    Generator::from_matrix(m, Variant::VSubsystem)
}

/// Closed five-level system: the V subsystem plus the UV lower level `d` and
/// the auxiliary upper level `e`. Symmetric scheme only.
pub fn assemble_five_level(rates: &RateSet) -> Result<Generator> {
    rates.require_simplified()?;
    let r = rates.r_vis();
    let gv = rates.gamma_vis();
    let gu = rates.gamma_uv();
    let ge = rates.gamma_e();
    let re = rates.r_e();
    let ru = rates.r_uv();
    let pr = rates.p() * r;
    let mut m = GeneratorMatrix::zeros();

    m[(POP_A, POP_A)] = -(r + gv + gu);
    m[(POP_A, POP_C)] = r;
    m[(POP_A, POP_E)] = ge;
    m[(POP_A, RE_AB)] = -pr;

    m[(POP_B, POP_B)] = -(r + gv);
    m[(POP_B, POP_C)] = r;
    m[(POP_B, POP_E)] = ge;
    m[(POP_B, RE_AB)] = -pr;

    m[(POP_C, POP_A)] = r + gv;
    m[(POP_C, POP_B)] = r + gv;
    m[(POP_C, POP_C)] = -(2.0 * r + re + ru);
    m[(POP_C, POP_D)] = ru;
    m[(POP_C, POP_E)] = re;
    m[(POP_C, RE_AB)] = 2.0 * pr;

    m[(POP_D, POP_A)] = gu;
    m[(POP_D, POP_C)] = ru;
    m[(POP_D, POP_D)] = -ru;

    m[(POP_E, POP_C)] = re;
    m[(POP_E, POP_E)] = -(re + 2.0 * ge);

    two_photon_block(&mut m, r + gv + 0.5 * gu, rates.delta(), pr);
    one_photon_block(
        &mut m,
        0.5 * (3.0 * r + gv + gu + re + ru),
        0.5 * (3.0 * r + gv + re + ru),
        0.5 * pr,
    );
    uv_polarization_block(&mut m, 0.5 * (gu + ru));

    Generator::from_matrix(m, Variant::FiveLevel)
}

/// Four-level system with `e` eliminated: each of `a` and `b` receives an
/// extra `(r_e / 2) rho_cc` feed and `c` loses `r_e rho_cc`.
///
/// The one-photon and UV polarization blocks are the same as in the
/// five-level generator.
pub fn assemble_reduced(rates: &RateSet) -> Result<Generator> {
    rates.require_simplified()?;
    let r = rates.r_vis();
    let gv = rates.gamma_vis();
    let gu = rates.gamma_uv();
    let re = rates.r_e();
    let ru = rates.r_uv();
    let pr = rates.p() * r;
    let feed = r + 0.5 * re;
    let mut m = GeneratorMatrix::zeros();

    m[(POP_A, POP_A)] = -(r + gv + gu);
    m[(POP_A, POP_C)] = feed;
    m[(POP_A, RE_AB)] = -pr;

    m[(POP_B, POP_B)] = -(r + gv);
    m[(POP_B, POP_C)] = feed;
    m[(POP_B, RE_AB)] = -pr;

    m[(POP_C, POP_A)] = r + gv;
    m[(POP_C, POP_B)] = r + gv;
    m[(POP_C, POP_C)] = -(2.0 * r + re + ru);
    m[(POP_C, POP_D)] = ru;
    m[(POP_C, RE_AB)] = 2.0 * pr;

    m[(POP_D, POP_A)] = gu;
    m[(POP_D, POP_C)] = ru;
    m[(POP_D, POP_D)] = -ru;

    two_photon_block(&mut m, r + gv + 0.5 * gu, rates.delta(), pr);
    one_photon_block(
        &mut m,
        0.5 * (3.0 * r + gv + gu + re + ru),
        0.5 * (3.0 * r + gv + re + ru),
        0.5 * pr,
    );
    uv_polarization_block(&mut m, 0.5 * (gu + ru));

    Generator::from_matrix(m, Variant::Reduced)
}

pub fn assemble(rates: &RateSet, variant: Variant) -> Result<Generator> {
    match variant {
        Variant::VSubsystem => assemble_v_subsystem(rates),
        Variant::FiveLevel => assemble_five_level(rates),
        Variant::Reduced => assemble_reduced(rates),
    }
}
