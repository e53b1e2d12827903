#![allow(dead_code)]

use std::f64::consts::PI;

use bratio::plasma::SPEED_OF_LIGHT_CM_PER_S;

/// Thermal average `n <v sigma>` by composite Simpson quadrature over the
/// Maxwell energy distribution, with the threshold cross-section
/// `sigma(E) = kbar (1 - e_i / E)` above `e_i`.
pub fn boltzmann_rate_quadrature(n_e: f64, kt: f64, mass: f64, kbar: f64, e_i: f64) -> f64 {
    let intervals = 20_000;
    let span = 60.0 * kt;
    let h = span / intervals as f64;
    let integrand = |e: f64| {
        if e <= e_i {
            return 0.0;
        }
        let v = SPEED_OF_LIGHT_CM_PER_S * (2.0 * e / mass).sqrt();
        let sigma = kbar * (1.0 - e_i / e);
        let f = 2.0 / PI.sqrt() * e.sqrt() * kt.powf(-1.5) * (-e / kt).exp();
        v * sigma * f
    };
    let mut sum = integrand(e_i) + integrand(e_i + span);
    for k in 1..intervals {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * integrand(e_i + k as f64 * h);
    }
    n_e * sum * h / 3.0
}

pub fn rel_err(got: f64, expected: f64) -> f64 {
    (got - expected).abs() / expected.abs()
}
