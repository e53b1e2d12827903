use nalgebra::{DMatrix, DVector};

use crate::dynamics::generator::Generator;
use crate::error::{Error, Result};
use crate::model::{idx::POP_C, DensityMatrix, STATE_DIM};

/// Relative pivot size below which the constrained system counts as singular.
const PIVOT_TOL: f64 = 64.0 * f64::EPSILON;

fn active_submatrix(gen: &Generator) -> DMatrix<f64> {
    let active = gen.variant().active_indices();
    let n = active.len();
    DMatrix::from_fn(n, n, |i, j| gen.matrix()[(active[i], active[j])])
}

/// The trace-one state annihilated by the generator.
///
/// The `rho_cc` row of `G` is replaced by the trace constraint and the dense
/// system is solved with a fully pivoted LU factorization after row
/// equilibration.
pub fn steady_state(gen: &Generator) -> Result<DensityMatrix> {
    let variant = gen.variant();
    let active = variant.active_indices();
    let pops = variant.population_indices();
    let n = active.len();
    let constraint_row = active
        .iter()
        .position(|&i| i == POP_C)
        .expect("c is always active");

    let g = active_submatrix(gen);
    let mut a = g.clone();
    for (j, col) in active.iter().enumerate() {
        a[(constraint_row, j)] = if pops.contains(col) { 1.0 } else { 0.0 };
    }
    let mut b = DVector::zeros(n);
    b[constraint_row] = 1.0;

    for i in 0..n {
        let scale = a.row(i).iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return Err(Error::SingularSystem(format!(
                "state component {} is completely decoupled",
                active[i]
            )));
        }
        for j in 0..n {
            a[(i, j)] /= scale;
        }
        b[i] /= scale;
    }

    let lu = a.clone().full_piv_lu();
    let u = lu.u();
    let diag: Vec<f64> = (0..n).map(|i| u[(i, i)].abs()).collect();
    let max_pivot = diag.iter().copied().fold(0.0, f64::max);
    let min_pivot = diag.iter().copied().fold(f64::INFINITY, f64::min);
    if min_pivot.is_nan() || min_pivot <= PIVOT_TOL * max_pivot {
        return Err(Error::SingularSystem(format!(
            "rank-deficient constrained generator (pivot ratio {:e}); the rate graph is disconnected",
            min_pivot / max_pivot
        )));
    }
    let mut x = lu
        .solve(&b)
        .ok_or_else(|| Error::SingularSystem("LU solve failed".into()))?;

    // one step of iterative refinement
    let r = &b - &a * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }

    let g_norm = gen.norm_inf();
    let residual = (&g * &x).amax();
    if residual > 1e-10 * g_norm.max(f64::MIN_POSITIVE) {
        return Err(Error::SingularSystem(format!(
            "residual {residual:e} exceeds 1e-10 * |G| = {:e}",
            1e-10 * g_norm
        )));
    }

    let mut full = [0.0; STATE_DIM];
    for (k, &i) in active.iter().enumerate() {
        full[i] = x[k];
    }
    Ok(DensityMatrix::from_vector(&full))
}

/// Smallest decay rate among the non-stationary modes: `min(-Re lambda)` over
/// eigenvalues of `G` that are not numerically zero. `None` when the
/// generator has no decaying mode.
pub fn relaxation_gap(gen: &Generator) -> Option<f64> {
    let g = active_submatrix(gen);
    let norm = gen.norm_inf();
    if norm == 0.0 {
        return None;
    }
    let eig = g.complex_eigenvalues();
    eig.iter()
        .filter(|l| l.norm() > 1e-9 * norm)
        .map(|l| -l.re)
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.min(v)))
        })
}
