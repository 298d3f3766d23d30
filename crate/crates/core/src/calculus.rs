//! Finite-difference Wirtinger derivative on the polar grid.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::field::ScalarField;

/// The `dz-bar` coefficient of `dbar u`, from
/// `d/dzbar = (e^{i theta} / 2) (d/dr + (i / r) d/dtheta)`.
///
/// Central differences in `r` and (periodic) `theta`; three-point one-sided
/// differences on the first and last ring, so the scheme is second order on
/// every ring.
pub fn wirtinger_dbar_fd(u: &ScalarField) -> ScalarField {
    let grid = u.grid();
    let n_r = grid.n_r();
    let n_t = grid.n_theta();
    let dr = grid.dr();
    let dt = grid.dtheta();
    let v = u.values();

    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (i, k) = grid.split(idx);
            let at = |ii: usize| v[ii * n_t + k];
            let d_r = if n_r == 2 {
                (at(1) - at(0)) / dr
            } else if i == 0 {
                (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * dr)
            } else if i == n_r - 1 {
                (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * dr)
            } else {
                (at(i + 1) - at(i - 1)) / (2.0 * dr)
            };
            let kp = if k + 1 == n_t { 0 } else { k + 1 };
            let km = if k == 0 { n_t - 1 } else { k - 1 };
            let d_t = (v[i * n_t + kp] - v[i * n_t + km]) / (2.0 * dt);
            let r = grid.radius(i);
            0.5 * grid.phase(k) * (d_r + Complex64::i() * d_t / r)
        })
        .collect();
    ScalarField::from_vec_unchecked(grid.clone(), values)
}
