use num_complex::Complex64;

use super::problem::CoronaProblem;
use crate::calculus::wirtinger_dbar_fd;
use crate::error::PipelineError;
use crate::field::ScalarField;

/// Default smoothstep band width relative to epsilon.
pub const DEFAULT_SIGMA: f64 = 0.5;
/// Smallest acceptable `min sum chi_j`.
pub const DEFAULT_CHI_MIN: f64 = 0.1;

/// C2 smoothstep `6t^5 - 15t^4 + 10t^3` clamped to `[0, 1]`.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 + t * (6.0 * t - 15.0))
    }
}

/// Normalized smoothsteps `rho_j = chi_j / sum_k chi_k` with
/// `chi_j = smoothstep((|f_j| - eps) / (sigma eps))`, so `rho_j` vanishes
/// wherever `|f_j| <= eps`.
#[derive(Debug, Clone)]
pub struct PartitionOfUnity {
    pub rho: Vec<ScalarField>,
    pub epsilon: f64,
    pub sigma: f64,
    /// Minimum over nodes of `sum_j chi_j` before normalization.
    pub chi_min: f64,
}

pub fn build_partition_of_unity(
    p: &CoronaProblem,
    sigma: f64,
    c_min: f64,
) -> Result<PartitionOfUnity, PipelineError> {
    if !(sigma > 0.0) {
        return Err(PipelineError::InvalidProblem(format!("sigma must be positive, got {sigma}")));
    }
    let eps = p.epsilon();
    let chi: Vec<ScalarField> = p
        .f()
        .iter()
        .map(|f| f.map(|v| Complex64::new(smoothstep((v.norm() - eps) / (sigma * eps)), 0.0)))
        .collect();
    let grid = p.grid();
    let total: Vec<f64> = (0..grid.len())
        .map(|idx| chi.iter().map(|c| c.values()[idx].re).sum())
        .collect();
    let chi_min = total.iter().copied().fold(f64::INFINITY, f64::min);
    if !(chi_min >= c_min) {
        return Err(PipelineError::SeparationTooTight { chi_min, c_min });
    }
    let rho = chi
        .iter()
        .map(|c| {
            let vals = c
                .values()
                .iter()
                .zip(&total)
                .map(|(v, s)| Complex64::new(v.re / s, 0.0))
                .collect();
            ScalarField::from_vec_unchecked(grid.clone(), vals)
        })
        .collect();
    Ok(PartitionOfUnity {
        rho,
        epsilon: eps,
        sigma,
        chi_min,
    })
}

/// `g_j = rho_j / f_j` together with the two sup-norm bounds it must obey.
#[derive(Debug, Clone)]
pub struct SmoothSolution {
    pub g: Vec<ScalarField>,
    /// `eps^{-1} ||rho_j|| - ||g_j||`, full grid.
    pub g_bound_margin: Vec<f64>,
    /// `eps^{-1} ||dbar rho_j|| - ||dbar g_j||`, interior.
    pub dbar_g_bound_margin: Vec<f64>,
}

/// Relative size of `|f_j|` inside `supp rho_j` that signals a broken support.
const SUPPORT_FLOOR: f64 = 1e-6;

pub fn smooth_solution(
    p: &CoronaProblem,
    pou: &PartitionOfUnity,
    r_int: f64,
) -> Result<SmoothSolution, PipelineError> {
    let eps = p.epsilon();
    let mut g = Vec::with_capacity(p.m());
    for (f, rho) in p.f().iter().zip(&pou.rho) {
        let mut vals = Vec::with_capacity(f.values().len());
        for (idx, (&fv, &rv)) in f.values().iter().zip(rho.values()).enumerate() {
            if rv.re > 0.0 {
                if fv.norm() <= eps * SUPPORT_FLOOR {
                    return Err(PipelineError::SupportViolation {
                        index: idx,
                        abs_f: fv.norm(),
                        rho: rv.re,
                    });
                }
                vals.push(rv / fv);
            } else {
                vals.push(Complex64::new(0.0, 0.0));
            }
        }
        g.push(ScalarField::from_vec_unchecked(p.grid().clone(), vals));
    }
    let g_bound_margin = g
        .iter()
        .zip(&pou.rho)
        .map(|(g, rho)| rho.sup_norm_full() / eps - g.sup_norm_full())
        .collect();
    let dbar_g_bound_margin = g
        .iter()
        .zip(&pou.rho)
        .map(|(g, rho)| {
            wirtinger_dbar_fd(rho).sup_norm(r_int) / eps - wirtinger_dbar_fd(g).sup_norm(r_int)
        })
        .collect();
    Ok(SmoothSolution {
        g,
        g_bound_margin,
        dbar_g_bound_margin,
    })
}
