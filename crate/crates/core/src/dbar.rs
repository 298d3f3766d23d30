//! Solving `dbar u = v` on the unit disc.
//!
//! [`DbarSolver`] is the pluggable contract: given a bounded `(0, l)`-form
//! valued Koszul element it returns a bounded `(0, l - 1)` preimage under
//! `dbar`. [`DiscCauchySolver`] implements it for `n = 1` with the
//! Cauchy-Pompeiu particular solution
//!
//! ```text
//! u(z) = (1/pi) \iint_D v(w) / (z - w) dA(w)
//! ```
//!
//! discretized by the grid's midpoint rule with the self cell skipped.
//!
//! Two kernels compute the same quadrature sum. [`Kernel::Direct`] sums all
//! `P` terms per node (pairwise, i-major then k-minor). [`Kernel::Ring`]
//! uses rotational symmetry: for fixed output ring `i` and source ring `a`
//! the kernel depends only on the angle difference, so the inner sum is a
//! circular correlation evaluated through the DFT, with the kernel's DFT in
//! closed form.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{KoszulError, SolverError};
use crate::field::ScalarField;
use crate::koszul::{kelem_axpy, koszul_dbar_with, DiscWirtinger, KoszulElement, PartialDbar};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// O(P^2) sum with pairwise accumulation.
    Direct,
    /// O(n_r^2 n_theta + n_r n_theta log n_theta) ring correlation.
    #[default]
    Ring,
}

/// Cauchy-Pompeiu transform with the default kernel.
pub fn cauchy_pompeiu_transform(v: &ScalarField) -> ScalarField {
    cauchy_pompeiu_with(v, Kernel::default())
}

pub fn cauchy_pompeiu_with(v: &ScalarField, kernel: Kernel) -> ScalarField {
    if v.is_zero() {
        return ScalarField::zeros(v.grid());
    }
    match kernel {
        Kernel::Direct => direct(v),
        Kernel::Ring => ring(v),
    }
}

fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    const LEAF: usize = 32;
    if terms.len() <= LEAF {
        return terms.iter().sum();
    }
    let (a, b) = terms.split_at(terms.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn direct(v: &ScalarField) -> ScalarField {
    let grid = v.grid();
    let p = grid.len();
    let nodes = grid.nodes();
    let src: Vec<Complex64> = v
        .values()
        .iter()
        .enumerate()
        .map(|(idx, &val)| val * grid.weight(idx) / PI)
        .collect();
    let values: Vec<Complex64> = (0..p)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(p),
            |terms, out| {
                terms.clear();
                let z = nodes[out];
                for (idx, (&w, &s)) in nodes.iter().zip(&src).enumerate() {
                    if idx != out {
                        terms.push(s / (z - w));
                    }
                }
                pairwise_sum(terms)
            },
        )
        .collect();
    ScalarField::from_vec_unchecked(Arc::clone(grid), values)
}

/// `sum_d e^{2 pi i d q / N} K(d)` for `K(d) = 1 / (r - rho e^{2 pi i d / N})`,
/// with `K(0)` dropped when `rho == r`.
fn ring_kernel_dft(r: f64, rho: f64, same_ring: bool, n: usize, out: &mut [Complex64]) {
    let nf = n as f64;
    if same_ring {
        // S(0) = (N-1)/2, S(q) = q - 1 - (N-1)/2 for q >= 1
        let half = (nf - 1.0) / 2.0;
        out[0] = Complex64::new(half / r, 0.0);
        for (q, o) in out.iter_mut().enumerate().skip(1) {
            *o = Complex64::new((q as f64 - 1.0 - half) / r, 0.0);
        }
    } else if rho < r {
        // (N / r) t^{(-q) mod N} / (1 - t^N), t = rho / r
        let t = rho / r;
        let scale = nf / (r * (1.0 - t.powi(n as i32)));
        let mut pow = scale;
        out[0] = Complex64::new(scale, 0.0);
        for q in 1..n {
            pow *= t;
            out[n - q] = Complex64::new(pow, 0.0);
        }
    } else {
        // -(N / rho) s^{(q-1) mod N} / (1 - s^N), s = r / rho
        let s = r / rho;
        let scale = -nf / (rho * (1.0 - s.powi(n as i32)));
        let mut pow = scale;
        for q in 1..=n {
            out[q % n] = Complex64::new(pow, 0.0);
            pow *= s;
        }
    }
}

fn ring(v: &ScalarField) -> ScalarField {
    let grid = v.grid();
    let n_r = grid.n_r();
    let n_t = grid.n_theta();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n_t);
    let inverse = planner.plan_fft_inverse(n_t);

    let mut spectra: Vec<Complex64> = v.values().to_vec();
    for (a, ring) in spectra.chunks_mut(n_t).enumerate() {
        forward.process(ring);
        let w = grid.ring_weight(a) / PI;
        ring.iter_mut().for_each(|c| *c *= w);
    }

    let mut values = vec![ZERO; grid.len()];
    values
        .par_chunks_mut(n_t)
        .enumerate()
        .for_each(|(i, out)| {
            let r = grid.radius(i);
            let mut kernel = vec![ZERO; n_t];
            let mut acc = vec![ZERO; n_t];
            for a in 0..n_r {
                ring_kernel_dft(r, grid.radius(a), a == i, n_t, &mut kernel);
                let spec = &spectra[a * n_t..(a + 1) * n_t];
                for q in 0..n_t {
                    acc[q] += spec[q] * kernel[q];
                }
            }
            inverse.process(&mut acc);
            let norm = 1.0 / n_t as f64;
            for (k, o) in out.iter_mut().enumerate() {
                *o = acc[k] * grid.phase(k).conj() * norm;
            }
        });
    ScalarField::from_vec_unchecked(Arc::clone(grid), values)
}

/// Bookkeeping for one solve.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverStats {
    pub components_solved: usize,
    pub max_input_sup: f64,
    pub max_output_sup: f64,
    pub resolution: (usize, usize),
}

impl SolverStats {
    /// Measured `sup |u| / sup |v|`; zero when nothing was solved.
    pub fn operator_ratio(&self) -> f64 {
        if self.max_input_sup > 0.0 {
            self.max_output_sup / self.max_input_sup
        } else {
            0.0
        }
    }

    pub fn merge(&mut self, other: &SolverStats) {
        self.components_solved += other.components_solved;
        self.max_input_sup = self.max_input_sup.max(other.max_input_sup);
        self.max_output_sup = self.max_output_sup.max(other.max_output_sup);
        if other.resolution != (0, 0) {
            self.resolution = other.resolution;
        }
    }
}

/// A domain on which bounded `dbar`-closed forms have bounded `dbar` preimages.
pub trait DbarSolver: Sync {
    fn name(&self) -> &str;

    /// `dbar` of the domain, used to audit solutions.
    fn dbar(&self) -> &dyn PartialDbar;

    /// Returns `w'` of degree `(j, l - 1)` with `dbar w' = w`.
    fn solve(&self, omega: &KoszulElement) -> Result<(KoszulElement, SolverStats), SolverError>;
}

/// Cauchy-Pompeiu solver for `(0,1)`-forms on the unit disc.
#[derive(Debug, Clone, Copy, Default)]
pub struct DiscCauchySolver {
    pub kernel: Kernel,
}

impl DiscCauchySolver {
    pub fn new(kernel: Kernel) -> Self {
        Self { kernel }
    }
}

impl DbarSolver for DiscCauchySolver {
    fn name(&self) -> &str {
        match self.kernel {
            Kernel::Direct => "disc-cauchy-pompeiu-direct",
            Kernel::Ring => "disc-cauchy-pompeiu-ring",
        }
    }

    fn dbar(&self) -> &dyn PartialDbar {
        &DiscWirtinger
    }

    fn solve(&self, omega: &KoszulElement) -> Result<(KoszulElement, SolverStats), SolverError> {
        solve_01(omega, self.kernel)
    }
}

/// Solves each `(0,1)` component with the Cauchy-Pompeiu transform.
pub fn solve_01(
    omega: &KoszulElement,
    kernel: Kernel,
) -> Result<(KoszulElement, SolverStats), SolverError> {
    let degree = omega.degree();
    if omega.n() != 1 || degree.form != 1 {
        return Err(SolverError::UnsupportedDegree {
            l: degree.form,
            n: omega.n(),
        });
    }
    let grid = omega.grid();
    let mut stats = SolverStats {
        resolution: (grid.n_r(), grid.n_theta()),
        ..SolverStats::default()
    };
    let mut parts = Vec::with_capacity(omega.components().len());
    for ((wj, _), v) in omega.components() {
        let u = cauchy_pompeiu_with(v, kernel);
        stats.components_solved += 1;
        stats.max_input_sup = stats.max_input_sup.max(v.sup_norm_full());
        stats.max_output_sup = stats.max_output_sup.max(u.sup_norm_full());
        parts.push(((wj.clone(), crate::koszul::MultiIndex::empty()), u));
    }
    let wedge = degree.wedge.max(0) as usize;
    let out = KoszulElement::from_components(omega.m(), 1, wedge, 0, grid, parts)
        .map_err(SolverError::from)?;
    Ok((out, stats))
}

/// Contract audit of a claimed solution `w'` of `dbar w' = w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverDefect {
    /// Interior sup-norm of `dbar w' - w`.
    pub defect: f64,
    /// Full-grid sup-norm of `w'`.
    pub output_sup: f64,
}

pub fn verify_solver(
    solver: &dyn DbarSolver,
    omega: &KoszulElement,
    solution: &KoszulElement,
    r_int: f64,
) -> Result<SolverDefect, SolverError> {
    let (d, s) = (omega.degree(), solution.degree());
    if d.wedge != s.wedge || d.form != s.form + 1 || omega.m() != solution.m() {
        return Err(KoszulError::DegreeMismatch(d.to_string(), s.to_string()).into());
    }
    let applied = koszul_dbar_with(solution, solver.dbar())?;
    let diff = kelem_axpy(Complex64::new(-1.0, 0.0), omega, &applied)?;
    Ok(SolverDefect {
        defect: diff.sup_norm(r_int),
        output_sup: solution.sup_norm_full(),
    })
}
