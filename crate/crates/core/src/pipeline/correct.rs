//! Koszul correction of a smooth solution into a holomorphic one.
//!
//! Given `x` in `K_{j,l}` with `b x = 0` and `dbar x = 0`, returns `x'` in
//! `K_{j+1,l}` with `b x' = x` and `dbar x' = 0`, by downward induction on the
//! form degree:
//!
//! ```text
//! l = n:   x' = eta(x)
//! l < n:   y  = correct(dbar eta(x))     in K_{j+2, l+1}
//!          z  = solve(y)                 in K_{j+2, l},  dbar z = y
//!          x' = eta(x) - b(z)
//! ```
//!
//! `b x' = b eta(x) = x` holds pointwise, so the b-equation is exact no matter
//! how accurate `solve` is.

use num_complex::Complex64;

use super::problem::CoronaProblem;
use crate::dbar::{DbarSolver, SolverStats};
use crate::error::PipelineError;
use crate::field::ScalarField;
use crate::koszul::{eta, kelem_axpy, koszul_b, koszul_dbar_with, KoszulElement};

/// Tolerances for the entry checks of [`corona_correct`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionTolerances {
    /// Allowed `sup |b x|`, relative to `max(1, sup |x|)`.
    pub b_closed: f64,
    /// Allowed interior `sup |dbar x|`.
    pub dbar_closed: f64,
    /// Allowed `sup |1 - sum f_j g_j|`.
    pub unit: f64,
    pub r_int: f64,
}

impl Default for CorrectionTolerances {
    fn default() -> Self {
        Self {
            b_closed: 1e-12,
            dbar_closed: 1e-8,
            unit: 1e-12,
            r_int: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorrectionStats {
    pub solver: SolverStats,
    /// Number of nested levels entered, counting the top call.
    pub depth: usize,
    /// Number of nonzero solver invocations.
    pub solves: usize,
}

/// Lifts `x` along `b` with a `dbar`-closed result.
pub fn corona_correct(
    x: &KoszulElement,
    p: &CoronaProblem,
    g: &[ScalarField],
    solver: &dyn DbarSolver,
    tol: &CorrectionTolerances,
) -> Result<(KoszulElement, CorrectionStats), PipelineError> {
    let f = p.f();
    let scale = x.sup_norm_full().max(1.0);
    let bx = koszul_b(x, f)?.sup_norm_full();
    if bx > tol.b_closed * scale {
        return Err(PipelineError::Precondition {
            what: "b(x)",
            value: bx,
            tolerance: tol.b_closed * scale,
        });
    }
    let dx = koszul_dbar_with(x, solver.dbar())?.sup_norm(tol.r_int);
    if dx > tol.dbar_closed {
        return Err(PipelineError::Precondition {
            what: "dbar(x)",
            value: dx,
            tolerance: tol.dbar_closed,
        });
    }
    let unit = (0..p.grid().len())
        .map(|idx| {
            let s: Complex64 = f.iter().zip(g).map(|(f, g)| f.values()[idx] * g.values()[idx]).sum();
            (s - 1.0).norm()
        })
        .fold(0.0, f64::max);
    if unit > tol.unit {
        return Err(PipelineError::Precondition {
            what: "1 - sum f_j g_j",
            value: unit,
            tolerance: tol.unit,
        });
    }
    let mut stats = CorrectionStats::default();
    let out = lift(x, f, g, solver, 1, &mut stats)?;
    Ok((out, stats))
}

fn lift(
    x: &KoszulElement,
    f: &[ScalarField],
    g: &[ScalarField],
    solver: &dyn DbarSolver,
    depth: usize,
    stats: &mut CorrectionStats,
) -> Result<KoszulElement, PipelineError> {
    stats.depth = stats.depth.max(depth);
    let d = x.degree();
    if x.is_zero() {
        return Ok(KoszulElement::zero(x.m(), x.n(), d.wedge + 1, d.form, x.grid()));
    }
    let lifted = eta(x, g)?.pruned();
    if d.form >= x.n() as i64 {
        return Ok(lifted);
    }
    let obstruction = koszul_dbar_with(&lifted, solver.dbar())?.pruned();
    if obstruction.is_zero() {
        return Ok(lifted);
    }
    let y = lift(&obstruction, f, g, solver, depth + 1, stats)?;
    if y.is_zero() {
        return Ok(lifted);
    }
    let (z, s) = solver.solve(&y)?;
    stats.solver.merge(&s);
    stats.solves += 1;
    let bz = koszul_b(&z, f)?;
    Ok(kelem_axpy(Complex64::new(-1.0, 0.0), &bz, &lifted)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbar::DiscCauchySolver;
    use crate::demos::Demo;
    use crate::koszul::MultiIndex;
    use crate::pipeline::partition::{build_partition_of_unity, smooth_solution};

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn setup(demo: Demo, nr: usize) -> (CoronaProblem, Vec<ScalarField>) {
        let p = demo.problem(nr, 2 * nr).unwrap();
        let pou = build_partition_of_unity(&p, 0.5, 0.1).unwrap();
        let g = smooth_solution(&p, &pou, 0.9).unwrap().g;
        (p, g)
    }

    fn one(p: &CoronaProblem) -> KoszulElement {
        KoszulElement::scalar(p.m(), 1, ScalarField::constant(p.grid(), Complex64::new(1.0, 0.0)))
    }

    #[test]
    fn constant_data_needs_no_solve() {
        let (p, g) = setup(Demo::Single, 16);
        let solver = DiscCauchySolver::default();
        let (x, stats) =
            corona_correct(&one(&p), &p, &g, &solver, &CorrectionTolerances::default()).unwrap();
        assert_eq!(stats.solves, 0);
        let h = x.component(&mi(&[1]), &mi(&[])).unwrap();
        assert!(h.values().iter().all(|v| *v == Complex64::new(0.5, 0.0)));
    }

    #[test]
    fn two_functions_unroll_to_wolff_form() {
        let (p, g) = setup(Demo::WolffTrivial, 32);
        let solver = DiscCauchySolver::default();
        let (x, stats) =
            corona_correct(&one(&p), &p, &g, &solver, &CorrectionTolerances::default()).unwrap();
        assert_eq!(stats.solves, 1);
        assert_eq!(stats.solver.components_solved, 1);
        assert_eq!(stats.depth, 2);

        // hand unroll: z12 solves dbar z12 = g1 dbar g2 - g2 dbar g1,
        // h1 = g1 + f2 z12, h2 = g2 - f1 z12
        let d1 = crate::calculus::wirtinger_dbar_fd(&g[0]);
        let d2 = crate::calculus::wirtinger_dbar_fd(&g[1]);
        let rhs = g[0].mul(&d2).unwrap().sub(&g[1].mul(&d1).unwrap()).unwrap();
        let z12 = crate::dbar::cauchy_pompeiu_transform(&rhs);
        let f = p.f();
        let h1 = g[0].add(&f[1].mul(&z12).unwrap()).unwrap();
        let h2 = g[1].sub(&f[0].mul(&z12).unwrap()).unwrap();
        let got1 = x.component(&mi(&[1]), &mi(&[])).unwrap();
        let got2 = x.component(&mi(&[2]), &mi(&[])).unwrap();
        assert!(got1.sub(&h1).unwrap().sup_norm_full() < 1e-13);
        assert!(got2.sub(&h2).unwrap().sup_norm_full() < 1e-13);
    }

    #[test]
    fn triple_is_b_exact() {
        let (p, g) = setup(Demo::Triple, 32);
        let solver = DiscCauchySolver::default();
        let x = one(&p);
        let (lifted, stats) =
            corona_correct(&x, &p, &g, &solver, &CorrectionTolerances::default()).unwrap();
        assert_eq!(stats.solver.components_solved, 3);
        let back = koszul_b(&lifted, p.f()).unwrap();
        let diff = kelem_axpy(Complex64::new(-1.0, 0.0), &x, &back).unwrap();
        assert!(diff.sup_norm_full() <= 1e-12);
    }

    #[test]
    fn rejects_non_closed_input() {
        let (p, g) = setup(Demo::WolffTrivial, 16);
        let solver = DiscCauchySolver::default();
        let x = KoszulElement::from_components(
            2,
            1,
            1,
            0,
            p.grid(),
            [((mi(&[1]), mi(&[])), ScalarField::constant(p.grid(), Complex64::new(1.0, 0.0)))],
        )
        .unwrap();
        match corona_correct(&x, &p, &g, &solver, &CorrectionTolerances::default()) {
            Err(PipelineError::Precondition { what: "b(x)", value, .. }) => assert!(value > 0.5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_input_returns_zero() {
        let (p, g) = setup(Demo::WolffTrivial, 16);
        let solver = DiscCauchySolver::default();
        let x = KoszulElement::zero(2, 1, 0, 0, p.grid());
        let (out, stats) =
            corona_correct(&x, &p, &g, &solver, &CorrectionTolerances::default()).unwrap();
        assert!(out.components().is_empty());
        assert_eq!(out.degree().wedge, 1);
        assert_eq!(stats.solves, 0);
    }
}
