use std::sync::Arc;

use num_complex::Complex64;

use crate::calculus::wirtinger_dbar_fd;
use crate::error::PipelineError;
use crate::field::ScalarField;
use crate::grid::PolarGrid;
use crate::spec::FunctionSpec;

/// Corona data `f_1..f_m` on the disc with the level `epsilon`.
#[derive(Debug, Clone)]
pub struct CoronaProblem {
    specs: Vec<FunctionSpec>,
    f: Vec<ScalarField>,
    boundary: Vec<Vec<Complex64>>,
    epsilon: f64,
    grid: Arc<PolarGrid>,
}

impl CoronaProblem {
    /// Samples every spec on the grid nodes and on the unit circle.
    pub fn new(
        specs: Vec<FunctionSpec>,
        epsilon: f64,
        grid: Arc<PolarGrid>,
    ) -> Result<Self, PipelineError> {
        if specs.is_empty() {
            return Err(PipelineError::InvalidProblem("need at least one function".into()));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(PipelineError::InvalidProblem(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        let circle = grid.boundary_ring();
        let mut f = Vec::with_capacity(specs.len());
        let mut boundary = Vec::with_capacity(specs.len());
        for spec in &specs {
            spec.validate()?;
            f.push(spec.sample(&grid)?);
            boundary.push(spec.eval_points(&circle)?);
        }
        Ok(Self {
            specs,
            f,
            boundary,
            epsilon,
            grid,
        })
    }

    pub fn m(&self) -> usize {
        self.specs.len()
    }

    /// Complex dimension; the shipped grid is the disc.
    pub fn n(&self) -> usize {
        1
    }

    pub fn specs(&self) -> &[FunctionSpec] {
        &self.specs
    }

    pub fn f(&self) -> &[ScalarField] {
        &self.f
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn grid(&self) -> &Arc<PolarGrid> {
        &self.grid
    }

    /// Same data and grid with another level.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self, PipelineError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(PipelineError::InvalidProblem(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Self {
            epsilon,
            ..self.clone()
        })
    }

    /// Interior FD holomorphy defect of each sampled `f_j`.
    pub fn input_defects(&self, r_int: f64) -> Vec<f64> {
        self.f
            .iter()
            .map(|f| wirtinger_dbar_fd(f).sup_norm(r_int))
            .collect()
    }

    /// Calls `visit(point, |f_1|, ..., |f_m|)` at each grid node, then at
    /// each boundary sample.
    fn for_each_sample(&self, mut visit: impl FnMut(Complex64, &[f64])) {
        let m = self.m();
        let mut abs = vec![0.0; m];
        for idx in 0..self.grid.len() {
            for (a, f) in abs.iter_mut().zip(&self.f) {
                *a = f.values()[idx].norm();
            }
            visit(self.grid.node_at(idx), &abs);
        }
        let circle = self.grid.boundary_ring();
        for (k, &z) in circle.iter().enumerate() {
            for (a, b) in abs.iter_mut().zip(&self.boundary) {
                *a = b[k].norm();
            }
            visit(z, &abs);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoronaCheck {
    pub pass: bool,
    /// Minimum of `sum_j |f_j|` over nodes and boundary samples.
    pub min_sum: f64,
    pub point: Complex64,
}

/// `sum_j |f_j| > epsilon` at every grid node and boundary sample.
pub fn check_corona_condition(p: &CoronaProblem) -> CoronaCheck {
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    p.for_each_sample(|z, abs| {
        let s: f64 = abs.iter().sum();
        if s < best.0 {
            best = (s, z);
        }
    });
    CoronaCheck {
        pass: best.0 > p.epsilon(),
        min_sum: best.0,
        point: best.1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationCheck {
    pub pass: bool,
    /// Sample point with the smallest `max_j |f_j|`.
    pub worst_point: Complex64,
    pub worst_max_abs: f64,
    /// `epsilon (1 + margin)`.
    pub threshold: f64,
}

/// Grid proxy for empty intersection of the closed sublevel sets
/// `{|f_j| <= epsilon}`: every sample must have some `|f_j| >= epsilon (1 + margin)`.
pub fn check_separation(p: &CoronaProblem, margin: f64) -> SeparationCheck {
    let threshold = p.epsilon() * (1.0 + margin);
    let mut worst = (f64::INFINITY, Complex64::new(0.0, 0.0));
    p.for_each_sample(|z, abs| {
        let mx = abs.iter().fold(0.0_f64, |a, &b| a.max(b));
        if mx < worst.0 {
            worst = (mx, z);
        }
    });
    SeparationCheck {
        pass: worst.0 >= threshold,
        worst_point: worst.1,
        worst_max_abs: worst.0,
        threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos::Demo;

    fn problem(specs: &[&str], eps: f64) -> CoronaProblem {
        let grid = PolarGrid::new(64, 128).unwrap();
        CoronaProblem::new(specs.iter().map(|s| s.parse().unwrap()).collect(), eps, grid).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        let grid = PolarGrid::new(8, 16).unwrap();
        assert!(CoronaProblem::new(vec![], 0.1, grid.clone()).is_err());
        let one = vec!["poly:1".parse().unwrap()];
        assert!(CoronaProblem::new(one.clone(), 0.0, grid.clone()).is_err());
        assert!(CoronaProblem::new(one, -1.0, grid).is_err());
    }

    #[test]
    fn corona_condition_examples() {
        let c = check_corona_condition(&problem(&["poly:0,1", "poly:1,-1"], 0.4));
        assert!(c.pass);
        // |z| + |1 - z| >= 1 with equality on [0, 1]
        assert!(c.min_sum >= 1.0 - 1e-12 && c.min_sum < 1.0 + 1e-3);

        let c = check_corona_condition(&problem(&["poly:0,1"], 0.5));
        assert!(!c.pass);
        assert!(c.min_sum < 0.5);

        let c = check_corona_condition(&problem(&["poly:2"], 1.0));
        assert!(c.pass);
        assert_eq!(c.min_sum, 2.0);
    }

    #[test]
    fn separation_examples() {
        let s = check_separation(&problem(&["poly:0,1", "poly:1,-1"], 0.4), 0.05);
        assert!(s.pass);
        assert!((s.worst_max_abs - 0.5).abs() < 0.02);
        assert!((s.worst_point - 0.5).norm() < 0.03, "{}", s.worst_point);

        let s = check_separation(&problem(&["poly:0,1", "poly:1,-1"], 0.5), 0.05);
        assert!(!s.pass);
        assert!((s.worst_point - 0.5).norm() < 0.03);

        let t = Demo::Triple.problem(64, 128).unwrap();
        let s = check_separation(&t, 0.05);
        assert!(s.pass, "{s:?}");
        // circumcentre (1+i)/2 at distance sqrt(2)/2: max |f_j| = 1/2 there
        assert!((s.worst_max_abs - 0.5).abs() < 0.02);
    }

    #[test]
    fn separation_monotone_in_epsilon() {
        for demo in [Demo::WolffTrivial, Demo::Squares, Demo::Triple] {
            let p = demo.problem(32, 64).unwrap();
            assert!(check_separation(&p, 0.05).pass);
            for k in 1..=20 {
                let eps = p.epsilon() * k as f64 / 20.0;
                assert!(check_separation(&p.with_epsilon(eps).unwrap(), 0.05).pass);
            }
        }
    }
}
