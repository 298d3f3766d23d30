use num_complex::Complex64;

use super::correct::{corona_correct, CorrectionStats, CorrectionTolerances};
use super::partition::{
    build_partition_of_unity, smooth_solution, PartitionOfUnity, SmoothSolution, DEFAULT_CHI_MIN,
    DEFAULT_SIGMA,
};
use super::problem::{check_corona_condition, check_separation, CoronaCheck, CoronaProblem, SeparationCheck};
use crate::calculus::wirtinger_dbar_fd;
use crate::dbar::DbarSolver;
use crate::error::{PipelineError, Stage};
use crate::field::ScalarField;
use crate::koszul::{KoszulElement, MultiIndex};
use crate::spec::format_real;

/// Verification radius for FD-based norms.
pub const DEFAULT_R_INT: f64 = 0.9;
/// Relative separation margin of the hypothesis proxy.
pub const DEFAULT_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub sigma: f64,
    pub margin: f64,
    pub chi_min: f64,
    pub r_int: f64,
    pub tolerances: CorrectionTolerances,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            sigma: DEFAULT_SIGMA,
            margin: DEFAULT_MARGIN,
            chi_min: DEFAULT_CHI_MIN,
            r_int: DEFAULT_R_INT,
            tolerances: CorrectionTolerances::default(),
        }
    }
}

/// Pure measurement of a candidate solution `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    /// `sup |1 - sum f_j h_j|` over `r <= r_int`.
    pub residual_sup_interior: f64,
    /// Same over every node.
    pub residual_sup: f64,
    /// Interior `sup |dbar h_j|`.
    pub holo_defect: Vec<f64>,
    /// Full-grid `sup |dbar h_j|`, informational.
    pub holo_defect_full: Vec<f64>,
    pub h_sup: Vec<f64>,
    pub r_int: f64,
}

impl Verification {
    pub fn max_holo_defect(&self) -> f64 {
        self.holo_defect.iter().copied().fold(0.0, f64::max)
    }

    /// `key = value` lines in the same style as [`SolveReport::to_text`].
    pub fn to_text(&self) -> String {
        let r = format_real;
        let mut out = format!(
            "r_int = {}\nresidual_sup = {}\nresidual_sup_interior = {}\nmax_holo_defect = {}\n",
            r(self.r_int),
            r(self.residual_sup),
            r(self.residual_sup_interior),
            r(self.max_holo_defect())
        );
        for (j, ((d, df), s)) in self
            .holo_defect
            .iter()
            .zip(&self.holo_defect_full)
            .zip(&self.h_sup)
            .enumerate()
        {
            let i = j + 1;
            out.push_str(&format!(
                "holo_defect_{i} = {}\nholo_defect_full_{i} = {}\nh_sup_{i} = {}\n",
                r(*d),
                r(*df),
                r(*s)
            ));
        }
        out
    }
}

pub fn verify_solution(
    p: &CoronaProblem,
    h: &[ScalarField],
    r_int: f64,
) -> Result<Verification, PipelineError> {
    if h.len() != p.m() {
        return Err(PipelineError::InvalidProblem(format!(
            "expected {} solution fields, got {}",
            p.m(),
            h.len()
        )));
    }
    let one = ScalarField::constant(p.grid(), Complex64::new(1.0, 0.0));
    let mut residual = one;
    for (f, hj) in p.f().iter().zip(h) {
        f.check_grid(hj)?;
        residual = residual.sub(&f.mul(hj)?)?;
    }
    let dbar: Vec<ScalarField> = h.iter().map(wirtinger_dbar_fd).collect();
    Ok(Verification {
        residual_sup_interior: residual.sup_norm(r_int),
        residual_sup: residual.sup_norm_full(),
        holo_defect: dbar.iter().map(|d| d.sup_norm(r_int)).collect(),
        holo_defect_full: dbar.iter().map(ScalarField::sup_norm_full).collect(),
        h_sup: h.iter().map(ScalarField::sup_norm_full).collect(),
        r_int,
    })
}

/// Everything a solve measured.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub m: usize,
    pub n_r: usize,
    pub n_theta: usize,
    pub epsilon: f64,
    pub sigma: f64,
    pub margin: f64,
    pub solver: String,
    pub corona: CoronaCheck,
    pub separation: SeparationCheck,
    pub chi_min: f64,
    pub input_defect: Vec<f64>,
    pub g_sup: Vec<f64>,
    pub g_bound_margin: Vec<f64>,
    pub dbar_g_bound_margin: Vec<f64>,
    pub correction: CorrectionStats,
    pub verification: Verification,
}

fn complex_text(z: Complex64) -> String {
    crate::spec::format_complex(z)
}

impl SolveReport {
    /// Stable `key = value` lines.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: String| out.push((k.to_string(), v));
        let r = format_real;
        put("m", self.m.to_string());
        put("n_r", self.n_r.to_string());
        put("n_theta", self.n_theta.to_string());
        put("epsilon", r(self.epsilon));
        put("sigma", r(self.sigma));
        put("margin", r(self.margin));
        put("r_int", r(self.verification.r_int));
        put("norms", "grid sup-norms over sampled nodes".to_string());
        put("solver", self.solver.clone());
        put("corona_min_sum", r(self.corona.min_sum));
        put("corona_min_point", complex_text(self.corona.point));
        put("separation_threshold", r(self.separation.threshold));
        put("separation_worst_max_abs", r(self.separation.worst_max_abs));
        put("separation_worst_point", complex_text(self.separation.worst_point));
        put("chi_min", r(self.chi_min));
        put("residual_sup", r(self.verification.residual_sup));
        put("residual_sup_interior", r(self.verification.residual_sup_interior));
        put("max_holo_defect", r(self.verification.max_holo_defect()));
        put("solver_components", self.correction.solver.components_solved.to_string());
        put("solver_calls", self.correction.solves.to_string());
        put("recursion_depth", self.correction.depth.to_string());
        put("solver_max_input_sup", r(self.correction.solver.max_input_sup));
        put("solver_max_output_sup", r(self.correction.solver.max_output_sup));
        put("solver_sup_ratio", r(self.correction.solver.operator_ratio()));
        for j in 0..self.m {
            let i = j + 1;
            put(&format!("input_defect_{i}"), r(self.input_defect[j]));
            put(&format!("g_sup_{i}"), r(self.g_sup[j]));
            put(&format!("g_bound_margin_{i}"), r(self.g_bound_margin[j]));
            put(&format!("dbar_g_bound_margin_{i}"), r(self.dbar_g_bound_margin[j]));
            put(&format!("holo_defect_{i}"), r(self.verification.holo_defect[j]));
            put(&format!("holo_defect_full_{i}"), r(self.verification.holo_defect_full[j]));
            put(&format!("h_sup_{i}"), r(self.verification.h_sup[j]));
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.entries()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

/// Intermediate fields of a solve, kept for dumps.
#[derive(Debug, Clone)]
pub struct CoronaSolution {
    pub h: Vec<ScalarField>,
    pub pou: PartitionOfUnity,
    pub smooth: SmoothSolution,
    pub report: SolveReport,
}

/// Hypothesis checks, partition of unity, smooth solution, Koszul correction,
/// verification.
pub fn solve_corona(
    p: &CoronaProblem,
    solver: &dyn DbarSolver,
    config: &SolveConfig,
) -> Result<CoronaSolution, PipelineError> {
    let corona = check_corona_condition(p);
    if !corona.pass {
        return Err(PipelineError::CoronaCondition {
            min_sum: corona.min_sum,
            point: corona.point,
        }
        .at(Stage::Hypothesis));
    }
    let separation = check_separation(p, config.margin);
    if !separation.pass {
        return Err(PipelineError::Separation {
            point: separation.worst_point,
            max_abs: separation.worst_max_abs,
            threshold: separation.threshold,
        }
        .at(Stage::Hypothesis));
    }
    let pou = build_partition_of_unity(p, config.sigma, config.chi_min)
        .map_err(|e| e.at(Stage::Partition))?;
    let smooth = smooth_solution(p, &pou, config.r_int).map_err(|e| e.at(Stage::SmoothSolution))?;

    let one = KoszulElement::scalar(
        p.m(),
        p.n(),
        ScalarField::constant(p.grid(), Complex64::new(1.0, 0.0)),
    );
    let mut tol = config.tolerances;
    tol.r_int = config.r_int;
    let (lifted, correction) =
        corona_correct(&one, p, &smooth.g, solver, &tol).map_err(|e| e.at(Stage::Correction))?;
    let h: Vec<ScalarField> = (1..=p.m())
        .map(|j| {
            lifted
                .component(&MultiIndex::single(j), &MultiIndex::empty())
                .cloned()
                .unwrap_or_else(|| ScalarField::zeros(p.grid()))
        })
        .collect();
    let verification = verify_solution(p, &h, config.r_int).map_err(|e| e.at(Stage::Verify))?;
    let report = SolveReport {
        m: p.m(),
        n_r: p.grid().n_r(),
        n_theta: p.grid().n_theta(),
        epsilon: p.epsilon(),
        sigma: config.sigma,
        margin: config.margin,
        solver: solver.name().to_string(),
        corona,
        separation,
        chi_min: pou.chi_min,
        input_defect: p.input_defects(config.r_int),
        g_sup: smooth.g.iter().map(ScalarField::sup_norm_full).collect(),
        g_bound_margin: smooth.g_bound_margin.clone(),
        dbar_g_bound_margin: smooth.dbar_g_bound_margin.clone(),
        correction,
        verification,
    };
    Ok(CoronaSolution {
        h,
        pou,
        smooth,
        report,
    })
}
