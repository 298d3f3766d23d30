use std::fmt;
use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("grid {n_r}x{n_theta} is below the minimum 2x4")]
    GridTooSmall { n_r: usize, n_theta: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("non-finite value at node {index}")]
    NonFinite { index: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("cannot parse function spec {input:?} at byte {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
    #[error("denominator vanishes at z = {point}")]
    Pole { point: Complex64 },
    #[error("Blaschke zero {zero} is not inside the unit disc")]
    BlaschkeZero { zero: Complex64 },
    #[error("denominator has {count} zero(s) in the closed unit disc")]
    DenominatorZeros { count: i64 },
    #[error("empty polynomial")]
    EmptyPolynomial,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KoszulError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("data count mismatch: element has m = {element}, got {given} functions")]
    CountMismatch { element: usize, given: usize },
    #[error("degree mismatch: ({0}) vs ({1})")]
    DegreeMismatch(String, String),
    #[error("dimension mismatch: element has n = {element}, operator handles n = {operator}")]
    DimensionMismatch { element: usize, operator: usize },
    #[error("invalid component key J={wedge:?} L={form:?} for m = {m}, n = {n}")]
    InvalidKey {
        wedge: Vec<usize>,
        form: Vec<usize>,
        m: usize,
        n: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error("no dbar solver for form degree l = {l} in dimension n = {n}")]
    UnsupportedDegree { l: i64, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("polynomials share a root: gcd has degree {gcd_degree}")]
    NotCoprime { gcd_degree: usize },
    #[error("certificate residual {residual:e} exceeds {tolerance:e}")]
    Unverified { residual: f64, tolerance: f64 },
    #[error("need at least {need} polynomials, got {got}")]
    TooFew { need: usize, got: usize },
}

/// Pipeline stage names used to tag propagated errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Sample,
    Hypothesis,
    Partition,
    SmoothSolution,
    Correction,
    Verify,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Sample => "sample",
            Stage::Hypothesis => "hypothesis",
            Stage::Partition => "partition",
            Stage::SmoothSolution => "smooth-solution",
            Stage::Correction => "correction",
            Stage::Verify => "verify",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("[{stage}] {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<PipelineError>,
    },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("corona condition fails: min sum |f_j| = {min_sum} <= epsilon at z = {point}")]
    CoronaCondition { min_sum: f64, point: Complex64 },
    #[error(
        "separation hypothesis fails at z = {point}: max |f_j| = {max_abs} < {threshold}"
    )]
    Separation {
        point: Complex64,
        max_abs: f64,
        threshold: f64,
    },
    #[error(
        "min sum chi_j = {chi_min} < {c_min}: smoothstep band too wide, use smaller sigma or a larger margin"
    )]
    SeparationTooTight { chi_min: f64, c_min: f64 },
    #[error("support invariant violated at node {index}: |f_j| = {abs_f} with rho_j = {rho}")]
    SupportViolation { index: usize, abs_f: f64, rho: f64 },
    #[error("precondition violated: {what} has sup-norm {value:e} > {tolerance:e}")]
    Precondition {
        what: &'static str,
        value: f64,
        tolerance: f64,
    },
}

impl PipelineError {
    pub fn at(self, stage: Stage) -> Self {
        match self {
            e @ PipelineError::Stage { .. } => e,
            e => PipelineError::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// Stage tag and innermost error.
    pub fn root(&self) -> (Option<Stage>, &PipelineError) {
        match self {
            PipelineError::Stage { stage, source } => (Some(*stage), source.root().1),
            e => (None, e),
        }
    }

    /// True when the error is a failed corona or separation hypothesis.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self.root().1,
            PipelineError::CoronaCondition { .. } | PipelineError::Separation { .. }
        )
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Format {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{path}: dump is {got_r}x{got_theta}, expected {n_r}x{n_theta}")]
    GridMismatch {
        path: PathBuf,
        n_r: usize,
        n_theta: usize,
        got_r: usize,
        got_theta: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("key `{key}`: {msg}")]
    Key { key: String, msg: String },
    #[error("unknown demo `{0}` (known: wolff-trivial, squares, triple, single)")]
    UnknownDemo(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

impl CliError {
    /// 2 for a failed corona or separation hypothesis, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Pipeline(e) if e.is_hypothesis_failure() => 2,
            _ => 1,
        }
    }
}
