//! End-to-end corona solve on the disc: hypothesis checks, partition of
//! unity, smooth solution `g_j = rho_j / f_j`, Koszul correction, verification.

mod correct;
mod partition;
mod problem;
mod solve;

pub use correct::{corona_correct, CorrectionStats, CorrectionTolerances};
pub use partition::{
    build_partition_of_unity, smooth_solution, smoothstep, PartitionOfUnity, SmoothSolution,
    DEFAULT_CHI_MIN, DEFAULT_SIGMA,
};
pub use problem::{
    check_corona_condition, check_separation, CoronaCheck, CoronaProblem, SeparationCheck,
};
pub use solve::{
    solve_corona, verify_solution, CoronaSolution, SolveConfig, SolveReport, Verification,
    DEFAULT_MARGIN, DEFAULT_R_INT,
};
