//! Numerical corona solver on the unit disc.
//!
//! Given bounded holomorphic data `f_1..f_m` whose closed sublevel sets
//! `{|f_j| <= eps}` have empty common intersection, builds holomorphic
//! `h_1..h_m` with `sum_j f_j h_j = 1`:
//!
//! 1. a smooth partition of unity `rho_j` supported where `|f_j| > eps`;
//! 2. the smooth solution `g_j = rho_j / f_j`;
//! 3. a Koszul-complex correction that removes `dbar g_j` using a
//!    [`dbar::DbarSolver`] (Cauchy-Pompeiu on the disc).
//!
//! The b-equation is solved by pointwise algebra only, so the residual
//! `1 - sum f_j h_j` is at rounding level whatever the solver accuracy; the
//! holomorphy defect `dbar h_j` is what converges with resolution.

pub mod calculus;
pub mod cli;
pub mod config;
pub mod dbar;
pub mod demos;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod koszul;
pub mod oracles;
pub mod pipeline;
pub mod spec;

pub use calculus::wirtinger_dbar_fd;
pub use dbar::{cauchy_pompeiu_transform, DbarSolver, DiscCauchySolver, Kernel, SolverStats};
pub use demos::Demo;
pub use field::ScalarField;
pub use grid::PolarGrid;
pub use koszul::{eta, kelem_axpy, koszul_b, koszul_dbar, KoszulElement, MultiIndex};
pub use pipeline::{solve_corona, CoronaProblem, SolveConfig, SolveReport};
pub use spec::FunctionSpec;
