//! Ground truth that shares no code with the solver path.

pub mod bezout;
pub mod brute;

pub use bezout::{extended_euclid_bezout, multi_bezout, PolyBezoutCertificate};
pub use brute::{brute_force_transform, MixedPoly};
