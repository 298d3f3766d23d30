//! Polar midpoint grid over the open unit disc.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::FieldError;

/// Smallest usable radial resolution.
pub const MIN_N_R: usize = 2;
/// Smallest usable angular resolution.
pub const MIN_N_THETA: usize = 4;

/// Midpoint grid with nodes `r_i = (i + 1/2)/n_r`, `theta_k = 2 pi k / n_theta`.
///
/// Every node lies strictly inside the unit disc; there is no node at the
/// origin or on the boundary circle. The cell weight `r_i dr dtheta` sums to
/// exactly the disc area.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    n_r: usize,
    n_theta: usize,
    radii: Vec<f64>,
    angles: Vec<f64>,
    phases: Vec<Complex64>,
}

impl PolarGrid {
    pub fn new(n_r: usize, n_theta: usize) -> Result<Arc<Self>, FieldError> {
        if n_r < MIN_N_R || n_theta < MIN_N_THETA {
            return Err(FieldError::GridTooSmall { n_r, n_theta });
        }
        let radii = (0..n_r).map(|i| (i as f64 + 0.5) / n_r as f64).collect();
        let angles: Vec<f64> = (0..n_theta)
            .map(|k| 2.0 * PI * k as f64 / n_theta as f64)
            .collect();
        let phases = angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        Ok(Arc::new(Self {
            n_r,
            n_theta,
            radii,
            angles,
            phases,
        }))
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn len(&self) -> usize {
        self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dr(&self) -> f64 {
        1.0 / self.n_r as f64
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * PI / self.n_theta as f64
    }

    /// Node spacing used in error estimates: the radial step.
    pub fn h(&self) -> f64 {
        self.dr()
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.radii[i]
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angle(&self, k: usize) -> f64 {
        self.angles[k]
    }

    /// `e^{i theta_k}`.
    pub fn phase(&self, k: usize) -> Complex64 {
        self.phases[k]
    }

    /// Flat index, i-major then k.
    #[inline]
    pub fn index(&self, i: usize, k: usize) -> usize {
        i * self.n_theta + k
    }

    #[inline]
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.n_theta, idx % self.n_theta)
    }

    pub fn node(&self, i: usize, k: usize) -> Complex64 {
        self.phases[k] * self.radii[i]
    }

    pub fn node_at(&self, idx: usize) -> Complex64 {
        let (i, k) = self.split(idx);
        self.node(i, k)
    }

    /// All nodes in flat order.
    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.len()).map(|idx| self.node_at(idx)).collect()
    }

    /// Quadrature weight of ring `i` (identical for every angle).
    pub fn ring_weight(&self, i: usize) -> f64 {
        self.radii[i] * self.dr() * self.dtheta()
    }

    pub fn weight(&self, idx: usize) -> f64 {
        self.ring_weight(idx / self.n_theta)
    }

    /// Points on the unit circle at the grid angles.
    pub fn boundary_ring(&self) -> Vec<Complex64> {
        self.phases.clone()
    }

    /// Number of leading rings with `r_i <= r_max`.
    pub fn rings_within(&self, r_max: f64) -> usize {
        self.radii.iter().take_while(|&&r| r <= r_max).count()
    }

    pub fn same_layout(&self, other: &PolarGrid) -> bool {
        self.n_r == other.n_r && self.n_theta == other.n_theta
    }
}
