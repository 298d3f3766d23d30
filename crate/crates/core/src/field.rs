//! Complex samples on a polar grid, with pointwise arithmetic.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::FieldError;
use crate::grid::PolarGrid;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One complex value per grid node, stored i-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Arc<PolarGrid>,
    values: Vec<Complex64>,
}

impl ScalarField {
    pub fn new(grid: Arc<PolarGrid>, values: Vec<Complex64>) -> Result<Self, FieldError> {
        if values.len() != grid.len() {
            return Err(FieldError::Length {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(FieldError::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    pub(crate) fn from_vec_unchecked(grid: Arc<PolarGrid>, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn zeros(grid: &Arc<PolarGrid>) -> Self {
        Self::constant(grid, ZERO)
    }

    pub fn constant(grid: &Arc<PolarGrid>, c: Complex64) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: vec![c; grid.len()],
        }
    }

    /// Samples `f` at every node.
    pub fn from_fn<F>(grid: &Arc<PolarGrid>, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Sync,
    {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|idx| f(grid.node_at(idx)))
            .collect();
        Self {
            grid: Arc::clone(grid),
            values,
        }
    }

    pub fn grid(&self) -> &Arc<PolarGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, i: usize, k: usize) -> Complex64 {
        self.values[self.grid.index(i, k)]
    }

    pub fn same_grid(&self, other: &ScalarField) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid.same_layout(&other.grid)
    }

    pub fn check_grid(&self, other: &ScalarField) -> Result<(), FieldError> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(FieldError::GridMismatch)
        }
    }

    /// True when every value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Sync,
    {
        Self {
            grid: Arc::clone(&self.grid),
            values: self.values.par_iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with<F>(&self, other: &ScalarField, f: F) -> Result<Self, FieldError>
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Sync,
    {
        self.check_grid(other)?;
        Ok(Self {
            grid: Arc::clone(&self.grid),
            values: self
                .values
                .par_iter()
                .zip(other.values.par_iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, a: Complex64) -> Self {
        self.map(|v| a * v)
    }

    pub fn add(&self, other: &ScalarField) -> Result<Self, FieldError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ScalarField) -> Result<Self, FieldError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &ScalarField) -> Result<Self, FieldError> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `a * self + y`.
    pub fn axpy(&self, a: Complex64, y: &ScalarField) -> Result<Self, FieldError> {
        self.zip_with(y, |x, y| a * x + y)
    }

    /// In-place `self += a * x`.
    pub fn add_scaled(&mut self, a: Complex64, x: &ScalarField) -> Result<(), FieldError> {
        self.check_grid(x)?;
        self.values
            .par_iter_mut()
            .zip(x.values.par_iter())
            .for_each(|(s, &v)| *s += a * v);
        Ok(())
    }

    /// Max of `|value|` over nodes with `r_i <= r_max`.
    pub fn sup_norm(&self, r_max: f64) -> f64 {
        let rings = self.grid.rings_within(r_max);
        let end = rings * self.grid.n_theta();
        self.values[..end]
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.norm()))
    }

    pub fn sup_norm_full(&self) -> f64 {
        self.sup_norm(1.0)
    }

    /// Midpoint rule over the disc, summed ring by ring.
    pub fn integrate(&self) -> Complex64 {
        let n_theta = self.grid.n_theta();
        self.values
            .chunks(n_theta)
            .enumerate()
            .map(|(i, ring)| ring.iter().sum::<Complex64>() * self.grid.ring_weight(i))
            .sum()
    }
}

/// Max of `|value|` over nodes with `r_i <= r_max`.
pub fn sup_norm(u: &ScalarField, r_max: f64) -> f64 {
    u.sup_norm(r_max)
}

/// Midpoint-rule integral over the unit disc.
pub fn integrate(u: &ScalarField) -> Complex64 {
    u.integrate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(nr: usize, nt: usize) -> Arc<PolarGrid> {
        PolarGrid::new(nr, nt).unwrap()
    }

    #[test]
    fn rejects_non_finite() {
        let g = grid(2, 4);
        let mut v = vec![ZERO; 8];
        v[3] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(
            ScalarField::new(g, v),
            Err(FieldError::NonFinite { index: 3 })
        );
    }

    #[test]
    fn sup_norm_examples() {
        let g = grid(16, 32);
        let z = ScalarField::from_fn(&g, |z| z);
        assert!((z.sup_norm(1.0) - (1.0 - 1.0 / 32.0)).abs() < 1e-15);
        assert_eq!(ScalarField::zeros(&g).sup_norm(1.0), 0.0);
        let c = ScalarField::constant(&g, Complex64::new(3.0, 4.0));
        assert_eq!(c.sup_norm(0.5), 5.0);
    }

    #[test]
    fn integrate_examples() {
        let g = grid(64, 128);
        let one = ScalarField::constant(&g, Complex64::new(1.0, 0.0));
        assert!((one.integrate().re - PI).abs() < 1e-12);
        let z = ScalarField::from_fn(&g, |z| z);
        assert!(z.integrate().norm() < 1e-12);
        // midpoint error for 2*pi*r^3 is pi*h^2/4
        let r2 = ScalarField::from_fn(&g, |z| Complex64::new(z.norm_sqr(), 0.0));
        let err = (r2.integrate() - Complex64::new(PI / 2.0, 0.0)).norm();
        assert!(err < 2.0 * g.h() * g.h(), "{err}");
    }

    #[test]
    fn grid_mismatch_detected() {
        let a = ScalarField::zeros(&grid(2, 4));
        let b = ScalarField::zeros(&grid(4, 4));
        assert_eq!(a.add(&b), Err(FieldError::GridMismatch));
    }
}
