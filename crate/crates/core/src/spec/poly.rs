use std::f64::consts::PI;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense complex polynomial, constant coefficient first.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self::new(vec![ZERO])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Degree after dropping exact-zero leading coefficients; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != ZERO)
            .unwrap_or(0)
    }

    /// Drops exact-zero leading coefficients, keeping at least one entry.
    pub fn trimmed(&self) -> Self {
        let end = self.degree() + 1;
        Self::new(self.coeffs[..end.min(self.coeffs.len()).max(1)].to_vec())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(ZERO)
                        + other.coeffs.get(k).copied().unwrap_or(ZERO)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Number of zeros in the closed unit disc: a zero on (or numerically at)
    /// the circle counts as one, otherwise the winding number of `p(e^{it})`.
    pub fn zeros_in_closed_disc(&self) -> i64 {
        let p = self.trimmed();
        if p.degree() == 0 {
            return 0;
        }
        const SAMPLES: usize = 4096;
        let values: Vec<Complex64> = (0..SAMPLES)
            .map(|k| p.eval(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / SAMPLES as f64)))
            .collect();
        let scale = p.coeffs.iter().map(|c| c.norm()).sum::<f64>();
        let min = values.iter().fold(f64::INFINITY, |m, v| m.min(v.norm()));
        if min <= 1e-9 * scale {
            return 1;
        }
        let turn: f64 = (0..SAMPLES)
            .map(|k| (values[(k + 1) % SAMPLES] / values[k]).arg())
            .sum();
        (turn / (2.0 * PI)).round() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Poly::from_real(&[1.0, -1.0]);
        let sq = p.mul(&p);
        assert_eq!(sq, Poly::from_real(&[1.0, -2.0, 1.0]));
        assert_eq!(sq.derivative(), Poly::from_real(&[-2.0, 2.0]));
        assert_eq!(Poly::from_real(&[1.0, 2.0, 0.0, 0.0]).degree(), 1);
    }

    #[test]
    fn winding_counts_interior_zeros() {
        // (z - 0.5)(z + 0.5i)(z - 3)
        let p = Poly::from_real(&[-0.5, 1.0])
            .mul(&Poly::new(vec![Complex64::new(0.0, 0.5), Complex64::new(1.0, 0.0)]))
            .mul(&Poly::from_real(&[-3.0, 1.0]));
        assert_eq!(p.zeros_in_closed_disc(), 2);
        assert_eq!(Poly::from_real(&[-1.0, 1.0]).zeros_in_closed_disc(), 1);
        assert_eq!(Poly::from_real(&[2.0, 1.0]).zeros_in_closed_disc(), 0);
    }
}
