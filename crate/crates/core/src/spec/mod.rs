//! Symbolic holomorphic functions on the closed unit disc.
//!
//! A [`FunctionSpec`] is exact data: it evaluates anywhere on the closed disc
//! and knows its own complex derivative. Grid fields for the corona data are
//! sampled from specs, and the hypothesis checks also evaluate specs on the
//! boundary circle, where no grid node lives.

mod parse;
pub mod poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::SpecError;
use crate::field::ScalarField;
use crate::grid::PolarGrid;

pub use parse::{format_complex, format_real};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Polynomial(Poly),
    /// Quotient whose denominator has no zero on the closed disc.
    Rational { num: Poly, den: Poly },
    /// Finite Blaschke product with zeros strictly inside the disc.
    Blaschke(Vec<Complex64>),
    Sum(Vec<FunctionSpec>),
    Product(Vec<FunctionSpec>),
    Scale(Complex64, Box<FunctionSpec>),
}

impl FunctionSpec {
    pub fn poly(coeffs: &[Complex64]) -> Self {
        FunctionSpec::Polynomial(Poly::new(coeffs.to_vec()))
    }

    pub fn real_poly(coeffs: &[f64]) -> Self {
        FunctionSpec::Polynomial(Poly::from_real(coeffs))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::poly(&[c])
    }

    pub fn rational(num: Poly, den: Poly) -> Result<Self, SpecError> {
        let spec = FunctionSpec::Rational { num, den };
        spec.validate()?;
        Ok(spec)
    }

    pub fn blaschke(zeros: Vec<Complex64>) -> Result<Self, SpecError> {
        let spec = FunctionSpec::Blaschke(zeros);
        spec.validate()?;
        Ok(spec)
    }

    /// Checks Blaschke zeros and that rational denominators do not vanish on
    /// the closed disc (boundary minimum plus argument principle).
    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            FunctionSpec::Polynomial(p) => {
                if p.coeffs().is_empty() {
                    return Err(SpecError::EmptyPolynomial);
                }
                Ok(())
            }
            FunctionSpec::Rational { num, den } => {
                if num.coeffs().is_empty() || den.coeffs().is_empty() {
                    return Err(SpecError::EmptyPolynomial);
                }
                let count = den.zeros_in_closed_disc();
                if count != 0 {
                    return Err(SpecError::DenominatorZeros { count });
                }
                Ok(())
            }
            FunctionSpec::Blaschke(zeros) => {
                if let Some(&zero) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
                    return Err(SpecError::BlaschkeZero { zero });
                }
                Ok(())
            }
            FunctionSpec::Sum(parts) | FunctionSpec::Product(parts) => {
                parts.iter().try_for_each(FunctionSpec::validate)
            }
            FunctionSpec::Scale(_, inner) => inner.validate(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, SpecError> {
        match self {
            FunctionSpec::Polynomial(p) => Ok(p.eval(z)),
            FunctionSpec::Rational { num, den } => {
                let d = den.eval(z);
                let q = num.eval(z) / d;
                if d == Complex64::new(0.0, 0.0) || !q.is_finite() {
                    return Err(SpecError::Pole { point: z });
                }
                Ok(q)
            }
            FunctionSpec::Blaschke(zeros) => {
                let mut acc = Complex64::new(1.0, 0.0);
                for &a in zeros {
                    let d = Complex64::new(1.0, 0.0) - a.conj() * z;
                    if d == Complex64::new(0.0, 0.0) {
                        return Err(SpecError::Pole { point: z });
                    }
                    acc *= (z - a) / d;
                }
                Ok(acc)
            }
            FunctionSpec::Sum(parts) => parts.iter().map(|p| p.eval(z)).sum(),
            FunctionSpec::Product(parts) => parts.iter().map(|p| p.eval(z)).product(),
            FunctionSpec::Scale(c, inner) => Ok(c * inner.eval(z)?),
        }
    }

    pub fn eval_points(&self, points: &[Complex64]) -> Result<Vec<Complex64>, SpecError> {
        points.iter().map(|&z| self.eval(z)).collect()
    }

    /// Samples the spec at every grid node.
    pub fn sample(&self, grid: &Arc<PolarGrid>) -> Result<ScalarField, SpecError> {
        let values = self.eval_points(&grid.nodes())?;
        Ok(ScalarField::from_vec_unchecked(Arc::clone(grid), values))
    }

    /// Numerator and denominator of a Blaschke product.
    pub fn blaschke_as_rational(zeros: &[Complex64]) -> (Poly, Poly) {
        let one = Complex64::new(1.0, 0.0);
        zeros.iter().fold(
            (Poly::constant(one), Poly::constant(one)),
            |(n, d), &a| {
                (
                    n.mul(&Poly::new(vec![-a, one])),
                    d.mul(&Poly::new(vec![one, -a.conj()])),
                )
            },
        )
    }

    /// Exact complex derivative.
    pub fn derivative(&self) -> FunctionSpec {
        match self {
            FunctionSpec::Polynomial(p) => FunctionSpec::Polynomial(p.derivative()),
            FunctionSpec::Rational { num, den } => quotient_rule(num, den),
            FunctionSpec::Blaschke(zeros) => {
                let (num, den) = Self::blaschke_as_rational(zeros);
                quotient_rule(&num, &den)
            }
            FunctionSpec::Sum(parts) => {
                FunctionSpec::Sum(parts.iter().map(FunctionSpec::derivative).collect())
            }
            FunctionSpec::Product(parts) => {
                let terms = (0..parts.len())
                    .map(|i| {
                        let factors = parts
                            .iter()
                            .enumerate()
                            .map(|(j, p)| if i == j { p.derivative() } else { p.clone() })
                            .collect();
                        FunctionSpec::Product(factors)
                    })
                    .collect();
                FunctionSpec::Sum(terms)
            }
            FunctionSpec::Scale(c, inner) => {
                FunctionSpec::Scale(*c, Box::new(inner.derivative()))
            }
        }
    }

    /// Coefficients when the spec is a plain polynomial.
    pub fn as_polynomial(&self) -> Option<&Poly> {
        match self {
            FunctionSpec::Polynomial(p) => Some(p),
            _ => None,
        }
    }
}

fn quotient_rule(num: &Poly, den: &Poly) -> FunctionSpec {
    let top = num.derivative().mul(den).sub(&num.mul(&den.derivative())).trimmed();
    FunctionSpec::Rational {
        num: top,
        den: den.mul(den),
    }
}

/// `d/dz` of a spec.
pub fn spec_derivative(spec: &FunctionSpec) -> FunctionSpec {
    spec.derivative()
}

/// Evaluates a spec on the grid nodes.
pub fn eval_spec(spec: &FunctionSpec, grid: &Arc<PolarGrid>) -> Result<ScalarField, SpecError> {
    spec.sample(grid)
}

impl FromStr for FunctionSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let spec = parse::parse_spec(s)?;
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, c: &[Complex64], sep: &str) -> fmt::Result {
            let parts: Vec<String> = c.iter().map(|&v| format_complex(v)).collect();
            f.write_str(&parts.join(sep))
        }
        fn factor(f: &mut fmt::Formatter<'_>, s: &FunctionSpec) -> fmt::Result {
            if matches!(s, FunctionSpec::Sum(_) | FunctionSpec::Scale(..)) {
                write!(f, "({s})")
            } else {
                write!(f, "{s}")
            }
        }
        match self {
            FunctionSpec::Polynomial(p) => {
                f.write_str("poly:")?;
                list(f, p.coeffs(), ",")
            }
            FunctionSpec::Rational { num, den } => {
                f.write_str("rat:(")?;
                list(f, num.coeffs(), ",")?;
                f.write_str(")/(")?;
                list(f, den.coeffs(), ",")?;
                f.write_str(")")
            }
            FunctionSpec::Blaschke(zeros) => {
                f.write_str("blaschke:")?;
                list(f, zeros, ";")
            }
            FunctionSpec::Sum(parts) => {
                if parts.is_empty() {
                    return f.write_str("poly:0");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if matches!(p, FunctionSpec::Sum(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            FunctionSpec::Product(parts) => {
                if parts.is_empty() {
                    return f.write_str("poly:1");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    factor(f, p)?;
                }
                Ok(())
            }
            FunctionSpec::Scale(c, inner) => {
                write!(f, "{}*", format_complex(*c))?;
                factor(f, inner)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let z = FunctionSpec::real_poly(&[0.0, 1.0]);
        assert_eq!(z.eval(c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
        let b = FunctionSpec::blaschke(vec![c(0.5, 0.0)]).unwrap();
        assert_eq!(b.eval(c(0.5, 0.0)).unwrap(), c(0.0, 0.0));
        let sq = FunctionSpec::real_poly(&[1.0, -2.0, 1.0]);
        let v = sq.eval(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, -2.0)).norm() < 1e-15);
    }

    #[test]
    fn pole_names_point() {
        // denominator z - 2 vanishes at 2, outside the disc, so the spec is valid
        let r = FunctionSpec::rational(Poly::from_real(&[1.0]), Poly::from_real(&[-2.0, 1.0]))
            .unwrap();
        assert_eq!(
            r.eval(c(2.0, 0.0)),
            Err(SpecError::Pole { point: c(2.0, 0.0) })
        );
    }

    #[test]
    fn rational_with_interior_pole_rejected() {
        let r = FunctionSpec::rational(Poly::from_real(&[1.0]), Poly::from_real(&[-0.5, 1.0]));
        assert_eq!(r, Err(SpecError::DenominatorZeros { count: 1 }));
        let b = FunctionSpec::blaschke(vec![c(1.0, 0.0)]);
        assert!(matches!(b, Err(SpecError::BlaschkeZero { .. })));
    }

    #[test]
    fn derivative_examples() {
        let d = FunctionSpec::real_poly(&[0.0, 0.0, 1.0]).derivative();
        assert_eq!(d.as_polynomial().unwrap().trimmed().coeffs(), &[c(0.0, 0.0), c(2.0, 0.0)]);
        let d = FunctionSpec::real_poly(&[1.0]).derivative();
        assert!(d.eval(c(0.3, 0.2)).unwrap().norm() == 0.0);

        let b = FunctionSpec::blaschke(vec![c(0.5, 0.0)]).unwrap().derivative();
        let FunctionSpec::Rational { num, den } = &b else {
            panic!("expected rational, got {b:?}");
        };
        assert_eq!(num.trimmed().coeffs(), &[c(0.75, 0.0)]);
        // (1 - 0.5 z)^2
        let expect = Poly::from_real(&[1.0, -1.0, 0.25]);
        assert!(den.sub(&expect).max_abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let spec: FunctionSpec = "2*poly:1,0.5i,-0.25 * blaschke:0.3;-0.2+0.4i + rat:(1,1)/(3,1)"
            .parse()
            .unwrap();
        let d = spec.derivative();
        let z0 = c(0.31, -0.42);
        let h = 1e-5;
        let fd = (spec.eval(z0 + h).unwrap() - spec.eval(z0 - h).unwrap()) / (2.0 * h);
        assert!((fd - d.eval(z0).unwrap()).norm() < 1e-8);
    }
}
