//! Bezout certificates for coprime polynomial corona data.

use std::fmt;

use num_complex::Complex64;

use crate::error::OracleError;
use crate::spec::{FunctionSpec, Poly};

/// Largest coefficient allowed in a verified certificate's residual.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-10;
/// Relative size below which a remainder coefficient counts as zero.
const REMAINDER_TOLERANCE: f64 = 1e-8;

/// Cofactors `u_j` with `sum_j p_j u_j = 1`, verified symbolically.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyBezoutCertificate {
    pub inputs: Vec<Poly>,
    pub cofactors: Vec<Poly>,
    /// `sum_j p_j u_j - 1`.
    pub residual: Poly,
}

impl PolyBezoutCertificate {
    fn verified(inputs: Vec<Poly>, cofactors: Vec<Poly>) -> Result<Self, OracleError> {
        let one = Poly::constant(Complex64::new(1.0, 0.0));
        let residual = inputs
            .iter()
            .zip(&cofactors)
            .fold(Poly::zero(), |acc, (p, u)| acc.add(&p.mul(u)))
            .sub(&one);
        let size = residual.max_abs();
        if !(size <= CERTIFICATE_TOLERANCE) {
            return Err(OracleError::Unverified {
                residual: size,
                tolerance: CERTIFICATE_TOLERANCE,
            });
        }
        Ok(Self {
            inputs,
            cofactors: cofactors.iter().map(Poly::trimmed).collect(),
            residual,
        })
    }

    pub fn residual_size(&self) -> f64 {
        self.residual.max_abs()
    }

    /// Cofactors as function specs.
    pub fn cofactor_specs(&self) -> Vec<FunctionSpec> {
        self.cofactors
            .iter()
            .cloned()
            .map(FunctionSpec::Polynomial)
            .collect()
    }
}

impl fmt::Display for PolyBezoutCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in &self.cofactors {
            writeln!(f, "{}", FunctionSpec::Polynomial(u.clone()))?;
        }
        Ok(())
    }
}

/// Drops leading coefficients below `tol`; `None` for a numerically zero polynomial.
fn chop(p: &Poly, tol: f64) -> Option<Poly> {
    let c = p.coeffs();
    let end = c.iter().rposition(|v| v.norm() > tol)?;
    Some(Poly::new(c[..=end].to_vec()))
}

/// Long division by `d`, whose leading coefficient is the pivot.
fn div_rem(n: &Poly, d: &Poly) -> (Poly, Poly) {
    let dc = d.coeffs();
    let dn = dc.len() - 1;
    let lead = dc[dn];
    let mut rem = n.coeffs().to_vec();
    if rem.len() <= dn {
        return (Poly::zero(), n.clone());
    }
    let mut quot = vec![Complex64::new(0.0, 0.0); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let q = rem[k + dn] / lead;
        quot[k] = q;
        for (j, &dj) in dc.iter().enumerate() {
            rem[k + j] -= q * dj;
        }
        rem[k + dn] = Complex64::new(0.0, 0.0);
    }
    rem.truncate(dn.max(1));
    (Poly::new(quot), Poly::new(rem))
}

/// `(g, s, t)` with `s a + t b = g`, `g` the last non-negligible remainder.
fn extended_gcd(a: &Poly, b: &Poly, tol: f64) -> Option<(Poly, Poly, Poly)> {
    let one = Poly::constant(Complex64::new(1.0, 0.0));
    let mut r0 = chop(a, tol);
    let mut r1 = chop(b, tol);
    let (mut s0, mut s1) = (one.clone(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), one);
    if r0.is_none() {
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
        std::mem::swap(&mut t0, &mut t1);
    }
    let mut r0 = r0?;
    while let Some(d) = r1 {
        let (q, rem) = div_rem(&r0, &d);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = d;
        r1 = chop(&rem, tol);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    Some((r0, s0, t0))
}

fn scale_of(ps: &[Poly]) -> f64 {
    ps.iter().fold(0.0_f64, |m, p| m.max(p.max_abs())).max(f64::MIN_POSITIVE)
}

/// Cofactors `(u, v)` with `u p + v q = 1`.
pub fn extended_euclid_bezout(p: &Poly, q: &Poly) -> Result<PolyBezoutCertificate, OracleError> {
    multi_bezout(&[p.clone(), q.clone()])
}

/// Folds the extended Euclidean algorithm across the list.
pub fn multi_bezout(ps: &[Poly]) -> Result<PolyBezoutCertificate, OracleError> {
    if ps.is_empty() {
        return Err(OracleError::TooFew { need: 1, got: 0 });
    }
    let tol = REMAINDER_TOLERANCE * scale_of(ps);
    let mut running = ps[0].clone();
    let mut cofactors = vec![Poly::constant(Complex64::new(1.0, 0.0))];
    for p in &ps[1..] {
        let Some((g, s, t)) = extended_gcd(&running, p, tol) else {
            return Err(OracleError::NotCoprime { gcd_degree: usize::MAX });
        };
        for u in cofactors.iter_mut() {
            *u = u.mul(&s);
        }
        cofactors.push(t);
        running = g;
    }
    let Some(gcd) = chop(&running, tol) else {
        return Err(OracleError::NotCoprime { gcd_degree: usize::MAX });
    };
    if gcd.degree() > 0 {
        return Err(OracleError::NotCoprime {
            gcd_degree: gcd.degree(),
        });
    }
    let inv = Complex64::new(1.0, 0.0) / gcd.coeffs()[0];
    let cofactors = cofactors.iter().map(|u| u.scale(inv)).collect();
    PolyBezoutCertificate::verified(ps.to_vec(), cofactors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(p: &Poly, expect: &[f64]) -> bool {
        p.sub(&Poly::from_real(expect)).max_abs() < 1e-12
    }

    #[test]
    fn linear_pair() {
        let cert =
            extended_euclid_bezout(&Poly::from_real(&[0.0, 1.0]), &Poly::from_real(&[1.0, -1.0]))
                .unwrap();
        assert!(close(&cert.cofactors[0], &[1.0]));
        assert!(close(&cert.cofactors[1], &[1.0]));
    }

    #[test]
    fn squares_pair() {
        let p = Poly::from_real(&[0.0, 0.0, 1.0]);
        let q = Poly::from_real(&[1.0, -2.0, 1.0]);
        let cert = extended_euclid_bezout(&p, &q).unwrap();
        assert!(close(&cert.cofactors[0], &[3.0, -2.0]), "{cert}");
        assert!(close(&cert.cofactors[1], &[1.0, 2.0]), "{cert}");
        assert!(cert.residual_size() <= 1e-12);
    }

    #[test]
    fn common_root_rejected() {
        let err = extended_euclid_bezout(
            &Poly::from_real(&[0.0, 1.0]),
            &Poly::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap_err();
        assert_eq!(err, OracleError::NotCoprime { gcd_degree: 1 });
    }

    #[test]
    fn fold_extends_by_zero() {
        let cert = multi_bezout(&[
            Poly::from_real(&[0.0, 1.0]),
            Poly::from_real(&[1.0, -1.0]),
            Poly::from_real(&[0.0, 0.0, 0.0, 1.0]),
        ])
        .unwrap();
        assert!(close(&cert.cofactors[0], &[1.0]));
        assert!(close(&cert.cofactors[1], &[1.0]));
        assert!(close(&cert.cofactors[2], &[0.0]));
    }

    #[test]
    fn triple_with_common_root_rejected() {
        let err = multi_bezout(&[
            Poly::from_real(&[0.0, 0.0, 1.0]),
            Poly::from_real(&[0.0, -1.0, 1.0]),
            Poly::from_real(&[0.0, 2.0, 5.0]),
        ])
        .unwrap_err();
        assert!(matches!(err, OracleError::NotCoprime { gcd_degree: 1 }));
    }

    #[test]
    fn pairwise_gcd_but_coprime_triple() {
        // z(z-1), z(z+1), (z-1)(z+1): pairwise common roots, jointly coprime
        let cert = multi_bezout(&[
            Poly::from_real(&[0.0, -1.0, 1.0]),
            Poly::from_real(&[0.0, 1.0, 1.0]),
            Poly::from_real(&[-1.0, 0.0, 1.0]),
        ])
        .unwrap();
        assert!(cert.residual_size() <= CERTIFICATE_TOLERANCE);
    }

    #[test]
    fn dump_is_parseable() {
        let cert = extended_euclid_bezout(
            &Poly::from_real(&[0.0, 0.0, 1.0]),
            &Poly::from_real(&[1.0, -2.0, 1.0]),
        )
        .unwrap();
        let text = cert.to_string();
        let specs: Vec<FunctionSpec> = text.lines().map(|l| l.parse().unwrap()).collect();
        assert_eq!(specs.len(), 2);
        let z = Complex64::new(0.3, 0.1);
        let val = specs[0].eval(z).unwrap() * z * z
            + specs[1].eval(z).unwrap() * (Complex64::new(1.0, 0.0) - z).powi(2);
        assert!((val - 1.0).norm() < 1e-14);
    }
}
