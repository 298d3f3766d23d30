//! High-accuracy reference values of the disc Cauchy transform.
//!
//! Uses polar coordinates centred on the evaluation point `p`: with
//! `w = p + s e^{i phi}` the kernel `dA / (p - w)` becomes the bounded
//! `-e^{-i phi} ds dphi`, so
//!
//! ```text
//! (1/pi) \iint_D v(w) / (p - w) dA = -(1/pi) \int_0^{2pi} e^{-i phi} \int_0^{S(phi)} v(p + s e^{i phi}) ds dphi
//! ```
//!
//! where `S(phi)` is the distance from `p` to the unit circle along `phi`.
//! The radial integral uses Gauss-Legendre on panels graded geometrically
//! toward `s = 0`; the angular integral is the periodic trapezoid rule.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Polynomial in `z` and `zbar`: `sum c z^a zbar^b`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MixedPoly {
    pub terms: Vec<(u32, u32, Complex64)>,
}

impl MixedPoly {
    pub fn new(terms: Vec<(u32, u32, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![(0, 0, Complex64::new(c, 0.0))])
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(a, b, c)| c * z.powu(a) * z.conj().powu(b))
            .sum()
    }

    /// Closed-form disc transform when every term is a power of `zbar`:
    /// `zbar^b` maps to `zbar^{b+1} / (b+1)`.
    pub fn transform_if_antiholomorphic(&self) -> Option<MixedPoly> {
        self.terms
            .iter()
            .map(|&(a, b, c)| (a == 0).then(|| (0, b + 1, c / (b as f64 + 1.0))))
            .collect::<Option<Vec<_>>>()
            .map(MixedPoly::new)
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let step = p1 / dp;
            t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

const GL_ORDER: usize = 8;

/// `(1/pi) \iint_D v(w) / (point - w) dA(w)` for `|point| < 1`.
///
/// `level` doubles the angular count and adds one graded radial panel.
pub fn brute_force_transform<F>(v: F, point: Complex64, level: u32) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let n_phi = 32usize << level;
    let panels = 2 + level as usize;
    let (gx, gw) = gauss_legendre(GL_ORDER);
    let rest = 1.0 - point.norm_sqr();
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..n_phi {
        let phi = 2.0 * PI * k as f64 / n_phi as f64;
        let dir = Complex64::from_polar(1.0, phi);
        let beta = (point.conj() * dir).re;
        let reach = -beta + (beta * beta + rest).sqrt();
        // panel edges reach * 2^{-panels+1}, ..., reach / 2, reach
        let mut radial = Complex64::new(0.0, 0.0);
        let mut lo = 0.0;
        for p in (0..panels).rev() {
            let hi = reach / f64::powi(2.0, p as i32);
            let (mid, half) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
            for (&x, &w) in gx.iter().zip(&gw) {
                radial += v(point + dir * (mid + half * x)) * (w * half);
            }
            lo = hi;
        }
        total += dir.conj() * radial;
    }
    -total * (2.0 / n_phi as f64)
}
