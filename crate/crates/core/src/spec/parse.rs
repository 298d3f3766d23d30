//! Text syntax for function specs.
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := factor ('*' factor)*
//! factor  := '(' expr ')' | atom | scalar
//! atom    := 'poly:' clist
//!          | 'blaschke:' complex (';' complex)*
//!          | 'rat:(' ['poly:'] clist ')/(' ['poly:'] clist ')'
//! clist   := complex (',' complex)*
//! complex := real | real? 'i' | real ('+'|'-') real? 'i'
//! ```

use num_complex::Complex64;

use super::poly::Poly;
use super::FunctionSpec;
use crate::error::SpecError;

/// 17 significant digits, round-trips every `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `a+bi` literal (just `a` when the imaginary part is zero).
pub fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format_real(c.re)
    } else {
        let sign = if c.im.is_sign_negative() { '-' } else { '+' };
        format!("{}{}{}i", format_real(c.re), sign, format_real(c.im.abs()))
    }
}

pub(super) fn parse_spec(input: &str) -> Result<FunctionSpec, SpecError> {
    let mut p = Parser { src: input, pos: 0 };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> SpecError {
        SpecError::Parse {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), SpecError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{s}`")))
        }
    }

    fn expr(&mut self) -> Result<FunctionSpec, SpecError> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            if !self.eat("+") {
                break;
            }
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            FunctionSpec::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<FunctionSpec, SpecError> {
        let mut scale = Complex64::new(1.0, 0.0);
        let mut scaled = false;
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.factor()? {
                Factor::Scalar(c) => {
                    scale *= c;
                    scaled = true;
                }
                Factor::Spec(s) => factors.push(s),
            }
            self.skip_ws();
            if !self.eat("*") {
                break;
            }
        }
        let body = match factors.len() {
            0 => return Ok(FunctionSpec::constant(scale)),
            1 => factors.pop().unwrap(),
            _ => FunctionSpec::Product(factors),
        };
        Ok(if scaled {
            FunctionSpec::Scale(scale, Box::new(body))
        } else {
            body
        })
    }

    fn factor(&mut self) -> Result<Factor, SpecError> {
        if self.eat("(") {
            let inner = self.expr()?;
            self.skip_ws();
            self.expect(")")?;
            return Ok(Factor::Spec(inner));
        }
        if self.eat("poly:") {
            return Ok(Factor::Spec(FunctionSpec::Polynomial(Poly::new(
                self.complex_list(',')?,
            ))));
        }
        if self.eat("blaschke:") {
            return Ok(Factor::Spec(FunctionSpec::Blaschke(self.complex_list(';')?)));
        }
        if self.eat("rat:") {
            self.expect("(")?;
            self.eat("poly:");
            let num = self.complex_list(',')?;
            self.expect(")/(")?;
            self.eat("poly:");
            let den = self.complex_list(',')?;
            self.expect(")")?;
            return Ok(Factor::Spec(FunctionSpec::Rational {
                num: Poly::new(num),
                den: Poly::new(den),
            }));
        }
        match self.complex() {
            Some(c) => Ok(Factor::Scalar(c)),
            None => Err(self.error("expected `poly:`, `blaschke:`, `rat:`, `(` or a number")),
        }
    }

    fn complex_list(&mut self, sep: char) -> Result<Vec<Complex64>, SpecError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.complex() {
                Some(c) => out.push(c),
                None => return Err(self.error("expected a complex literal")),
            }
            self.skip_ws();
            if self.peek() == Some(sep) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    /// Unsigned decimal with optional exponent; returns the byte length.
    fn number_len(s: &str) -> usize {
        let b = s.as_bytes();
        let mut n = 0;
        let digits = |n: &mut usize| {
            let start = *n;
            while *n < b.len() && b[*n].is_ascii_digit() {
                *n += 1;
            }
            *n > start
        };
        let int = digits(&mut n);
        let mut frac = false;
        if n < b.len() && b[n] == b'.' {
            n += 1;
            frac = digits(&mut n);
        }
        if !int && !frac {
            return 0;
        }
        if n < b.len() && (b[n] == b'e' || b[n] == b'E') {
            let mut m = n + 1;
            if m < b.len() && (b[m] == b'+' || b[m] == b'-') {
                m += 1;
            }
            if digits(&mut m) {
                n = m;
            }
        }
        n
    }

    /// Signed real or imaginary piece: returns (value, is_imaginary, len).
    fn signed_piece(s: &str) -> Option<(f64, bool, usize)> {
        let mut n = 0;
        let mut sign = 1.0;
        match s.as_bytes().first() {
            Some(b'+') => n = 1,
            Some(b'-') => {
                sign = -1.0;
                n = 1
            }
            _ => {}
        }
        let len = Self::number_len(&s[n..]);
        let mag = if len == 0 {
            1.0
        } else {
            s[n..n + len].parse::<f64>().ok()?
        };
        n += len;
        if s[n..].starts_with('i') {
            Some((sign * mag, true, n + 1))
        } else if len == 0 {
            None
        } else {
            Some((sign * mag, false, n))
        }
    }

    fn complex(&mut self) -> Option<Complex64> {
        let (first, imag, len) = Self::signed_piece(self.rest())?;
        self.pos += len;
        if imag {
            return Some(Complex64::new(0.0, first));
        }
        let rest = self.rest();
        if rest.starts_with('+') || rest.starts_with('-') {
            if let Some((im, true, len)) = Self::signed_piece(rest) {
                self.pos += len;
                return Some(Complex64::new(first, im));
            }
        }
        Some(Complex64::new(first, 0.0))
    }
}

enum Factor {
    Scalar(Complex64),
    Spec(FunctionSpec),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn literals() {
        let p = parse_spec("poly:1+2i,-i,3,2.5e-1-0.5i,i").unwrap();
        assert_eq!(
            p,
            FunctionSpec::poly(&[c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0), c(0.25, -0.5), c(0.0, 1.0)])
        );
    }

    #[test]
    fn sums_products_scales() {
        let s = parse_spec("0.5*poly:0,1 + blaschke:0.5;0.1i*poly:1").unwrap();
        let z = c(0.2, 0.1);
        let b = FunctionSpec::Blaschke(vec![c(0.5, 0.0), c(0.0, 0.1)]);
        let expect = 0.5 * z + b.eval(z).unwrap();
        assert!((s.eval(z).unwrap() - expect).norm() < 1e-15);
        let s = parse_spec("poly:1+poly:0,1").unwrap();
        assert_eq!(s.eval(c(0.3, 0.0)).unwrap(), c(1.3, 0.0));
        let r = parse_spec("rat:(poly:1)/(poly:2,1)").unwrap();
        assert!((r.eval(c(0.0, 0.0)).unwrap() - 0.5).norm() < 1e-16);
    }

    #[test]
    fn error_reports_position() {
        match parse_spec("poly:1,,2") {
            Err(SpecError::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_spec("zz").is_err());
        assert!(parse_spec("poly:1 junk").is_err());
    }

    fn arb_c() -> impl Strategy<Value = Complex64> {
        (-5.0..5.0f64, prop_oneof![Just(0.0), -5.0..5.0f64]).prop_map(|(a, b)| c(a, b))
    }

    fn arb_spec() -> impl Strategy<Value = FunctionSpec> {
        let leaf = prop_oneof![
            prop::collection::vec(arb_c(), 1..4).prop_map(|v| FunctionSpec::poly(&v)),
            prop::collection::vec(arb_c().prop_map(|a| a * 0.15), 1..3)
                .prop_map(FunctionSpec::Blaschke),
            (prop::collection::vec(arb_c(), 1..3), arb_c()).prop_map(|(n, a)| {
                FunctionSpec::Rational {
                    num: Poly::new(n),
                    den: Poly::new(vec![c(8.0, 0.0) + a, c(1.0, 0.0)]),
                }
            }),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..3).prop_map(FunctionSpec::Sum),
                prop::collection::vec(inner.clone(), 2..3).prop_map(FunctionSpec::Product),
                (arb_c(), inner).prop_map(|(a, s)| FunctionSpec::Scale(a, Box::new(s))),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(spec in arb_spec(), re in -0.9..0.9f64, im in -0.4..0.4f64) {
            let text = spec.to_string();
            let back = parse_spec(&text).unwrap();
            let z = c(re, im);
            let a = spec.eval(z).unwrap();
            let b = back.eval(z).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "{text}");
        }
    }
}
