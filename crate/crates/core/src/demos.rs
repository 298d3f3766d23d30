//! Compiled-in corona data presets.

use std::fmt;
use std::str::FromStr;

use crate::error::{ConfigError, PipelineError};
use crate::grid::PolarGrid;
use crate::pipeline::CoronaProblem;
use crate::spec::{FunctionSpec, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    /// `(z, 1 - z)`, eps = 0.4.
    WolffTrivial,
    /// `(z^2, (1 - z)^2)`, eps = 0.16.
    Squares,
    /// `(z^2, (z - 1)^2, (z - i)^2)`, eps = 0.36.
    Triple,
    /// `(2)`, eps = 1.
    Single,
}

impl Demo {
    pub const ALL: [Demo; 4] = [Demo::WolffTrivial, Demo::Squares, Demo::Triple, Demo::Single];

    pub fn name(self) -> &'static str {
        match self {
            Demo::WolffTrivial => "wolff-trivial",
            Demo::Squares => "squares",
            Demo::Triple => "triple",
            Demo::Single => "single",
        }
    }

    pub fn function_text(self) -> &'static [&'static str] {
        match self {
            Demo::WolffTrivial => &["poly:0,1", "poly:1,-1"],
            Demo::Squares => &["poly:0,0,1", "poly:1,-2,1"],
            Demo::Triple => &["poly:0,0,1", "poly:1,-2,1", "poly:-1,-2i,1"],
            Demo::Single => &["poly:2"],
        }
    }

    pub fn specs(self) -> Vec<FunctionSpec> {
        self.function_text()
            .iter()
            .map(|s| s.parse().expect("demo specs parse"))
            .collect()
    }

    pub fn polynomials(self) -> Vec<Poly> {
        self.specs()
            .into_iter()
            .map(|s| s.as_polynomial().cloned().expect("demo data are polynomials"))
            .collect()
    }

    pub fn epsilon(self) -> f64 {
        match self {
            Demo::WolffTrivial => 0.4,
            Demo::Squares => 0.16,
            Demo::Triple => 0.36,
            Demo::Single => 1.0,
        }
    }

    pub fn problem(self, n_r: usize, n_theta: usize) -> Result<CoronaProblem, PipelineError> {
        let grid = PolarGrid::new(n_r, n_theta)?;
        CoronaProblem::new(self.specs(), self.epsilon(), grid)
    }
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Demo {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Demo::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| ConfigError::UnknownDemo(s.to_string()))
    }
}
