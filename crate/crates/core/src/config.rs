//! Flat `key = value` run configuration.
//!
//! ```text
//! # comment
//! functions = poly:0,1 | poly:1,-1
//! epsilon = 0.4
//! n_r = 128
//! n_theta = 256
//! ```
//!
//! `functions` separates specs with `|`. A `demo` key supplies `functions`
//! and `epsilon`; explicit keys override it.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::demos::Demo;
use crate::error::{ConfigError, PipelineError};
use crate::grid::{PolarGrid, MIN_N_R, MIN_N_THETA};
use crate::pipeline::{CoronaProblem, SolveConfig, DEFAULT_MARGIN, DEFAULT_R_INT, DEFAULT_SIGMA};
use crate::spec::FunctionSpec;

pub const KEYS: [&str; 10] = [
    "functions",
    "epsilon",
    "n_r",
    "n_theta",
    "sigma",
    "margin",
    "r_int",
    "output_dir",
    "dump_fields",
    "demo",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub functions: Vec<FunctionSpec>,
    pub epsilon: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub sigma: f64,
    pub margin: f64,
    pub r_int: f64,
    pub output_dir: PathBuf,
    pub dump_fields: bool,
    pub demo: Option<Demo>,
}

impl RunConfig {
    /// Demo data at the default resolution.
    pub fn for_demo(demo: Demo) -> Self {
        Self {
            functions: demo.specs(),
            epsilon: demo.epsilon(),
            n_r: 128,
            n_theta: 256,
            sigma: DEFAULT_SIGMA,
            margin: DEFAULT_MARGIN,
            r_int: DEFAULT_R_INT,
            output_dir: PathBuf::from("out"),
            dump_fields: false,
            demo: Some(demo),
        }
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|e| ConfigError::Syntax {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        text.parse()
    }

    pub fn solve_config(&self) -> SolveConfig {
        SolveConfig {
            sigma: self.sigma,
            margin: self.margin,
            r_int: self.r_int,
            ..SolveConfig::default()
        }
    }

    pub fn problem(&self) -> Result<CoronaProblem, PipelineError> {
        self.problem_at(self.n_r, self.n_theta)
    }

    pub fn problem_at(&self, n_r: usize, n_theta: usize) -> Result<CoronaProblem, PipelineError> {
        let grid = PolarGrid::new(n_r, n_theta)?;
        CoronaProblem::new(self.functions.clone(), self.epsilon, grid)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, msg: String| Err(ConfigError::Key { key: key.into(), msg });
        if self.functions.is_empty() {
            return bad("functions", "missing (set `functions` or `demo`)".into());
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad("epsilon", format!("must be > 0, got {}", self.epsilon));
        }
        if self.n_r < MIN_N_R {
            return bad("n_r", format!("must be >= {}, got {}", MIN_N_R, self.n_r));
        }
        if self.n_theta < MIN_N_THETA {
            return bad(
                "n_theta",
                format!("must be >= {}, got {}", MIN_N_THETA, self.n_theta),
            );
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad("sigma", format!("must be > 0, got {}", self.sigma));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return bad("margin", format!("must be >= 0, got {}", self.margin));
        }
        if !(self.r_int > 0.0 && self.r_int < 1.0) {
            return bad("r_int", format!("must lie in (0, 1), got {}", self.r_int));
        }
        Ok(())
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Key {
        key: key.into(),
        msg: format!("cannot parse `{value}`: {e}"),
    })
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(ConfigError::Key {
            key: key.into(),
            msg: format!("expected true or false, got `{value}`"),
        }),
    }
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: n + 1,
                    msg: format!("expected `key = value`, got `{line}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::Key {
                    key: key.into(),
                    msg: "unknown key".into(),
                });
            }
            if pairs.iter().any(|(k, _)| *k == key) {
                return Err(ConfigError::Key {
                    key: key.into(),
                    msg: format!("duplicate (line {})", n + 1),
                });
            }
            pairs.push((key, value));
        }

        let demo = match pairs.iter().find(|(k, _)| *k == "demo") {
            Some((_, v)) => Some(v.parse::<Demo>()?),
            None => None,
        };
        let mut cfg = match demo {
            Some(d) => RunConfig::for_demo(d),
            None => RunConfig {
                functions: Vec::new(),
                epsilon: f64::NAN,
                demo: None,
                ..RunConfig::for_demo(Demo::Single)
            },
        };
        let mut epsilon_set = demo.is_some();
        for (key, value) in pairs {
            match key {
                "functions" => {
                    cfg.functions = value
                        .split('|')
                        .map(|s| parse_value::<FunctionSpec>(key, s.trim()))
                        .collect::<Result<_, _>>()?;
                }
                "epsilon" => {
                    cfg.epsilon = parse_value(key, value)?;
                    epsilon_set = true;
                }
                "n_r" => cfg.n_r = parse_value(key, value)?,
                "n_theta" => cfg.n_theta = parse_value(key, value)?,
                "sigma" => cfg.sigma = parse_value(key, value)?,
                "margin" => cfg.margin = parse_value(key, value)?,
                "r_int" => cfg.r_int = parse_value(key, value)?,
                "output_dir" => cfg.output_dir = PathBuf::from(value),
                "dump_fields" => cfg.dump_fields = parse_bool(key, value)?,
                _ => {}
            }
        }
        if !epsilon_set {
            return Err(ConfigError::Key {
                key: "epsilon".into(),
                msg: "missing".into(),
            });
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key_of(err: ConfigError) -> String {
        match err {
            ConfigError::Key { key, .. } => key,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn full_config() {
        let cfg: RunConfig = "# wolff\nfunctions = poly:0,1 | poly:1,-1\nepsilon = 0.4\n\
                              n_r = 32\nn_theta = 64\nsigma = 0.25\nmargin = 0.1\nr_int = 0.8\n\
                              output_dir = /tmp/x\ndump_fields = true\n"
            .parse()
            .unwrap();
        assert_eq!(cfg.functions.len(), 2);
        assert_eq!((cfg.n_r, cfg.n_theta), (32, 64));
        assert_eq!(cfg.sigma, 0.25);
        assert!(cfg.dump_fields);
        assert_eq!(cfg.output_dir, PathBuf::from("/tmp/x"));
        assert_eq!(cfg.demo, None);
        assert_eq!(cfg.solve_config().r_int, 0.8);
    }

    #[test]
    fn demo_supplies_defaults() {
        let cfg: RunConfig = "demo = squares\nn_r = 16".parse().unwrap();
        assert_eq!(cfg.epsilon, 0.16);
        assert_eq!(cfg.functions, Demo::Squares.specs());
        assert_eq!(cfg.n_theta, 256);
        let cfg: RunConfig = "demo = wolff-trivial\nepsilon = 0.5".parse().unwrap();
        assert_eq!(cfg.epsilon, 0.5);
    }

    #[test]
    fn errors_name_the_key() {
        let base = "functions = poly:0,1\n";
        assert_eq!(key_of(format!("{base}epsilon = -1").parse::<RunConfig>().unwrap_err()), "epsilon");
        assert_eq!(key_of(base.parse::<RunConfig>().unwrap_err()), "epsilon");
        assert_eq!(key_of(format!("{base}epsilon = x").parse::<RunConfig>().unwrap_err()), "epsilon");
        assert_eq!(key_of(format!("{base}epsilon = 1\nr_int = 1").parse::<RunConfig>().unwrap_err()), "r_int");
        assert_eq!(key_of(format!("{base}epsilon = 1\nn_r = 1").parse::<RunConfig>().unwrap_err()), "n_r");
        assert_eq!(key_of(format!("{base}epsilon = 1\nbogus = 1").parse::<RunConfig>().unwrap_err()), "bogus");
        assert_eq!(
            key_of("functions = poly:\nepsilon = 1".parse::<RunConfig>().unwrap_err()),
            "functions"
        );
        assert_eq!(key_of(format!("{base}epsilon = 1\nepsilon = 2").parse::<RunConfig>().unwrap_err()), "epsilon");
        assert!(matches!(
            "demo = nope".parse::<RunConfig>(),
            Err(ConfigError::UnknownDemo(_))
        ));
        assert!(matches!(
            "functions poly:1".parse::<RunConfig>(),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
    }
}
