use std::path::PathBuf;

use recalc_core::arith::{QMode, Rational};
use recalc_core::double::Caps;
use recalc_core::suite::{random_points, Source, SUITES};
use recalc_core::tensor::r_matrix_from_json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bad --rmatrix `{0}`: expected standard:N, flip:N, super:m,n or file:PATH")]
    RMatrix(String),
    #[error("bad --qmode `{0}`: expected exact, specialized:q0 or random:SEED:COUNT")]
    QMode(String),
    #[error("q0 = {0} is excluded: q0 must avoid 0 and -1")]
    RootOfUnity(String),
    #[error("unknown suite `{0}`; known suites: {known}", known = SUITES.join(", "))]
    Suite(String),
    #[error("cannot read {path}: {err}")]
    Io { path: PathBuf, err: String },
    #[error("R-matrix file {path}: {err}")]
    File { path: PathBuf, err: String },
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RSpec {
    Standard(usize),
    Flip(usize),
    Super(usize, usize),
    File(PathBuf),
}

impl RSpec {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::RMatrix(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let num = |a: &str| a.trim().parse::<usize>().ok().filter(|n| *n > 0).ok_or_else(bad);
        match kind {
            "standard" => Ok(RSpec::Standard(num(arg)?)),
            "flip" => Ok(RSpec::Flip(num(arg)?)),
            "super" => {
                let (m, n) = arg.split_once(',').ok_or_else(bad)?;
                Ok(RSpec::Super(num(m)?, num(n)?))
            }
            "file" if !arg.is_empty() => Ok(RSpec::File(PathBuf::from(arg))),
            _ => Err(bad()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RSpec::Standard(n) => format!("standard:{n}"),
            RSpec::Flip(n) => format!("flip:{n}"),
            RSpec::Super(m, n) => format!("super:{m},{n}"),
            RSpec::File(p) => format!("file:{}", p.display()),
        }
    }

    /// Vector space dimension, reading the file when needed.
    fn dim(&self, file: &Option<String>) -> Result<usize, ConfigError> {
        Ok(match self {
            RSpec::Standard(n) | RSpec::Flip(n) => *n,
            RSpec::Super(m, n) => m + n,
            RSpec::File(path) => {
                let src = file.as_deref().unwrap_or_default();
                r_matrix_from_json(src, &QMode::exact())
                    .map_err(|e| ConfigError::File { path: path.clone(), err: e.to_string() })?
                    .dim()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QSpec {
    Exact,
    Specialized(Rational),
    Random { seed: u64, count: usize },
}

impl QSpec {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::QMode(s.to_string());
        if s == "exact" {
            return Ok(QSpec::Exact);
        }
        if let Some(q0) = s.strip_prefix("specialized:") {
            let q0: Rational = q0.parse().map_err(|_| bad())?;
            if q0 == Rational::ZERO || q0 == Rational::from_int(-1) {
                return Err(ConfigError::RootOfUnity(q0.to_string()));
            }
            return Ok(QSpec::Specialized(q0));
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let (seed, count) = rest.split_once(':').ok_or_else(bad)?;
            let seed = seed.parse().map_err(|_| bad())?;
            let count = count.parse().ok().filter(|c| *c > 0).ok_or_else(bad)?;
            return Ok(QSpec::Random { seed, count });
        }
        Err(bad())
    }

    /// Modes to run, each with the seed that produced it. `q0 = 1` selects the
    /// classical (involutive) mode.
    pub fn modes(&self) -> Vec<(QMode, Option<u64>)> {
        match self {
            QSpec::Exact => vec![(QMode::exact(), None)],
            QSpec::Specialized(q0) if *q0 == Rational::ONE => vec![(QMode::classical(), None)],
            QSpec::Specialized(q0) => vec![(QMode::specialized(q0.clone()).expect("checked on parse"), None)],
            QSpec::Random { seed, count } => random_points(*seed, *count)
                .into_iter()
                .map(|q0| (QMode::specialized(q0).expect("random points avoid roots of unity"), Some(*seed)))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub rmatrix: RSpec,
    pub qmode: QSpec,
    pub caps: Caps,
    pub max_sites: Option<usize>,
    pub checks: Vec<String>,
    pub output: Output,
    pub workers: usize,
    pub json_out: Option<PathBuf>,
    file: Option<String>,
}

/// Seed of the default random specializations for `N ≥ 3`.
pub const DEFAULT_SEED: u64 = 1;

pub struct RawConfig<'a> {
    pub rmatrix: &'a str,
    pub qmode: Option<&'a str>,
    pub checks: Option<&'a str>,
    pub output: &'a str,
    pub workers: usize,
    pub json_out: Option<PathBuf>,
    pub max_sites: Option<usize>,
    pub env_sites: Option<String>,
    pub max_m_degree: usize,
    pub max_del_degree: usize,
}

impl RunConfig {
    pub fn from_raw(raw: RawConfig<'_>) -> Result<Self, ConfigError> {
        let rmatrix = RSpec::parse(raw.rmatrix)?;
        let file = match &rmatrix {
            RSpec::File(path) => Some(
                std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.clone(), err: e.to_string() })?,
            ),
            _ => None,
        };
        let n = rmatrix.dim(&file)?;
        let qmode = match raw.qmode {
            Some(q) => QSpec::parse(q)?,
            None if n >= 3 => QSpec::Random { seed: DEFAULT_SEED, count: 3 },
            None => QSpec::Exact,
        };
        let checks: Vec<String> = match raw.checks {
            None => SUITES.iter().map(|s| s.to_string()).collect(),
            Some(list) => list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        };
        if let Some(bad) = checks.iter().find(|c| !SUITES.contains(&c.as_str())) {
            return Err(ConfigError::Suite(bad.clone()));
        }
        if checks.is_empty() {
            return Err(ConfigError::Other("--checks names no suite".into()));
        }
        let output = match raw.output {
            "text" => Output::Text,
            "json" => Output::Json,
            o => return Err(ConfigError::Other(format!("bad --output `{o}`: expected text or json"))),
        };
        let env_sites = match raw.env_sites {
            Some(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| ConfigError::Other(format!("RECALC_CAP_SITES must be a positive integer, got `{v}`")))?,
            ),
            None => None,
        };
        let max_sites = raw.max_sites.or(env_sites);
        if max_sites == Some(0) || raw.max_m_degree == 0 || raw.max_del_degree == 0 {
            return Err(ConfigError::Other("caps must be positive".into()));
        }
        if raw.max_m_degree > 8 || raw.max_del_degree > 8 {
            return Err(ConfigError::Other("degree caps above 8 are not supported".into()));
        }
        Ok(RunConfig {
            rmatrix,
            qmode,
            caps: Caps { m_degree: raw.max_m_degree, d_degree: raw.max_del_degree },
            max_sites,
            checks,
            output,
            workers: raw.workers,
            json_out: raw.json_out,
            file,
        })
    }

    /// The R-matrix source in a given mode; file entries are read in that mode.
    pub fn source(&self, mode: &QMode) -> Result<Source, ConfigError> {
        Ok(match &self.rmatrix {
            RSpec::Standard(n) => Source::Standard(*n),
            RSpec::Flip(n) => Source::Flip(*n),
            RSpec::Super(m, n) => Source::Super(*m, *n),
            RSpec::File(path) => Source::Matrix(
                r_matrix_from_json(self.file.as_deref().unwrap_or_default(), mode)
                    .map_err(|e| ConfigError::File { path: path.clone(), err: e.to_string() })?,
            ),
        })
    }

    pub fn dim(&self) -> usize {
        self.rmatrix.dim(&self.file).expect("validated on construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rmatrix_specs() {
        assert_eq!(RSpec::parse("standard:2").unwrap(), RSpec::Standard(2));
        assert_eq!(RSpec::parse("super:1,1").unwrap(), RSpec::Super(1, 1));
        assert_eq!(RSpec::parse("file:x.json").unwrap(), RSpec::File("x.json".into()));
        assert!(RSpec::parse("standard:0").is_err());
        assert!(RSpec::parse("cube:2").is_err());
    }

    #[test]
    fn parses_qmodes() {
        assert_eq!(QSpec::parse("exact").unwrap(), QSpec::Exact);
        assert_eq!(QSpec::parse("specialized:3/2").unwrap(), QSpec::Specialized(Rational::new(3, 2)));
        assert_eq!(QSpec::parse("random:5:3").unwrap(), QSpec::Random { seed: 5, count: 3 });
        assert!(matches!(QSpec::parse("specialized:-1"), Err(ConfigError::RootOfUnity(_))));
        assert!(QSpec::parse("random:5:0").is_err());
    }

    #[test]
    fn q_one_is_the_classical_mode() {
        let modes = QSpec::Specialized(Rational::ONE).modes();
        assert_eq!(modes.len(), 1);
        assert!(!modes[0].0.is_generic());
    }
}
