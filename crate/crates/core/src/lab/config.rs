use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::point::ExtendedPoint;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Thm11,
    Thm12,
    CauchyInvariance,
    Interlacing,
    Atoms,
    LaguerreFlow,
    PdeResidual,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::Thm11,
        ExperimentKind::Thm12,
        ExperimentKind::CauchyInvariance,
        ExperimentKind::Interlacing,
        ExperimentKind::Atoms,
        ExperimentKind::LaguerreFlow,
        ExperimentKind::PdeResidual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Thm11 => "thm11",
            ExperimentKind::Thm12 => "thm12",
            ExperimentKind::CauchyInvariance => "cauchy-invariance",
            ExperimentKind::Interlacing => "interlacing",
            ExperimentKind::Atoms => "atoms",
            ExperimentKind::LaguerreFlow => "laguerre-flow",
            ExperimentKind::PdeResidual => "pde-residual",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config { field: "experiment".into(), reason: format!("unknown experiment {s:?}") })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    FreePoisson,
    Cauchy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// A validated experiment description. Fields an experiment does not use are ignored.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub family: FamilyName,
    pub lambda: Vec<Rational>,
    pub poles: Vec<ExtendedPoint>,
    pub s: Vec<Rational>,
    pub t: Vec<Rational>,
    pub weights: Vec<Rational>,
    /// Strictly increasing degrees.
    pub ladder: Vec<usize>,
    pub tol: f64,
    pub seed: u64,
    pub instances: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

/// Scalars in TOML may be written as numbers or as `"p/q"` strings.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Float(v) => write!(f, "{v}"),
            Scalar::Text(v) => f.write_str(v),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarList {
    One(Scalar),
    Many(Vec<Scalar>),
}

impl ScalarList {
    fn items(&self) -> Vec<String> {
        match self {
            ScalarList::One(Scalar::Text(s)) => s.split(',').map(|x| x.trim().to_string()).collect(),
            ScalarList::One(x) => vec![x.to_string()],
            ScalarList::Many(v) => v.iter().map(Scalar::to_string).collect(),
        }
    }
}

/// Unvalidated configuration as read from TOML or assembled from command-line flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub experiment: Option<String>,
    pub family: Option<String>,
    pub lambda: Option<ScalarList>,
    pub pole: Option<ScalarList>,
    pub s: Option<ScalarList>,
    pub t: Option<ScalarList>,
    pub weights: Option<ScalarList>,
    pub ladder: Option<ScalarList>,
    pub tol: Option<Scalar>,
    pub seed: Option<u64>,
    pub instances: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

impl RawConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config { field: "toml".into(), reason: e.to_string() })
    }

    /// Flag-style `key=value` pairs; lists are comma separated.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let list = || Some(ScalarList::One(Scalar::Text(value.to_string())));
        let bad = |reason: String| Error::Config { field: key.to_string(), reason };
        match key {
            "experiment" => self.experiment = Some(value.into()),
            "family" => self.family = Some(value.into()),
            "lambda" => self.lambda = list(),
            "pole" | "poles" | "a" => self.pole = list(),
            "s" => self.s = list(),
            "t" => self.t = list(),
            "weights" | "w" => self.weights = list(),
            "ladder" => self.ladder = list(),
            "tol" => self.tol = Some(Scalar::Text(value.into())),
            "seed" => self.seed = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "instances" => self.instances = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "out" => self.out = Some(value.into()),
            "format" => self.format = Some(value.into()),
            _ => return Err(bad("unknown key".into())),
        }
        Ok(())
    }

    /// Fields set in `other` override those in `self`.
    pub fn merge(self, other: RawConfig) -> RawConfig {
        RawConfig {
            experiment: other.experiment.or(self.experiment),
            family: other.family.or(self.family),
            lambda: other.lambda.or(self.lambda),
            pole: other.pole.or(self.pole),
            s: other.s.or(self.s),
            t: other.t.or(self.t),
            weights: other.weights.or(self.weights),
            ladder: other.ladder.or(self.ladder),
            tol: other.tol.or(self.tol),
            seed: other.seed.or(self.seed),
            instances: other.instances.or(self.instances),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
        }
    }

    pub fn validate(&self) -> Result<ExperimentConfig> {
        let cfg_err = |field: &str, reason: String| Error::Config { field: field.into(), reason };
        let kind: ExperimentKind =
            self.experiment.as_deref().ok_or_else(|| cfg_err("experiment", "missing".into()))?.parse()?;
        let d = Defaults::of(kind);
        let rationals = |field: &str, v: &Option<ScalarList>, default: &[&str]| -> Result<Vec<Rational>> {
            let items =
                v.as_ref().map(ScalarList::items).unwrap_or_else(|| default.iter().map(|s| s.to_string()).collect());
            items.iter().map(|s| rational::parse(s).map_err(|e| cfg_err(field, e.to_string()))).collect()
        };
        let family = match self.family.as_deref().unwrap_or(d.family) {
            "free_poisson" | "free-poisson" | "fp" => FamilyName::FreePoisson,
            "cauchy" => FamilyName::Cauchy,
            other => return Err(cfg_err("family", format!("unknown family {other:?}"))),
        };
        let poles = self
            .pole
            .as_ref()
            .map(ScalarList::items)
            .unwrap_or_else(|| d.poles.iter().map(|s| s.to_string()).collect())
            .iter()
            .map(|s| ExtendedPoint::parse(s).map_err(|e| cfg_err("pole", e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let ladder = self
            .ladder
            .as_ref()
            .map(ScalarList::items)
            .unwrap_or_else(|| d.ladder.iter().map(|n| n.to_string()).collect())
            .iter()
            .map(|s| s.parse::<usize>().map_err(|e| cfg_err("ladder", format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if ladder.is_empty() || ladder.windows(2).any(|w| w[0] >= w[1]) || ladder[0] == 0 {
            return Err(cfg_err("ladder", "must be non-empty, positive and strictly increasing".into()));
        }
        let tol = match &self.tol {
            Some(v) => rational::to_f64(&rational::parse(&v.to_string()).map_err(|e| cfg_err("tol", e.to_string()))?),
            None => d.tol,
        };
        if !(tol > 0.0) {
            return Err(cfg_err("tol", "must be positive".into()));
        }
        let s = rationals("s", &self.s, d.s)?;
        let t = rationals("t", &self.t, d.t)?;
        if s.iter().chain(&t).any(|x| *x < rational::int(1)) {
            return Err(cfg_err("s/t", "powers must be at least 1".into()));
        }
        let lambda = rationals("lambda", &self.lambda, d.lambda)?;
        if lambda.iter().any(|l| *l < rational::int(1)) {
            return Err(cfg_err("lambda", "intensities below 1 are unsupported".into()));
        }
        let weights = rationals("weights", &self.weights, d.weights)?;
        if weights.iter().any(|w| *w <= rational::int(0) || *w >= rational::int(1)) {
            return Err(cfg_err("weights", "atom weights must lie in (0, 1)".into()));
        }
        let format = match self.format.as_deref().unwrap_or("csv") {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => return Err(cfg_err("format", format!("unknown format {other:?}"))),
        };
        let instances = self.instances.unwrap_or(d.instances);
        if instances == 0 {
            return Err(cfg_err("instances", "must be positive".into()));
        }
        Ok(ExperimentConfig {
            experiment: kind,
            family,
            lambda,
            poles,
            s,
            t,
            weights,
            ladder,
            tol,
            seed: self.seed.unwrap_or(7),
            instances,
            out: self.out.clone(),
            format,
        })
    }
}

/// Per-experiment defaults, chosen so every experiment runs from its name alone.
struct Defaults {
    family: &'static str,
    lambda: &'static [&'static str],
    poles: &'static [&'static str],
    s: &'static [&'static str],
    t: &'static [&'static str],
    weights: &'static [&'static str],
    ladder: &'static [usize],
    tol: f64,
    instances: usize,
}

impl Defaults {
    fn of(kind: ExperimentKind) -> Self {
        let base = Defaults {
            family: "free_poisson",
            lambda: &["2"],
            poles: &["0"],
            s: &["2"],
            t: &["2"],
            weights: &["3/10", "3/5"],
            ladder: &[64, 128, 256, 512],
            tol: 0.05,
            instances: 500,
        };
        match kind {
            ExperimentKind::Thm11 => base,
            ExperimentKind::Thm12 => Defaults {
                lambda: &["3/2", "2", "4"],
                poles: &["0", "1", "inf"],
                s: &["1", "7/4", "5/2", "13/4", "4"],
                t: &["1", "7/4", "5/2", "13/4", "4"],
                tol: 1e-12,
                ..base
            },
            ExperimentKind::CauchyInvariance => {
                Defaults { family: "cauchy", poles: &["1"], ladder: &[100, 200, 400], tol: 0.08, ..base }
            }
            ExperimentKind::Interlacing => Defaults { ladder: &[2, 3, 4, 5, 6, 7, 8], ..base },
            ExperimentKind::Atoms => {
                Defaults { poles: &["inf", "-1"], s: &["5/4", "3/2", "2"], ladder: &[400], tol: 0.005, ..base }
            }
            ExperimentKind::LaguerreFlow => Defaults {
                lambda: &["3/2", "2", "3"],
                ladder: &[2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
                tol: 1e-12,
                ..base
            },
            ExperimentKind::PdeResidual => {
                Defaults { poles: &["inf", "0"], t: &["3/2", "2", "3"], tol: 1e-6, instances: 100, ..base }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_and_defaults() {
        let mut raw = RawConfig::default();
        for (k, v) in
            [("experiment", "thm11"), ("lambda", "2"), ("pole", "0"), ("t", "2"), ("ladder", "64,128"), ("tol", "0.05")]
        {
            raw.set(k, v).unwrap();
        }
        let cfg = raw.validate().unwrap();
        assert_eq!(cfg.ladder, vec![64, 128]);
        assert_eq!(cfg.poles, vec![ExtendedPoint::int(0)]);
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn toml_config() {
        let raw = RawConfig::from_toml(
            "experiment = \"atoms\"\nweights = [0.3, \"3/5\"]\npole = [\"inf\", -1]\nladder = [200, 400]\nseed = 3\n",
        )
        .unwrap();
        let cfg = raw.validate().unwrap();
        assert_eq!(cfg.weights, vec![rational::frac(3, 10), rational::frac(3, 5)]);
        assert_eq!(cfg.poles, vec![ExtendedPoint::Infinity, ExtendedPoint::int(-1)]);
    }

    #[test]
    fn errors_name_the_field() {
        let mut raw = RawConfig::default();
        raw.set("experiment", "thm11").unwrap();
        raw.set("ladder", "128,64").unwrap();
        match raw.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "ladder"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(RawConfig::default().validate(), Err(Error::Config { .. })));
        assert!(RawConfig::from_toml("bogus = 1").is_err());
    }
}
