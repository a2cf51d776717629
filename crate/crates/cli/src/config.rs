//! `key=value` settings, one per line, `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use stabgeo::bodies::unit_ball_volume;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value, got `{line}`", i + 1)))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(CliError::Config(format!("line {}: empty key", i + 1)));
            }
            if map.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(CliError::Config(format!("line {}: duplicate key `{k}`", i + 1)));
            }
        }
        Ok(Self { map })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.map.insert(key.to_string(), value.into());
    }

    /// Applies every `Some` value over the current settings.
    pub fn overlay<I, V>(mut self, pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'static str, Option<V>)>,
        V: ToString,
    {
        for (k, v) in pairs {
            if let Some(v) = v {
                self.set(k, v.to_string());
            }
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key).ok_or_else(|| CliError::Config(format!("missing `{key}`")))
    }

    pub fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| CliError::Config(format!("bad value for `{key}`: `{v}`"))))
            .transpose()
    }

    pub fn parsed_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.map.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Config(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    CapScan,
    BsScan,
    PlScan,
    PlnScan,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::CapScan => "cap-scan",
            Experiment::BsScan => "bs-scan",
            Experiment::PlScan => "pl-scan",
            Experiment::PlnScan => "pln-scan",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "cap-scan" => Ok(Experiment::CapScan),
            "bs-scan" => Ok(Experiment::BsScan),
            "pl-scan" => Ok(Experiment::PlScan),
            "pln-scan" => Ok(Experiment::PlnScan),
            _ => Err(CliError::Config(format!("unknown experiment `{s}`"))),
        }
    }
}

/// Perturbation family of the one-dimensional scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `f = m(· - δ)`, `g = m`
    Shift,
    /// `f ∝ m · (1 + δ sign)`, `g = m`
    Asymmetric,
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "shift" => Ok(Family::Shift),
            "asymmetric" => Ok(Family::Asymmetric),
            _ => Err(CliError::Config(format!("unknown family `{s}`"))),
        }
    }
}

/// Grid syntax: `v1,v2,...`, `log:lo:hi:n` or `lin:lo:hi:n`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Config(format!("bad grid `{s}`"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let s = s.trim();
    let spaced = |rest: &str, log: bool| -> Result<Vec<f64>, CliError> {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if n == 0 || (log && !(lo > 0.0 && hi > 0.0)) {
            return Err(bad());
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        Ok((0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                if log {
                    (lo.ln() + s * (hi.ln() - lo.ln())).exp()
                } else {
                    lo + s * (hi - lo)
                }
            })
            .collect())
    };
    let out = if let Some(rest) = s.strip_prefix("log:") {
        spaced(rest, true)?
    } else if let Some(rest) = s.strip_prefix("lin:") {
        spaced(rest, false)?
    } else if s.is_empty() {
        Vec::new()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if out.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(out)
}

pub const SCAN_KEYS: &[&str] = &[
    "experiment",
    "dim",
    "grid",
    "seed",
    "output",
    "samples",
    "levels",
    "points",
    "count",
    "cutoff",
    "family",
    "r_samples",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub dim: usize,
    pub grid: Vec<f64>,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    /// profile resolution of revolution bodies
    pub samples: usize,
    /// levels per stack
    pub levels: usize,
    /// nodes of one-dimensional functions
    pub points: usize,
    /// bodies in the bs-scan family
    pub count: usize,
    /// regression keeps points whose deficit exceeds this
    pub cutoff: f64,
    pub family: Family,
    pub r_samples: usize,
}

impl ExperimentConfig {
    pub fn defaults(experiment: Experiment) -> Self {
        let samples = match experiment {
            Experiment::CapScan => 32769,
            Experiment::PlnScan => 1025,
            _ => 2049,
        };
        Self {
            experiment,
            dim: 3,
            grid: Vec::new(),
            seed: 0,
            output_path: None,
            samples,
            levels: 64,
            points: 2049,
            count: 200,
            cutoff: 1e-12,
            family: Family::Asymmetric,
            r_samples: 33,
        }
    }

    /// Builds and validates a config. `experiment` is the subcommand's
    /// choice; a conflicting `experiment` key is an error, except that
    /// `pl-scan` may select `pln-scan`.
    pub fn from_settings(s: &Settings, experiment: Experiment) -> Result<Self, CliError> {
        s.check_keys(SCAN_KEYS)?;
        let experiment = match s.parsed::<Experiment>("experiment")? {
            None => experiment,
            Some(e) if e == experiment => e,
            Some(Experiment::PlnScan) if experiment == Experiment::PlScan => Experiment::PlnScan,
            Some(e) => return Err(CliError::Config(format!("experiment `{e}` given to the {experiment} command"))),
        };
        let d = Self::defaults(experiment);
        let cfg = Self {
            experiment,
            dim: s.parsed_or("dim", d.dim)?,
            grid: match s.get("grid") {
                Some(g) => parse_grid(g)?,
                None => Vec::new(),
            },
            seed: s.parsed_or("seed", d.seed)?,
            output_path: s.get("output").map(PathBuf::from),
            samples: s.parsed_or("samples", d.samples)?,
            levels: s.parsed_or("levels", d.levels)?,
            points: s.parsed_or("points", d.points)?,
            count: s.parsed_or("count", d.count)?,
            cutoff: s.parsed_or("cutoff", d.cutoff)?,
            family: s.parsed_or("family", d.family)?,
            r_samples: s.parsed_or("r_samples", d.r_samples)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let err = |m: String| Err(CliError::Config(m));
        if self.dim < 2 {
            return err(format!("dim = {} < 2", self.dim));
        }
        if self.samples < 65 {
            return err(format!("samples = {} < 65", self.samples));
        }
        if self.levels < 2 {
            return err(format!("levels = {} < 2", self.levels));
        }
        if self.points < 65 {
            return err(format!("points = {} < 65", self.points));
        }
        if self.r_samples < 8 {
            return err(format!("r_samples = {} < 8", self.r_samples));
        }
        if !(self.cutoff >= 0.0 && self.cutoff.is_finite()) {
            return err(format!("cutoff = {}", self.cutoff));
        }
        if self.experiment == Experiment::BsScan {
            if self.count == 0 {
                return err("count = 0".into());
            }
            return Ok(());
        }
        if self.grid.is_empty() {
            return err("grid is empty".into());
        }
        let bad = |v: f64, range: &str| err(format!("grid value {v} outside {range} for {}", self.experiment));
        for &v in &self.grid {
            match self.experiment {
                Experiment::CapScan => {
                    let limit = unit_ball_volume(self.dim) / 4.0;
                    if !(v > 0.0 && v < limit) {
                        return bad(v, &format!("(0, {limit})"));
                    }
                }
                Experiment::PlScan => match self.family {
                    Family::Asymmetric if !(0.0..1.0).contains(&v) => return bad(v, "[0, 1)"),
                    Family::Shift if v.abs() > 10.0 => return bad(v, "[-10, 10]"),
                    _ => {}
                },
                Experiment::PlnScan => {
                    if !(v > -1.0 && v <= 10.0) {
                        return bad(v, "(-1, 10]");
                    }
                }
                Experiment::BsScan => {}
            }
        }
        Ok(())
    }
}
