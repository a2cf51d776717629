//! Even functions on ℝⁿ as nested stacks of coaxial revolution bodies,
//! the minimal midpoint stack and the level-by-level stability tracer.

mod io;
mod midpoint;
mod trace;

pub use io::{read_stack, write_stack};
pub use midpoint::{containment_margin, midpoint_section, minimal_midpoint_stack, DEFAULT_R_SAMPLES};
pub use trace::{pl_trace, TraceReport};

use crate::bodies::meridian::quadrant_supports;
use crate::bodies::RevolutionBody;
use crate::error::{GeomError, Result};
use crate::pl1d::{Domain, GridFn1D};

/// Number of meridian directions used for nesting and containment checks.
pub const CHECK_DIRECTIONS: usize = 64;

/// Default number of levels for stacks sampled from a function.
pub const DEFAULT_LEVELS: usize = 64;

/// `f(x) = max{t_k : x ∈ body_k}`, zero outside the last body.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelStack {
    dim: usize,
    levels: Vec<f64>,
    bodies: Vec<RevolutionBody>,
    log_concave: bool,
}

impl LevelStack {
    /// Heights strictly decreasing, bodies nested outward.
    pub fn new(dim: usize, levels: Vec<f64>, bodies: Vec<RevolutionBody>) -> Result<Self> {
        if levels.is_empty() {
            return Err(GeomError::EmptyFunction("stack has no levels".into()));
        }
        if levels.len() != bodies.len() {
            return Err(GeomError::InvalidInput(format!(
                "{} levels but {} bodies",
                levels.len(),
                bodies.len()
            )));
        }
        if levels.iter().any(|t| !(t.is_finite() && *t > 0.0)) || levels.windows(2).any(|w| w[1] >= w[0]) {
            return Err(GeomError::InvalidInput("levels must be positive and strictly decreasing".into()));
        }
        if let Some(b) = bodies.iter().find(|b| b.dim() != dim) {
            return Err(GeomError::InvalidArgument(format!("body of dimension {} in a {dim}-stack", b.dim())));
        }
        for k in 1..bodies.len() {
            let inner = quadrant_supports(&bodies[k - 1].chain(), CHECK_DIRECTIONS - 1);
            let outer = quadrant_supports(&bodies[k].chain(), CHECK_DIRECTIONS - 1);
            let tol = 1e-9 * outer.iter().copied().fold(0.0, f64::max);
            if inner.iter().zip(&outer).any(|(a, b)| *a > b + tol) {
                return Err(GeomError::InvalidInput(format!("body {k} does not contain body {}", k - 1)));
            }
        }
        Ok(Self { dim, levels, bodies, log_concave: false })
    }

    /// Stack with body `body(t)` at each height `t`.
    pub fn from_level_fn<F>(dim: usize, levels: Vec<f64>, body: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<RevolutionBody>,
    {
        let bodies = levels.iter().map(|&t| body(t)).collect::<Result<Vec<_>>>()?;
        Self::new(dim, levels, bodies)
    }

    /// Stack of `e^{-|x|²}` on `levels` heights.
    pub fn gaussian(dim: usize, levels: usize, samples: usize) -> Result<Self> {
        let ts = default_levels(1.0, levels);
        Self::from_level_fn(dim, ts, |t| RevolutionBody::ball(dim, (1.0 / t).ln().sqrt(), samples))?
            .with_log_concave(1e-9)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn bodies(&self) -> &[RevolutionBody] {
        &self.bodies
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn is_flagged_log_concave(&self) -> bool {
        self.log_concave
    }

    /// Volumes of the level bodies, top level first.
    pub fn volumes(&self) -> Vec<f64> {
        self.bodies.iter().map(RevolutionBody::volume).collect()
    }

    /// Discrete log-concavity of the section profile in the multiplicative
    /// sense, `F(√(rs)) >= √(F(r)F(s))`: slopes of `ln F` against `ln t`
    /// do not increase with `t`.
    pub fn check_log_concave(&self, tol: f64) -> bool {
        let v = self.volumes();
        let mut prev = f64::NEG_INFINITY;
        // walk from the lowest level upward; slopes must decrease
        for k in (1..self.len()).rev() {
            let s = (v[k - 1].ln() - v[k].ln()) / (self.levels[k - 1].ln() - self.levels[k].ln());
            if k < self.len() - 1 && s > prev + tol * (1.0 + prev.abs()) {
                return false;
            }
            prev = s;
        }
        true
    }

    pub fn with_log_concave(mut self, tol: f64) -> Result<Self> {
        if !self.check_log_concave(tol) {
            return Err(GeomError::InvalidInput("stack is not log-concave".into()));
        }
        self.log_concave = true;
        Ok(self)
    }

    /// Index of the body `{f >= v}`, or `None` when `v` exceeds the top level.
    pub fn index_at(&self, v: f64) -> Option<usize> {
        self.index_at_tol(v, 1e-12)
    }

    pub(crate) fn index_at_tol(&self, v: f64, rel: f64) -> Option<usize> {
        let n = self.levels.partition_point(|&t| t >= v * (1.0 - rel));
        n.checked_sub(1)
    }

    /// `|{f >= v}|`.
    pub fn volume_at(&self, v: f64) -> f64 {
        self.index_at(v).map_or(0.0, |k| self.bodies[k].volume())
    }

    /// `x ↦ f(x)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.bodies
            .iter()
            .position(|b| b.contains(x))
            .map_or(0.0, |k| self.levels[k])
    }

    /// Heights multiplied by `c`.
    pub fn scaled_levels(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(GeomError::InvalidArgument(format!("height factor {c}")));
        }
        Ok(Self {
            levels: self.levels.iter().map(|t| t * c).collect(),
            ..self.clone()
        })
    }

    /// Every body stretched by `axis` along the axis of revolution.
    pub fn dilated_axis(&self, axis: f64) -> Self {
        Self {
            bodies: self.bodies.iter().map(|b| b.scaled_axes(axis, 1.0)).collect(),
            ..self.clone()
        }
    }

    /// Heights rescaled to integral 1.
    pub fn normalized(&self) -> Result<Self> {
        self.scaled_levels(1.0 / stack_integral(self)?)
    }
}

/// `top · 10^{-6(k+1)/count}` for `k = 0..count`; the top itself is skipped
/// because the level set there has no interior.
pub fn default_levels(top: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|k| top * 10f64.powf(-6.0 * k as f64 / count as f64)).collect()
}

/// `Σ (t_k - t_{k+1}) |body_k|` with `t_{K+1} = 0`.
pub fn stack_integral(f: &LevelStack) -> Result<f64> {
    if f.is_empty() {
        return Err(GeomError::EmptyFunction("stack has no levels".into()));
    }
    let v = f.volumes();
    let t = f.levels();
    Ok((0..t.len())
        .map(|k| (t[k] - t.get(k + 1).copied().unwrap_or(0.0)) * v[k])
        .sum())
}

/// `t ↦ |{f >= t}|` on `[0, t_0]`, with a node at 0 carrying the lowest
/// body's volume.
pub fn section_profile(f: &LevelStack) -> GridFn1D {
    let v = f.volumes();
    let mut grid = vec![0.0];
    let mut vals = vec![v[v.len() - 1]];
    for k in (0..f.len()).rev() {
        grid.push(f.levels[k]);
        vals.push(v[k]);
    }
    let out = GridFn1D::new(grid, vals, Domain::HalfLine).expect("levels are positive and increasing");
    let lc = f.log_concave && out.check_log_concave(1e-9);
    out.flag_log_concave_unchecked(lc)
}
