//! Convex bodies: planar polygons, o-symmetric bodies of revolution and
//! centered balls, with volumes, supports, midpoints and symmetric
//! differences.

pub mod io;
pub mod meridian;
mod montecarlo;
mod polygon;
mod revolution;

use std::sync::OnceLock;

pub use montecarlo::{mc_symmetric_difference, mc_volume, McEstimate};
pub use polygon::{ConvexPolygon, Point2};
pub use revolution::{concave_majorant, RevolutionBody, DEFAULT_SAMPLES};

use crate::error::{GeomError, Result};

/// Vertex count used when a disk meets a polygon.
pub const DISK_POLYGON_VERTICES: usize = 4096;
/// Meridian directions used for support-based distances.
pub const SUPPORT_DIRECTIONS: usize = 4096;

const KAPPA_CACHE: usize = 64;

/// Volume `κ_n` of the unit ball in `ℝⁿ`.
pub fn unit_ball_volume(n: usize) -> f64 {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        let mut k = vec![1.0, 2.0];
        for d in 2..KAPPA_CACHE {
            k.push(std::f64::consts::TAU / d as f64 * k[d - 2]);
        }
        k
    });
    if n < KAPPA_CACHE {
        table[n]
    } else {
        let mut v = table[KAPPA_CACHE - 2 + (n % 2)];
        let mut d = KAPPA_CACHE - 2 + (n % 2);
        while d < n {
            d += 2;
            v *= std::f64::consts::TAU / d as f64;
        }
        v
    }
}

/// Uniform handle over the supported body representations.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyRef {
    Revolution(RevolutionBody),
    Polygon(ConvexPolygon),
    Ball { dim: usize, radius: f64 },
}

impl From<RevolutionBody> for BodyRef {
    fn from(b: RevolutionBody) -> Self {
        BodyRef::Revolution(b)
    }
}

impl From<ConvexPolygon> for BodyRef {
    fn from(p: ConvexPolygon) -> Self {
        BodyRef::Polygon(p)
    }
}

impl BodyRef {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim < 1 {
            return Err(GeomError::InvalidArgument("dimension must be positive".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::Degenerate(format!("ball radius {radius}")));
        }
        Ok(BodyRef::Ball { dim, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            BodyRef::Revolution(b) => b.dim(),
            BodyRef::Polygon(_) => 2,
            BodyRef::Ball { dim, .. } => *dim,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            BodyRef::Revolution(b) => b.volume(),
            BodyRef::Polygon(p) => p.area(),
            BodyRef::Ball { dim, radius } => unit_ball_volume(*dim) * radius.powi(*dim as i32),
        }
    }

    /// Whether the body is symmetric about the origin.
    pub fn is_o_symmetric(&self) -> bool {
        match self {
            BodyRef::Polygon(p) => p.is_o_symmetric(1e-9),
            _ => true,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            BodyRef::Revolution(b) => 2.0 * b.alpha().max(b.max_radius()),
            BodyRef::Polygon(p) => p.diameter(),
            BodyRef::Ball { radius, .. } => 2.0 * radius,
        }
    }

    pub fn support(&self, w: &[f64]) -> Result<f64> {
        if w.len() != self.dim() {
            return Err(GeomError::InvalidArgument(format!(
                "direction has {} components, body dimension is {}",
                w.len(),
                self.dim()
            )));
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(GeomError::InvalidArgument("zero or non-finite direction".into()));
        }
        Ok(match self {
            BodyRef::Revolution(b) => b.support(w),
            BodyRef::Polygon(p) => p.support(Point2::new(w[0], w[1])),
            BodyRef::Ball { radius, .. } => radius * norm,
        })
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            BodyRef::Revolution(b) => b.contains(x),
            BodyRef::Polygon(p) => p.contains(Point2::new(x[0], x[1])),
            BodyRef::Ball { radius, .. } => {
                x.iter().map(|v| v * v).sum::<f64>() <= radius * radius * (1.0 + 1e-12)
            }
        }
    }

    /// Axis-aligned bounding box as `(lo, hi)` per coordinate.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        match self {
            BodyRef::Revolution(b) => {
                let r = b.profile().iter().copied().fold(0.0, f64::max);
                let mut bb = vec![(-b.alpha(), b.alpha())];
                bb.extend(std::iter::repeat_n((-r, r), b.dim() - 1));
                bb
            }
            BodyRef::Polygon(p) => {
                let v = p.vertices();
                let fold = |f: fn(&Point2) -> f64| {
                    v.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                        (lo.min(x), hi.max(x))
                    })
                };
                vec![fold(|p| p.x), fold(|p| p.y)]
            }
            BodyRef::Ball { dim, radius } => vec![(-radius, *radius); *dim],
        }
    }

    /// `λK` for `λ > 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        match self {
            BodyRef::Revolution(b) => BodyRef::Revolution(b.scaled(lambda)),
            BodyRef::Polygon(p) => BodyRef::Polygon(p.scale(lambda)),
            BodyRef::Ball { dim, radius } => BodyRef::Ball { dim: *dim, radius: radius * lambda },
        }
    }

    /// Polygonal or gridded stand-in for a ball, matched to `like`.
    fn ball_as(dim: usize, radius: f64, like: &BodyRef) -> Result<BodyRef> {
        match like {
            BodyRef::Polygon(_) if dim == 2 => Ok(BodyRef::Polygon(ConvexPolygon::regular(
                DISK_POLYGON_VERTICES,
                radius,
                0.0,
            )?)),
            BodyRef::Revolution(b) => Ok(BodyRef::Revolution(RevolutionBody::ball(dim, radius, b.samples())?)),
            _ => Err(GeomError::Unsupported("ball against this representation".into())),
        }
    }

    fn check_pair(&self, other: &BodyRef) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(GeomError::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }
}

fn mixed() -> GeomError {
    GeomError::Unsupported("mixed body representations".into())
}

pub fn volume(k: &BodyRef) -> f64 {
    k.volume()
}

pub fn support_function(k: &BodyRef, w: &[f64]) -> Result<f64> {
    k.support(w)
}

/// `½(K + C)`.
pub fn minkowski_midpoint(k: &BodyRef, c: &BodyRef) -> Result<BodyRef> {
    k.check_pair(c)?;
    match (k, c) {
        (BodyRef::Ball { dim, radius: r1 }, BodyRef::Ball { radius: r2, .. }) => {
            BodyRef::ball(*dim, 0.5 * (r1 + r2))
        }
        (BodyRef::Revolution(a), BodyRef::Revolution(b)) => Ok(BodyRef::Revolution(a.midpoint(b)?)),
        (BodyRef::Polygon(a), BodyRef::Polygon(b)) => Ok(BodyRef::Polygon(a.midpoint(b))),
        (BodyRef::Ball { dim, radius }, other) => {
            minkowski_midpoint(&BodyRef::ball_as(*dim, *radius, other).map_err(|_| mixed())?, other)
        }
        (other, BodyRef::Ball { dim, radius }) => {
            minkowski_midpoint(other, &BodyRef::ball_as(*dim, *radius, other).map_err(|_| mixed())?)
        }
        _ => Err(mixed()),
    }
}

/// Integral of `|a - b|` where each function is piecewise linear on `ts`
/// inside its support `[-ha, ha]` and zero outside. Supports end on grid
/// nodes, so every cell is either fully inside or fully outside.
pub(crate) fn section_gap_integral<A, B>(ts: &[f64], a: A, ha: f64, b: B, hb: f64) -> f64
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let mut s = 0.0;
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mid = 0.5 * (t0 + t1);
        let side = |f: &dyn Fn(f64) -> f64, h: f64| {
            if mid.abs() < h {
                (f(t0.clamp(-h, h)), f(t1.clamp(-h, h)))
            } else {
                (0.0, 0.0)
            }
        };
        let (a0, a1) = side(&a, ha);
        let (b0, b1) = side(&b, hb);
        s += abs_cell(t1 - t0, a0 - b0, a1 - b1);
    }
    s
}

/// `∫|d|` over a cell of width `h` where `d` is linear from `d0` to `d1`.
pub(crate) fn abs_cell(h: f64, d0: f64, d1: f64) -> f64 {
    if d0 * d1 >= 0.0 {
        0.5 * h * (d0.abs() + d1.abs())
    } else {
        0.5 * h * (d0 * d0 + d1 * d1) / (d0.abs() + d1.abs())
    }
}

fn merged_grid(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut ts: Vec<f64> = a.iter().chain(b).copied().collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + y.abs()));
    ts
}

pub(crate) fn revolution_symmetric_difference(a: &RevolutionBody, b: &RevolutionBody) -> f64 {
    let ts = merged_grid(&a.grid(), &b.grid());
    section_gap_integral(&ts, |t| a.section_area(t), a.alpha(), |t| b.section_area(t), b.alpha())
}

/// `|K Δ C|`.
pub fn symmetric_difference_volume(k: &BodyRef, c: &BodyRef) -> Result<f64> {
    k.check_pair(c)?;
    match (k, c) {
        (BodyRef::Ball { dim, radius: r1 }, BodyRef::Ball { radius: r2, .. }) => {
            let n = *dim as i32;
            Ok(unit_ball_volume(*dim) * (r1.powi(n) - r2.powi(n)).abs())
        }
        (BodyRef::Revolution(a), BodyRef::Revolution(b)) => Ok(revolution_symmetric_difference(a, b)),
        (BodyRef::Revolution(a), BodyRef::Ball { dim, radius })
        | (BodyRef::Ball { dim, radius }, BodyRef::Revolution(a)) => {
            let r = *radius;
            let m = DEFAULT_SAMPLES.max(a.samples());
            let ball_nodes: Vec<f64> = (0..m).map(|i| -r + 2.0 * r * i as f64 / (m - 1) as f64).collect();
            let ts = merged_grid(&a.grid(), &ball_nodes);
            let p = (*dim - 1) as f64;
            let kap = unit_ball_volume(*dim - 1);
            Ok(section_gap_integral(
                &ts,
                |t| a.section_area(t),
                a.alpha(),
                |t| kap * (r * r - t * t).max(0.0).powf(0.5 * p),
                r,
            ))
        }
        (BodyRef::Polygon(a), BodyRef::Polygon(b)) => Ok(a.symmetric_difference_area(b)),
        (BodyRef::Polygon(_), BodyRef::Ball { dim, radius }) => {
            symmetric_difference_volume(k, &BodyRef::ball_as(*dim, *radius, k)?)
        }
        (BodyRef::Ball { dim, radius }, BodyRef::Polygon(_)) => {
            symmetric_difference_volume(&BodyRef::ball_as(*dim, *radius, c)?, c)
        }
        _ => Err(mixed()),
    }
}

/// Hausdorff distance. Exact for polygon pairs; otherwise the maximal
/// support gap over a fine set of meridian directions.
pub fn hausdorff_distance(k: &BodyRef, c: &BodyRef) -> Result<f64> {
    k.check_pair(c)?;
    match (k, c) {
        (BodyRef::Polygon(a), BodyRef::Polygon(b)) => Ok(a.hausdorff(b)),
        (BodyRef::Ball { radius: r1, .. }, BodyRef::Ball { radius: r2, .. }) => Ok((r1 - r2).abs()),
        (BodyRef::Polygon(_), _) | (_, BodyRef::Polygon(_)) if k.dim() == 2 => {
            let m = SUPPORT_DIRECTIONS;
            let mut worst: f64 = 0.0;
            for i in 0..m {
                let a = std::f64::consts::TAU * i as f64 / m as f64;
                let w = [a.cos(), a.sin()];
                worst = worst.max((k.support(&w)? - c.support(&w)?).abs());
            }
            Ok(worst)
        }
        (BodyRef::Polygon(_), _) | (_, BodyRef::Polygon(_)) => Err(mixed()),
        _ => {
            let m = SUPPORT_DIRECTIONS;
            let dim = k.dim();
            let mut worst: f64 = 0.0;
            let mut w = vec![0.0; dim];
            for i in 0..=m {
                let a = std::f64::consts::PI * i as f64 / m as f64;
                w[0] = a.cos();
                w[1] = a.sin();
                worst = worst.max((k.support(&w)? - c.support(&w)?).abs());
            }
            Ok(worst)
        }
    }
}
