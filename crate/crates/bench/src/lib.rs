//! Fixed inputs for the kernel benchmarks.

use stabgeo::families::{self, rng};
use stabgeo::pl1d::{Domain, GridFn1D};
use stabgeo::pln::LevelStack;
use stabgeo::{BodyRef, ConvexPolygon, Result, RevolutionBody};

pub fn revolution_body(dim: usize, samples: usize) -> Result<RevolutionBody> {
    families::revolution_body(&mut rng(1), dim, samples)
}

pub fn polygon_pair() -> Result<(BodyRef, BodyRef)> {
    let mut r = rng(2);
    Ok((families::polygon(&mut r, 24)?.into(), families::polygon(&mut r, 24)?.into()))
}

pub fn scalene_triangle() -> Result<ConvexPolygon> {
    ConvexPolygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 2.0)])
}

/// Two log-concave functions on `points` nodes.
pub fn log_concave_pair(points: usize) -> Result<(GridFn1D, GridFn1D)> {
    let mut r = rng(3);
    Ok((families::log_concave_1d(&mut r, points)?, families::log_concave_1d(&mut r, points)?))
}

/// A Gaussian and a Gaussian with a jump at 0, which is not log-concave.
pub fn jump_pair(points: usize) -> Result<(GridFn1D, GridFn1D)> {
    let g = |x: f64| (-0.5 * x * x).exp();
    Ok((
        GridFn1D::uniform(-9.0, 9.0, points, Domain::WholeLine, move |x| g(x) * if x > 0.0 { 1.3 } else { 0.7 })?,
        GridFn1D::uniform(-9.0, 9.0, points, Domain::WholeLine, g)?,
    ))
}

/// Normalized Gaussian stack and its axis dilation by `1 + delta`.
pub fn stack_pair(levels: usize, samples: usize, delta: f64) -> Result<(LevelStack, LevelStack)> {
    let f = LevelStack::gaussian(3, levels, samples)?.normalized()?;
    let g = f.dilated_axis(1.0 + delta).normalized()?;
    Ok((f, g))
}
