//! Seeded random families used by property sweeps, scans and benches.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bodies::{ConvexPolygon, Point2, RevolutionBody};
use crate::error::Result;
use crate::pl1d::{log_grid, Domain, GridFn1D};
use crate::pln::{default_levels, LevelStack};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// `exp(-φ)` on `[-L, L]` with `φ` convex: a power of `|x - μ|` plus a few
/// random hinges.
pub fn log_concave_1d(rng: &mut ChaCha8Rng, points: usize) -> Result<GridFn1D> {
    let mu = uniform(rng, -1.0, 1.0);
    let scale = uniform(rng, 0.3, 1.5);
    let p = uniform(rng, 1.0, 2.5);
    let hinges: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            (uniform(rng, -1.5, 1.5), uniform(rng, 0.0, 2.0), sign)
        })
        .collect();
    let phi = move |x: f64| {
        let base = ((x - mu).abs() / scale).powf(p);
        base + hinges
            .iter()
            .map(|&(k, c, s)| c * (s * (x - k)).max(0.0))
            .sum::<f64>()
    };
    // wide enough that the tails are below e^{-40}
    let reach = mu.abs() + scale * 40f64.powf(1.0 / p) + 1.0;
    GridFn1D::uniform(-reach, reach, points, Domain::WholeLine, |x| {
        let v = phi(x);
        if v > 300.0 { 0.0 } else { (-v).exp() }
    })?
    .with_log_concave(1e-9)
}

/// Decreasing log-concave `H(u) = exp(-a u^p - c u)` on a log grid of the
/// half line.
pub fn decreasing_log_concave_half_line(rng: &mut ChaCha8Rng, points: usize) -> Result<GridFn1D> {
    let a = uniform(rng, 0.2, 3.0);
    let p = uniform(rng, 1.0, 2.5);
    let c = uniform(rng, 0.0, 1.0);
    let reach = (40.0 / a).powf(1.0 / p);
    GridFn1D::from_fn(log_grid(1e-4 * reach, reach, points), Domain::HalfLine, |u| {
        (-a * u.powf(p) - c * u).exp()
    })?
    .with_log_concave(1e-6)
}

/// Profile `r (1 - |t/α|^p)^{1/q}` with `p, q >= 1`, optionally capped by a
/// flat top; always even and concave.
pub fn revolution_body(rng: &mut ChaCha8Rng, dim: usize, samples: usize) -> Result<RevolutionBody> {
    let alpha = uniform(rng, 0.5, 2.0);
    let r = uniform(rng, 0.5, 2.0);
    let p = uniform(rng, 1.0, 4.0);
    let q = uniform(rng, 1.0, 3.0);
    let cap = if rng.random::<bool>() { uniform(rng, 0.6, 1.0) * r } else { r };
    RevolutionBody::from_fn(dim, alpha, samples, |t| {
        (r * (1.0 - (t / alpha).abs().powf(p)).max(0.0).powf(1.0 / q)).min(cap)
    })
}

/// Convex hull of `points` random points in a random ellipse.
pub fn polygon(rng: &mut ChaCha8Rng, points: usize) -> Result<ConvexPolygon> {
    let (a, b) = (uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0));
    let (cx, cy) = (uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    loop {
        let pts: Vec<Point2> = (0..points.max(3))
            .map(|_| {
                let th = uniform(rng, 0.0, std::f64::consts::TAU);
                let rad = rng.random::<f64>().sqrt();
                Point2::new(cx + a * rad * th.cos(), cy + b * rad * th.sin())
            })
            .collect();
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            if p.area() > 1e-3 * a * b {
                return Ok(p);
            }
        }
    }
}

/// o-symmetric polygon: hull of random points and their reflections.
pub fn symmetric_polygon(rng: &mut ChaCha8Rng, points: usize) -> Result<ConvexPolygon> {
    let p = polygon(rng, points)?;
    let c = p.centroid();
    let pts: Vec<Point2> = p
        .vertices()
        .iter()
        .flat_map(|v| [v - c, c - v])
        .collect();
    ConvexPolygon::hull(&pts)
}

/// Stack of `exp(-‖x‖_K^p)` for a random revolution body `K`, normalized
/// to integral 1.
pub fn log_concave_stack(rng: &mut ChaCha8Rng, dim: usize, levels: usize, samples: usize) -> Result<LevelStack> {
    let k = revolution_body(rng, dim, samples)?;
    let p = uniform(rng, 1.0, 2.5);
    LevelStack::from_level_fn(dim, default_levels(1.0, levels), |t| Ok(k.scaled((1.0 / t).ln().powf(1.0 / p))))?
        .with_log_concave(1e-7)?
        .normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = log_concave_1d(&mut rng(7), 257).unwrap();
        let b = log_concave_1d(&mut rng(7), 257).unwrap();
        assert_eq!(a, b);
        let c = log_concave_1d(&mut rng(8), 257).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn members_are_valid() {
        let mut r = rng(1);
        for _ in 0..20 {
            assert!(log_concave_1d(&mut r, 513).unwrap().integral() > 0.0);
            assert!(decreasing_log_concave_half_line(&mut r, 513).unwrap().is_decreasing());
            let s = symmetric_polygon(&mut r, 12).unwrap();
            assert!(s.is_o_symmetric(1e-9));
            revolution_body(&mut r, 3, 257).unwrap();
        }
        let s = log_concave_stack(&mut r, 3, 16, 129).unwrap();
        assert!(s.is_flagged_log_concave());
    }
}
