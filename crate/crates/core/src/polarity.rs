//! Polar bodies, Santaló points, the volume-product deficit, the
//! Banach–Mazur distance to the ball and the two-cap family.

use crate::bodies::{unit_ball_volume, BodyRef, ConvexPolygon, Point2, RevolutionBody};
use crate::error::{GeomError, Result};
use crate::optimize::{nelder_mead, scan_then_golden, NelderMeadOptions};

/// Outcome of a Santaló-point search.
#[derive(Debug, Clone, PartialEq)]
pub struct SantaloResult {
    pub point: Vec<f64>,
    pub volume: f64,
    pub polar_volume: f64,
    pub volume_product: f64,
    /// `κ_n² / (|K|·|K^z|) - 1`, the smallest ε with `(1+ε)|K||K^z| >= κ_n²`.
    pub bs_deficit: f64,
    /// `‖centroid(K^z) - z‖`.
    pub certificate: f64,
}

fn origin(k: &BodyRef) -> Vec<f64> {
    vec![0.0; k.dim()]
}

/// `K^z = {x : ⟨x - z, y - z⟩ <= 1 for all y ∈ K}`.
pub fn polar(k: &BodyRef, z: &[f64]) -> Result<BodyRef> {
    if z.len() != k.dim() {
        return Err(GeomError::InvalidArgument("center has the wrong dimension".into()));
    }
    let at_origin = z.iter().all(|&v| v == 0.0);
    match k {
        BodyRef::Polygon(p) => Ok(BodyRef::Polygon(p.polar(Point2::new(z[0], z[1]))?)),
        BodyRef::Ball { dim, radius } if at_origin => BodyRef::ball(*dim, 1.0 / radius),
        BodyRef::Revolution(b) if at_origin => Ok(BodyRef::Revolution(b.polar()?)),
        _ => {
            if k.contains(z) {
                Err(GeomError::Unsupported("off-center polar of a symmetric body".into()))
            } else {
                Err(GeomError::InvalidCenter(format!("{z:?}")))
            }
        }
    }
}

fn symmetric_result(k: &BodyRef) -> Result<SantaloResult> {
    let kp = polar(k, &origin(k))?;
    let (v, vp) = (k.volume(), kp.volume());
    let kap = unit_ball_volume(k.dim());
    Ok(SantaloResult {
        point: origin(k),
        volume: v,
        polar_volume: vp,
        volume_product: v * vp,
        bs_deficit: kap * kap / (v * vp) - 1.0,
        certificate: 0.0,
    })
}

/// Minimize `z ↦ |K^z|` over the interior of `K`.
pub fn santalo_point(k: &BodyRef) -> Result<SantaloResult> {
    match k {
        BodyRef::Polygon(p) if !p.is_o_symmetric(1e-12) => polygon_santalo(p),
        _ => symmetric_result(k),
    }
}

/// Volume-product deficit at the Santaló point.
pub fn bs_deficit(k: &BodyRef) -> Result<SantaloResult> {
    santalo_point(k)
}

fn polygon_santalo(p: &ConvexPolygon) -> Result<SantaloResult> {
    let diam = p.diameter();
    let c = p.centroid();
    let mut starts = vec![c];
    for v in p.vertices().iter().take(4) {
        starts.push(c + (v - c) * 0.25);
    }
    let f = |x: &[f64]| p.polar_area(Point2::new(x[0], x[1]));
    let mut opts = NelderMeadOptions::new(2, 0.05 * diam);
    opts.xtol = 1e-13 * diam;
    opts.ftol = 0.0;

    let mut best: Option<(Point2, f64, f64)> = None;
    let mut iterations = 0;
    for s in &starts {
        let res = nelder_mead(f, &[s.x, s.y], &opts);
        iterations += res.iterations;
        let z = Point2::new(res.x[0], res.x[1]);
        let Ok(kz) = p.polar(z) else { continue };
        let residual = (kz.centroid() - z).norm();
        if best.is_none_or(|b| res.fx < b.1) {
            best = Some((z, res.fx, residual));
        }
        if residual <= 1e-6 * diam {
            break;
        }
    }
    let (z, area, residual) = best.ok_or_else(|| GeomError::Convergence {
        iterations,
        best_point: vec![c.x, c.y],
        best_value: f64::INFINITY,
    })?;
    if residual > 1e-6 * diam {
        return Err(GeomError::Convergence {
            iterations,
            best_point: vec![z.x, z.y],
            best_value: area,
        });
    }
    let v = p.area();
    let kap = unit_ball_volume(2);
    Ok(SantaloResult {
        point: vec![z.x, z.y],
        volume: v,
        polar_volume: area,
        volume_product: v * area,
        bs_deficit: kap * kap / (v * area) - 1.0,
        certificate: residual,
    })
}

/// Circum- and in-radius about the origin of the meridian after stretching
/// the axis by `lambda`. Profile nodes are boundary samples, so the
/// in-radius is taken over nodes and flat end faces rather than chords.
fn meridian_radii(body: &RevolutionBody, lambda: f64) -> (f64, f64) {
    let phi = body.profile();
    let n = phi.len();
    let radii = (0..n).map(|i| (lambda * body.t(i)).hypot(phi[i]));
    let (big_r, mut small_r) = radii.fold((0.0, f64::INFINITY), |(b, s), r| (f64::max(b, r), f64::min(s, r)));
    if phi[0] > 0.0 {
        small_r = small_r.min(lambda * body.alpha());
    }
    (big_r, small_r)
}

/// `ln(R/r)` minimized over stretches of the axis relative to the sections.
pub fn bm_distance_to_ball(k: &RevolutionBody) -> Result<f64> {
    let (lambda, value) = bm_optimal_stretch(k)?;
    debug_assert!(lambda > 0.0);
    Ok(value)
}

/// Optimal axis stretch and the resulting `ln(R/r)`.
pub fn bm_optimal_stretch(k: &RevolutionBody) -> Result<(f64, f64)> {
    let rho = k.max_radius() / k.alpha();
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(GeomError::Degenerate("flat meridian".into()));
    }
    let obj = |ll: f64| {
        let (big, small) = meridian_radii(k, ll.exp());
        if small > 0.0 {
            (big / small).ln()
        } else {
            f64::INFINITY
        }
    };
    let c = rho.ln();
    let (ll, v) = scan_then_golden(obj, c - 4.0, c + 4.0, 401, 1e-12);
    if !v.is_finite() {
        return Err(GeomError::Degenerate("meridian has empty interior".into()));
    }
    Ok((ll.exp(), v.max(0.0)))
}

/// `∫_0^θ sin^n` by composite Simpson.
fn sin_power_integral(n: usize, theta: f64) -> f64 {
    let m = 4096;
    let h = theta / m as f64;
    let f = |x: f64| x.sin().powi(n as i32);
    let mut s = f(0.0) + f(theta);
    for i in 1..m {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(h * i as f64);
    }
    s * h / 3.0
}

/// Volume of the cap `{x ∈ Bⁿ : x_1 >= 1 - h}`.
pub fn cap_volume(n: usize, h: f64) -> f64 {
    let h = h.clamp(0.0, 2.0);
    // t = cos θ turns the section integral into ∫ sin^n
    unit_ball_volume(n - 1) * sin_power_integral(n, (1.0 - h).acos())
}

/// Height `h` of a cap with volume `eps`, by bisection.
pub fn cap_height(n: usize, eps: f64) -> Result<f64> {
    let limit = 0.5 * unit_ball_volume(n);
    if !(0.0..limit).contains(&eps) {
        return Err(GeomError::BodyDegenerates { eps, limit });
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if cap_volume(n, mid) < eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Unit ball with two opposite caps of volume `eps` removed.
pub fn cap_cut_body(n: usize, eps: f64, samples: usize) -> Result<RevolutionBody> {
    if n < 2 {
        return Err(GeomError::InvalidArgument(format!("dimension {n} < 2")));
    }
    let h = cap_height(n, eps)?;
    if h == 0.0 {
        return RevolutionBody::ball(n, 1.0, samples);
    }
    RevolutionBody::from_fn(n, 1.0 - h, samples, |t| (1.0 - t * t).max(0.0).sqrt())
}
