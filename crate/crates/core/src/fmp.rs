//! Quantitative Brunn–Minkowski: asymmetry `σ`, homothetic distance `A`,
//! the explicit constant `γ*` and both forms of the stability bound.

use crate::bodies::{minkowski_midpoint, symmetric_difference_volume, BodyRef, Point2};
use crate::error::{GeomError, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// `γ*(n) = ((2 - 2^{(n-1)/n})^{3/2} / (122 n⁷))²`.
pub fn gamma_star(n: usize) -> f64 {
    let nf = n as f64;
    let base = (2.0 - 2f64.powf((nf - 1.0) / nf)).powf(1.5) / (122.0 * nf.powi(7));
    base * base
}

/// `max(|C|/|K|, |K|/|C|)`.
pub fn sigma(k: &BodyRef, c: &BodyRef) -> f64 {
    let (vk, vc) = (k.volume(), c.volume());
    (vc / vk).max(vk / vc)
}

/// `(σ-1)²/(32nσ²) + nγ*σ^{-1/n}A²`.
pub fn eta(n: usize, sigma: f64, a: f64) -> f64 {
    let nf = n as f64;
    (sigma - 1.0).powi(2) / (32.0 * nf * sigma * sigma) + nf * gamma_star(n) * sigma.powf(-1.0 / nf) * a * a
}

/// Minimal `|αK Δ (x + βC)|` over translations, with `α, β` normalizing
/// both volumes to 1.
pub fn homothetic_distance(k: &BodyRef, c: &BodyRef) -> Result<f64> {
    if k.dim() != c.dim() {
        return Err(GeomError::InvalidArgument("dimension mismatch".into()));
    }
    let n = k.dim() as f64;
    let kn = k.scaled(k.volume().powf(-1.0 / n));
    let cn = c.scaled(c.volume().powf(-1.0 / n));
    match (&kn, &cn) {
        (BodyRef::Polygon(p), BodyRef::Polygon(q)) if !(p.is_o_symmetric(1e-9) && q.is_o_symmetric(1e-9)) => {
            let diam = p.diameter().max(q.diameter());
            let start = p.centroid() - q.centroid();
            let obj = |x: &[f64]| p.symmetric_difference_area(&q.translate(Point2::new(x[0], x[1])));
            let mut opts = NelderMeadOptions::new(2, 0.05 * diam);
            opts.xtol = 1e-8 * diam;
            opts.ftol = 2e-14;
            let res = nelder_mead(obj, &[start.x, start.y], &opts);
            if !res.converged {
                return Err(GeomError::Convergence {
                    iterations: res.iterations,
                    best_point: res.x,
                    best_value: res.fx,
                });
            }
            Ok(res.fx.min(obj(&[start.x, start.y])))
        }
        _ => symmetric_difference_volume(&kn, &cn),
    }
}

/// Both sides of the additive and the product form of the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct FMPReport {
    pub sigma: f64,
    pub a: f64,
    pub gamma_star: f64,
    pub lhs_additive: f64,
    pub rhs_additive: f64,
    pub lhs_product: f64,
    pub rhs_product: f64,
    pub eta: f64,
}

impl FMPReport {
    /// Names of the inequalities violated beyond `rel_tol · lhs`.
    pub fn violations(&self, rel_tol: f64) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.lhs_additive < self.rhs_additive - rel_tol * self.lhs_additive {
            out.push("additive");
        }
        if self.lhs_product < self.rhs_product - rel_tol * self.lhs_product {
            out.push("product");
        }
        out
    }
}

pub fn fmp_bound_check(k: &BodyRef, c: &BodyRef) -> Result<FMPReport> {
    let n = k.dim();
    let nf = n as f64;
    let mid = minkowski_midpoint(k, c)?;
    let (vk, vc, vm) = (k.volume(), c.volume(), mid.volume());
    let s = sigma(k, c);
    let a = homothetic_distance(k, c)?;
    let g = gamma_star(n);
    let e = eta(n, s, a);
    Ok(FMPReport {
        sigma: s,
        a,
        gamma_star: g,
        lhs_additive: 2.0 * vm.powf(1.0 / nf),
        rhs_additive: (vk.powf(1.0 / nf) + vc.powf(1.0 / nf)) * (1.0 + g * s.powf(-1.0 / nf) * a * a),
        lhs_product: vm,
        rhs_product: (vk * vc).sqrt() * (1.0 + e),
        eta: e,
    })
}

/// The scalar step from the additive to the product form, with `|C| = 1`
/// and `|K| = σ`: returns `(½(σ^{1/n} + 1), σ^{1/(2n)}(1 + (σ-1)²/(32n²σ^{(4n-1)/(2n)})))`.
pub fn product_bridge(n: usize, sigma: f64) -> (f64, f64) {
    let nf = n as f64;
    let lhs = 0.5 * (sigma.powf(1.0 / nf) + 1.0);
    let corr = (sigma - 1.0).powi(2) / (32.0 * nf * nf * sigma.powf((4.0 * nf - 1.0) / (2.0 * nf)));
    (lhs, sigma.powf(1.0 / (2.0 * nf)) * (1.0 + corr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::ConvexPolygon;

    #[test]
    fn gamma_star_values() {
        assert!((gamma_star(1) - 122f64.powi(-2)).abs() < 1e-18);
        assert!((gamma_star(2) / 8.2427e-10 - 1.0).abs() < 1e-4);
        assert!((gamma_star(3) / 9.8667e-13 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn homothetic_balls() {
        let r = fmp_bound_check(&BodyRef::ball(3, 1.0).unwrap(), &BodyRef::ball(3, 2.0).unwrap()).unwrap();
        assert!((r.sigma - 8.0).abs() < 1e-12);
        assert_eq!(r.a, 0.0);
        assert!((r.lhs_additive / r.rhs_additive - 1.0).abs() < 1e-12);
        assert!(r.lhs_product > r.rhs_product);
    }

    #[test]
    fn translation_search_finds_overlap() {
        let t = ConvexPolygon::from_xy(&[(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)]).unwrap();
        let far = t.translate(Point2::new(5.0, 3.0));
        let a = homothetic_distance(&t.clone().into(), &far.into()).unwrap();
        assert!(a < 1e-6, "{a}");
    }

    #[test]
    fn bridge_on_a_log_grid() {
        for n in 1..=10 {
            for k in 0..=80 {
                let s = 10f64.powf(k as f64 * 0.05);
                let (l, r) = product_bridge(n, s);
                assert!(l >= r * (1.0 - 1e-12), "n={n} sigma={s}");
            }
        }
    }
}
