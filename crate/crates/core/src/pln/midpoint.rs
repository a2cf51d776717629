use super::{LevelStack, CHECK_DIRECTIONS};
use crate::bodies::meridian::{profile_from_supports, quadrant_supports};
use crate::bodies::{RevolutionBody, SUPPORT_DIRECTIONS};
use crate::error::{GeomError, Result};
use crate::pl1d::log_grid;

pub const DEFAULT_R_SAMPLES: usize = 33;

const PAIR_TOL: f64 = 1e-12;

/// Quadrant support tables of both stacks.
struct Tables<'a> {
    f: &'a LevelStack,
    g: &'a LevelStack,
    hf: Vec<Vec<f64>>,
    hg: Vec<Vec<f64>>,
    samples: usize,
}

impl<'a> Tables<'a> {
    fn new(f: &'a LevelStack, g: &'a LevelStack, directions: usize) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(GeomError::InvalidArgument(format!(
                "stacks of dimension {} and {}",
                f.dim(),
                g.dim()
            )));
        }
        let table = |s: &LevelStack| {
            s.bodies()
                .iter()
                .map(|b| quadrant_supports(&b.chain(), directions))
                .collect::<Vec<_>>()
        };
        let samples = f
            .bodies()
            .iter()
            .chain(g.bodies())
            .map(RevolutionBody::samples)
            .max()
            .unwrap_or(3);
        Ok(Self { f, g, hf: table(f), hg: table(g), samples })
    }

    /// Pairs `(k, l)` whose midpoint `½(Φ_k + Ψ_l)` must lie in `Ω_u`,
    /// reduced to the largest `Ψ_l` for each `Φ_k`, together with those
    /// reached from `r_samples` log-spaced `r`.
    fn pairs(&self, u: f64, r_samples: usize) -> Vec<(usize, usize)> {
        let tf = self.f.levels();
        let u2 = u * u;
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (k, &t) in tf.iter().enumerate() {
            if let Some(l) = self.g.index_at_tol(u2 / t, PAIR_TOL) {
                out.push((k, l));
            }
        }
        if r_samples >= 2 {
            let lo = tf[tf.len() - 1];
            let hi = tf[0];
            let rs = if hi > lo { log_grid(lo, hi, r_samples) } else { vec![hi] };
            for r in rs {
                if let (Some(k), Some(l)) = (self.f.index_at_tol(r, PAIR_TOL), self.g.index_at_tol(u2 / r, PAIR_TOL)) {
                    out.push((k, l));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn hull_supports(&self, pairs: &[(usize, usize)]) -> Vec<f64> {
        let m = self.hf[0].len();
        let mut h = vec![f64::NEG_INFINITY; m];
        for &(k, l) in pairs {
            for (i, hi) in h.iter_mut().enumerate() {
                *hi = hi.max(0.5 * (self.hf[k][i] + self.hg[l][i]));
            }
        }
        h
    }

    fn section(&self, u: f64, r_samples: usize) -> Result<RevolutionBody> {
        let pairs = self.pairs(u, r_samples);
        if pairs.is_empty() {
            return Err(GeomError::EmptyMidpoint(format!("no level pair reaches height {u}")));
        }
        let h = self.hull_supports(&pairs);
        let (alpha, phi) = profile_from_supports(&h, self.samples);
        RevolutionBody::new(self.f.dim(), alpha, phi)
    }
}

/// Smallest `Ω_u` containing `½(Φ_r + Ψ_s)` for every `rs >= u²`.
pub fn midpoint_section(f: &LevelStack, g: &LevelStack, u: f64) -> Result<RevolutionBody> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(GeomError::InvalidArgument(format!("height {u}")));
    }
    Tables::new(f, g, SUPPORT_DIRECTIONS)?.section(u, 0)
}

/// Minimal midpoint stack on `max(K, L)` heights log-spaced from
/// `√(t_0 s_0)` down to `√(t_K s_L)`.
pub fn minimal_midpoint_stack(f: &LevelStack, g: &LevelStack, r_samples: usize) -> Result<LevelStack> {
    if r_samples < 8 {
        return Err(GeomError::InvalidArgument(format!("r_samples = {r_samples} < 8")));
    }
    let tables = Tables::new(f, g, SUPPORT_DIRECTIONS)?;
    let (tf, tg) = (f.levels(), g.levels());
    let top = (tf[0] * tg[0]).sqrt();
    let bottom = (tf[tf.len() - 1] * tg[tg.len() - 1]).sqrt();
    let count = f.len().max(g.len());
    let mut us = if count == 1 || top == bottom {
        vec![top]
    } else {
        log_grid(bottom, top, count).into_iter().rev().collect::<Vec<_>>()
    };
    us[0] = top;
    let last = us.len() - 1;
    us[last] = bottom;
    us.dedup();
    let bodies = us
        .iter()
        .map(|&u| tables.section(u, r_samples))
        .collect::<Result<Vec<_>>>()?;
    let out = LevelStack::new(f.dim(), us, bodies)?;
    if f.is_flagged_log_concave() && g.is_flagged_log_concave() {
        if let Ok(lc) = out.clone().with_log_concave(1e-7) {
            return Ok(lc);
        }
    }
    Ok(out)
}

/// `min (h_{Ω_u} - ½(h_{Φ_r} + h_{Ψ_s}))` over levels `u` of `m`, pairs
/// with `rs >= u²` and the check directions, relative to the largest
/// support involved. Negative values measure how far `m` misses the
/// midpoint condition.
pub fn containment_margin(f: &LevelStack, g: &LevelStack, m: &LevelStack) -> Result<f64> {
    let dirs = CHECK_DIRECTIONS - 1;
    let tables = Tables::new(f, g, dirs)?;
    if m.dim() != f.dim() {
        return Err(GeomError::InvalidArgument("midpoint stack has the wrong dimension".into()));
    }
    let mut worst = f64::INFINITY;
    for (j, &u) in m.levels().iter().enumerate() {
        let hm = quadrant_supports(&m.bodies()[j].chain(), dirs);
        let scale = hm.iter().copied().fold(0.0, f64::max);
        let pairs = tables.pairs(u, 0);
        let hp = tables.hull_supports(&pairs);
        for (a, b) in hm.iter().zip(&hp) {
            worst = worst.min((a - b) / scale);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::unit_ball_volume;

    fn indicator(r: f64) -> LevelStack {
        LevelStack::new(3, vec![1.0], vec![RevolutionBody::ball(3, r, 2049).unwrap()]).unwrap()
    }

    #[test]
    fn balls_give_ball_midpoint() {
        let m = minimal_midpoint_stack(&indicator(1.0), &indicator(2.0), 33).unwrap();
        assert_eq!(m.levels(), &[1.0]);
        let b = &m.bodies()[0];
        assert!((b.alpha() - 1.5).abs() < 1e-12);
        assert!((b.volume() / (unit_ball_volume(3) * 1.5f64.powi(3)) - 1.0).abs() < 1e-5);
        for i in 0..b.samples() {
            let t = b.t(i);
            assert!((b.profile()[i] - (2.25 - t * t).max(0.0).sqrt()).abs() < 1e-3, "t={t}");
        }
    }

    #[test]
    fn self_midpoint_of_log_concave_stack() {
        let f = LevelStack::gaussian(3, 32, 513).unwrap();
        let m = minimal_midpoint_stack(&f, &f, 33).unwrap();
        assert_eq!(m.len(), f.len());
        for (a, b) in m.levels().iter().zip(f.levels()) {
            assert!((a / b - 1.0).abs() < 1e-12);
        }
        for (a, b) in m.volumes().iter().zip(f.volumes()) {
            assert!((a / b - 1.0).abs() < 1e-6, "{a} {b}");
        }
        let margin = containment_margin(&f, &f, &m).unwrap();
        assert!(margin > -1e-9, "{margin}");
    }

    #[test]
    fn small_r_grid_is_rejected() {
        assert!(minimal_midpoint_stack(&indicator(1.0), &indicator(1.0), 4).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let f2 = LevelStack::new(2, vec![1.0], vec![RevolutionBody::ball(2, 1.0, 65).unwrap()]).unwrap();
        assert!(minimal_midpoint_stack(&indicator(1.0), &f2, 33).is_err());
    }
}
