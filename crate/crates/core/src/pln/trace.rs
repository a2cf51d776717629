use super::{section_profile, stack_integral, LevelStack};
use crate::bodies::{revolution_symmetric_difference, RevolutionBody};
use crate::error::{GeomError, Result};
use crate::fmp::eta as fmp_eta;
use crate::pl1d::{omega, stability_distance_tied};

const NORMALIZATION_TOL: f64 = 1e-6;
/// Relative slack when looking up rescaled heights, so that a fitted `b`
/// within optimizer precision of 1 does not jump a level.
const RESCALED_LOOKUP: f64 = 1e-7;

/// Quantities of the level-set stability argument for one triple `(f, g, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub dim: usize,
    /// `∫m - 1`
    pub eps: f64,
    pub omega: f64,
    /// Scale with `M(t) ≈ b F(bt) ≈ b⁻¹ G(t/b)`, `b >= 1`.
    pub b: f64,
    /// Whether `f` and `g` were exchanged to make `b >= 1`.
    pub swapped: bool,
    /// Heights of `m`; every per-level vector below is indexed alike.
    pub levels: Vec<f64>,
    pub m_volume: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub sigma: Vec<f64>,
    pub eta: Vec<f64>,
    pub i_mask: Vec<bool>,
    pub j_mask: Vec<bool>,
    /// `∫|f - g|`
    pub l1_fg: f64,
    /// `∫|f - m|`
    pub l1_fm: f64,
    /// `∫|g - m|`
    pub l1_gm: f64,
    /// `∫|f̃ - g̃|`
    pub l1_tilde: f64,
    /// `|b - 1|`
    pub b_gap: f64,
    /// `∫_J M`
    pub j_mass: f64,
    /// `4 ∫_J (||Φ̃| - M| + ||Ψ̃| - M|)`
    pub j_mass_bound: f64,
    /// `∫_J |Φ̃ Δ Ψ̃|`
    pub j_tilde_gap: f64,
    /// `10 ∫_J (||Φ̃| - M| + ||Ψ̃| - M|)`
    pub j_tilde_bound: f64,
    /// `∫ M (|α - 1| + |β - 1|)`
    pub ratio_deviation: f64,
    /// `∫_I M η`
    pub eta_mass: f64,
    /// Smallest relative gap `(φ_Ω - min(φ_Φ, φ_Ψ)) / max φ_Ω` over levels.
    pub intersection_margin: f64,
}

impl TraceReport {
    fn ratio(&self, x: f64) -> f64 {
        if self.eps > 0.0 {
            x / self.omega.sqrt()
        } else {
            f64::NAN
        }
    }

    pub fn ratio_fg(&self) -> f64 {
        self.ratio(self.l1_fg)
    }

    pub fn ratio_fm(&self) -> f64 {
        self.ratio(self.l1_fm)
    }

    pub fn ratio_gm(&self) -> f64 {
        self.ratio(self.l1_gm)
    }

    pub fn ratio_tilde(&self) -> f64 {
        self.ratio(self.l1_tilde)
    }

    pub fn ratio_b(&self) -> f64 {
        self.ratio(self.b_gap)
    }

    /// `∫_I M η / ω(ε)`.
    pub fn ratio_eta_mass(&self) -> f64 {
        if self.eps > 0.0 {
            self.eta_mass / self.omega
        } else {
            f64::NAN
        }
    }

    /// `ω(ε) >= 1`, where the bounds carry no information.
    pub fn vacuous(&self) -> bool {
        self.omega >= 1.0
    }

    /// Names of the direction checks that fail at relative slack `tol`.
    pub fn failed_checks(&self, tol: f64) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.j_mass > self.j_mass_bound * (1.0 + tol) + tol {
            out.push("j_mass");
        }
        if self.j_tilde_gap > self.j_tilde_bound * (1.0 + tol) + tol {
            out.push("j_tilde_gap");
        }
        if self.intersection_margin < -tol {
            out.push("intersection");
        }
        if self.b < 1.0 {
            out.push("b_normalization");
        }
        if self.i_mask.iter().zip(&self.j_mask).any(|(i, j)| i == j) {
            out.push("masks");
        }
        if self.sigma.iter().any(|s| *s < 1.0 - tol) || self.eta.iter().any(|e| *e < 0.0) {
            out.push("sigma_eta");
        }
        out
    }
}

/// A step function `c · 1_{body}` at each of its heights.
struct Step<'a> {
    levels: Vec<f64>,
    bodies: &'a [RevolutionBody],
}

impl<'a> Step<'a> {
    fn plain(s: &'a LevelStack) -> Self {
        Self { levels: s.levels().to_vec(), bodies: s.bodies() }
    }

    fn at(&self, v: f64) -> Option<&RevolutionBody> {
        let n = self.levels.partition_point(|&t| t >= v * (1.0 - 1e-12));
        n.checked_sub(1).map(|k| &self.bodies[k])
    }
}

/// `∫|a - b| = ∫_0^∞ |{a >= t} Δ {b >= t}| dt`, exact for step functions.
fn layer_cake_distance(a: &Step, b: &Step) -> f64 {
    let mut vs: Vec<f64> = a.levels.iter().chain(&b.levels).copied().collect();
    vs.sort_by(|x, y| y.total_cmp(x));
    vs.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs());
    let mut total = 0.0;
    for (i, &v) in vs.iter().enumerate() {
        let w = v - vs.get(i + 1).copied().unwrap_or(0.0);
        let d = match (a.at(v), b.at(v)) {
            (Some(x), Some(y)) => revolution_symmetric_difference(x, y),
            (Some(x), None) | (None, Some(x)) => x.volume(),
            (None, None) => 0.0,
        };
        total += w * d;
    }
    total
}

/// `min_t (φ_Ω(t) - min(φ_A(t), φ_B(t)))` over the nodes of `A` and `B`,
/// relative to `max φ_Ω`.
fn intersection_gap(a: &RevolutionBody, b: &RevolutionBody, omega: &RevolutionBody) -> f64 {
    let scale = omega.max_radius();
    a.grid()
        .into_iter()
        .chain(b.grid())
        .filter(|t| t.abs() <= a.alpha().min(b.alpha()))
        .map(|t| (omega.radius_at(t) - a.radius_at(t).min(b.radius_at(t))) / scale)
        .fold(f64::INFINITY, f64::min)
}

fn homothetic(a: &RevolutionBody, b: &RevolutionBody) -> f64 {
    let n = a.dim() as f64;
    let an = a.scaled(a.volume().powf(-1.0 / n));
    let bn = b.scaled(b.volume().powf(-1.0 / n));
    revolution_symmetric_difference(&an, &bn)
}

/// Trace of the stability argument for probability stacks `f, g` and a
/// midpoint majorant `m`.
pub fn pl_trace(f: &LevelStack, g: &LevelStack, m: &LevelStack) -> Result<TraceReport> {
    let n = f.dim();
    if g.dim() != n || m.dim() != n {
        return Err(GeomError::InvalidArgument("stacks of different dimensions".into()));
    }
    for (name, s) in [("f", f), ("g", g)] {
        let i = stack_integral(s)?;
        if (i - 1.0).abs() > NORMALIZATION_TOL {
            return Err(GeomError::Normalization(format!("∫{name} = {i}")));
        }
    }
    let im = stack_integral(m).map_err(|_| GeomError::InvalidMidpoint("empty midpoint stack".into()))?;
    if !im.is_finite() || im < 1.0 - NORMALIZATION_TOL {
        return Err(GeomError::InvalidMidpoint(format!(
            "∫m = {im} is below the Prékopa–Leindler bound"
        )));
    }
    let eps = im - 1.0;
    let om = omega(eps.max(0.0))?;

    let big_f = section_profile(f);
    let big_m = section_profile(m);
    let c = stability_distance_tied(&big_f, &big_m)?.b;
    let (mut b, mut f, mut g) = (1.0 / c, f, g);
    let swapped = b < 1.0;
    if swapped {
        b = 1.0 / b;
        std::mem::swap(&mut f, &mut g);
    }

    let nf = n as f64;
    let phi_t: Vec<RevolutionBody> = f.bodies().iter().map(|x| x.scaled(b.powf(1.0 / nf))).collect();
    let psi_t: Vec<RevolutionBody> = g.bodies().iter().map(|x| x.scaled(b.powf(-1.0 / nf))).collect();

    let levels = m.levels().to_vec();
    let m_volume = m.volumes();
    let k = levels.len();
    let (mut alpha, mut beta, mut sigma, mut eta) = (vec![0.0; k], vec![0.0; k], vec![0.0; k], vec![0.0; k]);
    let (mut i_mask, mut j_mask) = (vec![false; k], vec![false; k]);
    let (mut j_mass, mut jdev, mut j_tilde_gap, mut ratio_deviation, mut eta_mass) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut intersection_margin = f64::INFINITY;
    let inside = |x: f64| x > 0.75 && x < 1.25;

    for j in 0..k {
        let u = levels[j];
        let w = u - levels.get(j + 1).copied().unwrap_or(0.0);
        let mv = m_volume[j];
        let kf = f.index_at_tol(b * u, RESCALED_LOOKUP);
        let kg = g.index_at_tol(u / b, RESCALED_LOOKUP);
        let vf = kf.map_or(0.0, |i| b * f.bodies()[i].volume());
        let vg = kg.map_or(0.0, |i| g.bodies()[i].volume() / b);
        alpha[j] = vf / mv;
        beta[j] = vg / mv;
        i_mask[j] = inside(alpha[j]) && inside(beta[j]);
        j_mask[j] = !i_mask[j];
        match (kf, kg) {
            (Some(a), Some(c)) => {
                let s = (b * b * beta[j] / alpha[j]).max(alpha[j] / (b * b * beta[j]));
                sigma[j] = s;
                eta[j] = fmp_eta(n, s, homothetic(&phi_t[a], &psi_t[c]));
            }
            _ => {
                sigma[j] = f64::INFINITY;
                eta[j] = f64::INFINITY;
            }
        }
        let dev = (vf - mv).abs() + (vg - mv).abs();
        ratio_deviation += w * mv * ((alpha[j] - 1.0).abs() + (beta[j] - 1.0).abs());
        if i_mask[j] {
            eta_mass += w * mv * eta[j];
        } else {
            j_mass += w * mv;
            jdev += w * dev;
            j_tilde_gap += w * match (kf, kg) {
                (Some(a), Some(c)) => revolution_symmetric_difference(&phi_t[a], &psi_t[c]),
                (Some(a), None) => phi_t[a].volume(),
                (None, Some(c)) => psi_t[c].volume(),
                (None, None) => 0.0,
            };
        }
        if let (Some(a), Some(c)) = (f.index_at(u), g.index_at(u)) {
            intersection_margin =
                intersection_margin.min(intersection_gap(&f.bodies()[a], &g.bodies()[c], &m.bodies()[j]));
        }
    }

    let (sf, sg, sm) = (Step::plain(f), Step::plain(g), Step::plain(m));
    let ft = Step { levels: f.levels().iter().map(|t| t / b).collect(), bodies: &phi_t };
    let gt = Step { levels: g.levels().iter().map(|t| t * b).collect(), bodies: &psi_t };

    Ok(TraceReport {
        dim: n,
        eps,
        omega: om,
        b,
        swapped,
        levels,
        m_volume,
        alpha,
        beta,
        sigma,
        eta,
        i_mask,
        j_mask,
        l1_fg: layer_cake_distance(&sf, &sg),
        l1_fm: layer_cake_distance(&sf, &sm),
        l1_gm: layer_cake_distance(&sg, &sm),
        l1_tilde: layer_cake_distance(&ft, &gt),
        b_gap: (b - 1.0).abs(),
        j_mass,
        j_mass_bound: 4.0 * jdev,
        j_tilde_gap,
        j_tilde_bound: 10.0 * jdev,
        ratio_deviation,
        eta_mass,
        intersection_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pln::minimal_midpoint_stack;

    fn gaussian() -> LevelStack {
        LevelStack::gaussian(3, 32, 513).unwrap().normalized().unwrap()
    }

    #[test]
    fn equality_family_vanishes() {
        let f = gaussian();
        let r = pl_trace(&f, &f, &f).unwrap();
        assert!(r.eps.abs() < 1e-12);
        assert!(r.b_gap < 1e-7, "{}", r.b_gap);
        for j in 0..r.levels.len() {
            assert!((r.alpha[j] - 1.0).abs() < 1e-7);
            assert!((r.beta[j] - 1.0).abs() < 1e-7);
            assert!((r.sigma[j] - 1.0).abs() < 1e-6);
            assert!(r.eta[j] < 1e-12);
            assert!(r.i_mask[j]);
        }
        assert!(r.l1_fg < 1e-12 && r.l1_fm < 1e-12 && r.l1_gm < 1e-12);
        assert!(r.l1_tilde < 1e-6, "{}", r.l1_tilde);
        assert!(r.failed_checks(1e-9).is_empty());
        assert!(r.ratio_fg().is_nan());
    }

    #[test]
    fn dilated_pair_keeps_directions() {
        let f = gaussian();
        let g = f.dilated_axis(1.2).normalized().unwrap();
        let m = minimal_midpoint_stack(&f, &g, 33).unwrap();
        let r = pl_trace(&f, &g, &m).unwrap();
        assert!(r.eps > 0.0);
        assert!(r.b >= 1.0 && r.b_gap > 0.0);
        assert!(r.l1_fg > 0.0);
        assert!(r.failed_checks(1e-6).is_empty(), "{:?}", r.failed_checks(1e-6));
        assert!(r.ratio_fg().is_finite());
    }

    #[test]
    fn rejects_unnormalized() {
        let f = LevelStack::gaussian(3, 16, 129).unwrap();
        assert!(matches!(pl_trace(&f, &f, &f), Err(GeomError::Normalization(_))));
    }

    #[test]
    fn rejects_too_small_midpoint() {
        let f = gaussian();
        let small = f.scaled_levels(0.5).unwrap();
        assert!(matches!(pl_trace(&f, &f, &small), Err(GeomError::InvalidMidpoint(_))));
    }
}
