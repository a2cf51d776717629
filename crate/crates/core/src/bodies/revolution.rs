use super::meridian::{self, Chain};
use super::unit_ball_volume;
use crate::error::{GeomError, Result};

pub const DEFAULT_SAMPLES: usize = 2049;

/// o-symmetric convex body of revolution about the first coordinate axis,
/// stored as uniform samples of its radius profile `φ` on `[-α, α]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionBody {
    dim: usize,
    alpha: f64,
    phi: Vec<f64>,
}

impl RevolutionBody {
    /// Validate a sampled profile (even, concave, nonnegative, with interior).
    pub fn new(dim: usize, alpha: f64, phi: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(GeomError::InvalidArgument(format!("dimension {dim} < 2")));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(GeomError::Degenerate(format!("axis half-length {alpha}")));
        }
        let n = phi.len();
        if n < 3 {
            return Err(GeomError::Degenerate("profile needs at least 3 samples".into()));
        }
        if phi.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(GeomError::InvalidInput("profile values must be finite and >= 0".into()));
        }
        let scale = phi.iter().copied().fold(0.0, f64::max);
        if scale <= 0.0 {
            return Err(GeomError::Degenerate("meridian has empty interior".into()));
        }
        if phi[1..n - 1].contains(&0.0) {
            return Err(GeomError::Degenerate("profile vanishes in the interior".into()));
        }
        let tol = 1e-9 * scale;
        for i in 0..n {
            if (phi[i] - phi[n - 1 - i]).abs() > tol {
                return Err(GeomError::InvalidInput(format!("profile is not even at sample {i}")));
            }
        }
        for i in 1..n - 1 {
            if phi[i - 1] - 2.0 * phi[i] + phi[i + 1] > tol {
                return Err(GeomError::InvalidInput(format!("profile is not concave at sample {i}")));
            }
        }
        Ok(Self { dim, alpha, phi })
    }

    /// Sample `f` on `samples` uniform points, symmetrize and project onto
    /// the concave majorant.
    pub fn from_fn<F: Fn(f64) -> f64>(dim: usize, alpha: f64, samples: usize, f: F) -> Result<Self> {
        if samples < 3 {
            return Err(GeomError::InvalidArgument("need at least 3 samples".into()));
        }
        let step = 2.0 * alpha / (samples - 1) as f64;
        let raw: Vec<f64> = (0..samples)
            .map(|i| f(-alpha + step * i as f64).max(0.0))
            .collect();
        let sym: Vec<f64> = (0..samples)
            .map(|i| 0.5 * (raw[i] + raw[samples - 1 - i]))
            .collect();
        Self::new(dim, alpha, concave_majorant(alpha, &sym))
    }

    pub fn ball(dim: usize, radius: f64, samples: usize) -> Result<Self> {
        Self::from_fn(dim, radius, samples, |t| (radius * radius - t * t).max(0.0).sqrt())
    }

    pub fn cylinder(dim: usize, half_length: f64, radius: f64, samples: usize) -> Result<Self> {
        Self::new(dim, half_length, vec![radius; samples])
    }

    /// Rebuild from an upper meridian chain symmetric about `t = 0`.
    pub fn from_chain(dim: usize, chain: &Chain, samples: usize) -> Result<Self> {
        let alpha = 0.5 * (chain[chain.len() - 1][0] - chain[0][0]);
        let mut phi = meridian::resample_uniform(chain, samples);
        for i in 0..samples / 2 {
            let m = 0.5 * (phi[i] + phi[samples - 1 - i]);
            phi[i] = m;
            phi[samples - 1 - i] = m;
        }
        Self::new(dim, alpha, phi)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn profile(&self) -> &[f64] {
        &self.phi
    }

    pub fn samples(&self) -> usize {
        self.phi.len()
    }

    pub fn step(&self) -> f64 {
        2.0 * self.alpha / (self.phi.len() - 1) as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        if i == self.phi.len() - 1 {
            self.alpha
        } else {
            -self.alpha + self.step() * i as f64
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.phi.len()).map(|i| self.t(i)).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.phi[self.phi.len() / 2].max(self.phi.iter().copied().fold(0.0, f64::max))
    }

    /// Linear interpolation of the profile; 0 outside `[-α, α]`.
    pub fn radius_at(&self, t: f64) -> f64 {
        if t.abs() > self.alpha {
            return 0.0;
        }
        let x = (t + self.alpha) / self.step();
        let i = (x.floor() as usize).min(self.phi.len() - 2);
        let lam = x - i as f64;
        self.phi[i] + lam * (self.phi[i + 1] - self.phi[i])
    }

    /// `(n-1)`-volume of the section at axis coordinate `t`, interpolating
    /// `φ^{n-1}` linearly between nodes.
    pub fn section_area(&self, t: f64) -> f64 {
        if t.abs() > self.alpha {
            return 0.0;
        }
        let p = (self.dim - 1) as i32;
        let x = (t + self.alpha) / self.step();
        let i = (x.floor() as usize).min(self.phi.len() - 2);
        let lam = x - i as f64;
        let (a, b) = (self.phi[i].powi(p), self.phi[i + 1].powi(p));
        unit_ball_volume(self.dim - 1) * (a + lam * (b - a))
    }

    pub fn volume(&self) -> f64 {
        let p = (self.dim - 1) as i32;
        let n = self.phi.len();
        let inner: f64 = self.phi[1..n - 1].iter().map(|v| v.powi(p)).sum();
        let ends = 0.5 * (self.phi[0].powi(p) + self.phi[n - 1].powi(p));
        unit_ball_volume(self.dim - 1) * self.step() * (inner + ends)
    }

    /// Support of the meridian at `(axis, radial)` components.
    pub fn meridian_support(&self, wa: f64, wp: f64) -> f64 {
        let step = self.step();
        let wp = wp.abs();
        self.phi
            .iter()
            .enumerate()
            .map(|(i, &y)| wa * (-self.alpha + step * i as f64) + wp * y)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn support(&self, w: &[f64]) -> f64 {
        let wp = w[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
        self.meridian_support(w[0], wp)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let r = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
        x[0].abs() <= self.alpha && r <= self.radius_at(x[0]) * (1.0 + 1e-12)
    }

    pub fn chain(&self) -> Chain {
        meridian::chain_from_samples(self.alpha, &self.phi)
    }

    /// `λK`.
    pub fn scaled(&self, lambda: f64) -> Self {
        self.scaled_axes(lambda, lambda)
    }

    /// Apply `diag(a, c, …, c)`: stretch the axis by `a`, sections by `c`.
    pub fn scaled_axes(&self, axis: f64, cross: f64) -> Self {
        assert!(axis > 0.0 && cross > 0.0, "scale factors must be positive");
        Self {
            dim: self.dim,
            alpha: self.alpha * axis,
            phi: self.phi.iter().map(|v| v * cross).collect(),
        }
    }

    pub fn resampled(&self, samples: usize) -> Result<Self> {
        Self::from_chain(self.dim, &self.chain(), samples)
    }

    /// `½(K + C)` for coaxial bodies, exact on the merged meridian chain and
    /// resampled to the larger of the two sample counts.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(GeomError::InvalidArgument("dimension mismatch".into()));
        }
        let mut sum = meridian::sup_convolve(&self.chain(), &other.chain());
        for p in &mut sum {
            p[0] *= 0.5;
            p[1] *= 0.5;
        }
        Self::from_chain(self.dim, &sum, self.samples().max(other.samples()))
    }

    /// Polar body about the origin. Its profile is
    /// `ψ(s) = min_{φ(t) > 0} (1 - s t) / φ(t)` on `[-1/α, 1/α]`.
    pub fn polar(&self) -> Result<Self> {
        let n = self.phi.len();
        let step = self.step();
        let ts: Vec<f64> = (0..n).map(|i| -self.alpha + step * i as f64).collect();
        let pos: Vec<usize> = (0..n).filter(|&i| self.phi[i] > 0.0).collect();
        let beta = 1.0 / self.alpha;
        let sstep = 2.0 * beta / (n - 1) as f64;
        let obj = |s: f64, i: usize| (1.0 - s * ts[i]) / self.phi[i];
        let mut psi = Vec::with_capacity(n);
        for k in 0..n {
            let s = if k == n - 1 { beta } else { -beta + sstep * k as f64 };
            // the objective is quasiconvex along the positive set
            let (mut lo, mut hi) = (0usize, pos.len() - 1);
            while hi - lo > 2 {
                let m1 = lo + (hi - lo) / 3;
                let m2 = hi - (hi - lo) / 3;
                if obj(s, pos[m1]) <= obj(s, pos[m2]) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let v = (lo..=hi).map(|j| obj(s, pos[j])).fold(f64::INFINITY, f64::min);
            psi.push(v.max(0.0));
        }
        for k in 0..n / 2 {
            let m = 0.5 * (psi[k] + psi[n - 1 - k]);
            psi[k] = m;
            psi[n - 1 - k] = m;
        }
        if psi[1..n - 1].contains(&0.0) {
            return Err(GeomError::Degenerate("polar profile vanishes in the interior".into()));
        }
        Self::new(self.dim, beta, concave_majorant(beta, &psi))
    }
}

/// Values of the concave majorant of uniform samples at the sample nodes.
pub fn concave_majorant(alpha: f64, values: &[f64]) -> Vec<f64> {
    let hull = meridian::upper_hull(&meridian::chain_from_samples(alpha, values));
    meridian::resample_uniform(&hull, values.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cylinder_volume_is_exact() {
        let c = RevolutionBody::cylinder(3, 1.0, 1.0, DEFAULT_SAMPLES).unwrap();
        assert!((c.volume() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn ball_profile_volume() {
        let b = RevolutionBody::ball(3, 1.0, 2001).unwrap();
        assert!((b.volume() - 4.0 * PI / 3.0).abs() < 1e-5);
    }

    #[test]
    fn rejects_interior_zero_and_nonconvex() {
        assert!(RevolutionBody::new(3, 1.0, vec![0.0, 1.0, 0.0, 1.0, 0.0]).is_err());
        assert!(RevolutionBody::new(3, 1.0, vec![1.0, 0.5, 1.0]).is_err());
        assert!(RevolutionBody::new(3, 1.0, vec![0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn from_fn_projects_onto_majorant() {
        let b = RevolutionBody::from_fn(3, 1.0, 101, |t| 1.0 + 0.1 * (20.0 * t).cos()).unwrap();
        assert!(b.profile().iter().all(|&v| v >= 0.9 - 1e-12));
    }

    #[test]
    fn ball_polar_is_ball() {
        let b = RevolutionBody::ball(3, 1.0, 2049).unwrap();
        let p = b.polar().unwrap();
        assert!((p.alpha() - 1.0).abs() < 1e-15);
        let n = b.samples();
        for i in 1..n - 1 {
            assert!((b.profile()[i] - p.profile()[i]).abs() < 1e-12, "node {i}");
        }
        // the gridded meridian has a corner at the pole, so its polar keeps
        // a short vertical edge of half-height sqrt(h/(2-h))
        let h = b.step();
        assert!((p.profile()[0] - (h / (2.0 - h)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cylinder_polar_is_double_cone() {
        let c = RevolutionBody::cylinder(3, 1.0, 1.0, 101).unwrap();
        let p = c.polar().unwrap();
        for (i, &v) in p.profile().iter().enumerate() {
            let s = p.t(i);
            assert!((v - (1.0 - s.abs())).abs() < 1e-12);
        }
    }

    #[test]
    fn self_midpoint_is_identity() {
        let b = RevolutionBody::from_fn(4, 1.3, 513, |t| (1.0 - (t / 1.3).powi(4)).max(0.0).powf(0.3))
            .unwrap();
        let m = b.midpoint(&b).unwrap();
        assert!((m.alpha() - b.alpha()).abs() < 1e-14);
        for (a, c) in m.profile().iter().zip(b.profile()) {
            assert!((a - c).abs() < 1e-12);
        }
    }
}
