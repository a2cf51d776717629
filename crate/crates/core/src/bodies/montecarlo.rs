use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BodyRef;
use crate::error::{GeomError, Result};

/// Monte-Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// Distance from `value` in units of standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        (self.estimate - value).abs() / self.std_error.max(f64::MIN_POSITIVE)
    }
}

fn hit_rate<F>(bbox: &[(f64, f64)], samples: usize, seed: u64, hit: F) -> McEstimate
where
    F: Fn(&[f64]) -> bool,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let box_vol: f64 = bbox.iter().map(|(lo, hi)| hi - lo).product();
    let mut x = vec![0.0; bbox.len()];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (xi, (lo, hi)) in x.iter_mut().zip(bbox) {
            *xi = lo + (hi - lo) * rng.random::<f64>();
        }
        if hit(&x) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    McEstimate {
        estimate: box_vol * p,
        std_error: box_vol * (p * (1.0 - p) / samples as f64).sqrt(),
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 1000 {
        return Err(GeomError::InvalidArgument(format!("need at least 1000 samples, got {samples}")));
    }
    Ok(())
}

/// Rejection-sampling volume estimate in the bounding box.
pub fn mc_volume(k: &BodyRef, samples: usize, seed: u64) -> Result<McEstimate> {
    check_samples(samples)?;
    let bbox = k.bounding_box();
    Ok(hit_rate(&bbox, samples, seed, |x| k.contains(x)))
}

/// Estimate of `|K Δ C|` sampled in the union of the bounding boxes.
pub fn mc_symmetric_difference(k: &BodyRef, c: &BodyRef, samples: usize, seed: u64) -> Result<McEstimate> {
    check_samples(samples)?;
    if k.dim() != c.dim() {
        return Err(GeomError::InvalidArgument("dimension mismatch".into()));
    }
    let bbox: Vec<(f64, f64)> = k
        .bounding_box()
        .iter()
        .zip(c.bounding_box())
        .map(|(a, b)| (a.0.min(b.0), a.1.max(b.1)))
        .collect();
    Ok(hit_rate(&bbox, samples, seed, |x| k.contains(x) != c.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_runs_repeat() {
        let b = BodyRef::ball(3, 1.0).unwrap();
        let a = mc_volume(&b, 20_000, 7).unwrap();
        let c = mc_volume(&b, 20_000, 7).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn too_few_samples() {
        let b = BodyRef::ball(2, 1.0).unwrap();
        assert!(mc_volume(&b, 10, 1).is_err());
    }
}
