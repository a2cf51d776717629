//! Operations on upper meridian chains.
//!
//! A chain is the graph of a concave, piecewise-linear, nonnegative function
//! `y = φ(t)` given by its vertices sorted by `t`. The meridian of a body of
//! revolution is `{(t, y) : |y| <= φ(t)}`, so every planar operation we need
//! (Minkowski sums, hulls, polars, supports) reduces to an operation on the
//! upper chain.

pub type Chain = Vec<[f64; 2]>;

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Upper concave envelope of a point set (Andrew's monotone chain).
pub fn upper_hull(points: &[[f64; 2]]) -> Chain {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
    // keep the highest point per abscissa
    pts.dedup_by(|next, prev| next[0] == prev[0]);
    let mut hull: Chain = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Chain through uniform samples `phi` on `[-alpha, alpha]`.
pub fn chain_from_samples(alpha: f64, phi: &[f64]) -> Chain {
    let n = phi.len();
    let step = 2.0 * alpha / (n - 1) as f64;
    phi.iter()
        .enumerate()
        .map(|(i, &y)| [-alpha + step * i as f64, y])
        .collect()
}

/// Value of the chain at `t`; zero outside its abscissa range.
pub fn eval(chain: &[[f64; 2]], t: f64) -> f64 {
    let (first, last) = (chain[0], chain[chain.len() - 1]);
    if t < first[0] || t > last[0] {
        return 0.0;
    }
    let idx = chain.partition_point(|p| p[0] < t);
    if idx == 0 {
        return first[1];
    }
    let (a, b) = (chain[idx - 1], chain[idx]);
    if b[0] == a[0] {
        return a[1].max(b[1]);
    }
    let lam = (t - a[0]) / (b[0] - a[0]);
    a[1] + lam * (b[1] - a[1])
}

/// Sample the chain at `n` uniform abscissae spanning its full range.
pub fn resample_uniform(chain: &[[f64; 2]], n: usize) -> Vec<f64> {
    let lo = chain[0][0];
    let hi = chain[chain.len() - 1][0];
    let step = (hi - lo) / (n - 1) as f64;
    let mut out = Vec::with_capacity(n);
    let mut j = 0;
    for i in 0..n {
        let t = if i == n - 1 { hi } else { lo + step * i as f64 };
        while j + 2 < chain.len() && chain[j + 1][0] < t {
            j += 1;
        }
        let (a, b) = (chain[j], chain[(j + 1).min(chain.len() - 1)]);
        let y = if b[0] > a[0] {
            let lam = ((t - a[0]) / (b[0] - a[0])).clamp(0.0, 1.0);
            a[1] + lam * (b[1] - a[1])
        } else {
            a[1].max(b[1])
        };
        out.push(y.max(0.0));
    }
    out[0] = chain[0][1].max(0.0);
    out[n - 1] = chain[chain.len() - 1][1].max(0.0);
    out
}

/// Sup-convolution `t ↦ max_{t1 + t2 = t} a(t1) + b(t2)` of two concave
/// chains, which is the upper chain of the Minkowski sum of the meridians.
/// Computed exactly by merging edge slopes.
pub fn sup_convolve(a: &[[f64; 2]], b: &[[f64; 2]]) -> Chain {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut cur = [a[0][0] + b[0][0], a[0][1] + b[0][1]];
    out.push(cur);
    let slope = |c: &[[f64; 2]], k: usize| {
        let dx = c[k + 1][0] - c[k][0];
        if dx <= 0.0 {
            f64::INFINITY
        } else {
            (c[k + 1][1] - c[k][1]) / dx
        }
    };
    while i + 1 < a.len() || j + 1 < b.len() {
        let take_a = if i + 1 >= a.len() {
            false
        } else if j + 1 >= b.len() {
            true
        } else {
            slope(a, i) >= slope(b, j)
        };
        if take_a {
            cur = [cur[0] + a[i + 1][0] - a[i][0], cur[1] + a[i + 1][1] - a[i][1]];
            i += 1;
        } else {
            cur = [cur[0] + b[j + 1][0] - b[j][0], cur[1] + b[j + 1][1] - b[j][1]];
            j += 1;
        }
        out.push(cur);
    }
    out
}

/// Support of the symmetric meridian `{|y| <= φ(t)}` in direction `(wa, wp)`.
pub fn support(chain: &[[f64; 2]], wa: f64, wp: f64) -> f64 {
    let wp = wp.abs();
    chain
        .iter()
        .map(|p| wa * p[0] + wp * p[1])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Support values of a symmetric meridian at the angles `θ_k = kπ/(2m)`,
/// `k = 0..=m`, covering the quadrant `wa >= 0, wp >= 0`.
/// Runs in `O(len + m)` because the maximizing vertex moves monotonically
/// from the right end toward the middle as θ grows.
pub fn quadrant_supports(chain: &[[f64; 2]], m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let mut idx = chain.len() - 1;
    for k in 0..=m {
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / m as f64;
        let (wa, wp) = (theta.cos(), theta.sin());
        let val = |p: [f64; 2]| wa * p[0] + wp * p[1];
        while idx > 0 && val(chain[idx - 1]) >= val(chain[idx]) {
            idx -= 1;
        }
        out.push(val(chain[idx]));
    }
    out
}

/// Reconstruct the profile of an o-symmetric meridian from its quadrant
/// supports (as produced by [`quadrant_supports`]) as the intersection of
/// the supporting half-planes, sampled at `n` uniform abscissae on
/// `[-alpha, alpha]` with `alpha = h(0)`.
pub fn profile_from_supports(h: &[f64], n: usize) -> (f64, Vec<f64>) {
    let m = h.len() - 1;
    let alpha = h[0];
    // lines y = c_k - s_k t for θ in (0, π/2]; mirrored for θ in [π/2, π)
    let mut lines: Vec<(f64, f64)> = Vec::with_capacity(2 * m);
    for (k, &hk) in h.iter().enumerate().skip(1) {
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / m as f64;
        let (c, s) = (theta.cos(), theta.sin());
        lines.push((hk / s, c / s));
        if k < m {
            lines.push((hk / s, -c / s));
        }
    }
    let step = 2.0 * alpha / (n - 1) as f64;
    let mut out = Vec::with_capacity(n);
    let env = LowerEnvelope::new(lines);
    let node = |i: usize| if i == n - 1 { alpha } else { -alpha + step * i as f64 };
    for i in 0..n {
        out.push(env.eval(node(i)).max(0.0));
    }
    (alpha, out)
}

/// Lower envelope of lines `y = c - s t`, queried in increasing `t`.
struct LowerEnvelope {
    // (intercept, slope-coefficient), sorted by decreasing -s (i.e. by s)
    lines: Vec<(f64, f64)>,
    breaks: Vec<f64>,
}

impl LowerEnvelope {
    fn new(mut lines: Vec<(f64, f64)>) -> Self {
        // y = c - s t ; as t grows, lines with larger s become smaller
        lines.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
        lines.dedup_by(|next, prev| next.1 == prev.1);
        let mut hull: Vec<(f64, f64)> = Vec::with_capacity(lines.len());
        let mut breaks: Vec<f64> = Vec::new();
        let meet = |l1: (f64, f64), l2: (f64, f64)| (l2.0 - l1.0) / (l2.1 - l1.1);
        for l in lines {
            while let Some(&last) = hull.last() {
                let x = meet(last, l);
                if let Some(&b) = breaks.last() {
                    if x <= b {
                        hull.pop();
                        breaks.pop();
                        continue;
                    }
                }
                break;
            }
            if let Some(&last) = hull.last() {
                breaks.push(meet(last, l));
            }
            hull.push(l);
        }
        Self { lines: hull, breaks }
    }

    fn eval(&self, t: f64) -> f64 {
        let k = self.breaks.partition_point(|&b| b < t);
        let (c, s) = self.lines[k];
        c - s * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_convolution_of_square_profiles_adds_boxes() {
        let a = vec![[-1.0, 1.0], [1.0, 1.0]];
        let b = vec![[-2.0, 0.5], [2.0, 0.5]];
        let s = sup_convolve(&a, &b);
        assert_eq!(s.first().copied(), Some([-3.0, 1.5]));
        assert_eq!(s.last().copied(), Some([3.0, 1.5]));
    }

    #[test]
    fn hull_removes_concave_violations() {
        let pts = [[0.0, 0.0], [1.0, 0.2], [2.0, 1.0], [3.0, 0.0]];
        let h = upper_hull(&pts);
        assert_eq!(h, vec![[0.0, 0.0], [2.0, 1.0], [3.0, 0.0]]);
    }

    #[test]
    fn supports_round_trip_for_a_square() {
        let chain = vec![[-1.0, 1.0], [1.0, 1.0]];
        let h = quadrant_supports(&chain, 256);
        assert!((h[0] - 1.0).abs() < 1e-15);
        assert!((h[256] - 1.0).abs() < 1e-15);
        let (alpha, prof) = profile_from_supports(&h, 9);
        assert!((alpha - 1.0).abs() < 1e-15);
        for y in prof {
            assert!((y - 1.0).abs() < 1e-9, "{y}");
        }
    }
}
