//! Derivative-free minimizers shared by the Santaló search, the stability
//! distance fits and the homothetic translation search.

/// Options for [`nelder_mead`].
#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    /// Initial simplex edge length per coordinate.
    pub step: Vec<f64>,
    pub max_iter: usize,
    /// Converged once every vertex is within `xtol` of the best vertex (sup norm)...
    pub xtol: f64,
    /// ...and the spread of objective values is below `ftol`.
    pub ftol: f64,
    /// Number of fresh-simplex restarts from the current best point.
    pub restarts: usize,
}

impl NelderMeadOptions {
    pub fn new(dim: usize, step: f64) -> Self {
        Self {
            step: vec![step; dim],
            max_iter: 4000,
            xtol: 1e-10,
            ftol: 1e-14,
            restarts: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction ½, shrink ½).
///
/// Non-finite objective values are treated as `+inf`, so infeasible points
/// can be encoded by returning `f64::INFINITY`.
pub fn nelder_mead<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: Fn(&[f64]) -> f64,
{
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let dim = x0.len();
    let mut best = x0.to_vec();
    let mut best_f = eval(&best);
    let mut total_iter = 0;
    let mut converged = false;

    for round in 0..=opts.restarts {
        let scale = if round == 0 { 1.0 } else { 0.1f64.powi(round as i32) };
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
        simplex.push(best.clone());
        for i in 0..dim {
            let mut v = best.clone();
            v[i] += opts.step[i] * scale;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();
        converged = false;

        for _ in 0..opts.max_iter {
            total_iter += 1;
            let mut order: Vec<usize> = (0..=dim).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread_x = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
                .fold(0.0f64, f64::max);
            let spread_f = values[dim] - values[0];
            if spread_x <= opts.xtol && (spread_f <= opts.ftol || spread_x == 0.0) {
                converged = true;
                break;
            }

            let mut centroid = vec![0.0; dim];
            for v in &simplex[..dim] {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x / dim as f64;
                }
            }
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[dim])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let xr = along(1.0);
            let fr = eval(&xr);
            if fr < values[0] {
                let xe = along(2.0);
                let fe = eval(&xe);
                if fe < fr {
                    simplex[dim] = xe;
                    values[dim] = fe;
                } else {
                    simplex[dim] = xr;
                    values[dim] = fr;
                }
            } else if fr < values[dim - 1] {
                simplex[dim] = xr;
                values[dim] = fr;
            } else {
                let (xc, fc) = if fr < values[dim] {
                    let xc = along(0.5);
                    let fc = eval(&xc);
                    (xc, fc)
                } else {
                    let xc = along(-0.5);
                    let fc = eval(&xc);
                    (xc, fc)
                };
                if fc < values[dim].min(fr) {
                    simplex[dim] = xc;
                    values[dim] = fc;
                } else {
                    for i in 1..=dim {
                        let shrunk: Vec<f64> = simplex[i]
                            .iter()
                            .zip(&simplex[0])
                            .map(|(x, b)| b + 0.5 * (x - b))
                            .collect();
                        values[i] = eval(&shrunk);
                        simplex[i] = shrunk;
                    }
                }
            }
        }

        let (ib, fb) = values
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("simplex is nonempty");
        if fb <= best_f {
            best_f = fb;
            best = simplex[ib].clone();
        }
    }

    NelderMeadResult {
        x: best,
        fx: best_f,
        iterations: total_iter,
        converged,
    }
}

/// Golden-section search for a unimodal function on `[lo, hi]`.
pub fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while (hi - lo).abs() > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    (x, fx)
}

/// Coarse scan followed by golden-section refinement around the best sample.
/// Useful when the objective is only unimodal near its minimum.
pub fn scan_then_golden<F>(f: F, lo: f64, hi: f64, samples: usize, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let samples = samples.max(3);
    let step = (hi - lo) / (samples - 1) as f64;
    let (ibest, _) = (0..samples)
        .map(|i| (i, f(lo + step * i as f64)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least three samples");
    let a = lo + step * ibest.saturating_sub(1) as f64;
    let b = lo + step * (ibest + 1).min(samples - 1) as f64;
    golden_section(f, a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nelder_mead_finds_rosenbrock_minimum() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let res = nelder_mead(rosen, &[-1.2, 1.0], &NelderMeadOptions::new(2, 0.5));
        assert!((res.x[0] - 1.0).abs() < 1e-6, "{:?}", res);
        assert!((res.x[1] - 1.0).abs() < 1e-6, "{:?}", res);
    }

    #[test]
    fn nelder_mead_respects_infeasible_region() {
        // minimum of x^2 restricted to x >= 1
        let f = |x: &[f64]| if x[0] < 1.0 { f64::INFINITY } else { x[0] * x[0] };
        let res = nelder_mead(f, &[3.0], &NelderMeadOptions::new(1, 0.5));
        assert!((res.x[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn golden_section_quadratic() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 2.0, -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-14);
    }
}
