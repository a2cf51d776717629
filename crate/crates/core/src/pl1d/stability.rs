use super::grid_fn::{Domain, GridFn1D};
use crate::error::{GeomError, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// How `m` is moved onto `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMode {
    /// `f(t) ≈ a m(t + b)`
    Shift,
    /// `F(t) ≈ a M(b t)` on the half line
    Scale,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityFit {
    pub a: f64,
    pub b: f64,
    /// `∫|f - model| / ∫m`
    pub l1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointFit {
    pub a: f64,
    pub b: f64,
    /// `∫|f(t) - a m(t+b)| / ∫m` (or the scale analogue)
    pub l1_f: f64,
    /// `∫|g(t) - a⁻¹ m(t-b)| / ∫m` (or the scale analogue)
    pub l1_g: f64,
}

/// `t ↦ c · m(κ t + τ)`.
#[derive(Debug, Clone, Copy)]
struct Affine {
    c: f64,
    kappa: f64,
    tau: f64,
}

impl Affine {
    fn direct(mode: FitMode, a: f64, b: f64) -> Self {
        match mode {
            FitMode::Shift => Affine { c: a, kappa: 1.0, tau: b },
            FitMode::Scale => Affine { c: a, kappa: b, tau: 0.0 },
        }
    }

    fn inverse(mode: FitMode, a: f64, b: f64) -> Self {
        match mode {
            FitMode::Shift => Affine { c: 1.0 / a, kappa: 1.0, tau: -b },
            FitMode::Scale => Affine { c: 1.0 / a, kappa: 1.0 / b, tau: 0.0 },
        }
    }
}

/// Walks the pieces of a grid function for increasing query cells.
struct Cursor<'a> {
    f: &'a GridFn1D,
    i: usize,
}

impl<'a> Cursor<'a> {
    fn new(f: &'a GridFn1D) -> Self {
        Self { f, i: 0 }
    }

    /// Value at `x` of the piece containing `mid` (nondecreasing `mid`).
    fn at(&mut self, x: f64, mid: f64) -> f64 {
        let g = self.f.grid();
        if mid <= g[0] || mid >= g[g.len() - 1] {
            return 0.0;
        }
        while self.i + 2 < g.len() && g[self.i + 1] <= mid {
            self.i += 1;
        }
        self.f.eval_piece(self.i, x)
    }
}

fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i] <= b[j]);
        let v = if take_a {
            i += 1;
            a[i - 1]
        } else {
            j += 1;
            b[j - 1]
        };
        if out.last().is_none_or(|&l: &f64| v - l > 1e-13 * (1.0 + l.abs())) {
            out.push(v);
        }
    }
    out
}

/// `∫|f - c m(κ· + τ)|` on the union of both node sets, Simpson per cell
/// using the exact piece on each side.
fn l1_affine(f: &GridFn1D, m: &GridFn1D, map: Affine) -> f64 {
    let nodes: Vec<f64> = m.grid().iter().map(|x| (x - map.tau) / map.kappa).collect();
    let ts = merge_sorted(f.grid(), &nodes);
    let mut cf = Cursor::new(f);
    let mut cm = Cursor::new(m);
    let mut total = 0.0;
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mid = 0.5 * (t0 + t1);
        let mm = map.kappa * mid + map.tau;
        let fv = [cf.at(t0, mid), cf.at(mid, mid), cf.at(t1, mid)];
        let mv = [
            cm.at(map.kappa * t0 + map.tau, mm),
            cm.at(mm, mm),
            cm.at(map.kappa * t1 + map.tau, mm),
        ];
        let d: Vec<f64> = fv.iter().zip(mv).map(|(x, y)| (x - map.c * y).abs()).collect();
        total += (t1 - t0) / 6.0 * (d[0] + 4.0 * d[1] + d[2]);
    }
    total
}

/// Distance between `f` and `a m(·+b)` (shift) or `a M(b·)` (scale),
/// normalized by `∫m`.
pub fn l1_distance(f: &GridFn1D, m: &GridFn1D, mode: FitMode, a: f64, b: f64) -> f64 {
    l1_affine(f, m, Affine::direct(mode, a, b)) / m.integral()
}

fn check_inputs(f: &GridFn1D, m: &GridFn1D, mode: FitMode) -> Result<()> {
    if mode == FitMode::Scale && (f.domain() != Domain::HalfLine || m.domain() != Domain::HalfLine) {
        return Err(GeomError::InvalidInput("scale mode needs half-line functions".into()));
    }
    if f.integral() <= 0.0 || m.integral() <= 0.0 {
        return Err(GeomError::InvalidInput("zero integral".into()));
    }
    Ok(())
}

/// Optimizer coordinates: `(ln a, b)` for shifts, `(ln a, ln b)` for scales.
fn to_params(mode: FitMode, p: &[f64]) -> (f64, f64) {
    match mode {
        FitMode::Shift => (p[0].exp(), p[1]),
        FitMode::Scale => (p[0].exp(), p[1].exp()),
    }
}

fn from_params(mode: FitMode, a: f64, b: f64) -> Vec<f64> {
    match mode {
        FitMode::Shift => vec![a.ln(), b],
        FitMode::Scale => vec![a.ln(), b.ln()],
    }
}

/// Multistart simplex search; near-ties go to the start closest to `x0`.
fn search<F: Fn(&[f64]) -> f64>(obj: F, x0: &[f64], spread: &[f64]) -> Result<(Vec<f64>, f64)> {
    let dim = x0.len();
    let mut starts = vec![x0.to_vec()];
    for k in 0..dim {
        for sgn in [-1.0, 1.0] {
            let mut s = x0.to_vec();
            s[k] += sgn * spread[k];
            starts.push(s);
        }
    }
    let mut opts = NelderMeadOptions::new(dim, 0.0);
    opts.step = spread.iter().map(|s| 0.5 * s).collect();
    opts.xtol = 1e-10;
    opts.ftol = 1e-15;
    let mut results = Vec::new();
    let mut iterations = 0;
    for s in &starts {
        let r = nelder_mead(&obj, s, &opts);
        iterations += r.iterations;
        results.push(r);
    }
    let best = results.iter().map(|r| r.fx).fold(f64::INFINITY, f64::min);
    if !best.is_finite() || results.iter().all(|r| !r.converged) {
        let r = results
            .iter()
            .min_by(|a, b| a.fx.total_cmp(&b.fx))
            .expect("at least one start");
        return Err(GeomError::Convergence {
            iterations,
            best_point: r.x.clone(),
            best_value: r.fx,
        });
    }
    let dist = |x: &[f64]| x.iter().zip(x0).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    let chosen = results
        .iter()
        .filter(|r| r.fx <= best + 1e-9)
        .min_by(|a, b| dist(&a.x).total_cmp(&dist(&b.x)))
        .expect("best is attained");
    Ok((chosen.x.clone(), chosen.fx))
}

/// Moment-matched starting point for `f ≈ a m(·+b)` / `a M(b·)`.
fn moment_start(f: &GridFn1D, m: &GridFn1D, mode: FitMode) -> (f64, f64) {
    let (f0, m0) = (f.integral(), m.integral());
    match mode {
        FitMode::Shift => (f0 / m0, m.mean() - f.mean()),
        FitMode::Scale => {
            let b = m.mean() / f.mean();
            (b * f0 / m0, b)
        }
    }
}

fn spreads(m: &GridFn1D, mode: FitMode) -> Vec<f64> {
    match mode {
        FitMode::Shift => vec![0.2, 0.25 * m.std_dev().max(1e-6)],
        FitMode::Scale => vec![0.2, 0.2],
    }
}

/// Best `(a, b)` moving `m` onto `f`.
pub fn stability_distance(f: &GridFn1D, m: &GridFn1D, mode: FitMode) -> Result<StabilityFit> {
    check_inputs(f, m, mode)?;
    let (a0, b0) = moment_start(f, m, mode);
    let x0 = from_params(mode, a0, b0);
    let (x, l1) = search(
        |p| {
            let (a, b) = to_params(mode, p);
            l1_distance(f, m, mode, a, b)
        },
        &x0,
        &spreads(m, mode),
    )?;
    let (a, b) = to_params(mode, &x);
    Ok(StabilityFit { a, b, l1 })
}

/// Scale-mode fit with the constraint `a = b`.
pub fn stability_distance_tied(f: &GridFn1D, m: &GridFn1D) -> Result<StabilityFit> {
    check_inputs(f, m, FitMode::Scale)?;
    let (_, b0) = moment_start(f, m, FitMode::Scale);
    let (x, l1) = search(
        |p| l1_distance(f, m, FitMode::Scale, p[0].exp(), p[0].exp()),
        &[b0.ln()],
        &[0.2],
    )?;
    let c = x[0].exp();
    Ok(StabilityFit { a: c, b: c, l1 })
}

/// Simultaneous fit of `f ≈ a m(·+b)` and `g ≈ a⁻¹ m(·-b)` (or the scale
/// analogues), minimizing the sum of both distances.
pub fn joint_stability_distance(f: &GridFn1D, g: &GridFn1D, m: &GridFn1D, mode: FitMode) -> Result<JointFit> {
    check_inputs(f, m, mode)?;
    check_inputs(g, m, mode)?;
    let (fi, gi) = (f.integral(), g.integral());
    let (a0, b0) = match mode {
        FitMode::Shift => ((fi / gi).sqrt(), 0.5 * (g.mean() - f.mean())),
        FitMode::Scale => {
            let b = (g.mean() / f.mean()).sqrt();
            (b * (fi / gi).sqrt(), b)
        }
    };
    let mi = m.integral();
    let total = |a: f64, b: f64| {
        (l1_affine(f, m, Affine::direct(mode, a, b)) + l1_affine(g, m, Affine::inverse(mode, a, b))) / mi
    };
    let (x, _) = search(
        |p| {
            let (a, b) = to_params(mode, p);
            total(a, b)
        },
        &from_params(mode, a0, b0),
        &spreads(m, mode),
    )?;
    let (a, b) = to_params(mode, &x);
    Ok(JointFit {
        a,
        b,
        l1_f: l1_affine(f, m, Affine::direct(mode, a, b)) / mi,
        l1_g: l1_affine(g, m, Affine::inverse(mode, a, b)) / mi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(shift: f64) -> GridFn1D {
        GridFn1D::uniform(-6.0, 6.0, 4001, Domain::WholeLine, move |x| (-(x - shift).powi(2)).exp()).unwrap()
    }

    #[test]
    fn identical_functions() {
        let m = gauss(0.0);
        let fit = stability_distance(&m, &m, FitMode::Shift).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-6 && fit.b.abs() < 1e-6 && fit.l1 < 1e-6, "{fit:?}");
    }

    #[test]
    fn recovers_a_pure_shift() {
        // f(t) = m(t - 0.3) = a m(t + b) with a = 1, b = -0.3
        let m = gauss(0.0);
        let f = gauss(0.3);
        let fit = stability_distance(&f, &m, FitMode::Shift).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-6, "{fit:?}");
        assert!((fit.b + 0.3).abs() < 1e-6, "{fit:?}");
        assert!(fit.l1 < 1e-6, "{fit:?}");
    }

    #[test]
    fn recovers_a_scale() {
        let grid: Vec<f64> = (0..4097).map(|i| 40.0 * i as f64 / 4096.0).collect();
        let big_m = GridFn1D::from_fn(grid.clone(), Domain::HalfLine, |t| (-t).exp()).unwrap();
        let fgrid: Vec<f64> = grid.iter().map(|t| t / 3.0).collect();
        let big_f = GridFn1D::from_fn(fgrid, Domain::HalfLine, |t| 2.0 * (-3.0 * t).exp()).unwrap();
        let fit = stability_distance(&big_f, &big_m, FitMode::Scale).unwrap();
        assert!((fit.a - 2.0).abs() < 1e-6, "{fit:?}");
        assert!((fit.b - 3.0).abs() < 1e-6, "{fit:?}");
        assert!(fit.l1 < 1e-6, "{fit:?}");
    }

    #[test]
    fn scale_mode_rejects_whole_line() {
        let m = gauss(0.0);
        assert!(stability_distance(&m, &m, FitMode::Scale).is_err());
    }
}
