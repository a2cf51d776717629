use super::grid_fn::{uniform_grid, Domain, GridFn1D};
use crate::error::{GeomError, Result};

/// Which mean pairs `r` and `s` in the midpoint condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mean {
    /// `m((r+s)/2) >= sqrt(f(r) g(s))`
    Arithmetic,
    /// `M(sqrt(rs)) >= sqrt(F(r) G(s))`
    Geometric,
}

const SNAP: f64 = 1e-9;

fn uniform_step(grid: &[f64]) -> Option<f64> {
    let n = grid.len();
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    grid.iter()
        .enumerate()
        .all(|(i, &x)| (x - (grid[0] + h * i as f64)).abs() <= 1e-9 * h)
        .then_some(h)
}

/// Log of a whole-line interpolant, walked left to right.
struct LogCursor<'a> {
    x: &'a [f64],
    lv: &'a [f64],
    j: usize,
}

impl<'a> LogCursor<'a> {
    fn new(x: &'a [f64], lv: &'a [f64]) -> Self {
        Self { x, lv, j: 0 }
    }

    /// `ln f(y)` for nondecreasing queries `y`.
    fn at(&mut self, y: f64) -> f64 {
        let n = self.x.len();
        if y < self.x[0] || y > self.x[n - 1] {
            // snap queries that miss an end node by rounding
            let h = self.x[1] - self.x[0];
            let hl = self.x[n - 1] - self.x[n - 2];
            if (y - self.x[0]).abs() <= SNAP * h {
                return self.lv[0];
            }
            if (y - self.x[n - 1]).abs() <= SNAP * hl {
                return self.lv[n - 1];
            }
            return f64::NEG_INFINITY;
        }
        while self.j + 2 < n && self.x[self.j + 1] <= y {
            self.j += 1;
        }
        let (x0, x1) = (self.x[self.j], self.x[self.j + 1]);
        let lam = (y - x0) / (x1 - x0);
        if lam <= SNAP {
            return self.lv[self.j];
        }
        if lam >= 1.0 - SNAP {
            return self.lv[self.j + 1];
        }
        let (a, b) = (self.lv[self.j], self.lv[self.j + 1]);
        if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        a + lam * (b - a)
    }
}

fn logs(f: &GridFn1D) -> Vec<f64> {
    f.values()
        .iter()
        .map(|&v| if v > 0.0 { v.ln() } else { f64::NEG_INFINITY })
        .collect()
}

/// Grid for the arithmetic midpoint of two whole-line functions.
fn midpoint_grid(f: &GridFn1D, g: &GridFn1D) -> Result<Vec<f64>> {
    let (fa, fb) = f
        .support_indices()
        .ok_or_else(|| GeomError::EmptyFunction("f".into()))?;
    let (ga, gb) = g
        .support_indices()
        .ok_or_else(|| GeomError::EmptyFunction("g".into()))?;
    if fa == fb {
        return Err(GeomError::EmptyFunction("f is positive at a single node".into()));
    }
    if ga == gb {
        return Err(GeomError::EmptyFunction("g is positive at a single node".into()));
    }
    let lo = 0.5 * (f.grid()[fa] + g.grid()[ga]);
    let hi = 0.5 * (f.grid()[fb] + g.grid()[gb]);
    if let (Some(hf), Some(hg)) = (uniform_step(f.grid()), uniform_step(g.grid())) {
        if (hf - hg).abs() <= 1e-12 * hf {
            let n = ((hi - lo) / (0.5 * hf)).round() as usize + 1;
            return Ok(uniform_grid(lo, hi, n.max(2)));
        }
    }
    Ok(uniform_grid(lo, hi, 2 * f.len().max(g.len()) - 1))
}

/// Pointwise-minimal `m` with `m((r+s)/2) >= sqrt(f(r) g(s))` for the
/// interpolants of two whole-line functions, on the grid `ts`.
///
/// `ln f` and `ln g` are piecewise linear, so for each `t` the supremum over
/// `r` is attained where `r` or `2t - r` is a node.
pub(crate) fn arithmetic_on(f: &GridFn1D, g: &GridFn1D, ts: &[f64]) -> Vec<f64> {
    let (lf, lg) = (logs(f), logs(g));
    let mut best = vec![f64::NEG_INFINITY; ts.len()];
    let mut sweep = |nodes: &[f64], lnodes: &[f64], other: &[f64], lother: &[f64]| {
        for (&r, &lr) in nodes.iter().zip(lnodes) {
            if lr == f64::NEG_INFINITY {
                continue;
            }
            let mut cur = LogCursor::new(other, lother);
            for (k, &t) in ts.iter().enumerate() {
                let v = 0.5 * (lr + cur.at(2.0 * t - r));
                if v > best[k] {
                    best[k] = v;
                }
            }
        }
    };
    sweep(f.grid(), &lf, g.grid(), &lg);
    sweep(g.grid(), &lg, f.grid(), &lf);
    best.into_iter().map(f64::exp).collect()
}

/// Exact midpoint of two log-concave interpolants: `ln m(½(x+y))` walks
/// the merged slope sequence of `ln f` and `ln g` over their supports.
fn slope_merge(f: &GridFn1D, g: &GridFn1D) -> (Vec<f64>, Vec<f64>) {
    let (fa, fb) = f.support_indices().expect("checked log-concave");
    let (ga, gb) = g.support_indices().expect("checked log-concave");
    let (fx, gx) = (&f.grid()[fa..=fb], &g.grid()[ga..=gb]);
    let (lf, lg): (Vec<f64>, Vec<f64>) = (
        f.values()[fa..=fb].iter().map(|v| v.ln()).collect(),
        g.values()[ga..=gb].iter().map(|v| v.ln()).collect(),
    );
    let slope = |x: &[f64], l: &[f64], i: usize| (l[i + 1] - l[i]) / (x[i + 1] - x[i]);
    let (mut i, mut j) = (0, 0);
    let mut ts = vec![0.5 * (fx[0] + gx[0])];
    let mut vals = vec![0.5 * (lf[0] + lg[0])];
    while i + 1 < fx.len() || j + 1 < gx.len() {
        let step_f = if i + 1 == fx.len() {
            false
        } else if j + 1 == gx.len() {
            true
        } else {
            slope(fx, &lf, i) >= slope(gx, &lg, j)
        };
        if step_f {
            i += 1;
        } else {
            j += 1;
        }
        ts.push(0.5 * (fx[i] + gx[j]));
        vals.push(0.5 * (lf[i] + lg[j]));
    }
    (ts, vals.into_iter().map(f64::exp).collect())
}

/// `h(x) = H(eˣ)eˣ` on the logarithm of `H`'s positive grid points.
pub fn exp_substitution(big_h: &GridFn1D) -> Result<GridFn1D> {
    if big_h.domain() != Domain::HalfLine {
        return Err(GeomError::InvalidInput("substitution needs a half-line function".into()));
    }
    let start = big_h.grid().iter().position(|&u| u > 0.0).unwrap_or(big_h.len());
    if start > 0 && big_h.values()[0] > 0.0 {
        log::warn!("support touches 0; truncating at u = {}", big_h.grid().get(start).copied().unwrap_or(f64::NAN));
    }
    if big_h.len() - start < 2 {
        return Err(GeomError::InvalidInput("fewer than two positive grid points".into()));
    }
    let xs: Vec<f64> = big_h.grid()[start..].iter().map(|u| u.ln()).collect();
    let vs: Vec<f64> = big_h.grid()[start..]
        .iter()
        .zip(&big_h.values()[start..])
        .map(|(u, v)| u * v)
        .collect();
    let lc = big_h.is_flagged_log_concave() && big_h.is_decreasing();
    Ok(GridFn1D::new(xs, vs, Domain::WholeLine)?.flag_log_concave_unchecked(lc))
}

/// Inverse of [`exp_substitution`]: `H(u) = h(ln u)/u`.
pub fn log_substitution(h: &GridFn1D) -> Result<GridFn1D> {
    let us: Vec<f64> = h.grid().iter().map(|x| x.exp()).collect();
    let vs: Vec<f64> = us.iter().zip(h.values()).map(|(u, v)| v / u).collect();
    GridFn1D::new(us, vs, Domain::HalfLine)
}

/// Minimal midpoint function `m*` for the chosen mean.
pub fn sup_convolution_midpoint(f: &GridFn1D, g: &GridFn1D, mean: Mean) -> Result<GridFn1D> {
    match mean {
        Mean::Arithmetic => {
            if f.domain() != Domain::WholeLine || g.domain() != Domain::WholeLine {
                return Err(GeomError::InvalidInput("arithmetic mean needs whole-line functions".into()));
            }
            let lc = f.is_flagged_log_concave() && g.is_flagged_log_concave();
            let (ts, vals) = if f.check_log_concave(1e-9) && g.check_log_concave(1e-9) {
                slope_merge(f, g)
            } else {
                let ts = midpoint_grid(f, g)?;
                let vals = arithmetic_on(f, g, &ts);
                (ts, vals)
            };
            Ok(GridFn1D::new(ts, vals, Domain::WholeLine)?.flag_log_concave_unchecked(lc))
        }
        Mean::Geometric => {
            if f.domain() != Domain::HalfLine || g.domain() != Domain::HalfLine {
                return Err(GeomError::InvalidInput("geometric mean needs half-line functions".into()));
            }
            let (hf, hg) = (exp_substitution(f)?, exp_substitution(g)?);
            let m = sup_convolution_midpoint(&hf, &hg, Mean::Arithmetic)?;
            let out = log_substitution(&m)?;
            let lc = f.is_flagged_log_concave() && g.is_flagged_log_concave() && out.check_log_concave(1e-7);
            Ok(out.flag_log_concave_unchecked(lc))
        }
    }
}
