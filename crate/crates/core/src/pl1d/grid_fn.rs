use crate::error::{GeomError, Result};

/// Which half of the line a function lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    WholeLine,
    HalfLine,
}

/// Nonnegative function sampled on a strictly increasing grid.
///
/// Between nodes the function is geometric: log-linear on the whole line,
/// and a power law `A (u/u_i)^k` on the half line (linear on a cell that
/// starts at `u = 0`). A cell with a zero endpoint is zero in its interior.
/// Outside the grid the function is zero. Integrals are exact for this
/// interpolant, and `u ↦ H(u)` on the half line corresponds to the
/// log-linear `x ↦ H(eˣ)eˣ` cell by cell.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn1D {
    grid: Vec<f64>,
    values: Vec<f64>,
    domain: Domain,
    log_concave: bool,
}

const SNAP: f64 = 1e-9;

/// `∫` over a cell of width `dx` of the exponential through `a` and `b`.
pub(crate) fn geometric_cell(dx: f64, a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    let r = b / a;
    if (r - 1.0).abs() < 1e-6 {
        // series of (r - 1)/ln r about r = 1
        let e = r - 1.0;
        dx * a * (1.0 + e / 2.0 - e * e / 12.0 + e * e * e / 24.0)
    } else {
        dx * (b - a) / r.ln()
    }
}

impl GridFn1D {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, domain: Domain) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(GeomError::InvalidInput(format!(
                "grid has {} points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 2 {
            return Err(GeomError::InvalidInput("need at least two grid points".into()));
        }
        if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(GeomError::InvalidInput("grid must be finite and strictly increasing".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(GeomError::InvalidInput("values must be finite and nonnegative".into()));
        }
        if domain == Domain::HalfLine && grid[0] < 0.0 {
            return Err(GeomError::InvalidInput("half-line grid starts below 0".into()));
        }
        Ok(Self { grid, values, domain, log_concave: false })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(grid: Vec<f64>, domain: Domain, f: F) -> Result<Self> {
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values, domain)
    }

    /// `n` uniform points on `[lo, hi]`.
    pub fn uniform<F: Fn(f64) -> f64>(lo: f64, hi: f64, n: usize, domain: Domain, f: F) -> Result<Self> {
        Self::from_fn(uniform_grid(lo, hi, n), domain, f)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn is_flagged_log_concave(&self) -> bool {
        self.log_concave
    }

    /// Set the log-concavity flag after checking it.
    pub fn with_log_concave(mut self, tol: f64) -> Result<Self> {
        if !self.check_log_concave(tol) {
            return Err(GeomError::InvalidInput("function is not log-concave".into()));
        }
        self.log_concave = true;
        Ok(self)
    }

    pub(crate) fn flag_log_concave_unchecked(mut self, flag: bool) -> Self {
        self.log_concave = flag;
        self
    }

    /// First and last index with a positive value.
    pub fn support_indices(&self) -> Option<(usize, usize)> {
        let first = self.values.iter().position(|&v| v > 0.0)?;
        let last = self.values.iter().rposition(|&v| v > 0.0)?;
        Some((first, last))
    }

    /// Log-concavity on the grid: the positive set is a run of nodes and
    /// the slopes of `ln f` do not increase by more than `tol`.
    pub fn check_log_concave(&self, tol: f64) -> bool {
        let Some((a, b)) = self.support_indices() else {
            return false;
        };
        if self.values[a..=b].iter().any(|&v| v <= 0.0) {
            return false;
        }
        let x = &self.grid;
        let mut prev = f64::INFINITY;
        for i in a..b {
            let s = (self.values[i + 1].ln() - self.values[i].ln()) / (x[i + 1] - x[i]);
            if s > prev + tol * (1.0 + prev.abs()) {
                return false;
            }
            prev = s;
        }
        true
    }

    pub fn is_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0])
    }

    /// Cell index `i` with `grid[i] <= x <= grid[i+1]`, or `None` outside.
    fn cell(&self, x: f64) -> Option<usize> {
        let n = self.grid.len();
        if x < self.grid[0] || x > self.grid[n - 1] {
            return None;
        }
        let i = self.grid.partition_point(|&g| g <= x);
        Some(i.saturating_sub(1).min(n - 2))
    }

    /// Value of cell `i`'s piece at `x`; `x` is clamped to the cell.
    pub(crate) fn eval_piece(&self, i: usize, x: f64) -> f64 {
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        let (a, b) = (self.values[i], self.values[i + 1]);
        let lam = ((x - x0) / (x1 - x0)).clamp(0.0, 1.0);
        if lam <= SNAP {
            return a;
        }
        if lam >= 1.0 - SNAP {
            return b;
        }
        if self.domain == Domain::HalfLine && x0 == 0.0 {
            return a + lam * (b - a);
        }
        if a <= 0.0 || b <= 0.0 {
            return 0.0;
        }
        let w = match self.domain {
            Domain::WholeLine => lam,
            Domain::HalfLine => (x.clamp(x0, x1) / x0).ln() / (x1 / x0).ln(),
        };
        a * (b / a).powf(w)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.cell(x) {
            Some(i) => self.eval_piece(i, x),
            None => 0.0,
        }
    }

    /// Value at `x` of the piece whose open cell contains `inside`.
    pub fn eval_near(&self, x: f64, inside: f64) -> f64 {
        match self.cell(inside) {
            Some(i) => self.eval_piece(i, x),
            None => 0.0,
        }
    }

    pub fn cell_integral(&self, i: usize) -> f64 {
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        let (a, b) = (self.values[i], self.values[i + 1]);
        match self.domain {
            Domain::WholeLine => geometric_cell(x1 - x0, a, b),
            Domain::HalfLine if x0 == 0.0 => 0.5 * (a + b) * x1,
            Domain::HalfLine => geometric_cell((x1 / x0).ln(), a * x0, b * x1),
        }
    }

    pub fn integral(&self) -> f64 {
        (0..self.grid.len() - 1).map(|i| self.cell_integral(i)).sum()
    }

    /// Whether the integral is 1 within `tol`.
    pub fn is_probability(&self, tol: f64) -> bool {
        (self.integral() - 1.0).abs() <= tol
    }

    /// `(∫f, ∫x f, ∫x² f)` with each cell's mass placed at its midpoint.
    pub fn moments(&self) -> (f64, f64, f64) {
        let mut m = (0.0, 0.0, 0.0);
        for i in 0..self.grid.len() - 1 {
            let w = self.cell_integral(i);
            let c = 0.5 * (self.grid[i] + self.grid[i + 1]);
            m.0 += w;
            m.1 += w * c;
            m.2 += w * c * c;
        }
        m
    }

    pub fn mean(&self) -> f64 {
        let (m0, m1, _) = self.moments();
        m1 / m0
    }

    pub fn std_dev(&self) -> f64 {
        let (m0, m1, m2) = self.moments();
        (m2 / m0 - (m1 / m0).powi(2)).max(0.0).sqrt()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            domain: self.domain,
            log_concave: self.log_concave,
        }
    }

    /// `f / ∫f`.
    pub fn normalized(&self) -> Result<Self> {
        let i = self.integral();
        if i <= 0.0 {
            return Err(GeomError::InvalidInput("zero integral".into()));
        }
        Ok(self.scaled(1.0 / i))
    }
}

pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// `n` log-spaced points on `[lo, hi]`, `lo > 0`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    uniform_grid(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_integral_is_exact() {
        let f = GridFn1D::uniform(-4.0, 4.0, 4097, Domain::WholeLine, |x| {
            if x.abs() <= 1.0 { 1.0 } else { 0.0 }
        })
        .unwrap();
        assert!((f.integral() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn exponential_integral_is_exact() {
        let f = GridFn1D::uniform(0.0, 2.0, 5, Domain::WholeLine, |x| (-3.0 * x).exp()).unwrap();
        let exact = (1.0 - (-6.0f64).exp()) / 3.0;
        assert!((f.integral() - exact).abs() < 1e-15);
        assert!(f.check_log_concave(1e-12));
    }

    #[test]
    fn half_line_power_law_cells() {
        // H(u) = u^{-2} is a single power law, so any grid is exact
        let h = GridFn1D::from_fn(vec![1.0, 1.5, 4.0], Domain::HalfLine, |u| u.powi(-2)).unwrap();
        assert!((h.integral() - 0.75).abs() < 1e-15);
        assert!((h.eval(2.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridFn1D::new(vec![0.0, 0.0], vec![1.0, 1.0], Domain::WholeLine).is_err());
        assert!(GridFn1D::new(vec![-1.0, 1.0], vec![1.0, 1.0], Domain::HalfLine).is_err());
        assert!(GridFn1D::new(vec![0.0, 1.0], vec![1.0, -1.0], Domain::WholeLine).is_err());
    }

    #[test]
    fn log_concavity_detects_gaps() {
        let f = GridFn1D::new(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 0.0, 1.0, 1.0], Domain::WholeLine).unwrap();
        assert!(!f.check_log_concave(1e-9));
        let g = GridFn1D::new(vec![0.0, 1.0, 2.0], vec![1.0, 0.5, 1.0], Domain::WholeLine).unwrap();
        assert!(!g.check_log_concave(1e-9));
    }
}
