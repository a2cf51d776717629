//! One-dimensional Prékopa–Leindler machinery: minimal midpoint functions,
//! deficits, stability fits and the `ω(ε)` error law.

mod grid_fn;
mod io;
mod stability;
mod supconv;

pub use grid_fn::{log_grid, uniform_grid, Domain, GridFn1D};
pub use io::{read_function, write_function};
pub use stability::{
    joint_stability_distance, l1_distance, stability_distance, stability_distance_tied, FitMode, JointFit,
    StabilityFit,
};
pub use supconv::{exp_substitution, log_substitution, sup_convolution_midpoint, Mean};

use crate::error::{GeomError, Result};

/// `ω(ε) = ε^{1/3} |ln ε|^{4/3}`, with `ω(0) = 0`.
pub fn omega(eps: f64) -> Result<f64> {
    if eps < 0.0 || eps.is_nan() {
        return Err(GeomError::InvalidArgument(format!("omega needs eps >= 0, got {eps}")));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    Ok(eps.cbrt() * eps.ln().abs().powf(4.0 / 3.0))
}

/// `∫m / sqrt(∫f ∫g) - 1`.
pub fn pl_deficit(f: &GridFn1D, g: &GridFn1D, m: &GridFn1D) -> Result<f64> {
    let (fi, gi, mi) = (f.integral(), g.integral(), m.integral());
    if fi <= 0.0 || gi <= 0.0 || mi <= 0.0 {
        return Err(GeomError::InvalidInput(format!(
            "integrals must be positive (f {fi:e}, g {gi:e}, m {mi:e})"
        )));
    }
    Ok(mi / (fi * gi).sqrt() - 1.0)
}

/// One instance of the midpoint inequality and its stability quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct PLReport {
    pub integral_f: f64,
    pub integral_g: f64,
    pub integral_m: f64,
    pub deficit: f64,
    /// `ω(max(ε, 0))`
    pub omega_bound: f64,
    pub a: f64,
    pub b: f64,
    pub l1_f: f64,
    pub l1_g: f64,
    /// `ω(ε) >= 1`, where the bound says nothing.
    pub vacuous: bool,
}

/// Report for `(f, g, m)`; `m` defaults to the minimal midpoint function.
pub fn pl_report(f: &GridFn1D, g: &GridFn1D, m: Option<&GridFn1D>, mean: Mean) -> Result<PLReport> {
    let owned;
    let m = match m {
        Some(m) => m,
        None => {
            owned = sup_convolution_midpoint(f, g, mean)?;
            &owned
        }
    };
    let deficit = pl_deficit(f, g, m)?;
    let omega_bound = omega(deficit.max(0.0))?;
    let mode = match mean {
        Mean::Arithmetic => FitMode::Shift,
        Mean::Geometric => FitMode::Scale,
    };
    let fit = joint_stability_distance(f, g, m, mode)?;
    Ok(PLReport {
        integral_f: f.integral(),
        integral_g: g.integral(),
        integral_m: m.integral(),
        deficit,
        omega_bound,
        a: fit.a,
        b: fit.b,
        l1_f: fit.l1_f,
        l1_g: fit.l1_g,
        vacuous: omega_bound >= 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_values() {
        let e3 = (-3.0f64).exp();
        assert!((omega(e3).unwrap() - (-1.0f64).exp() * 3f64.powf(4.0 / 3.0)).abs() < 1e-14);
        assert!((omega(e3).unwrap() - 1.5918).abs() < 1e-4);
        assert_eq!(omega(1.0).unwrap(), 0.0);
        assert_eq!(omega(0.0).unwrap(), 0.0);
        assert!(omega(-1e-3).is_err());
    }

    #[test]
    fn omega_increases_below_e_minus_4() {
        let lim = (-4.0f64).exp();
        let mut prev = 0.0;
        for k in 0..200 {
            let e = lim * (-0.1 * (199 - k) as f64).exp();
            let w = omega(e).unwrap();
            assert!(w > prev);
            prev = w;
        }
    }

    #[test]
    fn indicator_pair_deficit() {
        let ind = |lo: f64, hi: f64| move |x: f64| if x >= lo - 1e-12 && x <= hi + 1e-12 { 1.0 } else { 0.0 };
        let f = GridFn1D::uniform(-4.0, 4.0, 4097, Domain::WholeLine, ind(-1.0, 1.0)).unwrap();
        let g = GridFn1D::uniform(-4.0, 4.0, 4097, Domain::WholeLine, ind(-2.0, 2.0)).unwrap();
        let m = sup_convolution_midpoint(&f, &g, Mean::Arithmetic).unwrap();
        let eps = pl_deficit(&f, &g, &m).unwrap();
        assert!((eps - (3.0 / (2.0 * 2f64.sqrt()) - 1.0)).abs() < 1e-12, "{eps}");
    }

    #[test]
    fn zero_integral_is_an_error() {
        let z = GridFn1D::uniform(-1.0, 1.0, 5, Domain::WholeLine, |_| 0.0).unwrap();
        let f = GridFn1D::uniform(-1.0, 1.0, 5, Domain::WholeLine, |_| 1.0).unwrap();
        assert!(matches!(pl_deficit(&z, &f, &f), Err(GeomError::InvalidInput(_))));
    }
}
