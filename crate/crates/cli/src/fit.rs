//! Least-squares power laws on log-log data.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("invalid data: {0}")]
    InvalidData(String),
}

/// `ln y = slope · ln x + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(ln x, ln y)`
    pub points: Vec<(f64, f64)>,
}

pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitResult, FitError> {
    if points.len() < 3 {
        return Err(FitError::InvalidData(format!("need at least 3 points, got {}", points.len())));
    }
    let logs = points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
                Ok((x.ln(), y.ln()))
            } else {
                Err(FitError::InvalidData(format!("point {i} = ({x:e}, {y:e}) is not positive and finite")))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &logs {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Err(FitError::InvalidData("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(FitResult { slope, intercept: my - slope * mx, r_squared, points: logs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square() {
        let pts: Vec<_> = (1..=5).map(|i| (i as f64, (i * i) as f64)).collect();
        let f = fit_exponent(&pts).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(f.points.len(), 5);
    }

    #[test]
    fn exact_root_with_intercept() {
        let pts: Vec<_> = [0.1, 0.5, 2.0, 7.0, 30.0].iter().map(|&x: &f64| (x, 3.0 * x.sqrt())).collect();
        let f = fit_exponent(&pts).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(fit_exponent(&[(1.0, 1.0)]), Err(FitError::InvalidData(_))));
        let err = fit_exponent(&[(1.0, 1.0), (2.0, -1.0), (3.0, 2.0)]).unwrap_err();
        assert!(err.to_string().contains("point 1"), "{err}");
        assert!(fit_exponent(&[(2.0, 1.0), (2.0, 3.0), (2.0, 2.0)]).is_err());
    }

    #[test]
    fn noisy_r_squared_in_range() {
        let pts = [(1.0, 2.0), (2.0, 1.0), (3.0, 5.0), (4.0, 2.5)];
        let f = fit_exponent(&pts).unwrap();
        assert!((0.0..=1.0).contains(&f.r_squared));
    }
}
