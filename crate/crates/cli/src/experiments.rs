//! Parameter scans. Grid points run in parallel with seed `seed + index`;
//! rows come back in grid order.

use rayon::prelude::*;

use stabgeo::families;
use stabgeo::pl1d::{omega, Domain, GridFn1D};
use stabgeo::pln::{minimal_midpoint_stack, pl_trace, LevelStack};
use stabgeo::polarity::{bm_distance_to_ball, bs_deficit, cap_cut_body};
use stabgeo::{pl_report, BodyRef, GeomError, Mean, RevolutionBody};

use crate::config::{Experiment, ExperimentConfig, Family};
use crate::fit::{fit_exponent, FitResult};
use crate::{num, CliError, Table};

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub table: Table,
    pub fit: Option<FitResult>,
    /// why no fit was made
    pub fit_note: Option<String>,
    pub max_ratio: Option<f64>,
    pub warnings: Vec<String>,
}

impl ScanOutput {
    pub fn summary(&self) -> Vec<String> {
        let mut out = Vec::new();
        match (&self.fit, &self.fit_note) {
            (Some(f), _) => out.push(format!(
                "slope={} intercept={} r2={} points={}",
                f.slope,
                f.intercept,
                f.r_squared,
                f.points.len()
            )),
            (None, Some(n)) => out.push(format!("no fit: {n}")),
            (None, None) => {}
        }
        if let Some(r) = self.max_ratio {
            out.push(format!("max_ratio={r}"));
        }
        out
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<ScanOutput, CliError> {
    match cfg.experiment {
        Experiment::CapScan => run_cap_scan(cfg),
        Experiment::BsScan => run_bs_scan(cfg),
        Experiment::PlScan | Experiment::PlnScan => run_pl_scan(cfg),
    }
}

fn fit_or_note(points: Vec<(f64, f64)>) -> (Option<FitResult>, Option<String>) {
    match fit_exponent(&points) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

fn max_finite(values: impl Iterator<Item = f64>) -> Option<f64> {
    values.filter(|v| v.is_finite()).fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

/// Rows `eps_cap,bs_deficit,delta_bm`; fits `ln δ_BM` against `ln ε`
/// over rows whose deficit exceeds the cutoff.
pub fn run_cap_scan(cfg: &ExperimentConfig) -> Result<ScanOutput, CliError> {
    let rows = cfg
        .grid
        .par_iter()
        .map(|&eps| {
            let body = cap_cut_body(cfg.dim, eps, cfg.samples)?;
            let deficit = bs_deficit(&BodyRef::from(body.clone()))?.bs_deficit;
            let delta = bm_distance_to_ball(&body)?;
            log::debug!("cap {eps:e}: deficit {deficit:e}, delta {delta:e}");
            Ok([eps, deficit, delta])
        })
        .collect::<Result<Vec<_>, GeomError>>()?;
    let (fit, fit_note) = fit_or_note(
        rows.iter()
            .filter(|r| r[1] > cfg.cutoff)
            .map(|r| (r[1], r[2]))
            .collect(),
    );
    Ok(ScanOutput {
        table: Table::new(&["eps_cap", "bs_deficit", "delta_bm"], rows.iter().map(|r| r.map(num).to_vec())),
        fit,
        fit_note,
        max_ratio: None,
        warnings: Vec::new(),
    })
}

/// Ball first, then `count - 1` random even revolution bodies. Reports the
/// largest `δ_BM / ε^{2/(3(n+1))}` over rows above the cutoff.
pub fn run_bs_scan(cfg: &ExperimentConfig) -> Result<ScanOutput, CliError> {
    let rows = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let body = if i == 0 {
                RevolutionBody::ball(cfg.dim, 1.0, cfg.samples)?
            } else {
                let mut rng = families::rng(cfg.seed.wrapping_add(i as u64));
                families::revolution_body(&mut rng, cfg.dim, cfg.samples)?
            };
            let deficit = bs_deficit(&BodyRef::from(body.clone()))?.bs_deficit;
            Ok([deficit, bm_distance_to_ball(&body)?])
        })
        .collect::<Result<Vec<_>, GeomError>>()?;
    let power = 2.0 / (3.0 * (cfg.dim as f64 + 1.0));
    let max_ratio = max_finite(rows.iter().filter(|r| r[0] > cfg.cutoff).map(|r| r[1] / r[0].powf(power)));
    let warnings = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r[0] < -1e-6)
        .map(|(i, r)| format!("row {i}: negative deficit {:e}", r[0]))
        .collect();
    Ok(ScanOutput {
        table: Table::new(&["bs_deficit", "delta_bm"], rows.iter().map(|r| r.map(num).to_vec())),
        fit: None,
        fit_note: None,
        max_ratio,
        warnings,
    })
}

fn gaussian(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

const REACH: f64 = 9.0;

/// Returns `(eps, l1, failed checks)` for one grid value.
fn pl_point(cfg: &ExperimentConfig, delta: f64) -> Result<(f64, f64, Vec<&'static str>), GeomError> {
    match cfg.experiment {
        Experiment::PlnScan => {
            let f = LevelStack::gaussian(cfg.dim, cfg.levels, cfg.samples)?.normalized()?;
            let g = f.dilated_axis(1.0 + delta).normalized()?;
            let m = minimal_midpoint_stack(&f, &g, cfg.r_samples)?;
            let rep = pl_trace(&f, &g, &m)?;
            Ok((rep.eps, rep.l1_fg, rep.failed_checks(1e-9)))
        }
        _ => {
            let reach = REACH + delta.abs();
            let g = GridFn1D::uniform(-reach, reach, cfg.points, Domain::WholeLine, gaussian)?.with_log_concave(1e-9)?;
            let f = match cfg.family {
                Family::Shift => GridFn1D::uniform(-reach, reach, cfg.points, Domain::WholeLine, |x| gaussian(x - delta))?
                    .with_log_concave(1e-9)?,
                Family::Asymmetric => {
                    GridFn1D::uniform(-reach, reach, cfg.points, Domain::WholeLine, |x| {
                        gaussian(x) * (1.0 + delta * x.signum() * f64::from(x != 0.0))
                    })?
                    .normalized()?
                }
            };
            let rep = pl_report(&f, &g, None, Mean::Arithmetic)?;
            Ok((rep.deficit, rep.l1_f.max(rep.l1_g), Vec::new()))
        }
    }
}

/// Rows `delta,eps,l1,omega,ratio` with `ratio = l1/ω(ε)`, or `l1/√ω(ε)`
/// for the level-stack scan; fits `ln l1` against `ln ε`.
pub fn run_pl_scan(cfg: &ExperimentConfig) -> Result<ScanOutput, CliError> {
    let pln = cfg.experiment == Experiment::PlnScan;
    let results = cfg
        .grid
        .par_iter()
        .map(|&d| pl_point(cfg, d).map(|r| (d, r)))
        .collect::<Result<Vec<_>, GeomError>>()?;
    let mut rows = Vec::with_capacity(results.len());
    let mut warnings = Vec::new();
    for (d, (eps, l1, failed)) in results {
        let w = if eps > 0.0 { omega(eps)? } else { f64::NAN };
        let ratio = if pln { l1 / w.sqrt() } else { l1 / w };
        if !failed.is_empty() {
            warnings.push(format!("delta {d}: failed checks {}", failed.join(",")));
        }
        rows.push([d, eps, l1, w, ratio]);
    }
    let (fit, fit_note) = fit_or_note(
        rows.iter()
            .filter(|r| r[1] > cfg.cutoff && r[2] > 0.0)
            .map(|r| (r[1], r[2]))
            .collect(),
    );
    Ok(ScanOutput {
        table: Table::new(&["delta", "eps", "l1", "omega", "ratio"], rows.iter().map(|r| r.map(num).to_vec())),
        fit,
        fit_note,
        max_ratio: max_finite(rows.iter().map(|r| r[4])),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Settings;

    fn cfg(text: &str, e: Experiment) -> ExperimentConfig {
        ExperimentConfig::from_settings(&Settings::parse(text).unwrap(), e).unwrap()
    }

    #[test]
    fn shift_family_is_recovered() {
        let c = cfg("grid=0.5,1.5\nfamily=shift", Experiment::PlScan);
        let out = run_pl_scan(&c).unwrap();
        assert_eq!(out.table.rows.len(), 2);
        for r in &out.table.rows {
            let eps: f64 = r[1].parse().unwrap();
            let l1: f64 = r[2].parse().unwrap();
            assert!(eps.abs() < 1e-5 && l1 < 1e-5, "{r:?}");
        }
    }

    #[test]
    fn asymmetric_family_grows() {
        let c = cfg("grid=0.1,0.3,0.6\npoints=513", Experiment::PlScan);
        let out = run_pl_scan(&c).unwrap();
        let eps: Vec<f64> = out.table.rows.iter().map(|r| r[1].parse().unwrap()).collect();
        assert!(eps[0] > 0.0 && eps[0] < eps[1] && eps[1] < eps[2], "{eps:?}");
        assert!(out.table.rows.iter().all(|r| r[4].parse::<f64>().unwrap().is_finite()));
    }

    #[test]
    fn bs_scan_starts_with_the_ball() {
        let c = cfg("count=4\nsamples=513\ndim=3", Experiment::BsScan);
        let out = run_bs_scan(&c).unwrap();
        assert_eq!(out.table.rows.len(), 4);
        let ball: Vec<f64> = out.table.rows[0].iter().map(|v| v.parse().unwrap()).collect();
        assert!(ball[0].abs() < 1e-4 && ball[1] < 1e-4, "{ball:?}");
    }
}
