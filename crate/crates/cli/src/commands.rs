//! Single-instance reports.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use stabgeo::bodies::io::{read_polygon, read_profile};
use stabgeo::pl1d::read_function;
use stabgeo::pln::{minimal_midpoint_stack, read_stack, DEFAULT_R_SAMPLES};
use stabgeo::{bs_deficit, fmp_bound_check, pl_report, pl_trace, BodyRef, Domain, GeomError, Mean};

use crate::config::Settings;
use crate::{num, CliError, Table};

fn input<T>(r: Result<T, GeomError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Config(e.to_string()))
}

/// Reads a body file. Without an explicit kind the header decides:
/// `x,y` is a polygon, `t,phi` a profile (which needs `dim`).
pub fn load_body(path: &Path, kind: Option<&str>, dim: Option<usize>) -> Result<BodyRef, CliError> {
    let kind = match kind {
        Some(k) => k.to_string(),
        None => {
            let f = File::open(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let mut header = String::new();
            BufReader::new(f)
                .read_line(&mut header)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let cols: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
            match cols.iter().map(String::as_str).collect::<Vec<_>>()[..] {
                ["x", "y"] => "polygon".into(),
                ["t", "phi"] => "profile".into(),
                _ => return Err(CliError::Config(format!("{}: unrecognized header `{}`", path.display(), header.trim()))),
            }
        }
    };
    match kind.as_str() {
        "polygon" => Ok(input(read_polygon(path))?.into()),
        "profile" => {
            let dim = dim.ok_or_else(|| CliError::Config("a profile body needs `dim`".into()))?;
            if dim < 2 {
                return Err(CliError::Config(format!("dim = {dim} < 2")));
            }
            Ok(input(read_profile(path, dim))?.into())
        }
        k => Err(CliError::Config(format!("unknown body kind `{k}`"))),
    }
}

pub const SANTALO_KEYS: &[&str] = &["body", "kind", "dim", "output"];

pub fn santalo(s: &Settings) -> Result<Table, CliError> {
    s.check_keys(SANTALO_KEYS)?;
    let body = load_body(Path::new(s.require("body")?), s.get("kind"), s.parsed("dim")?)?;
    let r = bs_deficit(&body)?;
    let zx = r.point.first().copied().unwrap_or(0.0);
    let zy = r.point.get(1).copied().unwrap_or(0.0);
    Ok(Table::new(
        &["zx", "zy", "volume", "polar_volume", "product", "deficit"],
        [[zx, zy, r.volume, r.polar_volume, r.volume_product, r.bs_deficit].map(num).to_vec()],
    ))
}

pub const PL1D_KEYS: &[&str] = &["f", "g", "m", "mode", "output"];

pub fn pl1d(s: &Settings) -> Result<Table, CliError> {
    s.check_keys(PL1D_KEYS)?;
    let (mean, domain) = match s.get("mode").unwrap_or("arith") {
        "arith" => (Mean::Arithmetic, Domain::WholeLine),
        "geom" => (Mean::Geometric, Domain::HalfLine),
        m => return Err(CliError::Config(format!("unknown mode `{m}`"))),
    };
    let read = |k: &str| -> Result<_, CliError> { input(read_function(Path::new(s.require(k)?), domain)) };
    let f = read("f")?;
    let g = read("g")?;
    let m = s.get("m").map(|_| read("m")).transpose()?;
    let r = pl_report(&f, &g, m.as_ref(), mean)?;
    let mut row = [r.deficit, r.omega_bound, r.a, r.b, r.l1_f, r.l1_g].map(num).to_vec();
    row.push(r.vacuous.to_string());
    Ok(Table::new(&["eps", "omega", "a", "b", "l1_f", "l1_g", "vacuous"], [row]))
}

pub const FMP_KEYS: &[&str] = &["k", "c", "kind", "dim", "output"];

pub fn fmp(s: &Settings) -> Result<Table, CliError> {
    s.check_keys(FMP_KEYS)?;
    let dim = s.parsed("dim")?;
    let k = load_body(Path::new(s.require("k")?), s.get("kind"), dim)?;
    let c = load_body(Path::new(s.require("c")?), s.get("kind"), dim)?;
    let r = fmp_bound_check(&k, &c)?;
    Ok(Table::new(
        &["sigma", "A", "gamma_star", "lhs_add", "rhs_add", "lhs_prod", "rhs_prod", "eta"],
        [[r.sigma, r.a, r.gamma_star, r.lhs_additive, r.rhs_additive, r.lhs_product, r.rhs_product, r.eta]
            .map(num)
            .to_vec()],
    ))
}

pub const PLN_KEYS: &[&str] = &["f", "g", "m", "r_samples", "output"];

/// Summary table and per-level table.
pub fn pln(s: &Settings) -> Result<(Table, Table), CliError> {
    s.check_keys(PLN_KEYS)?;
    let read = |k: &str| -> Result<_, CliError> { input(read_stack(Path::new(s.require(k)?))) };
    let f = read("f")?;
    let g = read("g")?;
    let r_samples = s.parsed_or("r_samples", DEFAULT_R_SAMPLES)?;
    if r_samples < 8 {
        return Err(CliError::Config(format!("r_samples = {r_samples} < 8")));
    }
    let m = match s.get("m") {
        Some(_) => read("m")?,
        None => minimal_midpoint_stack(&f, &g, r_samples)?,
    };
    let r = pl_trace(&f, &g, &m)?;
    let mut row = vec![r.dim.to_string()];
    row.extend([r.eps, r.omega, r.b].map(num));
    row.push(r.swapped.to_string());
    row.extend(
        [
            r.b_gap,
            r.l1_fg,
            r.l1_fm,
            r.l1_gm,
            r.l1_tilde,
            r.j_mass,
            r.j_mass_bound,
            r.j_tilde_gap,
            r.j_tilde_bound,
            r.ratio_deviation,
            r.eta_mass,
            r.intersection_margin,
            r.ratio_fg(),
        ]
        .map(num),
    );
    row.push(r.vacuous().to_string());
    row.push(r.failed_checks(1e-9).join(";"));
    let summary = Table::new(
        &[
            "dim",
            "eps",
            "omega",
            "b",
            "swapped",
            "b_gap",
            "l1_fg",
            "l1_fm",
            "l1_gm",
            "l1_tilde",
            "j_mass",
            "j_mass_bound",
            "j_tilde_gap",
            "j_tilde_bound",
            "ratio_deviation",
            "eta_mass",
            "intersection_margin",
            "ratio_fg",
            "vacuous",
            "failed_checks",
        ],
        [row],
    );
    let levels = Table::new(
        &["t", "alpha", "beta", "sigma", "eta", "in_I"],
        (0..r.levels.len()).map(|j| {
            let mut row = [r.levels[j], r.alpha[j], r.beta[j], r.sigma[j], r.eta[j]].map(num).to_vec();
            row.push(r.i_mask[j].to_string());
            row
        }),
    );
    Ok((summary, levels))
}
