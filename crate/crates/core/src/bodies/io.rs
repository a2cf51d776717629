//! CSV interchange: profiles as `t,phi`, polygons as `x,y`.

use std::path::Path;

use super::{ConvexPolygon, Point2, RevolutionBody};
use crate::error::{GeomError, Result};

pub(crate) fn read_pairs(path: &Path, cols: [&str; 2]) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 || headers[0].trim() != cols[0] || headers[1].trim() != cols[1] {
        return Err(GeomError::Parse(format!(
            "{}: expected header `{},{}`",
            path.display(),
            cols[0],
            cols[1]
        )));
    }
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parse = |k: usize| {
            rec.get(k)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| GeomError::Parse(format!("{}: bad value on row {}", path.display(), line + 2)))
        };
        out.push((parse(0)?, parse(1)?));
    }
    Ok(out)
}

pub(crate) fn write_pairs<I>(path: &Path, cols: [&str; 2], rows: I) -> Result<()>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(cols)?;
    for (a, b) in rows {
        w.write_record([format!("{a:.17e}"), format!("{b:.17e}")])?;
    }
    w.flush()?;
    Ok(())
}

/// Read a `t,phi` profile. Non-uniform grids are resampled linearly onto a
/// uniform grid with the same number of points.
pub fn read_profile(path: &Path, dim: usize) -> Result<RevolutionBody> {
    let rows = read_pairs(path, ["t", "phi"])?;
    profile_from_rows(&rows, dim)
}

pub fn profile_from_rows(rows: &[(f64, f64)], dim: usize) -> Result<RevolutionBody> {
    let n = rows.len();
    if n < 3 {
        return Err(GeomError::InvalidInput("profile needs at least 3 rows".into()));
    }
    if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(GeomError::InvalidInput("profile t values must be strictly increasing".into()));
    }
    let (lo, hi) = (rows[0].0, rows[n - 1].0);
    let alpha = 0.5 * (hi - lo);
    if (lo + hi).abs() > 1e-9 * alpha {
        return Err(GeomError::InvalidInput(format!("profile is not centered: t in [{lo}, {hi}]")));
    }
    let step = 2.0 * alpha / (n - 1) as f64;
    let uniform = rows
        .iter()
        .enumerate()
        .all(|(i, r)| (r.0 - (lo + step * i as f64)).abs() <= 1e-9 * alpha);
    let phi: Vec<f64> = if uniform {
        rows.iter().map(|r| r.1).collect()
    } else {
        let chain: Vec<[f64; 2]> = rows.iter().map(|r| [r.0, r.1]).collect();
        super::meridian::resample_uniform(&chain, n)
    };
    RevolutionBody::new(dim, alpha, phi)
}

pub fn write_profile(path: &Path, body: &RevolutionBody) -> Result<()> {
    write_pairs(
        path,
        ["t", "phi"],
        body.profile().iter().enumerate().map(|(i, &v)| (body.t(i), v)),
    )
}

pub fn read_polygon(path: &Path) -> Result<ConvexPolygon> {
    let rows = read_pairs(path, ["x", "y"])?;
    ConvexPolygon::new(rows.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

pub fn write_polygon(path: &Path, poly: &ConvexPolygon) -> Result<()> {
    write_pairs(path, ["x", "y"], poly.vertices().iter().map(|v| (v.x, v.y)))
}
