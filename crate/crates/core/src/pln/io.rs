//! Stack files: a header `dim=N levels=K`, then one line
//! `t=<height> profile=<csv path>` per level. Relative profile paths are
//! resolved against the stack file's directory.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::LevelStack;
use crate::bodies::io::{read_profile, write_profile};
use crate::error::{GeomError, Result};

fn fields<'a>(line: &'a str, keys: &[&str], path: &Path, lineno: usize) -> Result<Vec<&'a str>> {
    let mut out = vec![None; keys.len()];
    for tok in line.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| GeomError::Parse(format!("{}:{lineno}: expected key=value, got `{tok}`", path.display())))?;
        match keys.iter().position(|&x| x == k) {
            Some(i) => out[i] = Some(v),
            None => return Err(GeomError::Parse(format!("{}:{lineno}: unknown key `{k}`", path.display()))),
        }
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| GeomError::Parse(format!("{}:{lineno}: missing `{k}`", path.display()))))
        .collect()
}

fn number<T: std::str::FromStr>(s: &str, what: &str, path: &Path, lineno: usize) -> Result<T> {
    s.parse()
        .map_err(|_| GeomError::Parse(format!("{}:{lineno}: bad {what} `{s}`", path.display())))
}

pub fn read_stack(path: &Path) -> Result<LevelStack> {
    let text = fs::read_to_string(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| GeomError::Parse(format!("{}: empty stack file", path.display())))?;
    let h = fields(header, &["dim", "levels"], path, hl)?;
    let dim: usize = number(h[0], "dim", path, hl)?;
    let count: usize = number(h[1], "levels", path, hl)?;
    let mut levels = Vec::with_capacity(count);
    let mut bodies = Vec::with_capacity(count);
    for (ln, line) in lines {
        let f = fields(line, &["t", "profile"], path, ln)?;
        levels.push(number::<f64>(f[0], "height", path, ln)?);
        let p = PathBuf::from(f[1]);
        let p = if p.is_absolute() { p } else { base.join(p) };
        bodies.push(read_profile(&p, dim)?);
    }
    if levels.len() != count {
        return Err(GeomError::Parse(format!(
            "{}: header announces {count} levels, found {}",
            path.display(),
            levels.len()
        )));
    }
    LevelStack::new(dim, levels, bodies)
}

/// Writes the stack file and one profile CSV per level next to it, named
/// `<stem>_<k>.csv`.
pub fn write_stack(path: &Path, stack: &LevelStack) -> Result<()> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| GeomError::InvalidArgument(format!("bad stack path {}", path.display())))?;
    let mut out = format!("dim={} levels={}\n", stack.dim(), stack.len());
    for (k, (t, body)) in stack.levels().iter().zip(stack.bodies()).enumerate() {
        let name = format!("{stem}_{k}.csv");
        write_profile(&dir.join(&name), body)?;
        writeln!(out, "t={t:.17e} profile={name}").expect("writing to a string");
    }
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let s = LevelStack::gaussian(3, 8, 65).unwrap();
        let p = dir.path().join("g.stack");
        write_stack(&p, &s).unwrap();
        let r = read_stack(&p).unwrap();
        assert_eq!(r.levels(), s.levels());
        for (a, b) in r.bodies().iter().zip(s.bodies()) {
            assert_eq!(a.profile(), b.profile());
        }
    }

    #[test]
    fn header_count_is_checked() {
        let dir = tempfile::tempdir().unwrap();
        let s = LevelStack::gaussian(3, 2, 33).unwrap();
        let p = dir.path().join("g.stack");
        write_stack(&p, &s).unwrap();
        let text = fs::read_to_string(&p).unwrap().replace("levels=2", "levels=3");
        fs::write(&p, text).unwrap();
        assert!(matches!(read_stack(&p), Err(GeomError::Parse(_))));
    }
}
