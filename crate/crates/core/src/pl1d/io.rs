//! Function files: CSV with header `x,value`.

use std::path::Path;

use super::{Domain, GridFn1D};
use crate::bodies::io::{read_pairs, write_pairs};
use crate::error::Result;

pub fn read_function(path: &Path, domain: Domain) -> Result<GridFn1D> {
    let rows = read_pairs(path, ["x", "value"])?;
    let (x, v) = rows.into_iter().unzip();
    GridFn1D::new(x, v, domain)
}

pub fn write_function(path: &Path, f: &GridFn1D) -> Result<()> {
    write_pairs(path, ["x", "value"], f.grid().iter().copied().zip(f.values().iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        let f = GridFn1D::uniform(-3.0, 3.0, 41, Domain::WholeLine, |x| (-x * x).exp()).unwrap();
        write_function(&p, &f).unwrap();
        let r = read_function(&p, Domain::WholeLine).unwrap();
        assert_eq!(r.grid(), f.grid());
        assert_eq!(r.values(), f.values());
    }
}
