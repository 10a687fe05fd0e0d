//! Field snapshot text format.
//!
//! ```text
//! dim,size_0,...,size_{dim-1},side,topology
//! value
//! value
//! ...
//! ```
//! Values are row-major, written with 17 significant digits.

use std::io::{BufRead, Write};

use super::grid::{GridField, GridSpec, Topology};
use crate::error::{Error, Result};
use crate::Scalar;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn write_snapshot<S: Scalar, W: Write>(field: &GridField<S>, mut w: W) -> Result<()> {
    let spec = field.spec();
    let mut header = spec.dim().to_string();
    for n in spec.sizes() {
        header.push_str(&format!(",{n}"));
    }
    header.push_str(&format!(",{:.16e},{}", spec.side().as_f64(), spec.topology().as_str()));
    writeln!(w, "{header}")?;
    for v in field.values() {
        writeln!(w, "{:.16e}", v.as_f64())?;
    }
    Ok(())
}

pub fn read_snapshot<S: Scalar, R: BufRead>(r: R) -> Result<GridField<S>> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty snapshot"))?;
    let header = header?;
    let parts: Vec<&str> = header.trim().split(',').collect();
    let dim: usize = parts
        .first()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(1, "bad dimension"))?;
    if parts.len() != dim + 3 {
        return Err(parse_err(1, format!("expected {} header fields, got {}", dim + 3, parts.len())));
    }
    let sizes = parts[1..=dim]
        .iter()
        .map(|s| s.parse::<usize>().map_err(|e| parse_err(1, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let side: f64 = parts[dim + 1].parse().map_err(|_| parse_err(1, "bad side length"))?;
    let topology = Topology::parse(parts[dim + 2])?;
    let spec = GridSpec::new(sizes, S::of(side), topology)?;
    let mut values = Vec::with_capacity(spec.len());
    for (i, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let v: f64 = t.parse().map_err(|_| parse_err(i + 1, format!("bad value `{t}`")))?;
        values.push(S::of(v));
    }
    GridField::new(spec, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{sample_field, CovarianceModel, RngSeed};

    #[test]
    fn roundtrip_is_exact() {
        let spec = GridSpec::<f64>::new(vec![7, 5], 1.0, Topology::Torus).unwrap();
        let m = CovarianceModel::squared_exponential(30.0).unwrap();
        let f = sample_field(&spec, &m, RngSeed(3)).unwrap();
        let mut buf = Vec::new();
        write_snapshot(&f, &mut buf).unwrap();
        let g: GridField<f64> = read_snapshot(buf.as_slice()).unwrap();
        assert_eq!(f, g);
        assert!(String::from_utf8(buf).unwrap().starts_with("2,7,5,"));
    }

    #[test]
    fn rejects_bad_header() {
        assert!(read_snapshot::<f64, _>("2,4,1.0,box\n".as_bytes()).is_err());
        assert!(read_snapshot::<f64, _>("1,3,1.0,sphere\n0\n0\n0\n".as_bytes()).is_err());
        assert!(read_snapshot::<f64, _>("1,3,1.0,box\n0\n0\n".as_bytes()).is_err());
    }
}
