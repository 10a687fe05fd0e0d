//! Filtration and point-cloud text formats.
//!
//! A filtration file has an optional `# axis=<sublevel|superlevel-negated|scale>`
//! comment followed by one `id,dim,entrance,face_ids...` row per cell, in
//! reduction order. Point clouds are CSV with one point per row.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::filtered::{Cell, FilteredComplex, TimeAxis};
use super::point_cloud::{Metric, PointCloud};
use crate::error::{Error, Result};
use crate::Scalar;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn axis_name(axis: TimeAxis) -> &'static str {
    match axis {
        TimeAxis::Sublevel => "sublevel",
        TimeAxis::SuperlevelNegated => "superlevel-negated",
        TimeAxis::Scale => "scale",
    }
}

pub fn write_filtration<S: Scalar, W: Write>(fc: &FilteredComplex<S>, mut w: W) -> Result<()> {
    writeln!(w, "# axis={}", axis_name(fc.time_axis()))?;
    for i in fc.reduction_order() {
        let c = &fc.cells()[i];
        write!(w, "{},{},{:.16e}", c.id, c.dim, fc.entrance()[i].as_f64())?;
        for f in &c.boundary {
            write!(w, ",{f}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Reads a filtration. Ids are renumbered in file order; every face must be
/// listed before its cofaces. Vertex lists are rebuilt from the faces.
pub fn read_filtration<S: Scalar, R: BufRead>(r: R) -> Result<FilteredComplex<S>> {
    let mut axis = TimeAxis::Sublevel;
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    let mut cells: Vec<Cell> = Vec::new();
    let mut entrance = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            if let Some(name) = rest.trim().strip_prefix("axis=") {
                axis = match name.trim() {
                    "sublevel" => TimeAxis::Sublevel,
                    "superlevel-negated" => TimeAxis::SuperlevelNegated,
                    "scale" => TimeAxis::Scale,
                    other => return Err(parse_err(lineno, format!("unknown axis `{other}`"))),
                };
            }
            continue;
        }
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() < 3 {
            return Err(parse_err(lineno, "expected id,dim,entrance[,faces]"));
        }
        let id: usize = parts[0].parse().map_err(|_| parse_err(lineno, "bad id"))?;
        let dim: usize = parts[1].parse().map_err(|_| parse_err(lineno, "bad dim"))?;
        let e: f64 = parts[2].parse().map_err(|_| parse_err(lineno, "bad entrance"))?;
        let mut boundary = Vec::with_capacity(parts.len() - 3);
        for p in &parts[3..] {
            let f: usize = p.parse().map_err(|_| parse_err(lineno, format!("bad face id `{p}`")))?;
            let &g = renumber
                .get(&f)
                .ok_or_else(|| parse_err(lineno, format!("face {f} not listed before cell {id}")))?;
            boundary.push(g);
        }
        let new_id = cells.len();
        if renumber.insert(id, new_id).is_some() {
            return Err(parse_err(lineno, format!("duplicate id {id}")));
        }
        let vertices = if dim == 0 {
            vec![new_id]
        } else {
            let mut vs: Vec<usize> = boundary.iter().flat_map(|&f| cells[f].vertices.iter().copied()).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        };
        cells.push(Cell { id: new_id, dim, boundary, vertices });
        entrance.push(S::of(e));
    }
    FilteredComplex::new(cells, entrance, axis)
}

pub fn read_point_cloud<S: Scalar, R: BufRead>(r: R, metric: Metric) -> Result<PointCloud<S>> {
    let mut points = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let p = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map(S::of)
                    .map_err(|_| parse_err(i + 1, format!("bad coordinate `{x}`")))
            })
            .collect::<Result<Vec<S>>>()?;
        points.push(p);
    }
    PointCloud::new(points, metric)
}

pub fn write_point_cloud<S: Scalar, W: Write>(cloud: &PointCloud<S>, mut w: W) -> Result<()> {
    for p in cloud.points() {
        let row: Vec<String> = p.iter().map(|x| format!("{:.16e}", x.as_f64())).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
