//! Diagram CSV and SVG renderings of barcodes and diagrams.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use super::barcode::Barcode;
use super::diagram::{DiagramPoint, PersistenceDiagram};
use crate::complex::TimeAxis;
use crate::error::{Error, Result};
use crate::Scalar;

fn fmt_num(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

/// Writes `degree,birth,death,essential` rows.
pub fn write_diagram_csv<'a, S: Scalar, W: Write>(
    points: impl IntoIterator<Item = &'a DiagramPoint<S>>,
    mut w: W,
) -> Result<()> {
    writeln!(w, "degree,birth,death,essential")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{}",
            p.degree,
            fmt_num(p.birth.as_f64()),
            fmt_num(p.death.as_f64()),
            p.essential
        )?;
    }
    Ok(())
}

pub fn read_diagram_csv<S: Scalar, R: BufRead>(r: R) -> Result<Vec<DiagramPoint<S>>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if i == 0 || t.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != 4 {
            return Err(err("expected degree,birth,death,essential"));
        }
        let num = |s: &str| -> Result<S> {
            s.trim().parse::<f64>().map(S::of).map_err(|_| err("bad number"))
        };
        out.push(DiagramPoint {
            degree: parts[0].trim().parse().map_err(|_| err("bad degree"))?,
            birth: num(parts[1])?,
            death: num(parts[2])?,
            essential: parts[3].trim().parse().map_err(|_| err("bad essential flag"))?,
        });
    }
    Ok(out)
}

const PANEL_W: f64 = 600.0;
const MARGIN: f64 = 40.0;
const ROW_H: f64 = 3.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// One horizontal segment per positive-length bar, one panel per degree.
/// Essential bars run to `end`; superlevel barcodes are drawn in field
/// levels with the level axis decreasing to the right.
pub fn barcode_svg<S: Scalar>(bc: &Barcode<S>, end: S) -> String {
    let neg = bc.time_axis() == TimeAxis::SuperlevelNegated;
    let bars: Vec<_> = bc.nonzero().collect();
    let t0 = bars.iter().map(|b| b.birth.as_f64()).fold(f64::INFINITY, f64::min);
    let t1 = end.as_f64().max(t0 + 1e-12);
    let x = |t: f64| MARGIN + (t.min(t1) - t0) / (t1 - t0) * PANEL_W;
    let mut body = String::new();
    let mut y = MARGIN;
    for k in 0..=bc.max_dim() {
        let mut in_k: Vec<_> = bars.iter().filter(|b| b.degree == k).collect();
        in_k.sort_by(|a, b| crate::scalar::cmp(&a.birth, &b.birth));
        let _ = writeln!(body, r#"<text x="4" y="{:.1}" font-size="12">H{k}</text>"#, y + 10.0);
        let color = COLORS[k % COLORS.len()];
        for b in &in_k {
            y += ROW_H;
            let _ = writeln!(
                body,
                r#"<line x1="{:.2}" y1="{y:.1}" x2="{:.2}" y2="{y:.1}" stroke="{color}" stroke-width="2"/>"#,
                x(b.birth.as_f64()),
                x(b.death.as_f64())
            );
        }
        y += 20.0;
        let _ = writeln!(body, r#"<line x1="{MARGIN}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="gray"/>"#, MARGIN + PANEL_W);
        y += 10.0;
    }
    let (l0, l1) = if neg { (-t0, -t1) } else { (t0, t1) };
    let _ = writeln!(body, r#"<text x="{MARGIN}" y="{:.1}" font-size="12">{l0:.3}</text>"#, y + 12.0);
    let _ = writeln!(
        body,
        r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end">{l1:.3}</text>"#,
        MARGIN + PANEL_W,
        y + 12.0
    );
    let h = y + 2.0 * MARGIN;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{h:.0}\">\n{body}</svg>\n",
        PANEL_W + 2.0 * MARGIN
    )
}

/// Scatter of finite diagram points with the diagonal.
pub fn diagram_svg<S: Scalar>(d: &PersistenceDiagram<S>) -> String {
    let pts: Vec<_> = d.points.iter().filter(|p| !p.essential).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        for v in [p.birth.as_f64(), p.death.as_f64()] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    let hi = hi.max(lo + 1e-12);
    let size = 500.0;
    let sx = |v: f64| MARGIN + (v - lo) / (hi - lo) * size;
    let sy = |v: f64| MARGIN + size - (v - lo) / (hi - lo) * size;
    let mut body = String::new();
    let _ = writeln!(
        body,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="gray"/>"#,
        sx(lo),
        sy(lo),
        sx(hi),
        sy(hi)
    );
    for p in pts {
        let _ = writeln!(
            body,
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="{}" fill-opacity="0.5"/>"#,
            sx(p.birth.as_f64()),
            sy(p.death.as_f64()),
            COLORS[p.degree % COLORS.len()]
        );
    }
    let side = size + 2.0 * MARGIN;
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{side:.0}\" height=\"{side:.0}\">\n{body}</svg>\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::{diagram, Bar};

    #[test]
    fn csv_roundtrip_with_essential() {
        let bc = Barcode::new(
            vec![Bar::new(-2.0, f64::INFINITY, 0), Bar::new(-1.5, -0.25, 1)],
            TimeAxis::SuperlevelNegated,
            0.0,
        );
        let d = diagram(&bc);
        let mut buf = Vec::new();
        write_diagram_csv(&d.points, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("degree,birth,death,essential\n0,"));
        assert!(text.contains("-inf,true"));
        let back: Vec<DiagramPoint<f64>> = read_diagram_csv(buf.as_slice()).unwrap();
        assert_eq!(back, d.points);
    }

    #[test]
    fn svg_has_one_segment_per_bar() {
        let bc = Barcode::new(
            vec![Bar::new(0.0, 1.0, 0), Bar::new(0.5, 2.0, 0), Bar::new(1.0, f64::INFINITY, 1)],
            TimeAxis::Sublevel,
            2.0,
        );
        let svg = barcode_svg(&bc, 3.0);
        assert_eq!(svg.matches("stroke-width=\"2\"").count(), 3);
        assert!(diagram_svg(&diagram(&bc)).contains("<circle"));
    }
}
