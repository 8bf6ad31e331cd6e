//! SVG rendering of geometric witness documents. Exact values are
//! converted to floating point here and nowhere else.

use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::document::{Payload, WitnessDocument};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::scalar::{rational, QuadScalar};

const CANVAS: f64 = 640.0;
const MAX_CELLS: i64 = 160;

const BACKGROUND: [&str; 8] = [
    "#e8e8e8", "#c9daf8", "#fce5cd", "#d9ead3", "#f4cccc", "#fff2cc", "#d9d2e9", "#d0e0e3",
];

const STROKES: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

/// Axis-aligned drawing area in world coordinates.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(Error::invalid(format!(
                "bad window [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        Ok(Window { x_min, x_max, y_min, y_max })
    }

    fn around(points: &[[f64; 2]]) -> Self {
        let fold = |f: fn(f64, f64) -> f64, i: usize, init: f64| {
            points.iter().map(|p| p[i]).fold(init, f)
        };
        let (x0, x1) = (fold(f64::min, 0, f64::INFINITY), fold(f64::max, 0, f64::NEG_INFINITY));
        let (y0, y1) = (fold(f64::min, 1, f64::INFINITY), fold(f64::max, 1, f64::NEG_INFINITY));
        let pad = 0.1 * (x1 - x0).max(y1 - y0) + 0.5;
        Window {
            x_min: x0 - pad,
            x_max: x1 + pad,
            y_min: y0 - pad,
            y_max: y1 + pad,
        }
    }
}

/// `x0,x1,y0,y1`.
impl std::str::FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::invalid(format!("bad window `{s}`, expected x0,x1,y0,y1")))?;
        match v.as_slice() {
            &[a, b, c, d] => Window::new(a, b, c, d),
            _ => Err(Error::invalid(format!("bad window `{s}`, expected x0,x1,y0,y1"))),
        }
    }
}

fn copies(doc: &WitnessDocument) -> Result<(usize, Vec<Vec<Point>>)> {
    let out: Vec<Vec<Point>> = match &doc.result {
        Payload::Threshold(_) => {
            return Err(Error::invalid("threshold results have no geometry to draw"))
        }
        Payload::Witness { grid, witness } => {
            let dim = grid.dim();
            let pts = witness
                .iter()
                .map(|w| w.points.iter().map(|p| Point::from_ints(p)).collect())
                .collect();
            return Ok((dim, pts));
        }
        Payload::Family(f) => f.members.iter().map(|m| m.points.clone()).collect(),
        Payload::Multifamily(m) => m
            .families
            .iter()
            .flat_map(|f| f.family.members.iter().map(|m| m.points.clone()))
            .collect(),
    };
    let dim = out.first().and_then(|c| c.first()).map_or(0, Point::dim);
    Ok((dim, out))
}

fn plane(p: &Point) -> [f64; 2] {
    let c = p.to_f64s();
    [c[0], c.get(1).copied().unwrap_or(0.0)]
}

/// Standalone SVG: the document's coloring sampled on cells of the window,
/// with one connected, separately stroked marker set per copy.
pub fn render_svg(doc: &WitnessDocument, window: Option<Window>) -> Result<String> {
    let (dim, members) = copies(doc)?;
    if members.is_empty() {
        return Err(Error::EmptyPayload);
    }
    if dim > 2 {
        return Err(Error::invalid(format!("cannot draw {dim}-dimensional copies")));
    }
    let coords: Vec<Vec<[f64; 2]>> = members.iter().map(|m| m.iter().map(plane).collect()).collect();
    let w = window.unwrap_or_else(|| Window::around(&coords.concat()));
    let unit = CANVAS / (w.x_max - w.x_min).max(w.y_max - w.y_min);
    let width = (w.x_max - w.x_min) * unit;
    let height = (w.y_max - w.y_min) * unit;
    let sx = |x: f64| (x - w.x_min) * unit;
    let sy = |y: f64| (w.y_max - y) * unit;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="yes"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{width:.2}" height="{height:.2}" fill="white"/>"#);

    let coloring = match &doc.result {
        Payload::Witness { grid, .. } => Coloring::tile(grid.clone()).ok(),
        _ => doc.coloring().ok().flatten(),
    };
    if let Some(chi) = coloring {
        let _ = writeln!(svg, r#"<g class="background">"#);
        background(&mut svg, &chi, dim, &w, unit);
        let _ = writeln!(svg, "</g>");
    }

    let radius = (unit * 0.08).clamp(2.0, 6.0);
    for (i, pts) in coords.iter().enumerate() {
        let stroke = stroke_color(i);
        let mut path: Vec<String> = pts.iter().map(|p| format!("{:.3},{:.3}", sx(p[0]), sy(p[1]))).collect();
        if pts.len() > 2 {
            path.push(path[0].clone());
        }
        let _ = writeln!(svg, r#"<g class="member" id="member-{i}">"#);
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="2"/>"#,
            path.join(" ")
        );
        for p in pts {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.3}" cy="{:.3}" r="{radius:.2}" fill="{stroke}"/>"#,
                sx(p[0]),
                sy(p[1])
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn stroke_color(i: usize) -> String {
    match STROKES.get(i) {
        Some(c) => c.to_string(),
        None => format!("hsl({:.1},70%,40%)", (i as f64 * 137.507_764) % 360.0),
    }
}

/// Cells of integer side `step`; each is colored by the value at its
/// center, or at its lower corner when the coloring is lattice-only.
fn background(svg: &mut String, chi: &Coloring, dim: usize, w: &Window, unit: f64) {
    let span = (w.x_max - w.x_min).max(w.y_max - w.y_min);
    let step = ((span / MAX_CELLS as f64).ceil() as i64).max(1);
    let cells = |lo: f64, hi: f64| {
        let a = (lo / step as f64).floor() as i64;
        let b = (hi / step as f64).ceil() as i64;
        (a..b).map(move |i| i * step)
    };
    let rows: Vec<i64> = if dim == 1 { vec![0] } else { cells(w.y_min, w.y_max).collect() };
    for y in rows {
        for x in cells(w.x_min, w.x_max) {
            let corner: Vec<i64> = if dim == 1 { vec![x] } else { vec![x, y] };
            let center: Vec<QuadScalar> = corner
                .iter()
                .map(|&c| QuadScalar::from_rational(rational(2 * c + step, 2)))
                .collect();
            let color = Point::new(center)
                .and_then(|p| chi.color(&p))
                .or_else(|_| chi.color_of_ints(&corner));
            let Ok(color) = color else { continue };
            let fill = BACKGROUND[color as usize % BACKGROUND.len()];
            let (top, h) = if dim == 1 {
                (0.5, 1.0)
            } else {
                ((y + step) as f64, step as f64)
            };
            let _ = writeln!(
                svg,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
                (x as f64 - w.x_min) * unit,
                (w.y_max - top) * unit,
                step as f64 * unit,
                h * unit
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disjointness::{build_family, FamilyBudget, FamilyMode};
    use crate::document::InputEcho;
    use crate::coloring::ColoringSpec;
    use crate::geometry::PointSet;
    use std::collections::HashSet;

    fn family_doc(set: &str, coloring: &str, k: usize) -> WitnessDocument {
        let set = PointSet::parse(set).unwrap();
        let spec = ColoringSpec::new(coloring, None);
        let chi = spec.build().unwrap();
        let fam = build_family(&chi, &set, k, &QuadScalar::one(), FamilyMode::Direct, FamilyBudget::default()).unwrap();
        let input = InputEcho {
            command: "family".into(),
            set: Some(set),
            coloring: Some(spec),
            ..InputEcho::default()
        };
        WitnessDocument::new(input, Payload::Family(fam), Some(&chi)).unwrap()
    }

    fn strokes(svg: &str) -> HashSet<&str> {
        svg.lines()
            .filter(|l| l.starts_with("<polyline"))
            .filter_map(|l| l.split("stroke=\"").nth(1)?.split('"').next())
            .collect()
    }

    #[test]
    fn counting_contracts() {
        let svg = render_svg(&family_doc("0; 1", "0", 1), None).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        let svg = render_svg(&family_doc("0,0; 1,0; 0,1", "(floor(x)+floor(y)) mod 2", 3), None).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9);
        assert_eq!(strokes(&svg).len(), 3);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_and_threshold_payloads() {
        let mut doc = family_doc("0; 1", "0", 1);
        if let Payload::Family(f) = &mut doc.result {
            f.members.clear();
        }
        assert_eq!(render_svg(&doc, None), Err(Error::EmptyPayload));
        let set = PointSet::parse("0; 1").unwrap();
        doc.result = Payload::Threshold(
            crate::lattice::gallai_number(&set, 1, 3, Default::default()).unwrap(),
        );
        assert!(matches!(render_svg(&doc, None), Err(Error::Invalid(_))));
    }

    #[test]
    fn many_members_get_distinct_strokes() {
        let svg = render_svg(&family_doc("0,0; 1,0; 0,1", "0", 14), None).unwrap();
        assert_eq!(strokes(&svg).len(), 14);
        let w: Window = "-1,3,-1,3".parse().unwrap();
        assert!(render_svg(&family_doc("0; 1", "0", 1), Some(w)).is_ok());
        assert!("1,0,0,1".parse::<Window>().is_err());
    }
}
