//! SVG and DOT drawings. Heights follow moment labels; surfaces are drawn
//! as wide ellipses and isolated points as dots.

use std::fmt::Write;

use dh_measure::PiecewiseLinearDensity;
use graph_core::rational::approx;
use graph_core::{DecoratedGraph, VertexId};
use toric_geometry::DelzantPolygon;

const H: f64 = 400.0;
const M: f64 = 40.0;

fn svg_open(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    )
}

/// Columns: extrema in the middle, each chain of stored edges in its own column.
fn columns(g: &DecoratedGraph) -> Vec<(VertexId, usize)> {
    let mut interior: Vec<&graph_core::Vertex> = g.interior().collect();
    interior.sort_by(|a, b| (&a.moment, &a.id).cmp(&(&b.moment, &b.id)));
    let mut out: Vec<(VertexId, usize)> = Vec::new();
    let mut next = 0;
    for v in interior {
        let below = g.down_edges(&v.id).map(|e| e.a.clone()).find(|a| !g.is_extremal(a));
        let col = match below.and_then(|a| out.iter().find(|(id, _)| *id == a).map(|x| x.1)) {
            Some(c) => c,
            None => {
                next += 1;
                next
            }
        };
        out.push((v.id.clone(), col));
    }
    out
}

pub fn graph_svg(g: &DecoratedGraph) -> String {
    let (lo, hi) = match (g.min_vertex(), g.max_vertex()) {
        (Some(a), Some(b)) => (approx(&a.moment), approx(&b.moment)),
        _ => (0.0, 1.0),
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let cols = columns(g);
    let ncols = cols.iter().map(|c| c.1).max().unwrap_or(0);
    let width = 2.0 * M + 120.0 * (ncols as f64 + 1.0);
    let centre = width / 2.0;
    let x_of = |id: &VertexId| match cols.iter().find(|(v, _)| v == id) {
        Some((_, c)) => {
            let side = if c % 2 == 1 { -1.0 } else { 1.0 };
            centre + side * 120.0 * ((*c as f64 + 1.0) / 2.0).floor()
        }
        None => centre,
    };
    let y_of = |id: &VertexId| M + (hi - approx(g.moment(id).expect("vertex"))) / span * H;
    let mut s = svg_open(width, H + 2.0 * M);
    for e in g.edges() {
        let (x1, y1, x2, y2) = (x_of(&e.a), y_of(&e.a), x_of(&e.b), y_of(&e.b));
        let _ = writeln!(s, "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\"/>");
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
            (x1 + x2) / 2.0 + 4.0,
            (y1 + y2) / 2.0,
            e.weight
        );
    }
    for v in g.vertices() {
        let (x, y) = (x_of(&v.id), y_of(&v.id));
        match (v.area(), v.genus()) {
            (Some(a), Some(gen)) => {
                let _ = writeln!(s, "  <ellipse cx=\"{x:.2}\" cy=\"{y:.2}\" rx=\"50\" ry=\"7\" fill=\"black\"/>");
                let _ = writeln!(
                    s,
                    "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{a}, g={gen}</text>",
                    x + 56.0,
                    y + 4.0
                );
            }
            _ => {
                let _ = writeln!(s, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"/>");
            }
        }
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            x - 8.0,
            y - 6.0,
            v.moment
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn graph_dot(g: &DecoratedGraph) -> String {
    let mut s = String::from("graph G {\n  rankdir=BT;\n");
    for v in g.vertices() {
        let label = match (v.area(), v.genus()) {
            (Some(a), Some(gen)) => format!("{}\\ny={}\\narea={a}, g={gen}", v.id, v.moment),
            _ => format!("{}\\ny={}", v.id, v.moment),
        };
        let shape = if v.is_surface() { "ellipse" } else { "circle" };
        let _ = writeln!(s, "  \"{}\" [label=\"{label}\", shape={shape}];", v.id);
    }
    for e in g.edges() {
        let _ = writeln!(s, "  \"{}\" -- \"{}\" [label=\"{}\"];", e.a, e.b, e.weight);
    }
    s.push_str("}\n");
    s
}

/// Lattice points of the bounding box as dots, the polygon as a path.
pub fn polygon_svg(p: &DelzantPolygon) -> String {
    let xs: Vec<f64> = p.vertices().iter().map(|v| approx(&v.0)).collect();
    let ys: Vec<f64> = p.vertices().iter().map(|v| approx(&v.1)).collect();
    let (x0, x1) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min).floor(),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil(),
    );
    let (y0, y1) = (
        ys.iter().cloned().fold(f64::INFINITY, f64::min).floor(),
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil(),
    );
    let unit = 40.0;
    let px = |x: f64| M + (x - x0) * unit;
    let py = |y: f64| M + (y1 - y) * unit;
    let mut s = svg_open(2.0 * M + (x1 - x0) * unit, 2.0 * M + (y1 - y0) * unit);
    let (mut y, mut x);
    y = y0;
    while y <= y1 {
        x = x0;
        while x <= x1 {
            let _ = writeln!(s, "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"gray\"/>", px(x), py(y));
            x += 1.0;
        }
        y += 1.0;
    }
    let pts: Vec<String> = xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
    let _ = writeln!(s, "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>", pts.join(" "));
    s.push_str("</svg>\n");
    s
}

/// The density as a polyline with a tick at every breakpoint.
pub fn density_svg(rho: &PiecewiseLinearDensity) -> String {
    let ys: Vec<f64> = rho.breakpoints().iter().map(approx).collect();
    let vs: Vec<f64> = rho.values().iter().map(approx).collect();
    let (lo, hi) = (ys.first().cloned().unwrap_or(0.0), ys.last().cloned().unwrap_or(1.0));
    let top = vs.iter().cloned().fold(0.0, f64::max).max(1e-9);
    let w = 500.0;
    let span = if hi > lo { hi - lo } else { 1.0 };
    let px = |y: f64| M + (y - lo) / span * w;
    let py = |v: f64| M + (1.0 - v / top) * H;
    let mut s = svg_open(w + 2.0 * M, H + 2.0 * M + 20.0);
    let _ = writeln!(
        s,
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
        M,
        py(0.0),
        M + w,
        py(0.0)
    );
    for (y, r) in ys.iter().zip(rho.breakpoints()) {
        let _ = writeln!(
            s,
            "  <line x1=\"{0:.2}\" y1=\"{1:.2}\" x2=\"{0:.2}\" y2=\"{2:.2}\" stroke=\"black\"/>",
            px(*y),
            py(0.0),
            py(0.0) + 6.0
        );
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{r}</text>",
            px(*y),
            py(0.0) + 20.0
        );
    }
    let mut pts = vec![format!("{:.2},{:.2}", px(lo), py(0.0))];
    pts.extend(ys.iter().zip(&vs).map(|(y, v)| format!("{:.2},{:.2}", px(*y), py(*v))));
    pts.push(format!("{:.2},{:.2}", px(hi), py(0.0)));
    let _ = writeln!(s, "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>", pts.join(" "));
    s.push_str("</svg>\n");
    s
}
