//! Upper-half-plane SVG rendering: geodesic edges are semicircular arcs
//! (vertical rays for edges with an infinite endpoint), with dash styles
//! distinguishing the side-pairing types and a legend.

use anyhow::Result;

use fareymul::gamma0::tile::DecoratedTile;
use fareymul::{FareySymbol, IntervalLabel, Rational};

struct StyledEdge {
    a: Option<f64>,
    b: Option<f64>,
    dash: Option<&'static str>,
    width: f64,
}

const FREE_STYLE: (Option<&str>, f64) = (None, 2.5);
const EVEN_STYLE: (Option<&str>, f64) = (Some("12,6"), 1.5);
const ODD_STYLE: (Option<&str>, f64) = (Some("3,4"), 1.5);
const PLAIN_STYLE: (Option<&str>, f64) = (Some("1,0"), 1.0);

fn coord(r: &Rational) -> Option<f64> {
    if r.is_infinite() {
        None
    } else {
        Some(r.to_f64())
    }
}

fn styled(a: &Rational, b: &Rational, style: (Option<&'static str>, f64)) -> StyledEdge {
    StyledEdge { a: coord(a), b: coord(b), dash: style.0, width: style.1 }
}

fn render(edges: &[StyledEdge], title: &str, legend: &[(&str, (Option<&str>, f64))]) -> String {
    let feet: Vec<f64> = edges.iter().flat_map(|e| [e.a, e.b]).flatten().collect();
    let xmin = feet.iter().cloned().fold(f64::INFINITY, f64::min).min(0.0);
    let xmax = feet.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(1.0);
    let span = (xmax - xmin).max(1e-6);
    let max_radius = edges
        .iter()
        .filter_map(|e| Some((e.b? - e.a?).abs() / 2.0))
        .fold(0.0f64, f64::max)
        .max(span / 4.0);

    let width = 800.0;
    let margin = 40.0;
    let scale = (width - 2.0 * margin) / span;
    let top = margin;
    let base = top + max_radius * scale + 20.0;
    let height = base + margin;
    let mx = |x: f64| margin + (x - xmin) * scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{h}\" viewBox=\"0 0 {width} {h}\">\n",
        h = height + 20.0 * (legend.len() as f64 + 1.0),
    ));
    out.push_str(&format!(
        "  <title>{title}</title>\n  <line x1=\"{}\" y1=\"{base}\" x2=\"{}\" y2=\"{base}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n",
        mx(xmin), mx(xmax)
    ));
    for e in edges {
        let dash_attr = e
            .dash
            .map(|d| format!(" stroke-dasharray=\"{d}\""))
            .unwrap_or_default();
        let common = format!("stroke=\"black\" fill=\"none\" stroke-width=\"{}\"{dash_attr}", e.width);
        match (e.a, e.b) {
            (Some(a), Some(b)) => {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let r = (hi - lo) / 2.0 * scale;
                out.push_str(&format!(
                    "  <path d=\"M {} {base} A {r} {r} 0 0 1 {} {base}\" {common}/>\n",
                    mx(lo), mx(hi)
                ));
            }
            (Some(a), None) | (None, Some(a)) => {
                out.push_str(&format!(
                    "  <line x1=\"{x}\" y1=\"{base}\" x2=\"{x}\" y2=\"{top}\" {common}/>\n",
                    x = mx(a)
                ));
            }
            (None, None) => {}
        }
    }
    for (i, (name, (dash, w))) in legend.iter().enumerate() {
        let y = height + 20.0 * (i as f64 + 1.0);
        let dash_attr = dash
            .map(|d| format!(" stroke-dasharray=\"{d}\""))
            .unwrap_or_default();
        out.push_str(&format!(
            "  <line x1=\"{margin}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"{w}\"{dash_attr}/>\n",
            margin + 60.0
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"sans-serif\">{name}</text>\n",
            margin + 70.0,
            y + 4.0
        ));
    }
    out.push_str("</svg>");
    out
}

pub fn render_symbol(symbol: &FareySymbol) -> Result<String> {
    let vertices = symbol.vertices();
    let edges: Vec<StyledEdge> = symbol
        .labels()
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let style = match label {
                IntervalLabel::Free(_) => FREE_STYLE,
                IntervalLabel::Even => EVEN_STYLE,
                IntervalLabel::Odd => ODD_STYLE,
            };
            styled(&vertices[i], &vertices[i + 1], style)
        })
        .collect();
    Ok(render(
        &edges,
        &format!("fundamental domain boundary, level {}", symbol.n()),
        &[
            ("free pairing", FREE_STYLE),
            ("even pairing", EVEN_STYLE),
            ("odd pairing", ODD_STYLE),
        ],
    ))
}

pub fn render_tile(tile: &DecoratedTile) -> Result<String> {
    let mut edges: Vec<StyledEdge> = tile
        .edges
        .iter()
        .map(|(a, b)| styled(a, b, PLAIN_STYLE))
        .collect();
    let vertices = tile.symbol.vertices();
    for (i, label) in tile.symbol.labels().iter().enumerate() {
        let style = match label {
            IntervalLabel::Free(_) => FREE_STYLE,
            IntervalLabel::Even => EVEN_STYLE,
            IntervalLabel::Odd => ODD_STYLE,
        };
        edges.push(styled(&vertices[i], &vertices[i + 1], style));
    }
    Ok(render(
        &edges,
        &format!("decorated tile at scale 1/{} for level {}", tile.d, tile.n),
        &[
            ("tile edge", PLAIN_STYLE),
            ("free pairing", FREE_STYLE),
            ("even pairing", EVEN_STYLE),
            ("odd pairing", ODD_STYLE),
        ],
    ))
}
