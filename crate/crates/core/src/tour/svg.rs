use std::fmt::Write;

use crate::scalar::Scalar;
use crate::warehouse::{Vertex, WarehouseGraph};

use super::subgraph::TourSubgraph;

const SCALE: f64 = 8.0;
const MARGIN: f64 = 20.0;

/// Plain SVG drawing of the layout with the subgraph on top. Doubled edges
/// are drawn thicker; required cells are filled.
pub fn to_svg<T: Scalar>(graph: &WarehouseGraph<T>, sub: &TourSubgraph<T>, cells: &[(usize, usize)]) -> String {
    let layout = graph.layout();
    let pitch = layout.aisle_pitch.to_f64_lossy();
    let height = layout.cross_height(layout.top_cross()).to_f64_lossy();
    let pos = |v: usize| -> (f64, f64) {
        let (a, y) = match graph.vertex(v) {
            Vertex::Cross { aisle, cross } => (aisle, layout.cross_height(cross)),
            Vertex::Cell { aisle, cell } => (aisle, layout.cell_height(cell)),
        };
        (
            MARGIN + a as f64 * pitch * SCALE,
            MARGIN + (height - y.to_f64_lossy()) * SCALE,
        )
    };
    let w = 2.0 * MARGIN + (layout.num_aisles.saturating_sub(1)) as f64 * pitch * SCALE;
    let h = 2.0 * MARGIN + height * SCALE;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#);
    for e in graph.edges() {
        let ((x1, y1), (x2, y2)) = (pos(e.a), pos(e.b));
        let _ = writeln!(out, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#ddd"/>"##);
    }
    for (id, m) in sub.edges() {
        let e = graph.edge(id);
        let ((x1, y1), (x2, y2)) = (pos(e.a), pos(e.b));
        let width = if m == 2 { 4 } else { 2 };
        let _ = writeln!(
            out,
            r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#c33" stroke-width="{width}"/>"##
        );
    }
    for &(a, c) in cells {
        let (x, y) = pos(graph.cell_vertex(a, c));
        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="3" fill="#333"/>"##);
    }
    let (x, y) = pos(graph.depot());
    let _ = writeln!(out, r##"<rect x="{}" y="{}" width="8" height="8" fill="#36c"/>"##, x - 4.0, y - 4.0);
    out.push_str("</svg>\n");
    out
}
