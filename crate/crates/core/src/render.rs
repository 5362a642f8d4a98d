//! Standalone SVG drawings of geometric graphs.
//!
//! Element classes are stable so tests can count them: `edge`, `point`,
//! `cone`, `witness`, `label`.

use std::fmt::Write as _;

use crate::error::Result;
use crate::geometry::Point2;
use crate::graph::DirectedGeomGraph;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Output width in pixels; height follows the aspect ratio.
    pub width: f64,
    /// Draw the `k` cone boundary rays at every vertex.
    pub cones: bool,
    /// Cone ray length as a fraction of the drawing's larger extent.
    pub cone_ray_fraction: f64,
    /// Vertex sequence to highlight.
    pub witness: Option<Vec<usize>>,
    /// Print point labels next to labelled points.
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: 800.0,
            cones: false,
            cone_ray_fraction: 0.08,
            witness: None,
            labels: true,
        }
    }
}

const MARGIN: f64 = 24.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
    span: f64,
}

impl Frame {
    fn fit(points: &[Point2], width: f64) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0, 0.0, 0.0, 0.0);
        if let Some(p) = points.first() {
            (min_x, max_x, min_y, max_y) = (p.x, p.x, p.y, p.y);
        }
        for p in points {
            min_x = f64::min(min_x, p.x);
            max_x = f64::max(max_x, p.x);
            min_y = f64::min(min_y, p.y);
            max_y = f64::max(max_y, p.y);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
        let scale = if max_x - min_x > 0.0 || max_y - min_y > 0.0 {
            (width - 2.0 * MARGIN) / span
        } else {
            1.0
        };
        let height = ((max_y - min_y) * scale + 2.0 * MARGIN).max(2.0 * MARGIN);
        Self {
            min_x,
            max_y,
            scale,
            width,
            height,
            span,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min_x) * self.scale,
            MARGIN + (self.max_y - p.y) * self.scale,
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Render `g` as an SVG document. Edges are drawn once per unordered pair.
pub fn render_svg(g: &DirectedGeomGraph, opts: &RenderOptions) -> Result<String> {
    let points = g.points();
    let frame = Frame::fit(points, opts.width);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#,
        w = frame.width,
        h = frame.height
    );
    if points.is_empty() {
        out.push_str("</svg>\n");
        return Ok(out);
    }

    if opts.cones {
        let cones = g.params().cones()?;
        let len = opts.cone_ray_fraction * frame.span;
        for &p in points {
            let (x1, y1) = frame.map(p);
            for i in 1..=cones.k() {
                let (x2, y2) = frame.map(p.polar_offset(len, cones.start_ray(i)));
                let _ = writeln!(
                    out,
                    r##"<line class="cone" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#bbbbbb" stroke-width="0.6"/>"##
                );
            }
        }
    }

    for (i, j) in g.undirected_edge_set() {
        let (x1, y1) = frame.map(points[i]);
        let (x2, y2) = frame.map(points[j]);
        let _ = writeln!(
            out,
            r##"<line class="edge" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#333333" stroke-width="1"/>"##
        );
    }

    if let Some(path) = opts.witness.as_ref().filter(|p| p.len() >= 2) {
        let mut coords = Vec::with_capacity(path.len());
        for &v in path {
            let p = g.point_set().points().get(v).copied().ok_or(
                crate::error::Error::IndexOutOfRange {
                    index: v,
                    len: points.len(),
                },
            )?;
            let (x, y) = frame.map(p);
            coords.push(format!("{x:.2},{y:.2}"));
        }
        let _ = writeln!(
            out,
            r##"<polyline class="witness" points="{}" fill="none" stroke="#d62728" stroke-width="2.5"/>"##,
            coords.join(" ")
        );
    }

    for &p in points {
        let (x, y) = frame.map(p);
        let _ = writeln!(
            out,
            r##"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="3" fill="#000000"/>"##
        );
    }

    if opts.labels {
        for (&i, label) in g.point_set().labels() {
            let (x, y) = frame.map(points[i]);
            let _ = writeln!(
                out,
                r#"<text class="label" x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"#,
                x + 5.0,
                y - 5.0,
                escape(label)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_yao, PointSet};

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn empty_graph_has_no_elements() {
        let g = build_yao(&PointSet::new(vec![]).unwrap(), 5, 0.0).unwrap();
        let svg = render_svg(&g, &RenderOptions::default()).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches('<').count(), 2);
    }

    #[test]
    fn counts_match_graph() {
        let ps = PointSet::with_labels(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(2.0, 1.0),
                Point2::new(1.0, 3.0),
            ],
            [(0, "a<b".to_string())].into(),
        )
        .unwrap();
        let g = build_yao(&ps, 5, 0.0).unwrap();
        let opts = RenderOptions {
            cones: true,
            witness: Some(vec![0, 1, 2]),
            ..Default::default()
        };
        let svg = render_svg(&g, &opts).unwrap();
        assert_eq!(count(&svg, "point"), 3);
        assert_eq!(count(&svg, "cone"), 15);
        assert_eq!(count(&svg, "edge"), g.undirected_edge_set().len());
        assert_eq!(count(&svg, "witness"), 1);
        assert!(svg.contains("a&lt;b"));
    }

    #[test]
    fn single_point_is_finite() {
        let g = build_yao(&PointSet::new(vec![Point2::new(5.0, 5.0)]).unwrap(), 5, 0.0).unwrap();
        let svg = render_svg(&g, &RenderOptions::default()).unwrap();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        assert_eq!(count(&svg, "point"), 1);
    }

    #[test]
    fn bad_witness_index() {
        let ps = PointSet::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]).unwrap();
        let g = build_yao(&ps, 5, 0.0).unwrap();
        let opts = RenderOptions {
            witness: Some(vec![0, 7]),
            ..Default::default()
        };
        assert!(render_svg(&g, &opts).is_err());
    }
}
