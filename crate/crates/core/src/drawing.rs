//! The `Drawing` container and its JSON and SVG forms.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::geometry::{parse_rational, rational_to_string, Point, Rational};
use crate::topology::{EdgeClass, NodeRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedVertex {
    pub node: NodeRef,
    pub pos: Point,
    /// 1-indexed ring (block) number.
    pub ring: u64,
    /// Column within the block, 1..=4.
    pub sector: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnEdge {
    pub u: NodeRef,
    pub v: NodeRef,
    pub class: EdgeClass,
    /// Starts at the position of `u` and ends at the position of `v`.
    pub polyline: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Drawing {
    pub r: u32,
    pub vertices: Vec<PlacedVertex>,
    pub edges: Vec<DrawnEdge>,
}

#[derive(Debug, thiserror::Error)]
pub enum DrawingFormatError {
    #[error("JSON syntax error at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("field {field}: {msg}")]
    Field { field: String, msg: String },
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    level: u32,
    row: u64,
    x: String,
    y: String,
    ring: u64,
    sector: u8,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: [u64; 2],
    v: [u64; 2],
    class: String,
    polyline: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DrawingJson {
    r: u32,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

fn class_from_label(r: u32, label: &str, u: NodeRef, v: NodeRef) -> Option<EdgeClass> {
    match label {
        "RE" => Some(if u.row == v.row {
            EdgeClass::StraightRing
        } else {
            EdgeClass::CrossRing(u.level.min(v.level).min(1))
        }),
        "Iwrap" => Some(EdgeClass::WrapInner),
        _ => {
            let i: u32 = label.strip_prefix('I')?.parse().ok()?;
            (2..r.saturating_sub(1))
                .contains(&i)
                .then_some(EdgeClass::Inner(i))
        }
    }
}

impl Drawing {
    pub fn position_map(&self) -> HashMap<NodeRef, &Point> {
        self.vertices.iter().map(|v| (v.node, &v.pos)).collect()
    }

    pub fn segment_count(&self) -> usize {
        self.edges
            .iter()
            .map(|e| e.polyline.len().saturating_sub(1))
            .sum()
    }

    pub fn to_json(&self) -> String {
        let doc = DrawingJson {
            r: self.r,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    level: v.node.level,
                    row: v.node.row,
                    x: rational_to_string(&v.pos.x),
                    y: rational_to_string(&v.pos.y),
                    ring: v.ring,
                    sector: v.sector,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    u: [e.u.level as u64, e.u.row],
                    v: [e.v.level as u64, e.v.row],
                    class: e.class.label(),
                    polyline: e
                        .polyline
                        .iter()
                        .map(|p| [rational_to_string(&p.x), rational_to_string(&p.y)])
                        .collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("drawing serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Drawing, DrawingFormatError> {
        let value: Value = serde_json::from_str(text).map_err(|e| DrawingFormatError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        let doc: DrawingJson =
            serde_json::from_value(value).map_err(|e| DrawingFormatError::Field {
                field: "document".into(),
                msg: e.to_string(),
            })?;
        let field = |name: String, msg: String| DrawingFormatError::Field { field: name, msg };
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for (k, v) in doc.vertices.iter().enumerate() {
            let x = parse_rational(&v.x).map_err(|m| field(format!("vertices[{k}].x"), m))?;
            let y = parse_rational(&v.y).map_err(|m| field(format!("vertices[{k}].y"), m))?;
            vertices.push(PlacedVertex {
                node: NodeRef::new(v.level, v.row),
                pos: Point::new(x, y),
                ring: v.ring,
                sector: v.sector,
            });
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (k, e) in doc.edges.iter().enumerate() {
            let u = NodeRef::new(e.u[0] as u32, e.u[1]);
            let v = NodeRef::new(e.v[0] as u32, e.v[1]);
            let class = class_from_label(doc.r, &e.class, u, v).ok_or_else(|| {
                field(
                    format!("edges[{k}].class"),
                    format!("unknown class {:?}", e.class),
                )
            })?;
            let mut polyline = Vec::with_capacity(e.polyline.len());
            for (j, [x, y]) in e.polyline.iter().enumerate() {
                let x =
                    parse_rational(x).map_err(|m| field(format!("edges[{k}].polyline[{j}]"), m))?;
                let y =
                    parse_rational(y).map_err(|m| field(format!("edges[{k}].polyline[{j}]"), m))?;
                polyline.push(Point::new(x, y));
            }
            if polyline.len() < 2 {
                return Err(field(
                    format!("edges[{k}].polyline"),
                    "needs at least two points".into(),
                ));
            }
            edges.push(DrawnEdge {
                u,
                v,
                class,
                polyline,
            });
        }
        Ok(Drawing {
            r: doc.r,
            vertices,
            edges,
        })
    }

    /// Float rendering for viewing only.
    pub fn to_svg(&self) -> String {
        let f = |q: &Rational| q.to_f64().unwrap_or(0.0);
        let pts = self
            .vertices
            .iter()
            .map(|v| &v.pos)
            .chain(self.edges.iter().flat_map(|e| &e.polyline));
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            let (x, y) = (f(&p.x), f(&p.y));
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let size = 1200.0;
        let s = size / (x1 - x0).max(y1 - y0).max(1e-9);
        let margin = 20.0;
        let tx = |x: f64| margin + (x - x0) * s;
        let ty = |y: f64| margin + (y1 - y) * s;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n",
            w = (x1 - x0) * s + 2.0 * margin,
            h = (y1 - y0) * s + 2.0 * margin
        );
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        for e in &self.edges {
            let color = match e.class {
                EdgeClass::StraightRing | EdgeClass::CrossRing(_) => "#222222",
                EdgeClass::Inner(_) => "#1f77b4",
                EdgeClass::WrapInner => "#d62728",
            };
            let points: Vec<String> = e
                .polyline
                .iter()
                .map(|p| format!("{:.2},{:.2}", tx(f(&p.x)), ty(f(&p.y))))
                .collect();
            out.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\"><title>{}-{} {}</title></polyline>\n",
                points.join(" "),
                e.u,
                e.v,
                e.class.label()
            ));
        }
        for v in &self.vertices {
            out.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"black\"><title>{}</title></circle>\n",
                tx(f(&v.pos.x)),
                ty(f(&v.pos.y)),
                v.node
            ));
        }
        out.push_str("</svg>\n");
        out
    }
}
