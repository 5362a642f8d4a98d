//! Reading and writing point files, graph files and reports.
//!
//! Points come as CSV (`x,y[,label]` with a header) or JSON (`[[x,y],...]`,
//! or an object with `points` and optional `labels`). Graphs are JSON only.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{NamedPointSet, Provenance};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{validate, DirectedGeomGraph, GraphParams, PointSet, Variant};
use crate::stretch::StretchReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFormat {
    Json,
    Csv,
}

impl PointFormat {
    /// By extension, falling back to sniffing the first non-blank byte.
    pub fn detect(path: &Path, contents: &str) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => PointFormat::Json,
            Some(e) if e.eq_ignore_ascii_case("csv") => PointFormat::Csv,
            _ => match contents.trim_start().chars().next() {
                Some('[') | Some('{') => PointFormat::Json,
                _ => PointFormat::Csv,
            },
        }
    }
}

#[derive(Deserialize)]
struct PointsObject {
    points: Vec<Point2>,
    #[serde(default)]
    labels: BTreeMap<usize, String>,
}

/// Parse a JSON point file.
pub fn parse_points_json(text: &str) -> Result<PointSet> {
    let value: Value = serde_json::from_str(text)?;
    let shape = |e: serde_json::Error| {
        Error::Input(format!(
            "expected [[x, y], ...] or {{\"points\": [...]}}: {e}"
        ))
    };
    if value.is_array() {
        PointSet::new(serde_json::from_value(value).map_err(shape)?)
    } else {
        let o: PointsObject = serde_json::from_value(value).map_err(shape)?;
        PointSet::with_labels(o.points, o.labels)
    }
}

/// Parse a CSV point file with header `x,y` and an optional `label` column.
pub fn parse_points_csv(text: &str) -> Result<PointSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    let has_label = match cols.as_slice() {
        ["x", "y"] => false,
        ["x", "y", "label"] => true,
        _ => {
            return Err(Error::Input(format!(
                "line 1: expected header `x,y` or `x,y,label`, got `{}`",
                cols.join(",")
            )))
        }
    };
    let mut points = Vec::new();
    let mut labels = BTreeMap::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != cols.len() {
            return Err(Error::Input(format!(
                "line {line}: expected {} fields, got {}",
                cols.len(),
                record.len()
            )));
        }
        let coord = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|_| Error::Input(format!("line {line}: `{}` is not a number", &record[i])))
        };
        let p = Point2::new(coord(0)?, coord(1)?);
        if !p.is_finite() {
            return Err(Error::Input(format!("line {line}: non-finite coordinate")));
        }
        if has_label && !record[2].is_empty() {
            labels.insert(points.len(), record[2].to_string());
        }
        points.push(p);
    }
    PointSet::with_labels(points, labels)
}

pub fn parse_points(text: &str, format: PointFormat) -> Result<PointSet> {
    match format {
        PointFormat::Json => parse_points_json(text),
        PointFormat::Csv => parse_points_csv(text),
    }
}

/// Read a point file, choosing the format from the extension or contents.
pub fn read_points(path: &Path) -> Result<PointSet> {
    let text = read_text(path)?;
    parse_points(&text, PointFormat::detect(path, &text))
}

/// `-` reads standard input.
fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

pub fn points_to_csv(ps: &PointSet) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let labelled = !ps.labels().is_empty();
    if labelled {
        w.write_record(["x", "y", "label"])?;
    } else {
        w.write_record(["x", "y"])?;
    }
    for (i, p) in ps.points().iter().enumerate() {
        let (x, y) = (p.x.to_string(), p.y.to_string());
        if labelled {
            w.write_record([x.as_str(), y.as_str(), ps.label(i).unwrap_or("")])?;
        } else {
            w.write_record([x, y])?;
        }
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize, Deserialize)]
struct NamedJson {
    name: String,
    provenance: Provenance,
    points: Vec<Point2>,
    labels: BTreeMap<usize, String>,
    metadata: BTreeMap<String, Value>,
}

pub fn named_to_json(s: &NamedPointSet) -> Value {
    serde_json::to_value(NamedJson {
        name: s.name.clone(),
        provenance: s.provenance,
        points: s.point_set.points().to_vec(),
        labels: s.point_set.labels().clone(),
        metadata: s.metadata.clone(),
    })
    .expect("named point set is serializable")
}

pub fn named_from_json(text: &str) -> Result<NamedPointSet> {
    let j: NamedJson = serde_json::from_str(text)?;
    Ok(NamedPointSet {
        name: j.name,
        provenance: j.provenance,
        point_set: PointSet::with_labels(j.points, j.labels)?,
        metadata: j.metadata,
    })
}

/// On-disk graph: edges are index pairs; lengths are recomputed on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub k: usize,
    pub variant: Variant,
    pub offset: f64,
    pub points: Vec<Point2>,
    #[serde(default)]
    pub labels: BTreeMap<usize, String>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&DirectedGeomGraph> for GraphFile {
    fn from(g: &DirectedGeomGraph) -> Self {
        let p = g.params();
        GraphFile {
            k: p.k,
            variant: p.variant,
            offset: p.offset,
            points: g.points().to_vec(),
            labels: g.point_set().labels().clone(),
            edges: g.edges().iter().map(|e| [e.src, e.dst]).collect(),
        }
    }
}

impl GraphFile {
    /// Rebuild the graph and check it against the cone rules of its
    /// declared `k` and variant.
    pub fn into_graph(self) -> Result<DirectedGeomGraph> {
        let ps = PointSet::with_labels(self.points, self.labels)?;
        let params = GraphParams {
            k: self.k,
            variant: self.variant,
            offset: self.offset,
            symmetric: false,
        };
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = DirectedGeomGraph::from_edge_pairs(ps, params, &pairs)?;
        let violations = validate(&g);
        if let Some(v) = violations.first() {
            return Err(Error::Input(format!(
                "graph file is inconsistent ({} problem(s)), first: {v}",
                violations.len()
            )));
        }
        Ok(g)
    }
}

pub fn graph_to_json(g: &DirectedGeomGraph) -> Value {
    serde_json::to_value(GraphFile::from(g)).expect("graph is serializable")
}

pub fn graph_from_json(text: &str) -> Result<DirectedGeomGraph> {
    let f: GraphFile = serde_json::from_str(text)?;
    f.into_graph()
}

pub fn read_graph(path: &Path) -> Result<DirectedGeomGraph> {
    graph_from_json(&read_text(path)?)
}

/// Per-pair ratios as CSV (`i,j,euclidean,graph_distance,ratio`). Needs a
/// report built with `keep_pairs`.
pub fn pairs_to_csv(r: &StretchReport) -> Result<String> {
    let pairs = r
        .per_pair_ratios
        .as_ref()
        .ok_or_else(|| Error::Precondition("report was built without per-pair ratios".into()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "euclidean", "graph_distance", "ratio"])?;
    for p in pairs {
        w.write_record([
            p.i.to_string(),
            p.j.to_string(),
            p.euclidean.to_string(),
            p.graph_distance.to_string(),
            p.ratio.to_string(),
        ])?;
    }
    csv_string(w)
}

/// Write `value` as pretty JSON with a trailing newline; `-` is stdout.
pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text)?;
    }
    Ok(())
}
