//! Directed Yao graphs `→Y_k`, Yao-Yao graphs `→YY_k`, and their undirected
//! (symmetrized) views.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, PairKey, Point2};

/// An indexed planar point set with optional labels. Coordinates are finite
/// and pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<Point2>,
    labels: BTreeMap<usize, String>,
}

impl PointSet {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        Self::with_labels(points, BTreeMap::new())
    }

    pub fn with_labels(points: Vec<Point2>, labels: BTreeMap<usize, String>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite {
                    index,
                    x: p.x,
                    y: p.y,
                });
            }
        }
        if let Some(&index) = labels.keys().find(|&&i| i >= points.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                len: points.len(),
            });
        }
        // +0.0 folds -0.0 into 0.0 so the two compare adjacent
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (points[i], points[j]);
            (a.x + 0.0)
                .total_cmp(&(b.x + 0.0))
                .then((a.y + 0.0).total_cmp(&(b.y + 0.0)))
                .then(i.cmp(&j))
        });
        for w in order.windows(2) {
            let (a, b) = (points[w[0]], points[w[1]]);
            if a.x == b.x && a.y == b.y {
                return Err(Error::DuplicatePoint {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                    x: a.x,
                    y: a.y,
                });
            }
        }
        Ok(Self { points, labels })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Point2 {
        self.points[index]
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(&index).map(String::as_str)
    }

    /// Index of the point carrying `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&i, _)| i)
    }

    /// The label if one exists, otherwise `#index`.
    pub fn display_name(&self, index: usize) -> String {
        match self.label(index) {
            Some(l) => l.to_string(),
            None => format!("#{index}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "yao")]
    Yao,
    #[serde(rename = "yaoyao")]
    YaoYao,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Yao => f.write_str("yao"),
            Variant::YaoYao => f.write_str("yaoyao"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphParams {
    pub k: usize,
    pub variant: Variant,
    pub offset: f64,
    /// Set on undirected views: every edge is stored in both directions.
    pub symmetric: bool,
}

impl GraphParams {
    pub fn cones(&self) -> Result<ConeSystem> {
        ConeSystem::with_offset(self.k, self.offset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub length: f64,
}

/// A point set with a directed edge set. Edge lengths are cached and edges
/// are kept sorted by `(src, dst)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedGeomGraph {
    point_set: PointSet,
    params: GraphParams,
    edges: Vec<Edge>,
}

impl DirectedGeomGraph {
    /// Assemble a graph from index pairs, computing edge lengths. Indices
    /// must be in range; no other invariant is checked here (see [`validate`]).
    pub fn from_edge_pairs(
        point_set: PointSet,
        params: GraphParams,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = point_set.len();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(src, dst) in pairs {
            for index in [src, dst] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            edges.push(Edge {
                src,
                dst,
                length: point_set.point(src).distance(&point_set.point(dst)),
            });
        }
        Ok(Self::from_raw_edges(point_set, params, edges))
    }

    /// Assemble a graph from edges with caller-supplied lengths, unchecked.
    pub fn from_raw_edges(point_set: PointSet, params: GraphParams, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| (e.src, e.dst));
        Self {
            point_set,
            params,
            edges,
        }
    }

    pub fn point_set(&self) -> &PointSet {
        &self.point_set
    }

    pub fn points(&self) -> &[Point2] {
        self.point_set.points()
    }

    pub fn len(&self) -> usize {
        self.point_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.point_set.is_empty()
    }

    pub fn params(&self) -> GraphParams {
        self.params
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.src, e.dst)).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.src, e.dst)).collect()
    }

    /// Unordered edges `{i, j}` with `i < j`, each once.
    pub fn undirected_edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .filter(|e| e.src != e.dst)
            .map(|e| (e.src.min(e.dst), e.src.max(e.dst)))
            .collect()
    }

    pub fn contains_edge(&self, src: usize, dst: usize) -> bool {
        self.edges
            .binary_search_by_key(&(src, dst), |e| (e.src, e.dst))
            .is_ok()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.dst == v).count()
    }

    /// Number of distinct neighbours of `v` in the undirected graph.
    pub fn undirected_degree(&self, v: usize) -> usize {
        self.undirected_edge_set()
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn max_undirected_degree(&self) -> usize {
        let mut deg = vec![0usize; self.len()];
        for (a, b) in self.undirected_edge_set() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Adjacency lists `(neighbour, length)`. With `directed == false` every
    /// edge is usable in both directions; parallel entries are merged.
    pub fn adjacency(&self, directed: bool) -> Vec<Vec<(usize, f64)>> {
        let mut adj: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); self.len()];
        let mut put = |a: usize, b: usize, len: f64| {
            let slot = adj[a].entry(b).or_insert(len);
            if len < *slot {
                *slot = len;
            }
        };
        for e in &self.edges {
            put(e.src, e.dst, e.length);
            if !directed {
                put(e.dst, e.src, e.length);
            }
        }
        adj.into_iter().map(|m| m.into_iter().collect()).collect()
    }
}

/// Per-cone choice of `p`: the partner `q` minimising `{p, q}` under `≺`.
fn nearest_per_cone(points: &[Point2], cones: &ConeSystem, p: usize) -> Vec<Option<PairKey>> {
    let mut best: Vec<Option<PairKey>> = vec![None; cones.k()];
    let apex = points[p];
    for (q, &target) in points.iter().enumerate() {
        if q == p {
            continue;
        }
        // distinct points guarantee a direction
        let cone = cones
            .cone_index(apex, target)
            .expect("point set holds distinct points");
        let key = PairKey::new(apex.distance(&target), p, q);
        let slot = &mut best[cone - 1];
        if slot.is_none_or(|cur| key < cur) {
            *slot = Some(key);
        }
    }
    best
}

fn partner(key: &PairKey, p: usize) -> usize {
    if key.lo == p {
        key.hi
    } else {
        key.lo
    }
}

/// Directed Yao graph: every point links to its `≺`-nearest neighbour in each
/// non-empty cone.
pub fn build_yao(ps: &PointSet, k: usize, offset: f64) -> Result<DirectedGeomGraph> {
    let cones = ConeSystem::with_offset(k, offset)?;
    let points = ps.points();
    let edges: Vec<Edge> = (0..points.len())
        .into_par_iter()
        .flat_map_iter(|p| {
            let mut out: Vec<Edge> = nearest_per_cone(points, &cones, p)
                .into_iter()
                .flatten()
                .map(|key| Edge {
                    src: p,
                    dst: partner(&key, p),
                    length: key.length,
                })
                .collect();
            out.sort_by_key(|e| e.dst);
            out
        })
        .collect();
    Ok(DirectedGeomGraph::from_raw_edges(
        ps.clone(),
        GraphParams {
            k,
            variant: Variant::Yao,
            offset,
            symmetric: false,
        },
        edges,
    ))
}

/// Directed Yao-Yao graph: the Yao graph, after which every point keeps only
/// the `≺`-minimal incoming edge from each of its cones.
pub fn build_yao_yao(ps: &PointSet, k: usize, offset: f64) -> Result<DirectedGeomGraph> {
    let yao = build_yao(ps, k, offset)?;
    let cones = yao.params().cones()?;
    let points = ps.points();

    let mut incoming: Vec<Vec<&Edge>> = vec![Vec::new(); points.len()];
    for e in yao.edges() {
        incoming[e.dst].push(e);
    }
    let mut kept: Vec<Edge> = incoming
        .par_iter()
        .enumerate()
        .flat_map_iter(|(v, edges)| {
            let mut best: Vec<Option<(PairKey, Edge)>> = vec![None; cones.k()];
            for &&e in edges {
                let cone = cones
                    .cone_index(points[v], points[e.src])
                    .expect("point set holds distinct points");
                let key = PairKey::new(e.length, e.src, v);
                let slot = &mut best[cone - 1];
                if slot.as_ref().is_none_or(|(cur, _)| key < *cur) {
                    *slot = Some((key, e));
                }
            }
            best.into_iter()
                .flatten()
                .map(|(_, e)| e)
                .collect::<Vec<_>>()
        })
        .collect();
    kept.sort_by_key(|e| (e.src, e.dst));
    Ok(DirectedGeomGraph::from_raw_edges(
        ps.clone(),
        GraphParams {
            k,
            variant: Variant::YaoYao,
            offset,
            symmetric: false,
        },
        kept,
    ))
}

/// Build either variant.
pub fn build(ps: &PointSet, k: usize, variant: Variant, offset: f64) -> Result<DirectedGeomGraph> {
    match variant {
        Variant::Yao => build_yao(ps, k, offset),
        Variant::YaoYao => build_yao_yao(ps, k, offset),
    }
}

/// Symmetrize: `(i, j)` is present iff `i→j` or `j→i` was.
pub fn undirected_view(g: &DirectedGeomGraph) -> DirectedGeomGraph {
    let mut pairs = BTreeMap::new();
    for e in g.edges() {
        pairs.entry((e.src, e.dst)).or_insert(e.length);
        pairs.entry((e.dst, e.src)).or_insert(e.length);
    }
    let edges = pairs
        .into_iter()
        .map(|((src, dst), length)| Edge { src, dst, length })
        .collect();
    DirectedGeomGraph::from_raw_edges(
        g.point_set().clone(),
        GraphParams {
            symmetric: true,
            ..g.params()
        },
        edges,
    )
}

/// A broken graph invariant.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    IndexOutOfRange {
        src: usize,
        dst: usize,
    },
    SelfLoop {
        vertex: usize,
    },
    DuplicateEdge {
        src: usize,
        dst: usize,
    },
    LengthMismatch {
        src: usize,
        dst: usize,
        stored: f64,
        actual: f64,
    },
    OutDegree {
        vertex: usize,
        degree: usize,
        k: usize,
    },
    ConeOutEdges {
        vertex: usize,
        cone: usize,
        targets: Vec<usize>,
    },
    ConeInEdges {
        vertex: usize,
        cone: usize,
        sources: Vec<usize>,
    },
    MissingReverse {
        src: usize,
        dst: usize,
    },
    InvalidParams(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { src, dst } => {
                write!(f, "edge ({src}->{dst}) references a missing vertex")
            }
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::DuplicateEdge { src, dst } => write!(f, "edge ({src}->{dst}) appears twice"),
            Violation::LengthMismatch {
                src,
                dst,
                stored,
                actual,
            } => write!(
                f,
                "edge ({src}->{dst}) stores length {stored} but the points are {actual} apart"
            ),
            Violation::OutDegree { vertex, degree, k } => {
                write!(f, "vertex {vertex} has out-degree {degree} > k = {k}")
            }
            Violation::ConeOutEdges {
                vertex,
                cone,
                targets,
            } => write!(
                f,
                "vertex {vertex} has {} outgoing edges in cone {cone}: {targets:?}",
                targets.len()
            ),
            Violation::ConeInEdges {
                vertex,
                cone,
                sources,
            } => write!(
                f,
                "vertex {vertex} keeps {} incoming edges from cone {cone}: {sources:?}",
                sources.len()
            ),
            Violation::MissingReverse { src, dst } => {
                write!(
                    f,
                    "undirected view has ({src}->{dst}) but not ({dst}->{src})"
                )
            }
            Violation::InvalidParams(msg) => write!(f, "invalid graph parameters: {msg}"),
        }
    }
}

const LENGTH_TOLERANCE: f64 = 1e-12;

/// Check every structural invariant of `g`; empty means valid.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail
pub fn validate(g: &DirectedGeomGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = g.len();
    let points = g.points();
    let params = g.params();
    let cones = match params.cones() {
        Ok(c) => c,
        Err(e) => {
            out.push(Violation::InvalidParams(e.to_string()));
            return out;
        }
    };

    let mut seen = BTreeSet::new();
    let mut out_by_cone: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut in_by_cone: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut out_deg = vec![0usize; n];

    for e in g.edges() {
        if e.src >= n || e.dst >= n {
            out.push(Violation::IndexOutOfRange {
                src: e.src,
                dst: e.dst,
            });
            continue;
        }
        if e.src == e.dst {
            out.push(Violation::SelfLoop { vertex: e.src });
            continue;
        }
        if !seen.insert((e.src, e.dst)) {
            out.push(Violation::DuplicateEdge {
                src: e.src,
                dst: e.dst,
            });
            continue;
        }
        let actual = points[e.src].distance(&points[e.dst]);
        if !((e.length - actual).abs() <= LENGTH_TOLERANCE * actual.max(1.0)) {
            out.push(Violation::LengthMismatch {
                src: e.src,
                dst: e.dst,
                stored: e.length,
                actual,
            });
        }
        if !params.symmetric {
            out_deg[e.src] += 1;
            let oc = cones
                .cone_index(points[e.src], points[e.dst])
                .expect("distinct endpoints");
            out_by_cone.entry((e.src, oc)).or_default().push(e.dst);
            if params.variant == Variant::YaoYao {
                let ic = cones
                    .cone_index(points[e.dst], points[e.src])
                    .expect("distinct endpoints");
                in_by_cone.entry((e.dst, ic)).or_default().push(e.src);
            }
        }
    }

    if params.symmetric {
        for &(src, dst) in &seen {
            if !seen.contains(&(dst, src)) {
                out.push(Violation::MissingReverse { src, dst });
            }
        }
        return out;
    }

    for (vertex, &degree) in out_deg.iter().enumerate() {
        if degree > params.k {
            out.push(Violation::OutDegree {
                vertex,
                degree,
                k: params.k,
            });
        }
    }
    for ((vertex, cone), targets) in out_by_cone {
        if targets.len() > 1 {
            out.push(Violation::ConeOutEdges {
                vertex,
                cone,
                targets,
            });
        }
    }
    for ((vertex, cone), sources) in in_by_cone {
        if sources.len() > 1 {
            out.push(Violation::ConeInEdges {
                vertex,
                cone,
                sources,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(coords: &[(f64, f64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&c| c.into()).collect()).unwrap()
    }

    #[test]
    fn two_points_see_each_other() {
        let g = build_yao(&ps(&[(0.0, 0.0), (1.0, 0.0)]), 5, 0.0).unwrap();
        assert_eq!(g.edge_pairs(), vec![(0, 1), (1, 0)]);
        let yy = build_yao_yao(&ps(&[(0.0, 0.0), (1.0, 0.0)]), 5, 0.0).unwrap();
        assert_eq!(yy.edge_pairs(), g.edge_pairs());
    }

    #[test]
    fn single_point_has_no_edges() {
        let g = build_yao(&ps(&[(3.0, 4.0)]), 5, 0.0).unwrap();
        assert!(g.edges().is_empty());
        assert!(validate(&g).is_empty());
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = PointSet::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(-0.0, 0.0),
        ])
        .unwrap_err();
        assert!(matches!(
            err,
            Error::DuplicatePoint {
                first: 0,
                second: 2,
                ..
            }
        ));
    }

    #[test]
    fn non_finite_is_rejected() {
        let err = PointSet::new(vec![Point2::new(0.0, f64::NAN)]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0, .. }));
    }

    #[test]
    fn cone_nearest_tie_goes_to_smaller_index() {
        // 1 and 2 are both at distance 1 from 0 and both in cone 1 of 0
        let pts = ps(&[(0.0, 0.0), (0.8, 0.6), (0.6, 0.8)]);
        let g = build_yao(&pts, 5, 0.0).unwrap();
        assert!(g.contains_edge(0, 1));
        assert!(!g.contains_edge(0, 2));
    }

    #[test]
    fn yao_yao_prunes_longer_incoming_edge() {
        // 1 and 2 both point at 0 from the same cone of 0; only the shorter survives
        let pts = ps(&[(0.0, 0.0), (1.0, 0.05), (0.6, 1.04)]);
        let y = build_yao(&pts, 5, 0.0).unwrap();
        assert!(y.contains_edge(1, 0) && y.contains_edge(2, 0));
        let yy = build_yao_yao(&pts, 5, 0.0).unwrap();
        assert!(yy.contains_edge(1, 0));
        assert!(!yy.contains_edge(2, 0));
        assert!(yy.edge_set().is_subset(&y.edge_set()));
        assert!(validate(&yy).is_empty());
    }

    #[test]
    fn undirected_view_examples() {
        let base = ps(&[(0.0, 0.0), (1.0, 0.0)]);
        let params = GraphParams {
            k: 5,
            variant: Variant::Yao,
            offset: 0.0,
            symmetric: false,
        };
        let empty = DirectedGeomGraph::from_edge_pairs(base.clone(), params, &[]).unwrap();
        assert!(undirected_view(&empty).edges().is_empty());
        let one = DirectedGeomGraph::from_edge_pairs(base, params, &[(0, 1)]).unwrap();
        let u = undirected_view(&one);
        assert_eq!(u.edge_pairs(), vec![(0, 1), (1, 0)]);
        assert!(u.params().symmetric);
        assert!(validate(&u).is_empty());
    }

    #[test]
    fn validate_names_the_crowded_cone() {
        let pts = ps(&[(0.0, 0.0), (1.0, 0.1), (2.0, 0.3)]);
        let params = GraphParams {
            k: 5,
            variant: Variant::Yao,
            offset: 0.0,
            symmetric: false,
        };
        let g = DirectedGeomGraph::from_edge_pairs(pts, params, &[(0, 1), (0, 2)]).unwrap();
        let v = validate(&g);
        assert_eq!(
            v,
            vec![Violation::ConeOutEdges {
                vertex: 0,
                cone: 1,
                targets: vec![1, 2]
            }]
        );
        assert!(v[0].to_string().contains("cone 1"));
    }

    #[test]
    fn validate_catches_bad_lengths_and_loops() {
        let pts = ps(&[(0.0, 0.0), (1.0, 0.0)]);
        let params = GraphParams {
            k: 5,
            variant: Variant::Yao,
            offset: 0.0,
            symmetric: false,
        };
        let g = DirectedGeomGraph::from_raw_edges(
            pts,
            params,
            vec![
                Edge {
                    src: 0,
                    dst: 1,
                    length: 2.0,
                },
                Edge {
                    src: 1,
                    dst: 1,
                    length: 0.0,
                },
            ],
        );
        let v = validate(&g);
        assert!(v.contains(&Violation::SelfLoop { vertex: 1 }));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::LengthMismatch { src: 0, dst: 1, .. })));
    }

    #[test]
    fn validate_catches_extra_incoming_in_yao_yao() {
        let pts = ps(&[(0.0, 0.0), (1.0, 0.1), (2.0, 0.3)]);
        let params = GraphParams {
            k: 5,
            variant: Variant::YaoYao,
            offset: 0.0,
            symmetric: false,
        };
        let g = DirectedGeomGraph::from_edge_pairs(pts, params, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(
            validate(&g),
            vec![Violation::ConeInEdges {
                vertex: 0,
                cone: 1,
                sources: vec![1, 2]
            }]
        );
    }

    #[test]
    fn labels_resolve() {
        let mut labels = BTreeMap::new();
        labels.insert(1, "v".to_string());
        let p = PointSet::with_labels(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)], labels)
            .unwrap();
        assert_eq!(p.index_of("v"), Some(1));
        assert_eq!(p.display_name(1), "v");
        assert_eq!(p.display_name(0), "#0");
    }
}
