//! Shortest paths and stretch factors.
//!
//! The production path runs one binary-heap Dijkstra per source over the
//! sparse adjacency; [`brute_force_stretch`] is an independent Floyd–Warshall
//! oracle with the same contract. Both reduce to the same witness: the
//! largest ratio, ties going to the lexicographically smallest pair.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGeomGraph;

/// Default slack for ratio comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest graph the Floyd–Warshall oracle accepts.
pub const ORACLE_MAX_POINTS: usize = 500;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StretchOptions {
    /// Follow edges only in their stored direction. Off by default: spanner
    /// claims are about the undirected graph.
    pub directed: bool,
    /// Keep every pair's ratio in the report.
    pub keep_pairs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRatio {
    pub i: usize,
    pub j: usize,
    pub euclidean: f64,
    pub graph_distance: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchReport {
    /// `max d_G(a,b)/||ab||`, `+∞` when some pair is disconnected.
    pub max_ratio: f64,
    pub witness_pair: Option<(usize, usize)>,
    /// Shortest path realising the witness; empty when disconnected.
    pub witness_path: Vec<usize>,
    pub witness_distance: f64,
    pub pair_count: usize,
    pub n: usize,
    pub per_pair_ratios: Option<Vec<PairRatio>>,
}

impl StretchReport {
    pub fn is_connected(&self) -> bool {
        self.max_ratio.is_finite()
    }

    /// The report as a JSON value: `max_ratio` is `"inf"` when disconnected.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson::from(self)).expect("report is serializable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatioJson {
    Finite(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    max_ratio: RatioJson,
    witness: Option<[usize; 2]>,
    path: Vec<usize>,
    n: usize,
    pairs: usize,
}

impl From<&StretchReport> for ReportJson {
    fn from(r: &StretchReport) -> Self {
        Self {
            max_ratio: if r.max_ratio.is_finite() {
                RatioJson::Finite(r.max_ratio)
            } else {
                RatioJson::Text("inf".into())
            },
            witness: r.witness_pair.map(|(a, b)| [a, b]),
            path: r.witness_path.clone(),
            n: r.n,
            pairs: r.pair_count,
        }
    }
}

impl Serialize for StretchReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson::from(self).serialize(s)
    }
}

/// Single-source shortest-path tree.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortestPaths {
    pub source: usize,
    pub distances: Vec<f64>,
    pub predecessors: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Vertex sequence from the source to `target`, or `None` if unreachable.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        if !self.distances.get(target)?.is_finite() {
            return None;
        }
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.predecessors[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Frontier {
    dist: f64,
    vertex: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.vertex.cmp(&other.vertex))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> ShortestPaths {
    let n = adj.len();
    let mut distances = vec![f64::INFINITY; n];
    let mut predecessors = vec![None; n];
    let mut heap = BinaryHeap::new();
    distances[source] = 0.0;
    heap.push(Reverse(Frontier {
        dist: 0.0,
        vertex: source,
    }));
    while let Some(Reverse(Frontier { dist, vertex })) = heap.pop() {
        if dist > distances[vertex] {
            continue;
        }
        for &(next, len) in &adj[vertex] {
            let cand = dist + len;
            if cand < distances[next] {
                distances[next] = cand;
                predecessors[next] = Some(vertex);
                heap.push(Reverse(Frontier {
                    dist: cand,
                    vertex: next,
                }));
            }
        }
    }
    ShortestPaths {
        source,
        distances,
        predecessors,
    }
}

fn check_index(g: &DirectedGeomGraph, index: usize) -> Result<()> {
    if index >= g.len() {
        return Err(Error::IndexOutOfRange {
            index,
            len: g.len(),
        });
    }
    Ok(())
}

/// Shortest distances from `source` with every edge usable both ways.
pub fn shortest_paths_from(g: &DirectedGeomGraph, source: usize) -> Result<ShortestPaths> {
    shortest_paths_from_with(g, source, false)
}

pub fn shortest_paths_from_with(
    g: &DirectedGeomGraph,
    source: usize,
    directed: bool,
) -> Result<ShortestPaths> {
    check_index(g, source)?;
    Ok(dijkstra(&g.adjacency(directed), source))
}

/// Candidate witness during reduction.
#[derive(Clone, Copy, Debug)]
struct Best {
    ratio: f64,
    i: usize,
    j: usize,
    distance: f64,
}

impl Best {
    /// Larger ratio wins; equal ratios go to the smaller pair.
    fn beats(&self, other: &Best) -> bool {
        match self.ratio.total_cmp(&other.ratio) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => (self.i, self.j) < (other.i, other.j),
        }
    }

    fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (Some(a), Some(b)) => Some(if b.beats(&a) { b } else { a }),
            (a, None) => a,
            (None, b) => b,
        }
    }
}

fn targets(n: usize, i: usize, directed: bool) -> impl Iterator<Item = usize> {
    let start = if directed { 0 } else { i + 1 };
    (start..n).filter(move |&j| j != i)
}

fn pair_total(n: usize, directed: bool) -> usize {
    if directed {
        n * n.saturating_sub(1)
    } else {
        n * n.saturating_sub(1) / 2
    }
}

fn finish(
    g: &DirectedGeomGraph,
    best: Option<Best>,
    witness_path: Vec<usize>,
    opts: &StretchOptions,
    per_pair_ratios: Option<Vec<PairRatio>>,
) -> StretchReport {
    let best = best.expect("at least one pair");
    StretchReport {
        max_ratio: best.ratio,
        witness_pair: Some((best.i, best.j)),
        witness_path,
        witness_distance: best.distance,
        pair_count: pair_total(g.len(), opts.directed),
        n: g.len(),
        per_pair_ratios,
    }
}

/// Maximum over all pairs of `d_G(a,b)/||ab||`, with a witness pair and path.
pub fn stretch_factor(g: &DirectedGeomGraph) -> Result<StretchReport> {
    stretch_factor_with(g, &StretchOptions::default())
}

pub fn stretch_factor_with(g: &DirectedGeomGraph, opts: &StretchOptions) -> Result<StretchReport> {
    let n = g.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let adj = g.adjacency(opts.directed);
    let points = g.points();

    let per_source: Vec<(Option<Best>, Vec<PairRatio>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let sp = dijkstra(&adj, i);
            let mut best = None;
            let mut pairs = Vec::new();
            for j in targets(n, i, opts.directed) {
                let euclidean = points[i].distance(&points[j]);
                let distance = sp.distances[j];
                let ratio = distance / euclidean;
                best = Best::pick(
                    best,
                    Some(Best {
                        ratio,
                        i,
                        j,
                        distance,
                    }),
                );
                if opts.keep_pairs {
                    pairs.push(PairRatio {
                        i,
                        j,
                        euclidean,
                        graph_distance: distance,
                        ratio,
                    });
                }
            }
            (best, pairs)
        })
        .collect();

    let mut best = None;
    let mut all_pairs = Vec::new();
    for (b, pairs) in per_source {
        best = Best::pick(best, b);
        all_pairs.extend(pairs);
    }
    let w = best.expect("n >= 2");
    let path = dijkstra(&adj, w.i).path_to(w.j).unwrap_or_default();
    Ok(finish(
        g,
        best,
        path,
        opts,
        opts.keep_pairs.then_some(all_pairs),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpannerVerdict {
    pub is_spanner: bool,
    pub rho: f64,
    pub tolerance: f64,
    pub report: StretchReport,
}

/// `true` iff the stretch factor is at most `rho + tolerance`.
pub fn is_spanner(g: &DirectedGeomGraph, rho: f64, tolerance: f64) -> Result<SpannerVerdict> {
    let report = stretch_factor(g)?;
    Ok(SpannerVerdict {
        is_spanner: report.max_ratio <= rho + tolerance,
        rho,
        tolerance,
        report,
    })
}

/// Floyd–Warshall stretch oracle. O(n³); capped at [`ORACLE_MAX_POINTS`].
pub fn brute_force_stretch(g: &DirectedGeomGraph) -> Result<StretchReport> {
    brute_force_stretch_with(g, &StretchOptions::default())
}

pub fn brute_force_stretch_with(
    g: &DirectedGeomGraph,
    opts: &StretchOptions,
) -> Result<StretchReport> {
    let n = g.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if n > ORACLE_MAX_POINTS {
        return Err(Error::OracleSizeCap {
            n,
            cap: ORACLE_MAX_POINTS,
        });
    }
    let points = g.points();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    let mut next: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0.0;
        next[i][i] = Some(i);
    }
    for e in g.edges() {
        let hops: &[(usize, usize)] = if opts.directed {
            &[(e.src, e.dst)]
        } else {
            &[(e.src, e.dst), (e.dst, e.src)]
        };
        for &(a, b) in hops {
            if e.length < dist[a][b] {
                dist[a][b] = e.length;
                next[a][b] = Some(b);
            }
        }
    }
    for m in 0..n {
        for a in 0..n {
            let dam = dist[a][m];
            if !dam.is_finite() {
                continue;
            }
            for b in 0..n {
                let cand = dam + dist[m][b];
                if cand < dist[a][b] {
                    dist[a][b] = cand;
                    next[a][b] = next[a][m];
                }
            }
        }
    }

    let mut best = None;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in targets(n, i, opts.directed) {
            let euclidean = points[i].distance(&points[j]);
            let ratio = dist[i][j] / euclidean;
            best = Best::pick(
                best,
                Some(Best {
                    ratio,
                    i,
                    j,
                    distance: dist[i][j],
                }),
            );
            if opts.keep_pairs {
                pairs.push(PairRatio {
                    i,
                    j,
                    euclidean,
                    graph_distance: dist[i][j],
                    ratio,
                });
            }
        }
    }
    let w = best.expect("n >= 2");
    let mut path = Vec::new();
    if dist[w.i][w.j].is_finite() {
        let mut cur = w.i;
        path.push(cur);
        while cur != w.j {
            cur = next[cur][w.j].expect("finite distance has a next hop");
            path.push(cur);
        }
    }
    Ok(finish(
        g,
        best,
        path,
        opts,
        opts.keep_pairs.then_some(pairs),
    ))
}

/// Length of `path` if every hop is an edge of `g` (either direction unless
/// `directed`).
pub fn path_length(g: &DirectedGeomGraph, path: &[usize], directed: bool) -> Option<f64> {
    let mut total = 0.0;
    for w in path.windows(2) {
        let ok = g.contains_edge(w[0], w[1]) || (!directed && g.contains_edge(w[1], w[0]));
        if !ok {
            return None;
        }
        total += g.points()[w[0]].distance(&g.points()[w[1]]);
    }
    Some(total)
}
