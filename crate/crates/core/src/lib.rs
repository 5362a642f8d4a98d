//! Yao and Yao-Yao graphs in the plane, their stretch factors, and numeric
//! checks of the `Y_5` spanner bound.
//!
//! ```
//! use yao_spanner::{build_yao, stretch_factor, Point2, PointSet};
//!
//! let ps = PointSet::new(vec![
//!     Point2::new(0.0, 0.0),
//!     Point2::new(1.0, 0.0),
//!     Point2::new(0.5, 0.9),
//! ])
//! .unwrap();
//! let g = build_yao(&ps, 5, 0.0).unwrap();
//! let report = stretch_factor(&g).unwrap();
//! assert!(report.max_ratio >= 1.0);
//! ```

pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod render;
pub mod stretch;

pub use error::{Error, Result};
pub use geometry::{ConeSystem, PairKey, PairOrdering, Point2};
pub use graph::{
    build, build_yao, build_yao_yao, undirected_view, validate, DirectedGeomGraph, Edge,
    GraphParams, PointSet, Variant, Violation,
};
pub use oracles::SpannerConstants;
pub use stretch::{
    brute_force_stretch, is_spanner, shortest_paths_from, stretch_factor, stretch_factor_with,
    StretchOptions, StretchReport,
};
