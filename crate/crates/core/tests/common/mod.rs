#![allow(dead_code)]

use proptest::prelude::*;
use yao_spanner::{ConeSystem, Point2, PointSet};

/// Distinct points in `[-100, 100]²`, between `min` and `max` of them.
pub fn point_sets(min: usize, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-100.0..100.0f64, -100.0..100.0f64), min..=max)
        .prop_filter_map("distinct points", |v| {
            PointSet::new(v.into_iter().map(Point2::from).collect()).ok()
        })
}

/// Smallest angular distance from any pair direction to a cone boundary.
pub fn min_clearance(ps: &PointSet, cones: &ConeSystem) -> f64 {
    let pts = ps.points();
    let mut min = f64::INFINITY;
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            if i != j {
                min = min.min(cones.boundary_clearance(p.direction_to(q).unwrap()));
            }
        }
    }
    min
}
