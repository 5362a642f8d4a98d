mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use proptest::prelude::*;
use yao_spanner::constructions::{lower_bound_y5, random_point_set, Distribution};
use yao_spanner::geometry::{mirror, rotate};
use yao_spanner::{
    build_yao, build_yao_yao, undirected_view, validate, ConeSystem, Point2, PointSet,
};

use common::{min_clearance, point_sets};

fn transformed(ps: &PointSet, points: Vec<Point2>) -> PointSet {
    PointSet::with_labels(points, ps.labels().clone()).unwrap()
}

/// The 34-point set has pairs on exact cone boundaries (6 -> 22 is
/// horizontal), so a floating-point rotation may move them into the next
/// cone. Edges out of any other vertex must map exactly.
#[test]
fn lower_bound_set_symmetries() {
    let ps = lower_bound_y5().point_set;
    let cones = ConeSystem::new(5).unwrap();
    let pts = ps.points();
    let on_boundary: BTreeSet<usize> = (0..pts.len())
        .filter(|&i| {
            (0..pts.len()).any(|j| {
                j != i && cones.boundary_clearance(pts[i].direction_to(&pts[j]).unwrap()) < 1e-9
            })
        })
        .collect();
    assert!(on_boundary.contains(&6));

    let y = build_yao(&ps, 5, 0.0).unwrap().edge_set();
    let c = Point2::new(17.0, -3.0);
    let mut images = Vec::new();
    for n in 1..5 {
        images.push(rotate(pts, c, 2.0 * PI * n as f64 / 5.0));
    }
    for i in 1..=5 {
        images.push(mirror(pts, c, cones.bisector(i)));
    }
    for img in images {
        let t = build_yao(&transformed(&ps, img), 5, 0.0)
            .unwrap()
            .edge_set();
        for &(src, dst) in y.symmetric_difference(&t) {
            assert!(on_boundary.contains(&src), "edge {src}->{dst} changed");
        }
    }
}

#[test]
fn symmetries_on_random_sets() {
    let mut checked = 0;
    for seed in 0..30 {
        let ps = random_point_set(40, Distribution::ALL[seed as usize % 4], seed).point_set;
        let cones = ConeSystem::new(5).unwrap();
        if min_clearance(&ps, &cones) < 1e-9 {
            continue;
        }
        checked += 1;
        let y = build_yao(&ps, 5, 0.0).unwrap();
        let yy = build_yao_yao(&ps, 5, 0.0).unwrap();
        let c = Point2::new(0.3, 0.7);
        let images = [
            rotate(ps.points(), c, 2.0 * PI / 5.0),
            rotate(ps.points(), c, -6.0 * PI / 5.0),
            mirror(ps.points(), c, cones.bisector(1)),
            mirror(ps.points(), c, cones.bisector(4)),
        ];
        for img in images {
            let t = transformed(&ps, img);
            assert_eq!(build_yao(&t, 5, 0.0).unwrap().edge_set(), y.edge_set());
            assert_eq!(build_yao_yao(&t, 5, 0.0).unwrap().edge_set(), yy.edge_set());
        }
    }
    assert!(checked >= 20);
}

#[test]
fn offset_rotates_the_frame() {
    // turning the cones by φ is the same as turning the points by −φ
    let ps = random_point_set(50, Distribution::Uniform, 4).point_set;
    let phi = 0.37;
    let turned = transformed(&ps, rotate(ps.points(), Point2::new(0.0, 0.0), -phi));
    assert_eq!(
        build_yao(&ps, 6, phi).unwrap().edge_set(),
        build_yao(&turned, 6, 0.0).unwrap().edge_set()
    );
}

#[test]
fn builds_are_deterministic_across_thread_counts() {
    let ps = random_point_set(300, Distribution::Clustered, 8).point_set;
    let build_with = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    build_yao(&ps, 5, 0.0).unwrap(),
                    build_yao_yao(&ps, 5, 0.0).unwrap(),
                )
            })
    };
    let one = build_with(1);
    assert_eq!(one, build_with(4));
    assert_eq!(one, build_with(7));
}

#[test]
fn undirected_view_is_symmetric_and_valid() {
    let ps = random_point_set(60, Distribution::Uniform, 2).point_set;
    let y = build_yao(&ps, 5, 0.0).unwrap();
    let u = undirected_view(&y);
    assert!(validate(&u).is_empty());
    assert_eq!(u.edges().len(), 2 * y.undirected_edge_set().len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn yao_yao_is_a_valid_subgraph(ps in point_sets(2, 60), k in 2usize..11) {
        let y = build_yao(&ps, k, 0.0).unwrap();
        let yy = build_yao_yao(&ps, k, 0.0).unwrap();
        prop_assert!(validate(&y).is_empty());
        prop_assert!(validate(&yy).is_empty());
        prop_assert!(yy.edge_set().is_subset(&y.edge_set()));
        for v in 0..ps.len() {
            prop_assert!(y.out_degree(v) <= k);
            prop_assert!(yy.in_degree(v) <= k);
            prop_assert!(yy.undirected_degree(v) <= 2 * k);
        }
    }

    #[test]
    fn nearest_neighbours_are_yao_edges(ps in point_sets(2, 60), k in 2usize..9) {
        let y = build_yao(&ps, k, 0.0).unwrap();
        let pts = ps.points();
        for (i, p) in pts.iter().enumerate() {
            let nearest = (0..pts.len())
                .filter(|&j| j != i)
                .min_by(|&a, &b| p.distance(&pts[a]).total_cmp(&p.distance(&pts[b])).then(a.cmp(&b)))
                .unwrap();
            prop_assert!(y.contains_edge(i, nearest));
        }
    }

    #[test]
    fn shortest_pair_survives_pruning(ps in point_sets(2, 60), k in 2usize..9) {
        let pairs = yao_spanner::PairOrdering::sorted_pairs(ps.points());
        let (a, b) = pairs[0];
        let yy = build_yao_yao(&ps, k, 0.0).unwrap();
        prop_assert!(yy.contains_edge(a, b) && yy.contains_edge(b, a));
    }

    #[test]
    fn every_nonempty_cone_has_an_edge(ps in point_sets(2, 40), k in 2usize..9) {
        let y = build_yao(&ps, k, 0.0).unwrap();
        let cones = ConeSystem::new(k).unwrap();
        let pts = ps.points();
        for (i, p) in pts.iter().enumerate() {
            let mut occupied = vec![false; k];
            for (j, q) in pts.iter().enumerate() {
                if i != j {
                    occupied[cones.cone_index(*p, *q).unwrap() - 1] = true;
                }
            }
            prop_assert_eq!(occupied.iter().filter(|&&o| o).count(), y.out_degree(i));
        }
    }

    #[test]
    fn translation_preserves_edges(ps in point_sets(2, 40), dx in -50.0..50.0f64, dy in -50.0..50.0f64) {
        let cones = ConeSystem::new(5).unwrap();
        prop_assume!(min_clearance(&ps, &cones) > 1e-9);
        let moved: Vec<Point2> = ps.points().iter().map(|p| Point2::new(p.x + dx, p.y + dy)).collect();
        let t = PointSet::new(moved).unwrap();
        prop_assert_eq!(build_yao(&ps, 5, 0.0).unwrap().edge_set(), build_yao(&t, 5, 0.0).unwrap().edge_set());
    }
}
