mod common;

use proptest::prelude::*;
use yao_spanner::graph::GraphParams;
use yao_spanner::stretch::{brute_force_stretch_with, path_length};
use yao_spanner::{
    brute_force_stretch, build_yao, build_yao_yao, stretch_factor, stretch_factor_with,
    DirectedGeomGraph, Point2, PointSet, SpannerConstants, StretchOptions, Variant,
};

use common::point_sets;

fn complete(ps: &PointSet) -> DirectedGeomGraph {
    let n = ps.len();
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let params = GraphParams {
        k: 2,
        variant: Variant::Yao,
        offset: 0.0,
        symmetric: false,
    };
    DirectedGeomGraph::from_edge_pairs(ps.clone(), params, &pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dijkstra_matches_floyd_warshall(ps in point_sets(2, 50), k in 2usize..9, yy in any::<bool>(), directed in any::<bool>()) {
        let g = if yy { build_yao_yao(&ps, k, 0.0) } else { build_yao(&ps, k, 0.0) }.unwrap();
        let opts = StretchOptions { directed, keep_pairs: false };
        let fast = stretch_factor_with(&g, &opts).unwrap();
        let slow = brute_force_stretch_with(&g, &opts).unwrap();
        if fast.max_ratio.is_finite() {
            prop_assert!((fast.max_ratio - slow.max_ratio).abs() <= 1e-9 * fast.max_ratio);
        } else {
            prop_assert!(slow.max_ratio.is_infinite());
            prop_assert_eq!(fast.witness_pair, slow.witness_pair);
        }
    }

    #[test]
    fn witness_path_realises_the_ratio(ps in point_sets(2, 50), k in 3usize..9) {
        let g = build_yao(&ps, k, 0.0).unwrap();
        let r = stretch_factor(&g).unwrap();
        let (i, j) = r.witness_pair.unwrap();
        prop_assert_eq!(r.witness_path.first(), Some(&i));
        prop_assert_eq!(r.witness_path.last(), Some(&j));
        let len = path_length(&g, &r.witness_path, false).unwrap();
        prop_assert!((len - r.witness_distance).abs() <= 1e-9 * len);
        let e = ps.point(i).distance(&ps.point(j));
        prop_assert!((len / e - r.max_ratio).abs() <= 1e-9 * r.max_ratio);
    }

    #[test]
    fn pruning_never_shortens_paths(ps in point_sets(2, 50), k in 2usize..9) {
        let y = stretch_factor(&build_yao(&ps, k, 0.0).unwrap()).unwrap();
        let yy = stretch_factor(&build_yao_yao(&ps, k, 0.0).unwrap()).unwrap();
        prop_assert!(yy.max_ratio >= y.max_ratio);
        prop_assert!(y.max_ratio >= 1.0);
    }

    #[test]
    fn complete_graph_has_stretch_one(ps in point_sets(2, 30)) {
        prop_assert_eq!(stretch_factor(&complete(&ps)).unwrap().max_ratio, 1.0);
    }

    #[test]
    fn stretch_is_scale_invariant(ps in point_sets(2, 40), s in 0.01..100.0f64) {
        let scaled = PointSet::new(ps.points().iter().map(|p| Point2::new(p.x * s, p.y * s)).collect());
        prop_assume!(scaled.is_ok());
        let scaled = scaled.unwrap();
        let a = build_yao(&ps, 5, 0.0).unwrap();
        let b = build_yao(&scaled, 5, 0.0).unwrap();
        prop_assume!(a.edge_set() == b.edge_set());
        let (ra, rb) = (stretch_factor(&a).unwrap(), stretch_factor(&b).unwrap());
        prop_assert!((ra.max_ratio - rb.max_ratio).abs() <= 1e-9 * ra.max_ratio);
    }

    #[test]
    fn y5_is_a_spanner(ps in point_sets(2, 60)) {
        let r = stretch_factor(&build_yao(&ps, 5, 0.0).unwrap()).unwrap();
        prop_assert!(r.max_ratio <= SpannerConstants::new().rho + 1e-9);
    }
}

#[test]
fn disconnected_pair_is_reported() {
    let ps = PointSet::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(5.0, 5.0),
    ])
    .unwrap();
    let params = GraphParams {
        k: 5,
        variant: Variant::Yao,
        offset: 0.0,
        symmetric: false,
    };
    let g = DirectedGeomGraph::from_edge_pairs(ps, params, &[(0, 1)]).unwrap();
    for r in [
        stretch_factor(&g).unwrap(),
        brute_force_stretch(&g).unwrap(),
    ] {
        assert!(r.max_ratio.is_infinite());
        assert_eq!(r.witness_pair, Some((0, 2)));
        assert_eq!(r.to_json()["max_ratio"], "inf");
    }
}

#[test]
fn stretch_is_deterministic_across_thread_counts() {
    let ps = yao_spanner::constructions::random_point_set(
        250,
        yao_spanner::constructions::Distribution::Uniform,
        5,
    )
    .point_set;
    let g = build_yao_yao(&ps, 5, 0.0).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| stretch_factor(&g).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}
