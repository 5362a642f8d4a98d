//! Build a Yao graph from a handful of points and list its edges by cone.

use yao_spanner::{build_yao, validate, ConeSystem, Point2, PointSet};

fn main() -> yao_spanner::Result<()> {
    let ps = PointSet::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.5),
        Point2::new(1.0, 2.0),
        Point2::new(-1.5, 1.0),
        Point2::new(-0.5, -2.0),
        Point2::new(1.8, -1.2),
    ])?;
    let k = 5;
    let g = build_yao(&ps, k, 0.0)?;
    let cones = ConeSystem::new(k)?;

    for e in g.edges() {
        let cone = cones.cone_index(ps.point(e.src), ps.point(e.dst))?;
        println!(
            "{} -> {}  cone {cone}  length {:.4}",
            e.src, e.dst, e.length
        );
    }
    println!(
        "{} directed edges, max undirected degree {}",
        g.edges().len(),
        g.max_undirected_degree()
    );
    assert!(validate(&g).is_empty());
    Ok(())
}
