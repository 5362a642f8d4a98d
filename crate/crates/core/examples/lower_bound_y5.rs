//! The 34-point set on which `Y_5` stretches the pair `(u, v)` by more
//! than 2.87.

use yao_spanner::constructions::lower_bound_y5;
use yao_spanner::{brute_force_stretch, build_yao, stretch_factor, SpannerConstants};

fn main() -> yao_spanner::Result<()> {
    let set = lower_bound_y5();
    let ps = &set.point_set;
    let g = build_yao(ps, 5, 0.0)?;
    let r = stretch_factor(&g)?;
    let (i, j) = r.witness_pair.expect("34 points");
    let path: Vec<String> = r.witness_path.iter().map(|&v| ps.display_name(v)).collect();

    println!("{} points, {} directed edges", ps.len(), g.edges().len());
    println!(
        "stretch {} between {} and {}",
        r.max_ratio,
        ps.display_name(i),
        ps.display_name(j)
    );
    println!(
        "path {} of length {}",
        path.join(" -> "),
        r.witness_distance
    );
    println!(
        "Floyd-Warshall agrees: {}",
        brute_force_stretch(&g)?.max_ratio
    );
    println!("upper bound 2+sqrt(3) = {}", SpannerConstants::new().rho);
    Ok(())
}
