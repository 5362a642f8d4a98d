//! Stretch of `YY_5` on the converging corridor, level by level.
//!
//! ```text
//! cargo run --example yy5_unbounded -- 8
//! ```

use yao_spanner::constructions::yy5_unbounded_family;
use yao_spanner::{build_yao, build_yao_yao, stretch_factor, SpannerConstants};

fn main() -> yao_spanner::Result<()> {
    let levels: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("levels must be a positive integer"))
        .unwrap_or(6);
    let rho = SpannerConstants::new().rho;

    println!("level  points  YY_5 stretch  Y_5 stretch  a-b ratio");
    for level in 1..=levels {
        let set = yy5_unbounded_family(level)?;
        let ps = &set.point_set;
        let yy = stretch_factor(&build_yao_yao(ps, 5, 0.0)?)?;
        let y = stretch_factor(&build_yao(ps, 5, 0.0)?)?;
        let ab = yao_spanner::shortest_paths_from(&build_yao_yao(ps, 5, 0.0)?, 0)?.distances[1]
            / ps.point(0).distance(&ps.point(1));
        println!(
            "{level:>5}  {:>6}  {:>12.6}  {:>11.6}  {ab:>9.6}",
            ps.len(),
            yy.max_ratio,
            y.max_ratio
        );
        assert!(y.max_ratio <= rho + 1e-9);
    }
    Ok(())
}
