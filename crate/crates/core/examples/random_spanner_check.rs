//! Stretch of `Y_5` over random point sets of several shapes and sizes,
//! against the `2 + √3` bound.

use yao_spanner::constructions::{random_point_set, Distribution};
use yao_spanner::{build_yao, stretch_factor, SpannerConstants};

fn main() -> yao_spanner::Result<()> {
    let rho = SpannerConstants::new().rho;
    let mut worst: f64 = 0.0;
    for d in Distribution::ALL {
        for n in [10, 50, 200] {
            let mut max: f64 = 0.0;
            for seed in 0..10 {
                let set = random_point_set(n, d, seed);
                max = max.max(stretch_factor(&build_yao(&set.point_set, 5, 0.0)?)?.max_ratio);
            }
            println!("{:<17} n={n:<4} max stretch {max:.6}", d.name());
            worst = worst.max(max);
        }
    }
    println!("worst {worst:.6} vs bound {rho:.6}");
    assert!(worst <= rho + 1e-9);
    Ok(())
}
