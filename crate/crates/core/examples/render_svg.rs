//! Draw the lower-bound set with its witness path, and the first corridor
//! level with cone boundaries.
//!
//! ```text
//! cargo run --example render_svg -- /tmp
//! ```

use std::path::PathBuf;

use yao_spanner::constructions::{lower_bound_y5, yy5_unbounded_family};
use yao_spanner::render::{render_svg, RenderOptions};
use yao_spanner::{build_yao, build_yao_yao, stretch_factor};

fn main() -> yao_spanner::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));

    let lb = build_yao(&lower_bound_y5().point_set, 5, 0.0)?;
    let witness = stretch_factor(&lb)?.witness_path;
    let svg = render_svg(
        &lb,
        &RenderOptions {
            witness: Some(witness),
            ..Default::default()
        },
    )?;
    std::fs::write(dir.join("lower_bound_y5.svg"), svg)?;

    let corridor = build_yao_yao(&yy5_unbounded_family(1)?.point_set, 5, 0.0)?;
    let svg = render_svg(
        &corridor,
        &RenderOptions {
            cones: true,
            cone_ray_fraction: 0.05,
            ..Default::default()
        },
    )?;
    std::fs::write(dir.join("yy5_level1.svg"), svg)?;
    println!(
        "wrote {}/lower_bound_y5.svg and yy5_level1.svg",
        dir.display()
    );
    Ok(())
}
