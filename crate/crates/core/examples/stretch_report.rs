//! Stretch factor with witness path, the Floyd-Warshall cross-check, and
//! the JSON/CSV report formats.

use yao_spanner::constructions::{random_point_set, Distribution};
use yao_spanner::io::pairs_to_csv;
use yao_spanner::{
    brute_force_stretch, build_yao, is_spanner, stretch_factor_with, StretchOptions,
};

fn main() -> yao_spanner::Result<()> {
    let set = random_point_set(60, Distribution::Clustered, 3);
    let g = build_yao(&set.point_set, 5, 0.0)?;

    let opts = StretchOptions {
        keep_pairs: true,
        ..Default::default()
    };
    let report = stretch_factor_with(&g, &opts)?;
    let oracle = brute_force_stretch(&g)?;
    println!(
        "dijkstra: {}  floyd-warshall: {}",
        report.max_ratio, oracle.max_ratio
    );
    println!(
        "witness {:?} via {:?}",
        report.witness_pair, report.witness_path
    );
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);

    let csv = pairs_to_csv(&report)?;
    println!(
        "first pairs:\n{}",
        csv.lines().take(4).collect::<Vec<_>>().join("\n")
    );

    let verdict = is_spanner(&g, 2.0 + 3f64.sqrt(), 1e-9)?;
    println!("2+sqrt(3)-spanner: {}", verdict.is_spanner);
    Ok(())
}
