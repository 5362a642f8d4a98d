//! Compare a Yao graph with its Yao-Yao subgraph: which edges the incoming
//! filter removes, and what that does to degree and stretch.

use yao_spanner::constructions::{random_point_set, Distribution};
use yao_spanner::{build_yao, build_yao_yao, stretch_factor};

fn main() -> yao_spanner::Result<()> {
    let set = random_point_set(200, Distribution::Uniform, 7);
    let ps = &set.point_set;
    for k in [5, 6, 8] {
        let y = build_yao(ps, k, 0.0)?;
        let yy = build_yao_yao(ps, k, 0.0)?;
        let kept = yy.edge_set();
        assert!(kept.is_subset(&y.edge_set()));
        let pruned = y.edges().len() - kept.len();
        println!(
            "k={k}: Y has {} edges (max degree {}), YY keeps {} (max degree {}), pruned {pruned}",
            y.edges().len(),
            y.max_undirected_degree(),
            kept.len(),
            yy.max_undirected_degree(),
        );
        println!(
            "      stretch Y {:.4}, YY {:.4}",
            stretch_factor(&y)?.max_ratio,
            stretch_factor(&yy)?.max_ratio
        );
    }
    Ok(())
}
