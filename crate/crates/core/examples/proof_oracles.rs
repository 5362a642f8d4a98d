//! Numeric checks behind the `2 + √3` bound: constants, the two lemmas, the
//! `||wz||` sweep and the induction goal.
//!
//! ```text
//! cargo run --release --example proof_oracles -- 200000
//! ```

use yao_spanner::oracles::{
    fuzz_lemma1, fuzz_lemma2, sweep_prop1, verify_constants, verify_induction_goal,
};

fn main() {
    let samples: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("sample count"))
        .unwrap_or(100_000);
    let seed = 42;

    let constants = verify_constants();
    for c in &constants.checks {
        let mark = match (c.passed, c.gating) {
            (true, _) => "ok  ",
            (false, true) => "FAIL",
            (false, false) => "note",
        };
        println!("{mark} {:<52} {:+.3e}", c.name, c.value);
    }

    let l1 = fuzz_lemma1(samples, seed);
    let l2 = fuzz_lemma2(samples, seed);
    println!(
        "lemma 1: {} violations, max lhs-rhs {:e}",
        l1.violations, l1.max_residual
    );
    println!(
        "lemma 2: {} violations, max lhs-rhs {:e}",
        l2.violations, l2.max_residual
    );

    let sweep = sweep_prop1(400);
    println!(
        "||wz|| sweep: {} cells, max {} at alpha={:.6} beta={:.6} ({}), bound {}",
        sweep.cells,
        sweep.max_wz,
        sweep.argmax_alpha,
        sweep.argmax_beta,
        sweep.argmax_endpoints.label(),
        sweep.bound
    );

    let ind = verify_induction_goal(seed, samples);
    println!(
        "induction: {} violations in {} samples, closest approach min(g)-rho = {:e}",
        ind.violations, ind.samples, ind.max_excess
    );
    println!(
        "  {} samples needed the third route; largest ||wz|| there {:.6}",
        ind.closure_samples, ind.max_closure_wz
    );
}
