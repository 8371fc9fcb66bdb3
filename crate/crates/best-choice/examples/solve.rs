//! Solve the finite-horizon best-choice problem exactly and compare the
//! optimal policy against its large-horizon limits.
//!
//! ```sh
//! cargo run --release --example solve
//! ```

use best_choice::asymptotics::AsymptoticSolution;
use best_choice::dp::{solve_certain, solve_uncertain};
use best_choice::model::ProblemParams;

fn main() {
    // Classic setup: reward 1 for the best item, no penalties.
    let params = ProblemParams::certain(1.0, 0.0, 0.0, 100).unwrap();
    let sol = solve_certain(&params).unwrap();
    println!("classic, n = 100:");
    println!("  reject the first {} items, then take the next candidate", sol.threshold - 1);
    println!("  expected payoff     {:.6}", sol.start_value);
    println!("  P(win/wrong/none)   {:.4} / {:.4} / {:.4}", sol.win_prob, sol.wrong_prob, sol.none_prob);

    // Penalties pull the threshold: fear of a wrong pick delays
    // stopping, fear of ending empty-handed accelerates it.
    for (beta, gamma) in [(1.0, 0.0), (0.0, 1.0)] {
        let params = ProblemParams::certain(1.0, beta, gamma, 100).unwrap();
        let sol = solve_certain(&params).unwrap();
        println!("beta = {beta}, gamma = {gamma}: threshold {} value {:.6}", sol.threshold, sol.start_value);
    }

    // Candidates may refuse: availability p = 0.5 halves the reach of a
    // proposal and moves the threshold down.
    let params = ProblemParams::new(1.0, 0.0, 0.0, 100, 0.5).unwrap();
    let sol = solve_uncertain(&params).unwrap();
    println!("refusals at p = 0.5: threshold {} value {:.6}", sol.threshold, sol.start_value);

    // Finite-horizon answers approach the closed-form limits.
    let params = ProblemParams::certain(1.0, 1.0, 0.0, 100_000).unwrap();
    let sol = solve_certain(&params).unwrap();
    let limits = AsymptoticSolution::certain(1.0, 1.0, 0.0).unwrap();
    println!("\nconvergence at n = 1e5, beta = 1:");
    println!("  threshold fraction  {:.6}  (limit {:.6})", sol.threshold as f64 / 1e5, limits.t_star);
    println!("  value               {:.6}  (limit {:.6})", sol.start_value, limits.value_at_zero);
    println!("  win probability     {:.6}  (limit {:.6})", sol.win_prob, limits.win_prob);
}
