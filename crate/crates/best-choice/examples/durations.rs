//! How long does the decision process run?  Expected termination index
//! of the optimal policy, finite horizon versus the limiting profile,
//! with and without candidate refusals.
//!
//! ```sh
//! cargo run --release --example durations
//! ```

use best_choice::asymptotics::{
    duration_at_zero_certain, duration_at_zero_uncertain, duration_profile_certain,
    threshold_certain,
};
use best_choice::dp::{duration_certain, solve_certain, solve_uncertain, duration_uncertain};
use best_choice::model::ProblemParams;

fn main() {
    let n = 100_000;

    // Symmetric penalties: the mean decision time tends to 2/e of the
    // horizon.
    let params = ProblemParams::certain(1.0, 0.5, 0.5, n).unwrap();
    let sol = solve_certain(&params).unwrap();
    let table = duration_certain(&params, sol.threshold).unwrap();
    println!("alpha = 1, beta = gamma = 0.5, n = 1e5:");
    println!("  finite mean duration / n   {:.6}", table.start_mean / n as f64);
    println!("  limiting value             {:.6}", duration_at_zero_certain(1.0, 0.5, 0.5).unwrap());
    println!("  2/e                        {:.6}", 2.0 * (-1.0f64).exp());

    // The per-state profile: flat inside the rejection phase, then
    // tapering to n at the end of the horizon.
    let t_star = threshold_certain(1.0, 0.5, 0.5).unwrap();
    println!("\nper-state profile m(k)/n versus the limit:");
    for frac in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let k = ((n as f64 * frac) as usize).max(1);
        let finite = table.m_at(k) / n as f64;
        let limit = duration_profile_certain(frac, t_star);
        println!("  k/n = {frac:<5} m/n = {finite:.6}  limit {limit:.6}");
    }

    // Refusals stretch the search.
    println!("\nrefusals, alpha = 1, beta = gamma = 0 (classic payoff):");
    for p in [1.0, 0.75, 0.5, 0.25] {
        let params = ProblemParams::new(1.0, 0.0, 0.0, n, p).unwrap();
        let sol = solve_uncertain(&params).unwrap();
        let table = duration_uncertain(&params, sol.threshold).unwrap();
        let limit = duration_at_zero_uncertain(1.0, 0.0, 0.0, p)
            .map(|d| format!("{d:.6}"))
            .unwrap_or_else(|_| "n/a".into());
        println!(
            "  p = {p:<5} threshold/n = {:.4}  mean duration/n = {:.6}  limit {limit}",
            sol.threshold as f64 / n as f64,
            table.start_mean / n as f64,
        );
    }
}
