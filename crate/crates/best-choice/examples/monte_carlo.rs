//! Monte Carlo estimates of a threshold policy, cross-checked against
//! the exact solver at a four-standard-error gate.  Reruns with the same
//! seed are bit-identical regardless of thread count.
//!
//! ```sh
//! cargo run --release --example monte_carlo
//! ```

use best_choice::dp::{duration_uncertain, solve_uncertain, threshold_outcomes};
use best_choice::model::ProblemParams;
use best_choice::simulate::estimate;

fn gate(label: &str, estimated: f64, exact: f64, se: f64) {
    let sigmas = (estimated - exact).abs() / se;
    let verdict = if sigmas <= 4.0 { "ok" } else { "OFF" };
    println!("  {label:<22} {estimated:>10.6}  exact {exact:>10.6}  ({sigmas:.2} se) {verdict}");
}

fn main() {
    let n = 1000;
    let trials = 500_000;
    let seed = 7;

    for p in [1.0, 0.5] {
        let params = ProblemParams::new(1.0, 0.5, 0.25, n, p).unwrap();
        let sol = solve_uncertain(&params).unwrap();
        let (win, wrong, none) = threshold_outcomes(&params, sol.threshold).unwrap();
        let durations = duration_uncertain(&params, sol.threshold).unwrap();
        let report = estimate(&params, sol.threshold, trials, seed).unwrap();

        println!("p = {p}: threshold {} over n = {n}, {trials} trials, seed {seed}", sol.threshold);
        gate("mean payoff", report.mean_payoff, sol.start_value, report.se_payoff.unwrap());
        gate("win frequency", report.freq_win, win, report.se_win.unwrap());
        gate("wrong frequency", report.freq_wrong, wrong, report.se_wrong.unwrap());
        gate("no-pick frequency", report.freq_none, none, report.se_none.unwrap());
        gate(
            "duration fraction",
            report.mean_duration_fraction,
            durations.start_mean / n as f64,
            report.se_duration_fraction.unwrap(),
        );
        println!();
    }
}
