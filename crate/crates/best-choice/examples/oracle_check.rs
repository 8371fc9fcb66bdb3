//! Pit the solver against brute force.  At n <= 8 every stopping rule
//! (all 2^n - 1 position sets) can be scored exactly by enumerating the
//! n! arrival orders; the solver's threshold rule must attain that
//! maximum.
//!
//! ```sh
//! cargo run --release --example oracle_check
//! ```

use best_choice::dp::solve_uncertain;
use best_choice::model::ProblemParams;
use best_choice::oracle::{best_rule, exact_value, RuleSpec};

fn main() {
    let n = 8;
    for (alpha, beta, gamma, p) in [
        (1.0, 0.0, 0.0, 1.0),
        (1.0, 1.0, 0.0, 1.0),
        (1.0, 0.0, 1.0, 1.0),
        (1.0, 0.5, 0.25, 0.5),
    ] {
        let params = ProblemParams::new(alpha, beta, gamma, n, p).unwrap();
        let sol = solve_uncertain(&params).unwrap();
        let (rule, best) = best_rule(&params).unwrap();
        let dp_rule = RuleSpec::threshold(sol.threshold, n).unwrap();
        let eval = exact_value(&dp_rule, &params).unwrap();

        println!("alpha={alpha} beta={beta} gamma={gamma} p={p}:");
        println!("  solver: threshold {} value {:.12}", sol.threshold, sol.start_value);
        println!(
            "  oracle: best rule {:?} value {:.12}",
            rule.stop_set().iter().collect::<Vec<_>>(),
            best
        );
        println!(
            "  threshold rule attains the maximum: {} (gap {:.2e})",
            (eval.value - best).abs() <= 1e-12,
            (eval.value - best).abs()
        );
        println!(
            "  exact outcome probabilities under it: win {:.6} wrong {:.6} none {:.6}\n",
            eval.win_prob, eval.wrong_prob, eval.none_prob
        );
    }
}
