//! Print the reference table of limiting thresholds and win
//! probabilities at alpha = 1 for a few penalty mixes, then show how the
//! threshold surface reacts to each weight.
//!
//! ```sh
//! cargo run --release --example reference_table
//! ```

use best_choice::asymptotics::{threshold_certain, win_prob_certain};

fn main() {
    println!("alpha = 1:");
    println!("{:>6} {:>6} {:>10} {:>10}", "beta", "gamma", "t*", "P(win)");
    for (beta, gamma) in [(1.0, 0.0), (0.75, 0.25), (0.5, 0.5), (0.25, 0.75), (0.0, 1.0)] {
        let t = threshold_certain(1.0, beta, gamma).unwrap();
        let w = win_prob_certain(1.0, beta, gamma).unwrap();
        println!("{beta:>6} {gamma:>6} {t:>10.5} {w:>10.5}");
    }

    // Every beta = gamma mix lands on 1/e, regardless of the common value.
    println!("\nbeta = gamma collapses to 1/e:");
    for c in [0.1, 0.5, 0.9] {
        let t = threshold_certain(1.0, c, c).unwrap();
        println!("  beta = gamma = {c}: t* = {t:.12}");
    }

    // The two penalties pull in opposite directions.
    println!("\ngamma accelerates stopping, beta delays it:");
    for gamma in [0.0, 0.5, 1.0] {
        let t = threshold_certain(1.0, 0.0, gamma).unwrap();
        println!("  beta = 0, gamma = {gamma}: t* = {t:.5}");
    }
    for beta in [0.0, 0.5, 1.0] {
        let t = threshold_certain(1.0, beta, 0.0).unwrap();
        println!("  beta = {beta}, gamma = 0: t* = {t:.5}");
    }
}
