//! Sweep the payoff weights over a grid and write the limiting
//! threshold surface as CSV, the data behind threshold-surface plots.
//!
//! ```sh
//! cargo run --release --example parameter_sweep
//! ```

use std::fs;

use best_choice::asymptotics::AsymptoticSolution;

fn main() {
    let gamma = 0.05;
    let p = 0.95;
    let steps = 10;

    let mut csv = String::from("alpha,beta,gamma,p,t_star,value,win_prob,duration_at_zero\n");
    let mut rows = 0;
    for i in 0..=steps {
        for j in 0..=steps {
            let alpha = i as f64 / steps as f64;
            let beta = j as f64 / steps as f64;
            if alpha + beta == 0.0 {
                continue; // no payoff scale, nothing to solve
            }
            match AsymptoticSolution::uncertain(alpha, beta, gamma, p) {
                Ok(a) => {
                    csv.push_str(&format!(
                        "{alpha},{beta},{gamma},{p},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                        a.t_star, a.value_at_zero, a.win_prob, a.duration_at_zero
                    ));
                    rows += 1;
                }
                Err(e) => eprintln!("skipping ({alpha},{beta}): {e}"),
            }
        }
    }

    let path = std::env::temp_dir().join("best-choice-sweep.csv");
    fs::write(&path, &csv).expect("write sweep");
    println!("wrote {rows} rows to {}", path.display());
    println!("\nfirst rows:");
    for line in csv.lines().take(5) {
        println!("  {line}");
    }
    println!("\nsame surface via the CLI:");
    println!("  best-choice sweep --alpha 0:1:0.1 --beta 0:1:0.1 --gamma 0.05 --p 0.95 \\");
    println!("      --n 1000 --out sweep.csv");
}
