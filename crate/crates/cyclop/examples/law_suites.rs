//! Running the seeded law suites programmatically. The same suites back
//! the `cyclop laws` subcommand.
//!
//! Run with `cargo run --example law_suites`.

use cyclop::laws::run_suites;

fn main() {
    let bound = 3;
    let instances = 40;
    let seed = 2024;
    for report in run_suites("all", bound, instances, seed).unwrap() {
        print!("{}", report.render_text());
        assert!(report.passed(), "a law suite found a counterexample");
    }
    println!("every suite passed at bound {bound} with {instances} instances per law");
}
