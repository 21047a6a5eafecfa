//! Batch audit of the criteria on random separable states: every test
//! must come out non-negative there, since a steering (or entanglement)
//! verdict on a separable state would be a false positive. Also runs the
//! symmetric-function constraint suite that underpins the steering
//! functional's separable proof.

use steerkit::scan::{self, Suite};

fn main() {
    let seed = std::env::var("STEERKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);

    let mut reports = scan::verify(Suite::Separable, 20_000, seed);
    reports.extend(scan::verify(Suite::Constraints, 5_000, seed));
    reports.extend(scan::verify(Suite::Hierarchy, 5_000, seed));

    print!("{}", scan::render_report(&reports));
    std::process::exit(if scan::all_passed(&reports) { 0 } else { 1 });
}
