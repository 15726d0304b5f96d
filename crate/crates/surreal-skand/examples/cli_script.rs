//! Runs a calculator script (by default the bundled tour) and exits with
//! its status.

use surreal_skand::cli::{run_script, Options};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scripts/tour.sur").to_string()
    });
    std::process::exit(run_script(&path, &Options::default()));
}
