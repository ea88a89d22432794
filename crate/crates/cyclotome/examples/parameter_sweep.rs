//! Sweep every odd prime power up to a limit, check every identity and
//! bound, and write the machine-readable report.
//!
//! ```bash
//! cargo run --release --example parameter_sweep
//! ```

use cyclotome::sweep::{sweep, ScanRange};
use cyclotome::Limits;

fn main() -> Result<(), cyclotome::Error> {
    let range = ScanRange::up_to(200);
    let report = sweep(&range, 4, 0, &Limits::default())?;
    print!("{}", report.to_text());

    let path = std::env::temp_dir().join("cyclotome-sweep-200.json");
    std::fs::write(&path, report.to_json()).expect("report written");
    println!("full report: {}", path.display());

    // The body is independent of the worker count.
    let single = sweep(&range, 1, 0, &Limits::default())?;
    println!(
        "single-worker body identical: {}",
        single.deterministic_body().to_json() == report.deterministic_body().to_json()
    );
    Ok(())
}
