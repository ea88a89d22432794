//! Evaluate the upper-bound predicates at a few parameter points,
//! including two where the bound is attained with equality (2k + 1 a power
//! of p) and one where the hypothesis fails and the bound genuinely breaks.
//!
//! ```bash
//! cargo run --example theorem_bounds
//! ```

use cyclotome::bounds::{ceil_half, check_theorem_bounds};
use cyclotome::cyclotomy::CycloParams;
use cyclotome::field::FieldContext;

fn main() -> Result<(), cyclotome::Error> {
    for (q, e) in [(5u64, 2u64), (13, 2), (7, 1), (121, 12), (343, 9)] {
        let (p, n) = cyclotome::cyclotomy::require_odd_prime_power(q)?;
        let ctx = FieldContext::new(p, n as usize, 0)?;
        let params = CycloParams::from_order(ctx, e)?;
        let k = params.k();
        println!(
            "q = {q}, k = {k}: ceil(k/2) = {}, 2k + 1 = {}",
            ceil_half(k),
            2 * k + 1
        );
        for record in check_theorem_bounds(&params)? {
            let w = record.witness.unwrap();
            println!(
                "  {:<8} hypothesis {:<5} conclusion {:<5} extremal cell ({}, {}) = {}",
                record.name.as_str(),
                record.hypothesis_holds,
                record.conclusion_holds,
                w.a,
                w.b,
                w.value
            );
        }
    }
    Ok(())
}
