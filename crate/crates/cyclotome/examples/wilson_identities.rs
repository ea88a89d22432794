//! The exact identities a table of cyclotomic numbers satisfies: the two
//! moment sums, the variance identity in exact rationals, and the explicit
//! bijection behind the second moment.
//!
//! ```bash
//! cargo run --example wilson_identities
//! ```

use cyclotome::cyclotomy::{variance_sides, CycloParams, TableMethod};
use cyclotome::field::FieldContext;

fn main() -> Result<(), cyclotome::Error> {
    for (q, e) in [(5u64, 2u64), (7, 1), (13, 3), (49, 6), (81, 8)] {
        let (p, n) = cyclotome::cyclotomy::require_odd_prime_power(q)?;
        let ctx = FieldContext::new(p, n as usize, 0)?;
        let params = CycloParams::from_order(ctx, e)?;
        let table = params.table(TableMethod::Enumeration)?;
        let (lhs, rhs) = variance_sides(&table);
        let bij = params.wilson_bijection_check()?;
        println!("q = {q}, e = {e}, k = {}", params.k());
        println!(
            "  sum = {} (q - 2 = {}), sum of squares = {}",
            table.sum(),
            q - 2,
            table.sum_of_squares()
        );
        println!("  variance identity: {lhs} = {rhs} -> {}", lhs == rhs);
        println!(
            "  bijection: |X| = {}, (k-1)(k-2) = {}, holds = {}",
            bij.x_count,
            bij.expected,
            bij.holds()
        );
        println!(
            "  entrywise |(a,b) - (q-2)/e^2| < sqrt(ek): {}",
            table.remark_bound_holds()
        );
    }
    Ok(())
}
