//! Compute a table of cyclotomic numbers by all three algorithms and show
//! the serialized forms.
//!
//! ```bash
//! cargo run --example cyclotomic_tables
//! ```

use cyclotome::cyclotomy::{CycloParams, TableMethod};
use cyclotome::field::FieldContext;

fn main() -> Result<(), cyclotome::Error> {
    // GF(13) with e = 3 cosets of size k = 4.
    let ctx = FieldContext::new(13, 1, 0)?;
    let params = CycloParams::from_order(ctx, 3)?;
    println!("parameters: {}", params.fingerprint());

    for method in [
        TableMethod::Enumeration,
        TableMethod::MatrixRank,
        TableMethod::PolyGcd,
    ] {
        let table = params.table(method)?;
        println!("\nby {}:", method.as_str());
        println!("{}", table.to_csv());
    }

    // The three always agree; print the canonical JSON form once.
    let table = params.table(TableMethod::Enumeration)?;
    println!("\nJSON record:\n{}", table.to_json());

    // Per-cell queries use the same three routes.
    println!(
        "\n(0,0) by enumeration / rank / gcd: {} / {} / {}",
        params.number_by_enumeration(0, 0)?,
        params.number_by_matrix_rank(0, 0)?,
        params.number_by_gcd(0, 0)?,
    );
    Ok(())
}
