//! Ideal-witness constructions: explicit low-degree members of
//! J = (φ_0, ψ) that certify upper bounds on (a, b) constructively. Every
//! witness carries cofactors (u, v) and re-verifies u·φ_0 + v·ψ = witness.
//!
//! ```bash
//! cargo run --example ideal_witnesses
//! ```

use cyclotome::bounds::{
    build_f_prop52, build_phi_i, build_prop51_witness, min_degree_in_j, prop52_valid_ts,
};
use cyclotome::cyclotomy::CycloParams;
use cyclotome::field::FieldContext;

fn main() -> Result<(), cyclotome::Error> {
    // phi_i over GF(5), k = 2: phi_1 = X + 2.
    let ctx = FieldContext::new(5, 1, 0)?;
    let pr = CycloParams::from_order(ctx, 2)?;
    let w = build_phi_i(&pr, 0, 0, 1)?;
    println!("GF(5), k = 2: phi_1 = {}", w.poly);
    println!("  cofactor identity re-verified: {}", w.verify(&pr, 0, 0)?);

    // Degree 2k - 2p witness over GF(49), k = 8, p = 7 (needs p < k, so an
    // extension field).
    let ctx49 = FieldContext::new(7, 2, 0)?;
    let pr49 = CycloParams::from_order(ctx49, 6)?;
    println!("\nGF(49), k = 8, p = 7 (3k/4 <= p < k):");
    for (a, b) in [(0u64, 0u64), (0, 1), (2, 5)] {
        let w = build_prop51_witness(&pr49, a, b)?;
        let actual = min_degree_in_j(&pr49, a, b)?;
        println!(
            "  (a,b) = ({a},{b}): witness degree {:?} (= 2k − 2p), (a,b) = {actual} <= {}",
            w.poly.degree(),
            w.degree_bound
        );
    }

    // Combined witness f over GF(121), k = 8: 9 < 11 < 12 admits t = 1;
    // deg f = m off the diagonal and m − 1 on it.
    let ctx121 = FieldContext::new(11, 2, 0)?;
    let pr121 = CycloParams::from_order(ctx121, 15)?;
    let ts = prop52_valid_ts(11, 8);
    println!("\nGF(121), k = 8: admissible t = {ts:?}, m = 4");
    for (a, b) in [(0u64, 1u64), (3, 3)] {
        let w = build_f_prop52(&pr121, a, b, ts[0])?;
        println!(
            "  (a,b) = ({a},{b}): deg f = {:?}, table entry {} <= {}",
            w.poly.degree(),
            pr121.number_by_enumeration(a, b)?,
            w.degree_bound
        );
    }
    Ok(())
}
