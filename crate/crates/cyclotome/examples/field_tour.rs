//! Construct prime and extension fields, find their canonical primitive
//! elements, and check the basic group facts.
//!
//! ```bash
//! cargo run --example field_tour
//! ```

use cyclotome::field::FieldContext;

fn main() -> Result<(), cyclotome::Error> {
    for (p, n) in [(7u64, 1usize), (5, 1), (3, 2), (3, 4), (7, 2)] {
        let ctx = FieldContext::new(p, n, 0)?;
        let alpha = ctx.primitive_element()?;
        println!("GF({}) = {}", ctx.q(), ctx.canonical_text());
        println!("  primitive element: {alpha}");
        println!("  order of alpha:    {}", ctx.element_order(&alpha)?);

        // Lagrange: every nonzero element killed by q - 1.
        let all_unit = ctx
            .elements()
            .skip(1)
            .all(|x| ctx.is_one(&ctx.pow(&x, ctx.q() - 1)));
        println!("  x^(q-1) = 1 for all x != 0: {all_unit}");
    }

    // The same (p, n, seed) always reproduces the same field; a different
    // seed may pick a different (isomorphic) model.
    let a = FieldContext::new(3, 2, 0)?;
    let b = FieldContext::new(3, 2, 2)?;
    println!("\nGF(9) modulus with seed 0: {:?}", a.modulus().unwrap());
    println!("GF(9) modulus with seed 2: {:?}", b.modulus().unwrap());
    Ok(())
}
