//! For fixed k, scan the characteristics where (0, 0) deviates from its
//! large-p value, and bound them by the determinant certificate.
//!
//! ```bash
//! cargo run --release --example bad_primes
//! ```

use cyclotome::bounds::{bad_prime_certificate, check_asymptotic_00, Certificate};
use cyclotome::Limits;

fn main() -> Result<(), cyclotome::Error> {
    let limits = Limits::default();
    for k in [1u64, 2, 5, 6, 7, 12] {
        let records = check_asymptotic_00(k, 500, 0)?;
        let deviants: Vec<String> = records
            .iter()
            .filter(|r| r.deviates)
            .map(|r| format!("p = {} ((0,0) = {})", r.p, r.lambda))
            .collect();
        println!(
            "k = {k}: expected (0,0) = {}, {} primes scanned, deviations: {}",
            if k % 6 == 0 { 2 } else { 0 },
            records.len(),
            if deviants.is_empty() {
                "none".to_string()
            } else {
                deviants.join(", ")
            }
        );
        match bad_prime_certificate(k, &limits)? {
            Certificate::RankDeficient => {
                println!("  certificate: det C^(0,0) = 0 (6 | k), no finite certificate");
            }
            Certificate::Determinant { value, factors, unfactored } => {
                let mut parts: Vec<String> = factors
                    .iter()
                    .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{p}^{m}") })
                    .collect();
                if let Some(u) = unfactored {
                    parts.push(format!("<unfactored {} digits>", u.to_string().len()));
                }
                println!(
                    "  certificate: |det C^(0,0)| = {value}{}",
                    if parts.is_empty() {
                        String::new()
                    } else {
                        format!(" = {}", parts.join(" * "))
                    }
                );
            }
        }
    }
    Ok(())
}
