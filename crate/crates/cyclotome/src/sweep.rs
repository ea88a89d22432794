//! Deterministic parameter sweep over odd prime powers.
//!
//! For every odd prime power `q ≤ q_max` and every divisor `k | q − 1` the
//! sweep computes the enumeration table, checks the exact identities, spot
//! checks the other two algorithms against it, evaluates every bound
//! predicate, builds the ideal witnesses wherever their hypotheses hold,
//! and aggregates everything into a [`ScanReport`].
//!
//! Points are independent pure computations, so the worker pool cannot
//! affect the result: reports from one worker and from eight are
//! byte-identical once the optional timing fields are stripped
//! ([`ScanReport::deterministic_body`]).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::bounds::{
    build_f_prop52, build_prop51_witness, min_degree_in_j, prop51_hypothesis, prop52_valid_ts,
    theorem_bound_records, BoundPredicate, CellWitness, PredicateName,
};
use crate::cyclotomy::{CycloParams, DiscreteLogs, TableMethod};
use crate::field::FieldContext;
use crate::{Limits, Result};

/// Spot-check caps: the rank method is O(k³) per cell and the gcd method
/// O(k²), so cross-validation samples are limited to these coset sizes.
/// The enumeration table itself has no such cap.
const SPOT_RANK_K_CAP: u64 = 60;
const SPOT_GCD_K_CAP: u64 = 500;
/// Off-diagonal cells sampled per table for cross-method agreement.
const SPOT_SAMPLE_CELLS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// What a sweep covers. `k_parity` and `k_only` narrow the divisors
/// visited; every odd prime power `q ≤ q_max` is always visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRange {
    pub q_max: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_parity: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_only: Option<u64>,
}

impl ScanRange {
    pub fn up_to(q_max: u64) -> ScanRange {
        ScanRange {
            q_max,
            k_parity: None,
            k_only: None,
        }
    }

    fn admits(&self, k: u64) -> bool {
        if let Some(parity) = self.k_parity {
            let want_odd = matches!(parity, Parity::Odd);
            if (k % 2 == 1) != want_odd {
                return false;
            }
        }
        if let Some(only) = self.k_only {
            if k != only {
                return false;
            }
        }
        true
    }
}

/// One predicate evaluated at one `(q, k)` point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub e: u64,
    pub k: u64,
    pub predicate: PredicateName,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub witness: Option<CellWitness>,
    pub max_entry: u64,
}

impl PointRecord {
    pub fn is_violation(&self) -> bool {
        self.hypothesis && !self.conclusion
    }
}

/// A point where a bound held with equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightInstance {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub e: u64,
    pub k: u64,
    pub predicate: PredicateName,
    pub a: u64,
    pub b: u64,
    pub value: u64,
}

/// A characteristic at which `(0, 0)` deviates from its large-`p` value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrimeRecord {
    pub k: u64,
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub lambda: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub points: u64,
    pub records: u64,
    pub violations: u64,
    pub tight_instances: u64,
    pub bad_primes: u64,
    pub identity_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTiming {
    pub total_ms: u64,
    pub parallelism: usize,
}

/// The aggregated result of a sweep. Serialize with [`ScanReport::to_json`];
/// strip the run-specific fields with [`ScanReport::deterministic_body`]
/// when comparing runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub range: ScanRange,
    pub summary: Summary,
    /// Failed exact identities (always empty unless the implementation is
    /// broken); violations are bound failures under a true hypothesis.
    pub identity_failures: Vec<String>,
    pub violations: Vec<PointRecord>,
    pub tight_instances: Vec<TightInstance>,
    pub bad_primes: Vec<BadPrimeRecord>,
    pub records: Vec<PointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<SweepTiming>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
}

impl ScanReport {
    /// The report with run-specific fields (timing, timestamp) removed;
    /// two sweeps over the same range agree on these bytes regardless of
    /// parallelism.
    pub fn deterministic_body(&self) -> ScanReport {
        let mut body = self.clone();
        body.timing = None;
        body.generated_at = None;
        body
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        out.push_str(&format!(
            "sweep q <= {}: {} points, {} records\n",
            self.range.q_max, s.points, s.records
        ));
        out.push_str(&format!(
            "violations: {}   identity failures: {}\n",
            s.violations, s.identity_failures
        ));
        out.push_str(&format!(
            "tight instances: {}   bad primes: {}\n",
            s.tight_instances, s.bad_primes
        ));
        for v in &self.violations {
            out.push_str(&format!(
                "VIOLATION {} at q={} k={} witness={:?}\n",
                v.predicate.as_str(),
                v.q,
                v.k,
                v.witness
            ));
        }
        for f in &self.identity_failures {
            out.push_str(&format!("IDENTITY FAILURE {f}\n"));
        }
        for t in self.tight_instances.iter().take(20) {
            out.push_str(&format!(
                "tight {} at q={} k={} cell=({}, {}) value={}\n",
                t.predicate.as_str(),
                t.q,
                t.k,
                t.a,
                t.b,
                t.value
            ));
        }
        if self.tight_instances.len() > 20 {
            out.push_str(&format!(
                "... {} more tight instances\n",
                self.tight_instances.len() - 20
            ));
        }
        out
    }
}

#[derive(Debug, Default)]
struct PointOutput {
    points: u64,
    records: Vec<PointRecord>,
    tights: Vec<TightInstance>,
    bads: Vec<BadPrimeRecord>,
    failures: Vec<String>,
}

/// Runs the sweep with the given worker count. Deterministic: the report
/// body depends only on `(range, seed, limits)`.
pub fn sweep(range: &ScanRange, parallelism: usize, seed: u64, limits: &Limits) -> Result<ScanReport> {
    let start = std::time::Instant::now();
    let qs = arith::odd_prime_powers_up_to(range.q_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .expect("thread pool");
    let outputs: Result<Vec<PointOutput>> = pool.install(|| {
        qs.par_iter()
            .map(|&(q, p, n)| sweep_point(q, p, n, range, seed, limits))
            .collect()
    });
    let outputs = outputs?;

    let mut records = Vec::new();
    let mut tights = Vec::new();
    let mut bads = Vec::new();
    let mut failures = Vec::new();
    let mut points = 0;
    for out in outputs {
        points += out.points;
        records.extend(out.records);
        tights.extend(out.tights);
        bads.extend(out.bads);
        failures.extend(out.failures);
    }
    let violations: Vec<PointRecord> = records.iter().filter(|r| r.is_violation()).cloned().collect();
    let summary = Summary {
        points,
        records: records.len() as u64,
        violations: violations.len() as u64,
        tight_instances: tights.len() as u64,
        bad_primes: bads.len() as u64,
        identity_failures: failures.len() as u64,
    };
    Ok(ScanReport {
        schema_version: 1,
        range: *range,
        summary,
        identity_failures: failures,
        violations,
        tight_instances: tights,
        bad_primes: bads,
        records,
        timing: Some(SweepTiming {
            total_ms: start.elapsed().as_millis() as u64,
            parallelism: parallelism.max(1),
        }),
        generated_at: None,
    })
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic off-diagonal sample cells for cross-method spot checks.
fn spot_cells(q: u64, k: u64, e: u64) -> Vec<(u64, u64)> {
    let mut state = q.wrapping_mul(0x0123_4567_89AB_CDEF) ^ k.rotate_left(17);
    (0..SPOT_SAMPLE_CELLS)
        .map(|_| {
            let a = splitmix64(&mut state) % e;
            let b = splitmix64(&mut state) % e;
            (a, b)
        })
        .collect()
}

fn sweep_point(
    q: u64,
    p: u64,
    n: u32,
    range: &ScanRange,
    seed: u64,
    limits: &Limits,
) -> Result<PointOutput> {
    let ctx = FieldContext::with_limits(p, n as usize, seed, *limits)?;
    let alpha = ctx.primitive_element()?;
    let dlogs = std::sync::Arc::new(DiscreteLogs::build(&ctx, &alpha)?);
    let mut out = PointOutput::default();

    for k in arith::divisors(q - 1)? {
        if !range.admits(k) {
            continue;
        }
        let e = (q - 1) / k;
        let params =
            CycloParams::new(ctx.clone(), alpha.clone(), e)?.with_shared_dlogs(dlogs.clone());
        let table = params.table(TableMethod::Enumeration)?;
        out.points += 1;
        let fail = |msg: String, out: &mut PointOutput| {
            out.failures.push(format!("q={q} k={k}: {msg}"));
        };

        // Exact identities on the full table.
        if !table.sum_identities_hold() {
            fail("sum identities failed".into(), &mut out);
        }
        if !table.variance_identity_holds() {
            fail("variance identity failed".into(), &mut out);
        }
        if !table.remark_bound_holds() {
            fail("entrywise deviation bound failed".into(), &mut out);
        }
        match table.row_sums_match(&params) {
            Ok(true) => {}
            Ok(false) => fail("row sums failed".into(), &mut out),
            Err(e) => fail(format!("row sum check error: {e}"), &mut out),
        }

        // Cross-method agreement on the diagonal plus a deterministic
        // sample, within the per-method cost caps.
        let mut cells: Vec<(u64, u64)> = (0..e).map(|a| (a, a)).collect();
        cells.extend(spot_cells(q, k, e));
        for &(a, b) in &cells {
            let expected = table.entry(a, b);
            if k <= SPOT_RANK_K_CAP && k <= limits.k_matrix_limit {
                match params.number_by_matrix_rank(a, b) {
                    Ok(v) if v == expected => {}
                    Ok(v) => fail(
                        format!("rank method gave {v} != {expected} at ({a}, {b})"),
                        &mut out,
                    ),
                    Err(e) => fail(format!("rank method error: {e}"), &mut out),
                }
            }
            if k <= SPOT_GCD_K_CAP {
                match params.number_by_gcd(a, b) {
                    Ok(v) if v == expected => {}
                    Ok(v) => fail(
                        format!("gcd method gave {v} != {expected} at ({a}, {b})"),
                        &mut out,
                    ),
                    Err(e) => fail(format!("gcd method error: {e}"), &mut out),
                }
                match min_degree_in_j(&params, a, b) {
                    Ok(d) if d as u64 == expected => {}
                    Ok(d) => fail(
                        format!("min degree in J gave {d} != {expected} at ({a}, {b})"),
                        &mut out,
                    ),
                    Err(e) => fail(format!("min degree error: {e}"), &mut out),
                }
            }
        }

        let push = |name: PredicateName,
                    pred: &BoundPredicate,
                    bound: u64,
                    out: &mut PointOutput| {
            out.records.push(PointRecord {
                q,
                p,
                n,
                e,
                k,
                predicate: name,
                hypothesis: pred.hypothesis_holds,
                conclusion: pred.conclusion_holds,
                witness: pred.witness,
                max_entry: table.max_entry(),
            });
            if pred.hypothesis_holds && pred.conclusion_holds {
                if let Some(w) = pred.witness {
                    if w.value == bound {
                        out.tights.push(TightInstance {
                            q,
                            p,
                            n,
                            e,
                            k,
                            predicate: name,
                            a: w.a,
                            b: w.b,
                            value: w.value,
                        });
                    }
                }
            }
        };

        // Threshold bounds; equality against the bound marks a tight point.
        let half = k.div_ceil(2);
        let thm = theorem_bound_records(&params, &table);
        push(PredicateName::ThmI, &thm[0], half, &mut out);
        push(PredicateName::ThmII, &thm[1], half.saturating_sub(1), &mut out);
        push(PredicateName::ThmIII, &thm[2], half.saturating_sub(1), &mut out);

        // Large-p value of (0,0): non-effective hypothesis, so deviations
        // are recorded as bad primes rather than violations.
        let lambda = table.entry(0, 0);
        let (asym_name, expected) = if k % 6 == 0 {
            (PredicateName::ThmIV, 2)
        } else {
            (PredicateName::ThmV, 0)
        };
        out.records.push(PointRecord {
            q,
            p,
            n,
            e,
            k,
            predicate: asym_name,
            hypothesis: false,
            conclusion: lambda == expected,
            witness: Some(CellWitness { a: 0, b: 0, value: lambda }),
            max_entry: table.max_entry(),
        });
        if lambda != expected {
            out.bads.push(BadPrimeRecord {
                k,
                q,
                p,
                n,
                lambda,
                expected,
            });
        }

        // Degree-(2k−2p) witness: hypothesis 3k/4 ≤ p < k.
        let m = k / 2;
        let hyp51 = prop51_hypothesis(p, k);
        let (xa, xb, xv) = table.argmax();
        out.records.push(PointRecord {
            q,
            p,
            n,
            e,
            k,
            predicate: PredicateName::Prop51,
            hypothesis: hyp51,
            conclusion: table.max_entry() <= m,
            witness: Some(CellWitness { a: xa, b: xb, value: xv }),
            max_entry: table.max_entry(),
        });
        if hyp51 {
            for a in 0..e {
                for b in 0..e {
                    match build_prop51_witness(&params, a, b) {
                        Ok(w) => {
                            if table.entry(a, b) as usize > w.degree_bound {
                                fail(
                                    format!(
                                        "(a,b)=({a},{b}) exceeds prop 5.1 witness degree {}",
                                        w.degree_bound
                                    ),
                                    &mut out,
                                );
                            }
                        }
                        Err(err) => {
                            fail(format!("prop 5.1 witness at ({a}, {b}): {err}"), &mut out)
                        }
                    }
                }
            }
        }

        // Combined witness f: hypothesis k+1 < p^t < 3k/2 for some t.
        let ts = prop52_valid_ts(p, k);
        let hyp52 = !ts.is_empty();
        out.records.push(PointRecord {
            q,
            p,
            n,
            e,
            k,
            predicate: PredicateName::Prop52Ab,
            hypothesis: hyp52,
            conclusion: table.max_entry() <= m,
            witness: Some(CellWitness { a: xa, b: xb, value: xv }),
            max_entry: table.max_entry(),
        });
        let (da, dv) = table.diagonal_max();
        out.records.push(PointRecord {
            q,
            p,
            n,
            e,
            k,
            predicate: PredicateName::Prop52Aa,
            hypothesis: hyp52,
            conclusion: dv < m || (dv == 0 && m == 0),
            witness: Some(CellWitness { a: da, b: da, value: dv }),
            max_entry: table.max_entry(),
        });
        for &t in &ts {
            for a in 0..e {
                for b in 0..e {
                    match build_f_prop52(&params, a, b, t) {
                        Ok(w) => {
                            if table.entry(a, b) as usize > w.degree_bound {
                                fail(
                                    format!(
                                        "(a,b)=({a},{b}) exceeds prop 5.2 witness degree {} (t={t})",
                                        w.degree_bound
                                    ),
                                    &mut out,
                                );
                            }
                        }
                        Err(err) => fail(
                            format!("prop 5.2 witness at ({a}, {b}), t={t}: {err}"),
                            &mut out,
                        ),
                    }
                }
            }
        }
    }
    Ok(out)
}
