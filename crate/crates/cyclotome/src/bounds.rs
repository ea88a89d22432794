//! Machine verification of the upper bounds on cyclotomic numbers.
//!
//! The bounds come in three flavors, and each gets a checkable predicate:
//!
//! * Threshold bounds — when the characteristic is large next to `k`
//!   (`2p > 3k − 2`, resp. `2p > 3k`), every `(a, b)` is at most `⌈k/2⌉`
//!   and the diagonal improves to `⌈k/2⌉ − 1`.
//! * Asymptotic behaviour of `(0, 0)` — for `p` large it settles at `2`
//!   when `6 | k` and `0` otherwise; finitely many characteristics deviate,
//!   all dividing the integer determinant of the `k×k` matrix `C^(0,0)`,
//!   which [`bad_prime_certificate`] computes and factors.
//! * Ideal witnesses — explicit low-degree members of the ideal
//!   `J = (φ_0, ψ)`; since `(a, b)` is the least degree of a nonzero member
//!   of `J`, each witness certifies an upper bound constructively. Every
//!   witness carries its cofactor pair `(u, v)` and re-verifies
//!   `u·φ_0 + v·ψ = witness` on demand.
//!
//! A predicate record never conflates "hypothesis failed" with "conclusion
//! failed": a violation is a point where the hypothesis held and the
//! conclusion did not, and the suites assert there are none.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::binomial::{
    bareiss_det, binom_exact, binom_row_mod_p, int_matrix_rank, IntMatrix,
};
use crate::cyclotomy::{CycloParams, CycloTable, TableMethod};
use crate::field::FieldContext;
use crate::poly::Poly;
use crate::{Error, Limits, Result};

/// `⌈k/2⌉`.
pub fn ceil_half(k: u64) -> u64 {
    k.div_ceil(2)
}

/// The named predicates a sweep records per parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredicateName {
    #[serde(rename = "thm-i")]
    ThmI,
    #[serde(rename = "thm-ii")]
    ThmII,
    #[serde(rename = "thm-iii")]
    ThmIII,
    #[serde(rename = "thm-iv")]
    ThmIV,
    #[serde(rename = "thm-v")]
    ThmV,
    #[serde(rename = "prop-5.1")]
    Prop51,
    #[serde(rename = "prop-5.2-ab")]
    Prop52Ab,
    #[serde(rename = "prop-5.2-aa")]
    Prop52Aa,
}

impl PredicateName {
    pub fn as_str(self) -> &'static str {
        match self {
            PredicateName::ThmI => "thm-i",
            PredicateName::ThmII => "thm-ii",
            PredicateName::ThmIII => "thm-iii",
            PredicateName::ThmIV => "thm-iv",
            PredicateName::ThmV => "thm-v",
            PredicateName::Prop51 => "prop-5.1",
            PredicateName::Prop52Ab => "prop-5.2-ab",
            PredicateName::Prop52Aa => "prop-5.2-aa",
        }
    }
}

/// A table cell exhibiting the extreme value a predicate looked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellWitness {
    pub a: u64,
    pub b: u64,
    pub value: u64,
}

/// One predicate evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPredicate {
    pub name: PredicateName,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub witness: Option<CellWitness>,
}

impl BoundPredicate {
    /// A violation is a failed conclusion under a satisfied hypothesis.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_holds && !self.conclusion_holds
    }
}

/// Evaluates the three threshold bounds on a precomputed table.
///
/// In even characteristic every hypothesis is reported false: the bounds
/// assume an odd prime power, so `p = 2` is out of scope rather than a
/// violation.
pub fn theorem_bound_records(params: &CycloParams, table: &CycloTable) -> Vec<BoundPredicate> {
    let p = params.ctx().p();
    let k = params.k();
    let odd = p != 2;
    let half = ceil_half(k);

    let (ma, mb, mv) = table.argmax();
    let i = BoundPredicate {
        name: PredicateName::ThmI,
        hypothesis_holds: odd && 2 * p > 3 * k - 2,
        conclusion_holds: mv <= half,
        witness: Some(CellWitness { a: ma, b: mb, value: mv }),
    };

    let (da, dv) = table.diagonal_max();
    let ii = BoundPredicate {
        name: PredicateName::ThmII,
        hypothesis_holds: odd && k % 2 == 1 && 2 * p > 3 * k,
        conclusion_holds: dv < half,
        witness: Some(CellWitness { a: da, b: da, value: dv }),
    };

    let zz = table.entry(0, 0);
    let iii = BoundPredicate {
        name: PredicateName::ThmIII,
        hypothesis_holds: odd && 2 * p > 3 * k,
        conclusion_holds: zz < half,
        witness: Some(CellWitness { a: 0, b: 0, value: zz }),
    };

    vec![i, ii, iii]
}

/// Computes the enumeration table for `params` and evaluates the threshold
/// bounds on it.
pub fn check_theorem_bounds(params: &CycloParams) -> Result<Vec<BoundPredicate>> {
    let table = params.table(TableMethod::Enumeration)?;
    Ok(theorem_bound_records(params, &table))
}

/// One prime's worth of `(0, 0)` data for a fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticRecord {
    pub k: u64,
    pub p: u64,
    pub q: u64,
    pub n: u32,
    pub lambda: u64,
    pub expected: u64,
    pub deviates: bool,
}

/// Evaluates `(0, 0)` at every odd prime `p ≤ p_max` with `k | p − 1`
/// (prime fields only) and compares it to its large-`p` value, `2` when
/// `6 | k` and `0` otherwise. Deviations are data — "bad primes" — not
/// violations, because no effective threshold for "large" is available.
pub fn check_asymptotic_00(k: u64, p_max: u64, seed: u64) -> Result<Vec<AsymptoticRecord>> {
    let expected = if k.is_multiple_of(6) { 2 } else { 0 };
    let mut records = Vec::new();
    for p in arith::primes_up_to(p_max) {
        if p == 2 || (p - 1) % k != 0 {
            continue;
        }
        let ctx = FieldContext::new(p, 1, seed)?;
        let params = CycloParams::from_coset_size(ctx, k)?;
        let lambda = params.number_by_enumeration(0, 0)?;
        records.push(AsymptoticRecord {
            k,
            p,
            q: p,
            n: 1,
            lambda,
            expected,
            deviates: lambda != expected,
        });
    }
    Ok(records)
}

/// The matrix `C^(0,0)` read over the integers: ones on the diagonal and
/// `binom(k, |i−j|)` off it. (With `a = b = 0` both β and γ are 1, so the
/// entries are plain integers.)
pub fn integer_c00_matrix(k: u64) -> IntMatrix {
    let k = k as usize;
    let binoms: Vec<BigInt> = (0..k as u64)
        .map(|d| BigInt::from(binom_exact(k as u64, d as i64)))
        .collect();
    let rows = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        binoms[i.abs_diff(j)].clone()
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows)
}

/// Rank of the integer `C^(0,0)` over the rationals, by fraction-free
/// elimination: `k − 2` exactly when `6 | k`, else full rank `k`.
pub fn rational_rank_c00(k: u64, limits: &Limits) -> Result<usize> {
    if k > limits.det_size_limit {
        return Err(Error::DetSizeLimit {
            size: k,
            limit: limits.det_size_limit,
        });
    }
    Ok(int_matrix_rank(&integer_c00_matrix(k)))
}

/// Certificate bounding the set of bad primes for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `det C^(0,0) = 0` over the integers (the `6 | k` case); no single
    /// integer bounds the bad primes.
    RankDeficient,
    /// `|det C^(0,0)|`, with its best-effort prime factorization. Every
    /// characteristic where `(0, 0) > 0` divides `value`.
    Determinant {
        value: BigUint,
        factors: Vec<(BigUint, u32)>,
        unfactored: Option<BigUint>,
    },
}

/// `|det C^(0,0)|` over the integers, factored as far as the effort budget
/// allows, or the rank-deficiency marker when the determinant vanishes.
pub fn bad_prime_certificate(k: u64, limits: &Limits) -> Result<Certificate> {
    if k > limits.det_size_limit {
        return Err(Error::DetSizeLimit {
            size: k,
            limit: limits.det_size_limit,
        });
    }
    let det = bareiss_det(&integer_c00_matrix(k));
    if det.is_zero() {
        return Ok(Certificate::RankDeficient);
    }
    let value = det.abs().to_biguint().expect("nonnegative");
    let partial = arith::factor_biguint_best_effort(&value);
    Ok(Certificate::Determinant {
        value,
        factors: partial.factors,
        unfactored: partial.unfactored,
    })
}

/// Which construction produced an ideal witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Phi0,
    PhiI { i: u64 },
    Prop52F { t: u32 },
    Prop51,
}

/// A certified member of the ideal `J = (φ_0, ψ)`: the polynomial together
/// with the cofactor pair that proves membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness {
    pub kind: WitnessKind,
    pub poly: Poly,
    /// The degree the construction guarantees; `poly` never exceeds it.
    pub degree_bound: usize,
    cofactor_u: Poly,
    cofactor_v: Poly,
}

impl IdealWitness {
    pub fn cofactors(&self) -> (&Poly, &Poly) {
        (&self.cofactor_u, &self.cofactor_v)
    }

    /// Recomputes `u·φ_0 + v·ψ` from scratch and compares it against the
    /// stored polynomial.
    pub fn verify(&self, params: &CycloParams, a: u64, b: u64) -> Result<bool> {
        let phi0 = params.phi0(a, b);
        let psi = params.psi(a);
        let lhs = self
            .cofactor_u
            .mul(&phi0)?
            .add(&self.cofactor_v.mul(&psi)?)?;
        Ok(lhs == self.poly)
    }
}

/// `φ_0 = φ − ψ` as a witness with the trivial cofactors `(1, 0)`.
pub fn build_phi0_witness(params: &CycloParams, a: u64, b: u64) -> IdealWitness {
    let ctx = params.ctx();
    let poly = params.phi0(a, b);
    let degree_bound = params.k() as usize - 1;
    IdealWitness {
        kind: WitnessKind::Phi0,
        cofactor_u: Poly::constant(ctx, ctx.one()),
        cofactor_v: Poly::zero(ctx),
        degree_bound: degree_bound.max(poly.degree().unwrap_or(0)),
        poly,
    }
}

/// `φ_i = X^i·φ_0 − ψ·Σ_{j<i} binom(k, i−j)X^j`, which collapses to
/// `γX^i + βΣ_{j<i} binom(k, i−j)X^j + Σ_{j>i} binom(k, j−i)X^j` and hence
/// has degree at most `k − 1`. Both routes are computed and compared.
pub fn build_phi_i(params: &CycloParams, a: u64, b: u64, i: u64) -> Result<IdealWitness> {
    let k = params.k();
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange {
            name: "i",
            value: i,
            bound: k,
        });
    }
    let ctx = params.ctx();
    let binoms = binom_row_mod_p(k, ctx.p());
    let beta = params.beta(a);
    let gamma = params.gamma(a, b);

    // Closed form.
    let mut coeffs = vec![ctx.zero(); k as usize];
    for j in 0..i {
        coeffs[j as usize] = ctx.mul_residue(&beta, binoms[(i - j) as usize]);
    }
    coeffs[i as usize] = gamma;
    for j in i + 1..k {
        coeffs[j as usize] = ctx.from_residue(binoms[(j - i) as usize]);
    }
    let closed = Poly::from_coeffs(ctx, coeffs);

    // Definition via the cofactors.
    let u = Poly::x_power(ctx, i as usize);
    let v = {
        let coeffs = (0..i)
            .map(|j| ctx.neg(&ctx.from_residue(binoms[(i - j) as usize])))
            .collect();
        Poly::from_coeffs(ctx, coeffs)
    };
    let witness = IdealWitness {
        kind: WitnessKind::PhiI { i },
        poly: closed,
        degree_bound: k as usize - 1,
        cofactor_u: u,
        cofactor_v: v,
    };
    if !witness.verify(params, a, b)? {
        return Err(Error::WitnessCheck(format!(
            "phi_{i} closed form disagrees with X^{i}·phi_0 − ψ·Σ at (a, b) = ({a}, {b})"
        )));
    }
    if witness.poly.degree().is_some_and(|d| d > k as usize - 1) {
        return Err(Error::WitnessCheck(format!("deg phi_{i} exceeds k − 1")));
    }
    Ok(witness)
}

/// All `t ≥ 1` with `k + 1 < p^t < 3k/2`, the admissible exponents for the
/// combined witness `f`.
pub fn prop52_valid_ts(p: u64, k: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut pt = p as u128;
    let mut t = 1u32;
    while 2 * pt < 3 * k as u128 {
        if pt > (k + 1) as u128 {
            out.push(t);
        }
        pt *= p as u128;
        t += 1;
    }
    out
}

/// `3k/4 ≤ p < k`, the hypothesis of the degree-`2k−2p` witness.
pub fn prop51_hypothesis(p: u64, k: u64) -> bool {
    4 * p >= 3 * k && p < k
}

/// Builds `f = Σ_{i=0}^{m} binom(p^t−k, m−i)·φ_i` with `m = ⌊k/2⌋` and
/// certifies the coefficient collapse that gives it degree `m` (or `m − 1`
/// on the diagonal, where the top coefficient `γ − 1` vanishes):
///
/// * every high coefficient reduces to `binom(p^t, m+k−l)`, checked first
///   as an exact integer Vandermonde convolution and then as zero mod `p`;
/// * the coefficient at `m` is `γ − 1`;
/// * on the diagonal the coefficient at `m − 1` is `βk ≠ 0`.
pub fn build_f_prop52(params: &CycloParams, a: u64, b: u64, t: u32) -> Result<IdealWitness> {
    let ctx = params.ctx();
    let p = ctx.p();
    let k = params.k();
    let pt = (p as u128).pow(t);
    if !(pt > (k + 1) as u128 && 2 * pt < 3 * k as u128) {
        return Err(Error::HypothesisFails {
            hypothesis: "k + 1 < p^t < 3k/2",
            p,
            k,
        });
    }
    let pt = pt as u64;
    let m = k / 2;

    // Integer coefficients binom(p^t − k, m − i); p^t − k ≤ m so the tail
    // of the row is genuinely nonzero.
    let c: Vec<BigUint> = (0..=m)
        .map(|i| binom_exact(pt - k, (m - i) as i64))
        .collect();

    // Exact Vandermonde collapse for every coefficient above m:
    // Σ_i binom(p^t−k, m−i)·binom(k, l−i) = binom(p^t, m+k−l).
    for l in m + 1..k {
        let sum: BigUint = (0..=m)
            .map(|i| &c[i as usize] * binom_exact(k, l as i64 - i as i64))
            .sum();
        let rhs = binom_exact(pt, (m + k - l) as i64);
        if sum != rhs {
            return Err(Error::WitnessCheck(format!(
                "Vandermonde convolution failed at l = {l} for (q, k, t) = ({}, {k}, {t})",
                ctx.q()
            )));
        }
    }

    // Assemble f and its cofactors from the phi_i witnesses.
    let mut f = build_phi0_witness(params, a, b)
        .poly
        .scale(&ctx.from_residue(residue(&c[0], p)));
    let mut u = Poly::constant(ctx, ctx.from_residue(residue(&c[0], p)));
    let mut v = Poly::zero(ctx);
    for i in 1..=m {
        let ci = ctx.from_residue(residue(&c[i as usize], p));
        if ci.is_zero() {
            continue;
        }
        let phi_i = build_phi_i(params, a, b, i)?;
        f = f.add(&phi_i.poly.scale(&ci))?;
        let (ui, vi) = phi_i.cofactors();
        u = u.add(&ui.scale(&ci))?;
        v = v.add(&vi.scale(&ci))?;
    }

    let gamma = params.gamma(a, b);
    let beta = params.beta(a);
    let gamma_is_one = ctx.is_one(&gamma);

    // High coefficients vanish mod p (binom(p^t, j) ≡ 0 for 0 < j < p^t).
    for l in m + 1..k {
        if !f.coeff(l as usize).is_zero() {
            return Err(Error::WitnessCheck(format!(
                "coefficient a_{l} of f did not vanish mod p"
            )));
        }
    }
    let a_m = f.coeff(m as usize);
    let gamma_minus_one = ctx.sub(&gamma, &ctx.one());
    if a_m != gamma_minus_one {
        return Err(Error::WitnessCheck("a_m != γ − 1".into()));
    }
    let expected_degree = if gamma_is_one {
        let a_m1 = f.coeff(m as usize - 1);
        let beta_k = ctx.mul_residue(&beta, k % p);
        if a_m1 != beta_k {
            return Err(Error::WitnessCheck("a_{m−1} != βk on the diagonal".into()));
        }
        m as usize - 1
    } else {
        m as usize
    };
    if f.degree() != Some(expected_degree) {
        return Err(Error::WitnessCheck(format!(
            "deg f = {:?}, expected {expected_degree}",
            f.degree()
        )));
    }

    let witness = IdealWitness {
        kind: WitnessKind::Prop52F { t },
        poly: f,
        degree_bound: expected_degree,
        cofactor_u: u,
        cofactor_v: v,
    };
    if !witness.verify(params, a, b)? {
        return Err(Error::WitnessCheck(
            "f disagrees with its cofactor expansion".into(),
        ));
    }
    Ok(witness)
}

fn residue(v: &BigUint, p: u64) -> u64 {
    (v % BigUint::from(p)).try_into().unwrap()
}

/// Builds `X^{k−p}·φ_0 − Σ_{i=p}^{k−1} binom(k,i)·ψ·X^{i−p}` under
/// `3k/4 ≤ p < k`. The middle binomials `binom(k, i)` vanish mod `p` for
/// `k−p+1 ≤ i ≤ p−1`, the leading coefficient `binom(k, k−p)` does not,
/// and the witness has degree exactly `2k − 2p`.
pub fn build_prop51_witness(params: &CycloParams, a: u64, b: u64) -> Result<IdealWitness> {
    let ctx = params.ctx();
    let p = ctx.p();
    let k = params.k();
    if !prop51_hypothesis(p, k) {
        return Err(Error::HypothesisFails {
            hypothesis: "3k/4 <= p < k",
            p,
            k,
        });
    }
    let binoms = binom_row_mod_p(k, p);
    for i in (k - p + 1)..p {
        if binoms[i as usize] != 0 {
            return Err(Error::WitnessCheck(format!(
                "binom({k}, {i}) expected to vanish mod {p}"
            )));
        }
    }
    if binoms[(k - p) as usize] == 0 {
        return Err(Error::WitnessCheck(format!(
            "leading coefficient binom({k}, {}) vanished mod {p}",
            k - p
        )));
    }

    let gamma = params.gamma(a, b);
    let beta = params.beta(a);
    let deg = (2 * (k - p)) as usize;

    // Closed form: γX^{k−p} + Σ_{i=1}^{k−p} binom(k,i)X^{i+k−p}
    //            + βΣ_{i=p}^{k−1} binom(k,i)X^{i−p}.
    let mut coeffs = vec![ctx.zero(); deg + 1];
    coeffs[(k - p) as usize] = gamma;
    for i in 1..=(k - p) {
        coeffs[(i + k - p) as usize] =
            ctx.add(&coeffs[(i + k - p) as usize], &ctx.from_residue(binoms[i as usize]));
    }
    for i in p..k {
        let idx = (i - p) as usize;
        let term = ctx.mul_residue(&beta, binoms[i as usize]);
        coeffs[idx] = ctx.add(&coeffs[idx], &term);
    }
    let closed = Poly::from_coeffs(ctx, coeffs);

    let u = Poly::x_power(ctx, (k - p) as usize);
    let v = {
        let coeffs = (p..k)
            .map(|i| ctx.neg(&ctx.from_residue(binoms[i as usize])))
            .collect();
        Poly::from_coeffs(ctx, coeffs)
    };
    let witness = IdealWitness {
        kind: WitnessKind::Prop51,
        poly: closed,
        degree_bound: deg,
        cofactor_u: u,
        cofactor_v: v,
    };
    if !witness.verify(params, a, b)? {
        return Err(Error::WitnessCheck(
            "prop 5.1 witness disagrees with its cofactor expansion".into(),
        ));
    }
    if witness.poly.degree() != Some(deg) {
        return Err(Error::WitnessCheck(format!(
            "prop 5.1 witness degree {:?}, expected {deg}",
            witness.poly.degree()
        )));
    }
    Ok(witness)
}

/// The least degree of a nonzero member of `J = (φ_0, ψ)`. Polynomials
/// over a field form a principal ideal domain, so this is the degree of
/// `gcd(φ_0, ψ)` — which equals `gcd(φ, ψ)` and hence `(a, b)`.
pub fn min_degree_in_j(params: &CycloParams, a: u64, b: u64) -> Result<usize> {
    let gcd = params.phi0(a, b).gcd(&params.psi(a))?;
    Ok(gcd.degree().expect("ψ ≠ 0, so the gcd is nonzero"))
}
