//! Cyclotomic numbers by three independent algorithms.
//!
//! Fix a field `GF(q)`, a primitive element `α`, and a factorization
//! `e·k = q − 1`. The coset `C_a = ⟨α^e⟩α^a` has size `k`, and the
//! cyclotomic number `(a, b) = |C_b ∩ (C_a + 1)|`. Three routes compute it:
//!
//! 1. **Enumeration** — walk `C_a` and test which elements land in `C_b`
//!    after adding one.
//! 2. **Matrix rank** — `(a, b) = k − rank C^(a,b)` for the banded `k×k`
//!    matrix with `1 + α^{ak} − α^{bk}` on the diagonal, `binom(k, j−i)`
//!    above it, and `α^{ak}·binom(k, i−j)` below it.
//! 3. **Polynomial gcd** — `(a, b) = deg gcd((X+1)^k − α^{bk}, X^k − α^{ak})`.
//!
//! The three must agree everywhere; the test suites and the sweep harness
//! enforce that. A table is canonical only relative to `(field, α)`:
//! replacing `α` relabels the cosets and permutes the table.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::binomial::binom_row_mod_p;
use crate::field::{FieldContext, FieldElement};
use crate::poly::Poly;
use crate::{Error, Result};

/// Which algorithm produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableMethod {
    #[serde(rename = "enumeration")]
    Enumeration,
    #[serde(rename = "matrix-rank")]
    MatrixRank,
    #[serde(rename = "poly-gcd")]
    PolyGcd,
}

impl TableMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TableMethod::Enumeration => "enumeration",
            TableMethod::MatrixRank => "matrix-rank",
            TableMethod::PolyGcd => "poly-gcd",
        }
    }
}

/// Discrete logarithms of every nonzero element with respect to a fixed
/// primitive element, indexed by canonical element index. Costs one pass
/// over the field to build; coset membership then becomes `log mod e`.
#[derive(Debug)]
pub struct DiscreteLogs {
    logs: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl DiscreteLogs {
    pub fn build(ctx: &FieldContext, alpha: &FieldElement) -> Result<DiscreteLogs> {
        let q = ctx.q();
        if q > ctx.limits().q_limit {
            return Err(Error::EnumerationLimit {
                q,
                limit: ctx.limits().q_limit,
            });
        }
        let mut logs = vec![NO_LOG; q as usize];
        let mut x = ctx.one();
        for j in 0..q - 1 {
            let idx = ctx.encode(&x) as usize;
            debug_assert_eq!(logs[idx], NO_LOG, "alpha must have order q - 1");
            logs[idx] = j as u32;
            x = ctx.mul(&x, alpha);
        }
        Ok(DiscreteLogs { logs })
    }

    /// Log of the element with canonical index `enc`, or `None` for zero.
    pub fn log_of_index(&self, enc: u64) -> Option<u64> {
        match self.logs[enc as usize] {
            NO_LOG => None,
            j => Some(j as u64),
        }
    }
}

/// A field together with a primitive element and a factorization
/// `e·k = q − 1`; the ambient data every cyclotomic computation needs.
///
/// Immutable and cheap to share; the coset fingerprint table and the
/// discrete-log table are built lazily and cached.
#[derive(Debug, Clone)]
pub struct CycloParams {
    ctx: FieldContext,
    alpha: FieldElement,
    e: u64,
    k: u64,
    fingerprints: Arc<OnceLock<HashMap<u64, u64>>>,
    dlogs: Arc<OnceLock<Arc<DiscreteLogs>>>,
}

impl CycloParams {
    /// Validates `e | q − 1` and that `alpha` generates `GF(q)^×`.
    pub fn new(ctx: FieldContext, alpha: FieldElement, e: u64) -> Result<CycloParams> {
        let q = ctx.q();
        if e == 0 || !(q - 1).is_multiple_of(e) {
            return Err(Error::NotADivisor { divisor: e, of: q - 1 });
        }
        if alpha.is_zero() || ctx.element_order(&alpha)? != q - 1 {
            return Err(Error::NotPrimitive { expected: q - 1 });
        }
        Ok(CycloParams {
            k: (q - 1) / e,
            ctx,
            alpha,
            e,
            fingerprints: Arc::new(OnceLock::new()),
            dlogs: Arc::new(OnceLock::new()),
        })
    }

    /// Cyclotomy of order `e` with the deterministic primitive element.
    pub fn from_order(ctx: FieldContext, e: u64) -> Result<CycloParams> {
        let alpha = ctx.primitive_element()?;
        CycloParams::new(ctx, alpha, e)
    }

    /// Same, fixing the coset size `k` instead of the order `e`.
    pub fn from_coset_size(ctx: FieldContext, k: u64) -> Result<CycloParams> {
        let q = ctx.q();
        if k == 0 || !(q - 1).is_multiple_of(k) {
            return Err(Error::NotADivisor { divisor: k, of: q - 1 });
        }
        let e = (q - 1) / k;
        CycloParams::from_order(ctx, e)
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Canonical serialization of the parameter set; two runs agree on a
    /// table exactly when they agree on this string.
    pub fn fingerprint(&self) -> String {
        let alpha: Vec<String> = self.alpha.coeffs().iter().map(|c| c.to_string()).collect();
        format!(
            "{};alpha={};e={};k={}",
            self.ctx.canonical_text(),
            alpha.join(","),
            self.e,
            self.k
        )
    }

    /// `α^{ak}`, written β in the matrix and polynomial constructions.
    pub fn beta(&self, a: u64) -> FieldElement {
        self.ctx.pow(&self.alpha, (a % self.e) * self.k)
    }

    /// `γ = 1 + α^{ak} − α^{bk}`, the diagonal entry of `C^(a,b)`.
    pub fn gamma(&self, a: u64, b: u64) -> FieldElement {
        let beta_a = self.beta(a);
        let beta_b = self.beta(b);
        self.ctx.sub(&self.ctx.add(&self.ctx.one(), &beta_a), &beta_b)
    }

    fn fingerprint_table(&self) -> &HashMap<u64, u64> {
        self.fingerprints.get_or_init(|| {
            let delta = self.ctx.pow(&self.alpha, self.k);
            let mut table = HashMap::with_capacity(self.e as usize);
            let mut x = self.ctx.one();
            for a in 0..self.e {
                table.insert(self.ctx.encode(&x), a);
                x = self.ctx.mul(&x, &delta);
            }
            table
        })
    }

    /// Shared discrete-log table for `(ctx, alpha)`; built on first use.
    pub fn dlogs(&self) -> Result<Arc<DiscreteLogs>> {
        if let Some(d) = self.dlogs.get() {
            return Ok(d.clone());
        }
        let built = Arc::new(DiscreteLogs::build(&self.ctx, &self.alpha)?);
        Ok(self.dlogs.get_or_init(|| built).clone())
    }

    /// Reuses a discrete-log table already built for the same `(ctx, alpha)`;
    /// the sweep shares one table across every divisor `k` of `q − 1`.
    pub fn with_shared_dlogs(&self, dlogs: Arc<DiscreteLogs>) -> CycloParams {
        let cell = OnceLock::new();
        let _ = cell.set(dlogs);
        CycloParams {
            dlogs: Arc::new(cell),
            fingerprints: Arc::new(OnceLock::new()),
            ..self.clone()
        }
    }

    /// The unique `a` with `x ∈ C_a`, via the fingerprint `x^k = α^{ak}`.
    pub fn coset_index(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElementCoset);
        }
        let fp = self.ctx.encode(&self.ctx.pow(x, self.k));
        self.fingerprint_table()
            .get(&fp)
            .copied()
            .ok_or(Error::ForeignElement)
    }

    fn check_cell(&self, a: u64, b: u64) -> Result<()> {
        if a >= self.e {
            return Err(Error::IndexOutOfRange {
                name: "a",
                value: a,
                bound: self.e,
            });
        }
        if b >= self.e {
            return Err(Error::IndexOutOfRange {
                name: "b",
                value: b,
                bound: self.e,
            });
        }
        Ok(())
    }

    /// `(a, b)` by direct enumeration of `C_a = {α^{a+ej}}`, counting the
    /// members whose successor `x + 1` is nonzero and lies in `C_b`.
    pub fn number_by_enumeration(&self, a: u64, b: u64) -> Result<u64> {
        self.check_cell(a, b)?;
        let q = self.ctx.q();
        if q > self.ctx.limits().q_limit {
            return Err(Error::EnumerationLimit {
                q,
                limit: self.ctx.limits().q_limit,
            });
        }
        let step = self.ctx.pow(&self.alpha, self.e);
        let mut x = self.ctx.pow(&self.alpha, a);
        let one = self.ctx.one();
        let mut count = 0;
        for _ in 0..self.k {
            let succ = self.ctx.add(&x, &one);
            if !succ.is_zero() && self.coset_index(&succ)? == b {
                count += 1;
            }
            x = self.ctx.mul(&x, &step);
        }
        Ok(count)
    }

    /// The banded matrix `C^(a,b)` whose rank deficiency is `(a, b)`.
    pub fn cyclo_matrix(&self, a: u64, b: u64) -> Result<CycloMatrix> {
        self.check_cell(a, b)?;
        let limit = self.ctx.limits().k_matrix_limit;
        if self.k > limit {
            return Err(Error::MatrixLimit { k: self.k, limit });
        }
        let binoms = binom_row_mod_p(self.k, self.ctx.p());
        Ok(self.cyclo_matrix_with_binoms(a, b, &binoms))
    }

    fn cyclo_matrix_with_binoms(&self, a: u64, b: u64, binoms: &[u64]) -> CycloMatrix {
        let k = self.k as usize;
        let beta = self.beta(a);
        let gamma = self.gamma(a, b);
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let entry = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => gamma.clone(),
                    std::cmp::Ordering::Less => self.ctx.from_residue(binoms[j - i]),
                    std::cmp::Ordering::Greater => self.ctx.mul_residue(&beta, binoms[i - j]),
                };
                row.push(entry);
            }
            rows.push(row);
        }
        CycloMatrix { rows }
    }

    /// `(a, b) = k − rank C^(a,b)`, rank by exact Gaussian elimination.
    pub fn number_by_matrix_rank(&self, a: u64, b: u64) -> Result<u64> {
        let mat = self.cyclo_matrix(a, b)?;
        Ok(self.k - mat.rank(&self.ctx) as u64)
    }

    /// `φ(X) = (X+1)^k − α^{bk}`, expanded through exact binomials mod p.
    pub fn phi(&self, b: u64) -> Poly {
        let binoms = binom_row_mod_p(self.k, self.ctx.p());
        self.phi_with_binoms(b, &binoms)
    }

    fn phi_with_binoms(&self, b: u64, binoms: &[u64]) -> Poly {
        let mut coeffs: Vec<FieldElement> = binoms
            .iter()
            .map(|&c| self.ctx.from_residue(c))
            .collect();
        coeffs[0] = self.ctx.sub(&coeffs[0], &self.beta(b));
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// `ψ(X) = X^k − α^{ak}`.
    pub fn psi(&self, a: u64) -> Poly {
        let mut coeffs = vec![self.ctx.zero(); self.k as usize + 1];
        coeffs[0] = self.ctx.neg(&self.beta(a));
        coeffs[self.k as usize] = self.ctx.one();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// `φ_0 = φ − ψ = γ + Σ_{i=1}^{k−1} binom(k,i) X^i`, the low-degree
    /// generator of the ideal used by the witness constructions.
    pub fn phi0(&self, a: u64, b: u64) -> Poly {
        let binoms = binom_row_mod_p(self.k, self.ctx.p());
        let mut coeffs: Vec<FieldElement> = binoms[..self.k as usize]
            .iter()
            .map(|&c| self.ctx.from_residue(c))
            .collect();
        coeffs[0] = self.gamma(a, b);
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// `(a, b)` as the degree of `gcd((X+1)^k − α^{bk}, X^k − α^{ak})`.
    pub fn number_by_gcd(&self, a: u64, b: u64) -> Result<u64> {
        self.check_cell(a, b)?;
        let binoms = binom_row_mod_p(self.k, self.ctx.p());
        let phi = self.phi_with_binoms(b, &binoms);
        let psi = self.psi(a);
        let gcd = phi.gcd(&psi)?;
        Ok(gcd.degree().map_or(0, |d| d as u64))
    }

    /// The full `e×e` table by the selected method.
    pub fn table(&self, method: TableMethod) -> Result<CycloTable> {
        let entries = match method {
            TableMethod::Enumeration => self.table_entries_by_enumeration()?,
            TableMethod::MatrixRank => {
                let limit = self.ctx.limits().k_matrix_limit;
                if self.k > limit {
                    return Err(Error::MatrixLimit { k: self.k, limit });
                }
                let binoms = binom_row_mod_p(self.k, self.ctx.p());
                let mut entries = vec![vec![0u64; self.e as usize]; self.e as usize];
                for a in 0..self.e {
                    for b in 0..self.e {
                        let mat = self.cyclo_matrix_with_binoms(a, b, &binoms);
                        entries[a as usize][b as usize] =
                            self.k - mat.rank(&self.ctx) as u64;
                    }
                }
                entries
            }
            TableMethod::PolyGcd => {
                let binoms = binom_row_mod_p(self.k, self.ctx.p());
                let mut entries = vec![vec![0u64; self.e as usize]; self.e as usize];
                for a in 0..self.e {
                    let psi = self.psi(a);
                    for b in 0..self.e {
                        let phi = self.phi_with_binoms(b, &binoms);
                        let gcd = phi.gcd(&psi)?;
                        entries[a as usize][b as usize] =
                            gcd.degree().map_or(0, |d| d as u64);
                    }
                }
                entries
            }
        };
        Ok(CycloTable {
            q: self.ctx.q(),
            p: self.ctx.p(),
            n: self.ctx.n() as u32,
            e: self.e,
            k: self.k,
            alpha: self.alpha.coeffs().to_vec(),
            method,
            entries,
            fingerprint: self.fingerprint(),
        })
    }

    /// One pass over the field: for each `x ≠ 0` with `x + 1 ≠ 0`, bump the
    /// cell `(coset(x), coset(x+1))`. Adding one only changes the lowest
    /// base-p digit of the canonical index, so the pass stays integer-only.
    fn table_entries_by_enumeration(&self) -> Result<Vec<Vec<u64>>> {
        let dlogs = self.dlogs()?;
        let p = self.ctx.p();
        let q = self.ctx.q();
        let e = self.e;
        let mut entries = vec![vec![0u64; e as usize]; e as usize];
        for t in 1..q {
            let succ = if t % p == p - 1 { t + 1 - p } else { t + 1 };
            if succ == 0 {
                continue;
            }
            let a = dlogs.log_of_index(t).expect("nonzero element has a log") % e;
            let b = dlogs.log_of_index(succ).expect("nonzero element has a log") % e;
            entries[a as usize][b as usize] += 1;
        }
        Ok(entries)
    }

    /// Checks the explicit bijection behind the second moment identity:
    /// `f(x, y) = (x/y, (x−1)/(y−1))` maps
    /// `X = {(x,y) : x ≠ y, x ∈ yC_0, x−1 ∈ (y−1)C_0}` (entries off `{0,1}`)
    /// bijectively onto the ordered pairs of distinct elements of
    /// `C_0 ∖ {1}`, with inverse `g(u, v) = (u(1−v)/(u−v), (1−v)/(u−v))`.
    pub fn wilson_bijection_check(&self) -> Result<BijectionReport> {
        let dlogs = self.dlogs()?;
        let ctx = &self.ctx;
        let p = ctx.p();
        let q = ctx.q();
        let e = self.e;
        let one = ctx.one();
        let coset_of = |enc: u64| dlogs.log_of_index(enc).map(|j| j % e);

        let c0_size = (1..q).filter(|&t| coset_of(t) == Some(0)).count() as u64;
        debug_assert_eq!(c0_size, self.k);
        let expected = (self.k - 1) * (self.k.saturating_sub(2));
        let y_count = (c0_size - 1) * (c0_size.saturating_sub(2));

        let step = ctx.pow(&self.alpha, self.e);
        let mut x_count = 0u64;
        let mut forward_ok = true;
        let mut inverse_ok = true;
        for yt in 2..q {
            // y ranges over F \ {0, 1}; the canonical index of 1 is 1.
            let y = ctx.decode(yt);
            let y_minus_1_enc = if yt % p == 0 { yt + p - 1 } else { yt - 1 };
            let coset_y = coset_of(yt).expect("y is nonzero");
            let coset_ym1 = coset_of(y_minus_1_enc).expect("y - 1 is nonzero");
            let inv_y = ctx.inv(&y).unwrap();
            let y_minus_1 = ctx.decode(y_minus_1_enc);
            let inv_ym1 = ctx.inv(&y_minus_1).unwrap();
            // x runs over yC_0 \ {y}: x = y·(α^e)^j for j = 1..k.
            let mut x = y.clone();
            for _ in 1..self.k {
                x = ctx.mul(&x, &step);
                let xt = ctx.encode(&x);
                if xt == 1 {
                    continue; // x = 1 is excluded from X
                }
                debug_assert_eq!(coset_of(xt), Some(coset_y));
                let x_minus_1_enc = if xt.is_multiple_of(p) { xt + p - 1 } else { xt - 1 };
                if coset_of(x_minus_1_enc) != Some(coset_ym1) {
                    continue;
                }
                x_count += 1;
                // Forward map lands in Y: u, v in C_0 \ {1}, u != v.
                let u = ctx.mul(&x, &inv_y);
                let x_minus_1 = ctx.decode(x_minus_1_enc);
                let v = ctx.mul(&x_minus_1, &inv_ym1);
                let u_ok = coset_of(ctx.encode(&u)) == Some(0) && !ctx.is_one(&u);
                let v_ok = coset_of(ctx.encode(&v)) == Some(0) && !ctx.is_one(&v);
                if !(u_ok && v_ok && u != v) {
                    forward_ok = false;
                    continue;
                }
                // g(u, v) must reproduce (x, y).
                let u_minus_v = ctx.sub(&u, &v);
                let inv_uv = ctx.inv(&u_minus_v).unwrap();
                let one_minus_v = ctx.sub(&one, &v);
                let g2 = ctx.mul(&one_minus_v, &inv_uv);
                let g1 = ctx.mul(&u, &g2);
                if g1 != x || g2 != y {
                    inverse_ok = false;
                }
            }
        }
        Ok(BijectionReport {
            x_count,
            y_count,
            expected,
            forward_ok,
            inverse_ok,
        })
    }
}

/// Result of [`CycloParams::wilson_bijection_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    /// Number of pairs in the domain X, counted by enumeration.
    pub x_count: u64,
    /// Number of ordered pairs of distinct elements of `C_0 ∖ {1}`.
    pub y_count: u64,
    /// `(k − 1)(k − 2)`.
    pub expected: u64,
    /// Every pair of X mapped into Y.
    pub forward_ok: bool,
    /// `g ∘ f` was the identity on X.
    pub inverse_ok: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.forward_ok
            && self.inverse_ok
            && self.x_count == self.expected
            && self.y_count == self.expected
    }
}

/// The `k×k` matrix `C^(a,b)` over `GF(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: Vec<Vec<FieldElement>>,
}

impl CycloMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Rank by Gaussian elimination with first-nonzero pivoting; the field
    /// is exact, so any nonzero pivot is as good as any other. Prime fields
    /// take a flat word-arithmetic path.
    pub fn rank(&self, ctx: &FieldContext) -> usize {
        if ctx.n() == 1 {
            return self.rank_prime_field(ctx.p());
        }
        let mut m = self.rows.clone();
        let size = m.len();
        let mut rank = 0;
        for col in 0..size {
            let pivot_row = (rank..size).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot_row else { continue };
            m.swap(rank, pr);
            let inv = ctx.inv(&m[rank][col]).expect("pivot is nonzero");
            for r in rank + 1..size {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = ctx.mul(&m[r][col], &inv);
                let (top, bottom) = m.split_at_mut(rank + 1);
                let pivot_row = &top[rank];
                let row = &mut bottom[r - rank - 1];
                for (cell, pivot) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    let sub = ctx.mul(&factor, pivot);
                    *cell = ctx.sub(cell, &sub);
                }
            }
            rank += 1;
            if rank == size {
                break;
            }
        }
        rank
    }

    fn rank_prime_field(&self, p: u64) -> usize {
        let size = self.rows.len();
        let mut m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|x| x.coeffs()[0]).collect())
            .collect();
        let mut rank = 0;
        for col in 0..size {
            let Some(pr) = (rank..size).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = arith::inv_mod_prime(m[rank][col], p);
            for r in rank + 1..size {
                if m[r][col] == 0 {
                    continue;
                }
                let factor = arith::mul_mod(m[r][col], inv, p);
                let (head, tail) = m.split_at_mut(rank + 1);
                let pivot_row = &head[rank];
                let row = &mut tail[r - rank - 1];
                for (cell, &pivot) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    let sub = arith::mul_mod(factor, pivot, p);
                    *cell = (*cell + p - sub) % p;
                }
            }
            rank += 1;
            if rank == size {
                break;
            }
        }
        rank
    }
}

/// An `e×e` table of cyclotomic numbers, with the provenance needed to
/// reproduce it bit-for-bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloTable {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub e: u64,
    pub k: u64,
    /// Coefficients of the primitive element, little-endian.
    pub alpha: Vec<u64>,
    pub method: TableMethod,
    pub entries: Vec<Vec<u64>>,
    pub fingerprint: String,
}

impl CycloTable {
    pub fn entry(&self, a: u64, b: u64) -> u64 {
        self.entries[a as usize][b as usize]
    }

    pub fn max_entry(&self) -> u64 {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    /// The maximizing cell `(a, b, value)` in row-major order.
    pub fn argmax(&self) -> (u64, u64, u64) {
        let mut best = (0, 0, 0);
        for (a, row) in self.entries.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v > best.2 {
                    best = (a as u64, b as u64, v);
                }
            }
        }
        best
    }

    pub fn diagonal_max(&self) -> (u64, u64) {
        let mut best = (0, 0);
        for a in 0..self.e {
            let v = self.entry(a, a);
            if v > best.1 {
                best = (a, v);
            }
        }
        best
    }

    pub fn sum(&self) -> u128 {
        self.entries.iter().flatten().map(|&v| v as u128).sum()
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.entries
            .iter()
            .flatten()
            .map(|&v| (v as u128) * (v as u128))
            .sum()
    }

    /// `Σ (a,b) = q − 2` and `Σ (a,b)² = (k−1)(k−2) + q − 2`, in exact
    /// integer arithmetic.
    pub fn sum_identities_hold(&self) -> bool {
        let q = self.q as u128;
        let k = self.k as u128;
        let pairs = (k - 1) * k.saturating_sub(2); // zero for k = 1 either way
        self.sum() == q - 2 && self.sum_of_squares() == pairs + q - 2
    }

    /// The exact variance identity
    /// `Σ ((a,b) − (q−2)/e²)² = (e−3)k + 2k/e + 1 − 1/e²`,
    /// in big-rational arithmetic. Expanding the square reduces the left
    /// side to the two integer moments, so the rational work is O(1).
    pub fn variance_identity_holds(&self) -> bool {
        let big = |v: u128| BigInt::from(v);
        let e = big(self.e as u128);
        let k = big(self.k as u128);
        let q_minus_2 = big(self.q as u128 - 2);
        let e2 = &e * &e;
        let mean = BigRational::new(q_minus_2.clone(), e2.clone());
        let sum = BigRational::from_integer(big(self.sum()));
        let sum_sq = BigRational::from_integer(big(self.sum_of_squares()));
        let cells = BigRational::from_integer(e2.clone());
        let lhs = &sum_sq - BigRational::from_integer(BigInt::from(2)) * &mean * &sum
            + &cells * &mean * &mean;
        let rhs = BigRational::from_integer((&e - BigInt::from(3)) * &k)
            + BigRational::new(BigInt::from(2) * &k, e.clone())
            + BigRational::one()
            - BigRational::new(BigInt::one(), e2);
        lhs == rhs
    }

    /// Entrywise `|(a,b) − (q−2)/e²| < √(ek)`, compared as exact squares:
    /// `(e²·(a,b) − (q−2))² < e⁵k` once both sides are scaled by `e⁴`.
    pub fn remark_bound_holds(&self) -> bool {
        let e = self.e as i128;
        let q_minus_2 = self.q as i128 - 2;
        let e2 = e * e;
        let rhs = e2 * e2 * e * self.k as i128;
        self.entries.iter().flatten().all(|&v| {
            let diff = e2 * v as i128 - q_minus_2;
            diff * diff < rhs
        })
    }

    /// Row sums: `Σ_b (a,b)` is `k − 1` when `−1 ∈ C_a` and `k` otherwise.
    pub fn row_sums_match(&self, params: &CycloParams) -> Result<bool> {
        let minus_one = params.ctx().neg(&params.ctx().one());
        let special = params.coset_index(&minus_one)?;
        for a in 0..self.e {
            let sum: u64 = self.entries[a as usize].iter().sum();
            let expected = if a == special { self.k - 1 } else { self.k };
            if sum != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// CSV, row `a` per line, column `b` within: no header, fixed layout.
    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Checks both sum identities; kept as a free function so callers can run
/// it against tables produced by any method.
pub fn sum_identities(table: &CycloTable) -> bool {
    table.sum_identities_hold()
}

/// Checks the exact variance identity.
pub fn variance_identity(table: &CycloTable) -> bool {
    table.variance_identity_holds()
}

/// Signed distance data for reporting: the squared deviation of a cell from
/// the mean, as an exact rational. Used by the CLI's verify output.
pub fn variance_sides(table: &CycloTable) -> (BigRational, BigRational) {
    let big = |v: u128| BigInt::from(v);
    let e = big(table.e as u128);
    let e2 = &e * &e;
    let k = big(table.k as u128);
    let mean = BigRational::new(big(table.q as u128 - 2), e2.clone());
    let sum = BigRational::from_integer(big(table.sum()));
    let sum_sq = BigRational::from_integer(big(table.sum_of_squares()));
    let cells = BigRational::from_integer(e2.clone());
    let lhs = &sum_sq - BigRational::from_integer(BigInt::from(2)) * &mean * &sum
        + &cells * &mean * &mean;
    let rhs = BigRational::from_integer((&e - BigInt::from(3)) * &k)
        + BigRational::new(BigInt::from(2) * &k, e.clone())
        + BigRational::one()
        - BigRational::new(BigInt::one(), e2);
    debug_assert!(!lhs.is_negative());
    (lhs, rhs)
}

/// `(p, n)` for an odd prime power `q`, or an explanatory error.
pub fn require_odd_prime_power(q: u64) -> Result<(u64, u32)> {
    match arith::as_prime_power(q) {
        Some((2, _)) | None => Err(Error::NotOddPrimePower(q)),
        Some((p, n)) => Ok((p, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use num_traits::Zero;

    fn params(q: u64, e: u64) -> CycloParams {
        let (p, n) = arith::as_prime_power(q).unwrap();
        let ctx = FieldContext::new(p, n as usize, 0).unwrap();
        CycloParams::from_order(ctx, e).unwrap()
    }

    /// Independent oracle: coset index by brute-force discrete logarithm.
    fn coset_by_dlog(params: &CycloParams, x: &FieldElement) -> u64 {
        let ctx = params.ctx();
        let mut y = ctx.one();
        for j in 0..ctx.q() - 1 {
            if y == *x {
                return j % params.e();
            }
            y = ctx.mul(&y, params.alpha());
        }
        panic!("element not generated");
    }

    #[test]
    fn coset_index_examples() {
        let pr = params(5, 2);
        let ctx = pr.ctx();
        assert_eq!(pr.coset_index(&ctx.one()).unwrap(), 0);
        assert_eq!(pr.coset_index(pr.alpha()).unwrap(), 1);
        // 3 = 2^3 in GF(5), odd exponent
        assert_eq!(pr.coset_index(&ctx.from_residue(3)).unwrap(), 1);
        assert_eq!(
            pr.coset_index(&ctx.zero()).unwrap_err(),
            Error::ZeroElementCoset
        );
    }

    #[test]
    fn coset_index_matches_dlog_oracle() {
        for (q, e) in [(13, 3), (13, 4), (27, 2), (9, 4), (49, 6)] {
            let pr = params(q, e);
            for t in 1..q {
                let x = pr.ctx().decode(t);
                assert_eq!(pr.coset_index(&x).unwrap(), coset_by_dlog(&pr, &x));
            }
        }
    }

    #[test]
    fn gf5_table_by_all_methods() {
        let pr = params(5, 2);
        let expected = vec![vec![0, 1], vec![1, 1]];
        for method in [
            TableMethod::Enumeration,
            TableMethod::MatrixRank,
            TableMethod::PolyGcd,
        ] {
            let table = pr.table(method).unwrap();
            assert_eq!(table.entries, expected, "{:?}", method);
        }
        assert_eq!(pr.number_by_enumeration(0, 0).unwrap(), 0);
        assert_eq!(pr.number_by_enumeration(0, 1).unwrap(), 1);
        assert_eq!(pr.number_by_enumeration(1, 0).unwrap(), 1);
        assert_eq!(pr.number_by_enumeration(1, 1).unwrap(), 1);
    }

    #[test]
    fn order_one_gives_k_minus_1() {
        // With e = 1 and k + 1 = 7 = p the lone entry is k − 1.
        let pr = params(7, 1);
        assert_eq!(pr.number_by_enumeration(0, 0).unwrap(), 5);
        assert_eq!(pr.number_by_matrix_rank(0, 0).unwrap(), 5);
        assert_eq!(pr.number_by_gcd(0, 0).unwrap(), 5);
        let table = pr.table(TableMethod::Enumeration).unwrap();
        assert_eq!(table.entries, vec![vec![5]]);
    }

    #[test]
    fn singleton_cosets_give_01_table() {
        // k = 1: every (a,b) is 0 or 1 and exactly q − 2 cells hold a 1.
        for q in [5u64, 9, 13] {
            let pr = params(q, q - 1);
            let table = pr.table(TableMethod::Enumeration).unwrap();
            let ones: u64 = table.entries.iter().flatten().sum();
            assert_eq!(ones, q - 2);
            assert!(table.entries.iter().flatten().all(|&v| v <= 1));
        }
    }

    #[test]
    fn matrix_examples() {
        let pr = params(5, 2);
        let mat = pr.cyclo_matrix(0, 0).unwrap();
        let ctx = pr.ctx();
        let expected = [vec![ctx.from_residue(1), ctx.from_residue(2)],
            vec![ctx.from_residue(2), ctx.from_residue(1)]];
        assert_eq!(mat.rows(), &expected[..]);
        assert_eq!(mat.rank(ctx), 2); // det = -3 ≠ 0 in GF(5)
        assert_eq!(pr.number_by_matrix_rank(0, 0).unwrap(), 0);

        // a = b keeps the diagonal at 1.
        let pr13 = params(13, 3);
        for a in 0..3 {
            let m = pr13.cyclo_matrix(a, a).unwrap();
            for i in 0..m.size() {
                assert!(pr13.ctx().is_one(&m.rows()[i][i]));
            }
        }

        // k = 1 is the 1×1 matrix [γ].
        let pr_k1 = params(13, 12);
        let m = pr_k1.cyclo_matrix(2, 5).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.rows()[0][0], pr_k1.gamma(2, 5));
    }

    #[test]
    fn gcd_method_examples() {
        // GF(13), e = 3, k = 4, a = b = 0: gcd degree equals the
        // enumeration count (exhaustive oracle over the field).
        let pr = params(13, 3);
        assert_eq!(pr.alpha(), &pr.ctx().from_residue(2));
        let by_enum = pr.number_by_enumeration(0, 0).unwrap();
        assert_eq!(pr.number_by_gcd(0, 0).unwrap(), by_enum);
        // q = 5, (0, 1) -> 1
        let pr5 = params(5, 2);
        assert_eq!(pr5.number_by_gcd(0, 1).unwrap(), 1);
    }

    #[test]
    fn tri_method_agreement_small() {
        for (q, e) in [(9u64, 2u64), (9, 4), (13, 2), (13, 3), (13, 4), (25, 3), (27, 13), (49, 8)]
        {
            let pr = params(q, e);
            let table = pr.table(TableMethod::Enumeration).unwrap();
            for a in 0..pr.e() {
                for b in 0..pr.e() {
                    let v = table.entry(a, b);
                    assert_eq!(pr.number_by_matrix_rank(a, b).unwrap(), v, "rank {q} {e}");
                    assert_eq!(pr.number_by_gcd(a, b).unwrap(), v, "gcd {q} {e}");
                    assert_eq!(pr.number_by_enumeration(a, b).unwrap(), v, "enum {q} {e}");
                }
            }
        }
    }

    #[test]
    fn out_of_range_cells_rejected() {
        let pr = params(5, 2);
        assert!(matches!(
            pr.number_by_enumeration(2, 0),
            Err(Error::IndexOutOfRange { name: "a", .. })
        ));
        assert!(matches!(
            pr.number_by_gcd(0, 7),
            Err(Error::IndexOutOfRange { name: "b", .. })
        ));
    }

    #[test]
    fn matrix_limit_enforced() {
        let (p, n) = (13u64, 1usize);
        let limits = crate::Limits {
            k_matrix_limit: 3,
            ..crate::Limits::default()
        };
        let ctx = FieldContext::with_limits(p, n, 0, limits).unwrap();
        let pr = CycloParams::from_order(ctx, 3).unwrap(); // k = 4 > 3
        assert_eq!(
            pr.number_by_matrix_rank(0, 0).unwrap_err(),
            Error::MatrixLimit { k: 4, limit: 3 }
        );
    }

    #[test]
    fn bijection_examples() {
        // (k−1)(k−2) = 0 for k = 2.
        let r5 = params(5, 2).wilson_bijection_check().unwrap();
        assert!(r5.holds());
        assert_eq!(r5.x_count, 0);
        // q = 7, e = 1, k = 6: |X| = 20.
        let r7 = params(7, 1).wilson_bijection_check().unwrap();
        assert!(r7.holds());
        assert_eq!(r7.x_count, 20);
        // q = 13, e = 3, k = 4: |X| = 6.
        let r13 = params(13, 3).wilson_bijection_check().unwrap();
        assert!(r13.holds());
        assert_eq!(r13.x_count, 6);
    }

    #[test]
    fn identity_checks_on_examples() {
        let t5 = params(5, 2).table(TableMethod::Enumeration).unwrap();
        assert_eq!(t5.sum(), 3);
        assert_eq!(t5.sum_of_squares(), 3);
        assert!(t5.sum_identities_hold());
        assert!(t5.variance_identity_holds());
        let (lhs, rhs) = variance_sides(&t5);
        assert_eq!(lhs.to_string(), "3/4");
        assert_eq!(rhs.to_string(), "3/4");

        let t7 = params(7, 1).table(TableMethod::Enumeration).unwrap();
        assert_eq!(t7.sum(), 5);
        assert_eq!(t7.sum_of_squares(), 25);
        assert!(t7.sum_identities_hold());
        assert!(t7.variance_identity_holds());
        let (lhs, rhs) = variance_sides(&t7);
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn remark_bound_and_row_sums() {
        for (q, e) in [(5u64, 2u64), (7, 1), (13, 3), (13, 4), (25, 4), (27, 2), (49, 3)] {
            let pr = params(q, e);
            let t = pr.table(TableMethod::Enumeration).unwrap();
            assert!(t.remark_bound_holds(), "q={q} e={e}");
            assert!(t.row_sums_match(&pr).unwrap(), "q={q} e={e}");
        }
    }

    #[test]
    fn table_serialization() {
        let t = params(5, 2).table(TableMethod::Enumeration).unwrap();
        assert_eq!(t.to_csv(), "0,1\n1,1");
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["q"], 5);
        assert_eq!(json["method"], "enumeration");
        assert_eq!(json["entries"][0][1], 1);
        assert_eq!(json["alpha"][0], 2);
        assert_eq!(t.fingerprint, "5^1;alpha=2;e=2;k=2");
    }

    #[test]
    fn tables_relabel_under_different_alpha() {
        // A different primitive element permutes the table but preserves
        // the multiset of entries and all the identities.
        let ctx = FieldContext::new(13, 1, 0).unwrap();
        let a1 = ctx.from_residue(2);
        let a2 = ctx.from_residue(6); // 6 = 2^5, also primitive since gcd(5,12)=1
        let p1 = CycloParams::new(ctx.clone(), a1, 4).unwrap();
        let p2 = CycloParams::new(ctx, a2, 4).unwrap();
        let t1 = p1.table(TableMethod::Enumeration).unwrap();
        let t2 = p2.table(TableMethod::Enumeration).unwrap();
        let mut m1: Vec<u64> = t1.entries.iter().flatten().copied().collect();
        let mut m2: Vec<u64> = t2.entries.iter().flatten().copied().collect();
        m1.sort_unstable();
        m2.sort_unstable();
        assert_eq!(m1, m2);
        assert!(t2.sum_identities_hold() && t2.variance_identity_holds());
    }

    #[test]
    fn invalid_params_rejected() {
        let ctx = FieldContext::new(13, 1, 0).unwrap();
        assert_eq!(
            CycloParams::from_order(ctx.clone(), 5).unwrap_err(),
            Error::NotADivisor { divisor: 5, of: 12 }
        );
        // 3 has order 3 in GF(13)^x, not 12.
        let not_primitive = ctx.from_residue(3);
        assert_eq!(
            CycloParams::new(ctx, not_primitive, 4).unwrap_err(),
            Error::NotPrimitive { expected: 12 }
        );
    }
}
