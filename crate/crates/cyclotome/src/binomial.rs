//! Exact evaluation of binomial-coefficient determinants.
//!
//! The square matrix with entries `binom(r+s, r−i+j)` has the closed-form
//! determinant `Π_{i<m} i!(r+s+i)!/((r+i)!(s+i)!)`; three named variants of
//! it bound the rank of the cyclotomic matrices. Everything here is exact:
//! big-integer factorials with asserted divisibility for the closed form,
//! fraction-free (Bareiss) elimination as the independent oracle, and
//! factorial `p`-adic valuations for testing nonvanishing mod `p` without
//! ever materializing the astronomically large determinant.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::{Error, Limits, Result};

/// Exact binomial coefficient, with `binom(n, r) = 0` for `r < 0` or
/// `r > n` so that matrix entries off the band vanish.
pub fn binom_exact(n: u64, r: i64) -> BigUint {
    if r < 0 || r as u64 > n {
        return BigUint::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigUint::one();
    for i in 1..=r {
        acc = acc * BigUint::from(n - r + i) / BigUint::from(i);
    }
    acc
}

/// The row `binom(k, 0..=k) mod p`, computed once per `k` through exact big
/// integers and then reduced. Avoids any reliance on base-p digit identities.
pub fn binom_row_mod_p(k: u64, p: u64) -> Vec<u64> {
    let p_big = BigUint::from(p);
    let mut row = Vec::with_capacity(k as usize + 1);
    let mut value = BigUint::one();
    row.push(1u64 % p);
    for i in 0..k {
        value = value * BigUint::from(k - i) / BigUint::from(i + 1);
        row.push((&value % &p_big).try_into().unwrap());
    }
    row
}

/// Parameters of the binomial matrix `(binom(r+s, r−i+j))_{1≤i,j≤m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomMatrixSpec {
    pub r: u64,
    pub s: u64,
    pub m: u64,
}

impl BinomMatrixSpec {
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        if self.m > limits.det_size_limit {
            return Err(Error::DetSizeLimit {
                size: self.m,
                limit: limits.det_size_limit,
            });
        }
        Ok(())
    }
}

/// A square matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        IntMatrix { rows }
    }

    pub fn identity(size: usize) -> IntMatrix {
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IntMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

/// Builds `(binom(r+s, r−i+j))` with 1-based `i, j` running to `m`.
pub fn build_binom_matrix(spec: &BinomMatrixSpec, limits: &Limits) -> Result<IntMatrix> {
    spec.validate(limits)?;
    let m = spec.m as usize;
    let n = spec.r + spec.s;
    let rows = (1..=m as i64)
        .map(|i| {
            (1..=m as i64)
                .map(|j| BigInt::from(binom_exact(n, spec.r as i64 - i + j)))
                .collect()
        })
        .collect();
    Ok(IntMatrix::from_rows(rows))
}

/// The closed-form determinant `Π_{i=0}^{m−1} i!(r+s+i)!/((r+i)!(s+i)!)`,
/// evaluated with big-integer factorials. Individual factors need not be
/// integers; the accumulated product is, and the division asserts it.
pub fn adc_det(spec: &BinomMatrixSpec, limits: &Limits) -> Result<BigInt> {
    spec.validate(limits)?;
    let max_arg = (spec.r + spec.s + spec.m) as usize;
    let fact = factorials_up_to(max_arg);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..spec.m {
        num *= &fact[i as usize] * &fact[(spec.r + spec.s + i) as usize];
        den *= &fact[(spec.r + i) as usize] * &fact[(spec.s + i) as usize];
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "the determinant product is an exact integer");
    Ok(BigInt::from(quot))
}

fn factorials_up_to(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigUint::one());
    for i in 1..=n {
        let next = out.last().unwrap() * BigUint::from(i);
        out.push(next);
    }
    out
}

/// Exact determinant by Bareiss fraction-free elimination. Row swaps flip
/// the sign; a zero column means a zero determinant.
pub fn bareiss_det(mat: &IntMatrix) -> BigInt {
    let n = mat.size();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = mat.rows.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Rank of an integer matrix by fraction-free elimination with column
/// skipping; exact at every step.
pub fn int_matrix_rank(mat: &IntMatrix) -> usize {
    let n = mat.size();
    let mut m: Vec<Vec<BigInt>> = mat.rows.clone();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..n {
            for j in col + 1..n {
                let num = &m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free rank division is exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// The three determinants used to bound cyclotomic numbers. `Even` and
/// `Odd` are the upper-right `m×m` blocks of the cyclotomic matrix for
/// `k = 2m` and `k = 2m+1`; `Extended` is the `(m+1)×(m+1)` block with
/// `m = ⌊k/2⌋` that sharpens the diagonal bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetVariant {
    Even,
    Odd,
    Extended,
}

impl DetVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            DetVariant::Even => "even",
            DetVariant::Odd => "odd",
            DetVariant::Extended => "extended",
        }
    }
}

impl std::str::FromStr for DetVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "even" => Ok(DetVariant::Even),
            "odd" => Ok(DetVariant::Odd),
            "extended" => Ok(DetVariant::Extended),
            other => Err(format!("unknown determinant variant `{other}`")),
        }
    }
}

/// Maps `(k, variant)` to the binomial-matrix parameters realizing it.
pub fn block_det_spec(k: u64, variant: DetVariant) -> Result<BinomMatrixSpec> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let m = k / 2;
    match variant {
        DetVariant::Even => {
            if !k.is_multiple_of(2) {
                return Err(Error::ParityMismatch { k, variant: "even" });
            }
            Ok(BinomMatrixSpec { r: m, s: k - m, m })
        }
        DetVariant::Odd => {
            if k % 2 != 1 {
                return Err(Error::ParityMismatch { k, variant: "odd" });
            }
            Ok(BinomMatrixSpec {
                r: m + 1,
                s: k - m - 1,
                m,
            })
        }
        DetVariant::Extended => Ok(BinomMatrixSpec {
            r: m,
            s: k - m,
            m: m + 1,
        }),
    }
}

/// Exact value of the named determinant via the closed-form product.
pub fn block_det(k: u64, variant: DetVariant, limits: &Limits) -> Result<BigInt> {
    adc_det(&block_det_spec(k, variant)?, limits)
}

/// `ν_p(n!) = Σ_j ⌊n/p^j⌋` (Legendre).
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut power = p;
    loop {
        total += n / power;
        match power.checked_mul(p) {
            Some(next) if next <= n => power = next,
            _ => break,
        }
    }
    total
}

/// `ν_p` of the closed-form determinant, as a signed sum of factorial
/// valuations. Nonnegative because the determinant is a nonzero integer.
pub fn det_valuation_at_p(k: u64, variant: DetVariant, p: u64) -> Result<i64> {
    let spec = block_det_spec(k, variant)?;
    let mut val: i64 = 0;
    for i in 0..spec.m {
        val += factorial_valuation(i, p) as i64;
        val += factorial_valuation(spec.r + spec.s + i, p) as i64;
        val -= factorial_valuation(spec.r + i, p) as i64;
        val -= factorial_valuation(spec.s + i, p) as i64;
    }
    Ok(val)
}

/// Whether the named determinant is nonzero mod `p`, decided through
/// factorial valuations rather than the huge integer itself.
pub fn det_nonzero_mod_p(k: u64, variant: DetVariant, p: u64) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let val = det_valuation_at_p(k, variant, p)?;
    debug_assert!(val >= 0);
    Ok(val == 0)
}
