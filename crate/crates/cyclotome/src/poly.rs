//! Univariate polynomials over a [`FieldContext`], in canonical form: the
//! coefficient vector carries no trailing zeros, so the zero polynomial is
//! the empty vector and its degree is `None` rather than any integer.

use std::fmt;

use crate::field::{FieldContext, FieldElement};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: FieldContext,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(ctx: &FieldContext) -> Poly {
        Poly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    /// Builds a polynomial from little-endian coefficients, normalizing away
    /// trailing zeros.
    pub fn from_coeffs(ctx: &FieldContext, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn constant(ctx: &FieldContext, c: FieldElement) -> Poly {
        Poly::from_coeffs(ctx, vec![c])
    }

    /// The monomial `X^d`.
    pub fn x_power(ctx: &FieldContext, d: usize) -> Poly {
        let mut coeffs = vec![ctx.zero(); d + 1];
        coeffs[d] = ctx.one();
        Poly { ctx: ctx.clone(), coeffs }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.ctx.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::from_coeffs(&self.ctx, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.ctx.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::from_coeffs(&self.ctx, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| self.ctx.neg(c)).collect();
        Poly {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ctx));
        }
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.ctx.mul(a, b);
                coeffs[i + j] = self.ctx.add(&coeffs[i + j], &prod);
            }
        }
        Ok(Poly::from_coeffs(&self.ctx, coeffs))
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        let coeffs = self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// Multiply by `X^d`.
    pub fn shift(&self, d: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ctx.zero(); d];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_ctx(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self
            .ctx
            .inv(divisor.leading().unwrap())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![self.ctx.zero(); rem.len() - dd];
        while rem.len() > dd {
            let lead = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - dd;
            if !lead.is_zero() {
                let c = self.ctx.mul(&lead, &inv_lead);
                for (i, b) in divisor.coeffs.iter().enumerate().take(dd) {
                    let sub = self.ctx.mul(&c, b);
                    rem[i + shift] = self.ctx.sub(&rem[i + shift], &sub);
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((
            Poly::from_coeffs(&self.ctx, quot),
            Poly::from_coeffs(&self.ctx, rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Scales a nonzero polynomial to leading coefficient 1; zero stays zero.
    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let inv = self.ctx.inv(lead).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// `gcd(f, 0)` is `f` made monic and `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ctx.add(&self.ctx.mul(&acc, x), c);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let t = match i {
                0 => format!("{c}"),
                1 => format!("{c}*X"),
                _ => format!("{c}*X^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn poly_from_residues(ctx: &FieldContext, rs: &[u64]) -> Poly {
        Poly::from_coeffs(ctx, rs.iter().map(|&r| ctx.from_residue(r)).collect())
    }

    #[test]
    fn degree_conventions() {
        let ctx = FieldContext::new(5, 1, 0).unwrap();
        assert_eq!(Poly::zero(&ctx).degree(), None);
        assert_eq!(poly_from_residues(&ctx, &[3]).degree(), Some(0));
        assert_eq!(poly_from_residues(&ctx, &[0, 0, 2, 0]).degree(), Some(2));
    }

    #[test]
    fn gcd_examples_over_gf5() {
        let ctx = FieldContext::new(5, 1, 0).unwrap();
        // gcd(X^2 - 1, X - 1) = X - 1
        let f = poly_from_residues(&ctx, &[4, 0, 1]);
        let g = poly_from_residues(&ctx, &[4, 1]);
        assert_eq!(f.gcd(&g).unwrap(), g);
        // gcd(f, 0) = monic f
        let h = poly_from_residues(&ctx, &[1, 2]); // 2X + 1 -> monic X + 3
        assert_eq!(
            h.gcd(&Poly::zero(&ctx)).unwrap(),
            poly_from_residues(&ctx, &[3, 1])
        );
        // gcd(0, 0) = 0
        assert!(Poly::zero(&ctx).gcd(&Poly::zero(&ctx)).unwrap().is_zero());
    }

    #[test]
    fn mixed_contexts_rejected() {
        let f5 = FieldContext::new(5, 1, 0).unwrap();
        let f7 = FieldContext::new(7, 1, 0).unwrap();
        let f = poly_from_residues(&f5, &[1, 1]);
        let g = poly_from_residues(&f7, &[1, 1]);
        assert_eq!(f.gcd(&g).unwrap_err(), Error::MixedContexts);
    }

    #[test]
    fn divmod_reconstructs() {
        let ctx = FieldContext::new(7, 1, 0).unwrap();
        let f = poly_from_residues(&ctx, &[3, 5, 0, 2, 6]);
        let g = poly_from_residues(&ctx, &[4, 2, 1]);
        let (q, r) = f.divmod(&g).unwrap();
        let back = q.mul(&g).unwrap().add(&r).unwrap();
        assert_eq!(back, f);
        assert!(r.degree() < g.degree());
    }

    /// Exhaustive oracle on a small field: the Euclidean gcd must divide
    /// both inputs, and every monic common divisor must divide it.
    #[test]
    fn gcd_against_exhaustive_divisor_search() {
        let ctx = FieldContext::new(3, 2, 0).unwrap(); // GF(9)
        let q = ctx.q();
        // A deterministic but varied small sample of polynomials of degree <= 4.
        let sample: Vec<Poly> = (0..q.pow(2))
            .step_by(7)
            .map(|t| {
                let coeffs = vec![
                    ctx.decode(t % q),
                    ctx.decode((t / q) % q),
                    ctx.decode((t * 5 + 3) % q),
                    ctx.decode((t * 2 + 1) % q),
                    ctx.decode((t * 3 + 2) % q),
                ];
                Poly::from_coeffs(&ctx, coeffs)
            })
            .collect();
        let monic_up_to_deg = |d: usize| -> Vec<Poly> {
            let mut out = Vec::new();
            for deg in 0..=d {
                let count = q.pow(deg as u32);
                for t in 0..count {
                    let mut coeffs = Vec::with_capacity(deg + 1);
                    let mut v = t;
                    for _ in 0..deg {
                        coeffs.push(ctx.decode(v % q));
                        v /= q;
                    }
                    coeffs.push(ctx.one());
                    out.push(Poly::from_coeffs(&ctx, coeffs));
                }
            }
            out
        };
        let divisor_pool = monic_up_to_deg(4);
        for f in sample.iter().take(12) {
            for g in sample.iter().take(6) {
                let d = f.gcd(g).unwrap();
                if f.is_zero() && g.is_zero() {
                    assert!(d.is_zero());
                    continue;
                }
                assert!(f.rem(&d).unwrap().is_zero());
                assert!(g.rem(&d).unwrap().is_zero());
                for cand in &divisor_pool {
                    let divides_both = f.rem(cand).unwrap().is_zero()
                        && g.rem(cand).unwrap().is_zero();
                    if divides_both {
                        assert!(
                            d.rem(cand).unwrap().is_zero(),
                            "common divisor {cand} must divide gcd {d}"
                        );
                    }
                }
            }
        }
    }
}
