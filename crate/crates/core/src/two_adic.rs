//! 2-adic valuations of Lucas numbers, binomials and discriminants.
//!
//! Writing `n = r + m(k+1)` with `0 <= r <= k`, the residue of `L_n^(k)`
//! modulo a power of two depends only on `m` and `r`:
//!
//! | r      | residue                          | modulus       |
//! |--------|----------------------------------|---------------|
//! | 0      | `2 (-1)^m`                       | `2^(k-2)`     |
//! | 1      | `(4m + 1) (-1)^m`                | `2^(k-1)`     |
//! | 2      | `(4m^2 + 6m + 3) (-1)^m`         | `2^k`         |
//! | >= 3   | `(-1)^m 2^(r-2) L(m, r)`         | `2^(k+r-2)`   |
//!
//! where `L(m, r)` is [`l_quantity`].

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::error::{domain, Result};

/// `nu_2(x)`, with `Infinite` for `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn nu2(x: &BigUint) -> Valuation {
    match x.trailing_zeros() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

pub fn nu2_signed(x: &BigInt) -> Valuation {
    match x.trailing_zeros() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

/// `n = r + m(k + 1)` with `0 <= r <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueDecomposition {
    pub n: u64,
    pub k: u64,
    pub m: u64,
    pub r: u64,
}

impl ResidueDecomposition {
    pub fn of_index(k: u64, n: u64) -> Self {
        let (m, r) = n.div_rem(&(k + 1));
        Self { n, k, m, r }
    }

    pub fn from_parts(k: u64, m: u64, r: u64) -> Result<Self> {
        if r > k {
            return domain(format!("r = {r} exceeds k = {k}"));
        }
        let n = m
            .checked_mul(k + 1)
            .and_then(|v| v.checked_add(r))
            .ok_or_else(|| crate::Error::Domain("n = r + m(k+1) overflows u64".into()))?;
        Ok(Self { n, k, m, r })
    }
}

/// A predicted residue together with the exponent `E` of the modulus `2^E`.
///
/// The residue is kept as the representative in `[-2^(E-1), 2^(E-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub residue: BigInt,
    pub modulus_exp: u64,
}

impl Congruence {
    fn canonical(value: BigInt, modulus_exp: u64) -> Self {
        Self {
            residue: signed_mod_pow2(&value, modulus_exp),
            modulus_exp,
        }
    }

    /// Whether `x` is congruent to the residue modulo `2^E`.
    pub fn holds_for(&self, x: &BigInt) -> bool {
        signed_mod_pow2(x, self.modulus_exp) == self.residue
    }
}

/// `x mod 2^e` in `[0, 2^e)`.
pub fn mod_pow2(x: &BigInt, e: u64) -> BigUint {
    let modulus = BigInt::one() << e as usize;
    x.mod_floor(&modulus).to_biguint().expect("non-negative")
}

/// `x mod 2^e` in `[-2^(e-1), 2^(e-1))`; zero when `e = 0`.
pub fn signed_mod_pow2(x: &BigInt, e: u64) -> BigInt {
    if e == 0 {
        return BigInt::zero();
    }
    let r = BigInt::from_biguint(Sign::Plus, mod_pow2(x, e));
    let half = BigInt::one() << (e - 1) as usize;
    if r >= half {
        r - (half << 1usize)
    } else {
        r
    }
}

fn signed(value: BigInt, m: u64) -> BigInt {
    if m % 2 == 1 {
        -value
    } else {
        value
    }
}

/// The residue of `L_n^(k)` for `n = r + m(k+1)` and its power-of-two modulus.
pub fn lucas_congruence(k: u64, m: u64, r: u64) -> Result<Congruence> {
    if k < 2 {
        return domain(format!("k must be at least 2, got {k}"));
    }
    if r > k {
        return domain(format!("r = {r} must lie in [0, k = {k}]"));
    }
    let mb = BigInt::from(m);
    let c = match r {
        // modulus 2^0 at k = 2: the congruence is vacuous
        0 => Congruence::canonical(signed(BigInt::from(2), m), k - 2),
        1 => Congruence::canonical(signed(4 * &mb + 1, m), k - 1),
        2 => Congruence::canonical(signed(4 * &mb * &mb + 6 * &mb + 3, m), k),
        _ => {
            let l = BigInt::from(l_quantity(m, r)?);
            Congruence::canonical(signed(l << (r - 2) as usize, m), k + r - 2)
        }
    };
    Ok(c)
}

fn check_l_args(m: u64, r: u64) -> Result<()> {
    if r < 3 {
        return domain(format!("L(m, r) needs r >= 3, got r = {r}"));
    }
    if m > i64::MAX as u64 / 4 || r > i64::MAX as u64 / 4 {
        return domain("L(m, r) arguments too large");
    }
    Ok(())
}

/// `L(m, r) = 4 (binom(m+r+1, m) - binom(m+r-1, m-2)) - (binom(m+r, m) - binom(m+r-2, m-2))`.
pub fn l_quantity(m: u64, r: u64) -> Result<BigUint> {
    check_l_args(m, r)?;
    let (m, r) = (m as i64, r as i64);
    let first = binomial(m + r + 1, m) - binomial(m + r - 1, m - 2);
    let second = binomial(m + r, m) - binomial(m + r - 2, m - 2);
    Ok((first << 2u32) - second)
}

fn l_polynomial(m: &BigInt, r: &BigInt) -> BigInt {
    3 * r * r * r + 10 * m * r * r + 8 * m * m * r + 2 * m * r - 3 * r + 8 * m * m - 8 * m
}

/// The factored form
/// `binom(m+r-2, m-2) (3r^3 + 10mr^2 + 8m^2r + 2mr - 3r + 8m^2 - 8m) / (m(m-1)(r+1))`,
/// defined for `m >= 2`.
pub fn l_quantity_factored(m: u64, r: u64) -> Result<BigUint> {
    check_l_args(m, r)?;
    if m < 2 {
        return domain("factored form of L(m, r) needs m >= 2");
    }
    let b = BigInt::from(binomial((m + r - 2) as i64, (m - 2) as i64));
    let (mb, rb) = (BigInt::from(m), BigInt::from(r));
    let num = b * l_polynomial(&mb, &rb);
    let den = BigInt::from(m) * BigInt::from(m - 1) * BigInt::from(r + 1);
    let (q, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "factored form of L({m}, {r}) is not integral");
    Ok(q.to_biguint().expect("L(m, r) is positive"))
}

/// `nu_2(L(m, r))` without building `L(m, r)`.
///
/// For `m >= 2` this combines Kummer's carry count for the binomial with
/// the valuation of the cubic factor (taken modulo `2^128`, which is exact
/// whenever the factor is not divisible by `2^128`). Falls back to the exact
/// value otherwise.
pub fn l_quantity_nu2(m: u64, r: u64) -> Result<u64> {
    check_l_args(m, r)?;
    let exact = || {
        l_quantity(m, r).map(|v| nu2(&v).finite().expect("L(m, r) is nonzero"))
    };
    if m < 2 {
        return exact();
    }
    let (mw, rw) = (m as u128, r as u128);
    let poly = 3u128
        .wrapping_mul(rw)
        .wrapping_mul(rw)
        .wrapping_mul(rw)
        .wrapping_add(10u128.wrapping_mul(mw).wrapping_mul(rw).wrapping_mul(rw))
        .wrapping_add(8u128.wrapping_mul(mw).wrapping_mul(mw).wrapping_mul(rw))
        .wrapping_add(2u128.wrapping_mul(mw).wrapping_mul(rw))
        .wrapping_sub(3u128.wrapping_mul(rw))
        .wrapping_add(8u128.wrapping_mul(mw).wrapping_mul(mw))
        .wrapping_sub(8u128.wrapping_mul(mw));
    if poly == 0 {
        return exact();
    }
    let binom = carries(m - 2, r) as u64;
    let den = (m.trailing_zeros() + (m - 1).trailing_zeros() + (r + 1).trailing_zeros()) as u64;
    Ok(binom + poly.trailing_zeros() as u64 - den)
}

/// Number of carries when adding `a` and `b` in base 2.
fn carries(a: u64, b: u64) -> u32 {
    let (mut a, mut b) = (a as u128, b as u128);
    let mut carry = 0u128;
    let mut count = 0;
    while a > 0 || b > 0 || carry > 0 {
        let s = (a & 1) + (b & 1) + carry;
        carry = s >> 1;
        count += carry as u32;
        a >>= 1;
        b >>= 1;
    }
    count
}

/// `nu_2(binom(n, m))` by Kummer's theorem: the number of carries when
/// adding `m` and `n - m` in base 2.
pub fn kummer_nu2_binomial(n: u64, m: u64) -> Result<u32> {
    if m > n {
        return domain(format!("binom({n}, {m}) needs m <= n"));
    }
    Ok(carries(m, n - m))
}

/// `nu_2(Delta_k)`: 0 for even `k`, `k - 1` for odd `k`.
pub fn disc_nu2(k: u64) -> Result<u64> {
    if k < 2 {
        return domain(format!("k must be at least 2, got {k}"));
    }
    Ok(if k % 2 == 0 { 0 } else { k - 1 })
}

/// `nu_2(L_n^(k))` for `r >= 3` as predicted by the residue: `r - 2 + nu_2(L(m, r))`,
/// returned only when the prediction is below the modulus exponent `k + r - 2`
/// (otherwise the residue does not pin the valuation down).
pub fn predicted_lucas_nu2(k: u64, m: u64, r: u64) -> Result<Option<u64>> {
    if r > k {
        return domain(format!("r = {r} must lie in [0, k = {k}]"));
    }
    let a = l_quantity_nu2(m, r)?;
    let v = r - 2 + a;
    Ok((v < k + r - 2).then_some(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bu(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn nu2_examples() {
        assert_eq!(nu2(&bu(352)), Valuation::Finite(5));
        assert_eq!(nu2(&bu(1)), Valuation::Finite(0));
        assert_eq!(nu2(&bu(0)), Valuation::Infinite);
        assert_eq!(nu2_signed(&BigInt::from(-12)), Valuation::Finite(2));
    }

    #[test]
    fn congruence_examples() {
        let c = lucas_congruence(5, 1, 0).unwrap();
        assert_eq!((c.residue.clone(), c.modulus_exp), (BigInt::from(-2), 3));
        assert!(c.holds_for(&BigInt::from(46)));

        let c = lucas_congruence(5, 1, 3).unwrap();
        assert_eq!((c.residue.clone(), c.modulus_exp), (BigInt::from(-32), 6));
        assert!(c.holds_for(&BigInt::from(352)));

        let c = lucas_congruence(4, 0, 2).unwrap();
        assert_eq!((c.residue.clone(), c.modulus_exp), (BigInt::from(3), 4));
    }

    #[test]
    fn congruence_at_k2_is_vacuous() {
        let c = lucas_congruence(2, 3, 0).unwrap();
        assert_eq!(c.modulus_exp, 0);
        assert!(c.holds_for(&BigInt::from(12345)));
    }

    #[test]
    fn congruence_rejects_bad_r() {
        assert!(lucas_congruence(5, 0, 6).is_err());
        assert!(lucas_congruence(1, 0, 0).is_err());
    }

    #[test]
    fn l_quantity_examples() {
        assert_eq!(l_quantity(0, 7).unwrap(), bu(3));
        assert_eq!(l_quantity(1, 3).unwrap(), bu(16));
        assert!(l_quantity(1, 2).is_err());

        let v = l_quantity(9, 500).unwrap();
        let bound = kummer_nu2_binomial(507, 7).unwrap() as u64 + (4u64 * 500 * 500 * 500).ilog2() as u64;
        assert!(nu2(&v).finite().unwrap() <= bound);
    }

    #[test]
    fn factored_form_agrees_small_grid() {
        for m in 2..12 {
            for r in 3..30 {
                assert_eq!(l_quantity(m, r).unwrap(), l_quantity_factored(m, r).unwrap(), "m={m} r={r}");
            }
        }
        assert!(l_quantity_factored(1, 5).is_err());
    }

    #[test]
    fn fast_nu2_agrees_with_exact() {
        for m in 0..20u64 {
            for r in 3..200u64 {
                let exact = nu2(&l_quantity(m, r).unwrap()).finite().unwrap();
                assert_eq!(l_quantity_nu2(m, r).unwrap(), exact, "m={m} r={r}");
            }
        }
        // campaign-scale r
        for &(m, r) in &[(9u64, (1u64 << 9) + 37), (30, (1 << 30) - 5), (55, (1 << 55) + 299)] {
            let exact = nu2(&l_quantity(m, r).unwrap()).finite().unwrap();
            assert_eq!(l_quantity_nu2(m, r).unwrap(), exact, "m={m} r={r}");
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_nu2_binomial(4, 2).unwrap(), 1);
        assert_eq!(kummer_nu2_binomial(7, 3).unwrap(), 0);
        assert_eq!(kummer_nu2_binomial(8, 0).unwrap(), 0);
        assert!(kummer_nu2_binomial(3, 4).is_err());
    }

    #[test]
    fn disc_nu2_examples() {
        assert_eq!(disc_nu2(3).unwrap(), 2);
        assert_eq!(disc_nu2(2).unwrap(), 0);
        assert_eq!(disc_nu2(201).unwrap(), 200);
        assert!(disc_nu2(1).is_err());
    }

    #[test]
    fn valuation_law_witness() {
        // L_9^(5) = 352, n = 3 + 1 * 6
        let d = ResidueDecomposition::of_index(5, 9);
        assert_eq!((d.m, d.r), (1, 3));
        assert_eq!(predicted_lucas_nu2(5, 1, 3).unwrap(), Some(5));
    }

    #[test]
    fn residue_decomposition_round_trip() {
        let d = ResidueDecomposition::from_parts(10, 4, 7).unwrap();
        assert_eq!(d.n, 51);
        assert_eq!(ResidueDecomposition::of_index(10, 51), d);
        assert!(ResidueDecomposition::from_parts(10, 1, 11).is_err());
    }

    #[test]
    fn signed_representatives() {
        assert_eq!(signed_mod_pow2(&BigInt::from(32), 6), BigInt::from(-32));
        assert_eq!(signed_mod_pow2(&BigInt::from(31), 6), BigInt::from(31));
        assert_eq!(signed_mod_pow2(&BigInt::from(-33), 6), BigInt::from(31));
        assert_eq!(signed_mod_pow2(&BigInt::from(7), 0), BigInt::zero());
    }
}
