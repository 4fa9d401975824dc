//! Certified enclosures of the dominant root `alpha(k)` of
//! `g_k(X) = X^k - X^(k-1) - ... - X - 1` and the inequalities that compare
//! `L_n^(k)` with the dominant Binet term
//! `f_k(alpha) (2 alpha - 1) alpha^(n-1)`, `f_k(x) = (x - 1) / (2 + (k+1)(x - 2))`.
//!
//! Every check returns `Ok(true)` only when outward-rounded interval
//! arithmetic proves the inequality. Undecided comparisons are retried at
//! doubled precision up to [`MAX_PRECISION_BITS`].

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::interval::{decide_with_escalation, Dyadic, Interval};
use crate::kgen_seq::{term, SeqParams};

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const MAX_PRECISION_BITS: u32 = 4096;

// extra bits carried through evaluations on top of the root precision
const GUARD_BITS: u32 = 64;

/// `lo < alpha(k) < hi` certified by a sign change of `g_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub k: u64,
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub precision_bits: u32,
}

impl RootEnclosure {
    /// The enclosure as an interval carrying `work_bits` of working precision.
    pub fn interval(&self, work_bits: u32) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), work_bits)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }
}

/// Sign of `x^(k+1) - 2 x^k + 1`, which for `x > 1` is the sign of
/// `g_k(x) = (x^(k+1) - 2x^k + 1) / (x - 1)`.
fn g_sign(k: u64, x: &Dyadic, work_bits: u32) -> Ordering {
    let xi = Interval::point(x.clone(), work_bits);
    let two = Interval::from_int(2, work_bits);
    let one = Interval::from_int(1, work_bits);
    let h = xi.powi(k as i64).mul(&xi.sub(&two)).add(&one);
    match h.certain_cmp(&Interval::from_int(0, work_bits)) {
        Some(ord) => ord,
        None => {
            // exact fallback; alpha is irrational so h(x) != 0 at a dyadic x
            let h = x.pow(k as u32).mul(&x.sub(&Dyadic::from_int(2))).add(&Dyadic::from_int(1));
            h.cmp(&Dyadic::zero())
        }
    }
}

/// Bisects `[2(1 - 2^-k), 2]` until the bracket is at most `2^-precision_bits` wide.
pub fn dominant_root(k: u64, precision_bits: u32) -> Result<RootEnclosure> {
    if k < 2 {
        return domain(format!("k must be at least 2, got {k}"));
    }
    if precision_bits < 16 {
        return domain(format!("precision_bits must be at least 16, got {precision_bits}"));
    }
    let work = precision_bits + GUARD_BITS + 2 * (64 - k.leading_zeros());
    let mut lo = Dyadic::from_int(2).sub(&Dyadic::pow2(1 - k as i64));
    let mut hi = Dyadic::from_int(2);
    assert_eq!(g_sign(k, &lo, work), Ordering::Less, "g_k does not change sign on the bracket");
    assert_eq!(g_sign(k, &hi, work), Ordering::Greater, "g_k does not change sign on the bracket");
    let target = Dyadic::pow2(-(precision_bits as i64));
    while hi.sub(&lo) > target {
        let mid = lo.midpoint(&hi);
        match g_sign(k, &mid, work) {
            Ordering::Less => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootEnclosure {
        k,
        lo,
        hi,
        precision_bits,
    })
}

/// Enclosure of `f_k(alpha) (2 alpha - 1) alpha^(n-1)`.
#[derive(Clone, Debug)]
pub struct BinetDominant {
    pub k: u64,
    pub n: i64,
    pub value: Interval,
}

pub fn binet_dominant(root: &RootEnclosure, n: i64, work_bits: u32) -> BinetDominant {
    let k = root.k;
    let a = root.interval(work_bits);
    let one = Interval::from_int(1, work_bits);
    let two = Interval::from_int(2, work_bits);
    let denom = two.add(&Interval::from_int(k + 1, work_bits).mul(&a.sub(&two)));
    let f = a.sub(&one).div(&denom);
    let value = f.mul(&a.scale_pow2(1).sub(&one)).mul(&a.powi(n - 1));
    BinetDominant { k, n, value }
}

fn lucas(k: u64, n: i64) -> Result<BigUint> {
    term(SeqParams::lucas(k)?, n)
}

fn escalate<F>(what: String, check: F) -> Result<bool>
where
    F: FnMut(u32) -> Option<bool>,
{
    decide_with_escalation(DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS, check).ok_or(Error::Undecided {
        what,
        bits: MAX_PRECISION_BITS,
    })
}

fn both(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// `alpha^(n-1) <= L_n^(k) <= 2 alpha^n`.
pub fn growth_bounds_check(k: u64, n: i64) -> Result<bool> {
    if n < 0 {
        return domain(format!("growth bounds need n >= 0, got {n}"));
    }
    let l = lucas(k, n)?;
    escalate(format!("growth bounds at k={k}, n={n}"), |p| {
        let root = dominant_root(k, p).ok()?;
        let work = p + GUARD_BITS;
        let a = root.interval(work);
        let li = Interval::from_biguint(&l, work);
        let lower = a.powi(n - 1).le(&li);
        let upper = li.le(&a.powi(n).scale_pow2(1));
        both(lower, upper)
    })
}

/// `|L_n^(k) - f_k(alpha)(2 alpha - 1) alpha^(n-1)| < 3/2`.
pub fn binet_error_check(k: u64, n: i64) -> Result<bool> {
    let l = lucas(k, n)?;
    escalate(format!("Binet error at k={k}, n={n}"), |p| {
        let root = dominant_root(k, p).ok()?;
        let work = p + GUARD_BITS;
        let d = binet_dominant(&root, n, work).value;
        let diff = Interval::from_biguint(&l, work).sub(&d).abs();
        diff.lt(&Interval::from_ratio(3, 2, work))
    })
}

/// Whether `n < 2^(k/2)`, decided exactly as `n^2 < 2^k`.
pub fn below_sqrt_pow2(k: u64, n: i64) -> bool {
    if n < 0 {
        return true;
    }
    let n = BigUint::from(n as u64);
    &n * &n < BigUint::one() << k as usize
}

/// `|f_k(alpha)(2 alpha - 1) alpha^(n-1) - 3 * 2^(n-2)| < 3 * 2^(n-2) * 36 / 2^(k/2)`,
/// valid when `n < 2^(k/2)`.
pub fn binet_vs_power2_check(k: u64, n: i64) -> Result<bool> {
    if k < 2 {
        return domain(format!("k must be at least 2, got {k}"));
    }
    if !below_sqrt_pow2(k, n) {
        return domain(format!("requires n < 2^(k/2); got k={k}, n={n}"));
    }
    escalate(format!("Binet vs 3*2^(n-2) at k={k}, n={n}"), |p| {
        let root = dominant_root(k, p).ok()?;
        let work = p + GUARD_BITS;
        let d = binet_dominant(&root, n, work).value;
        let base = Interval::from_int(3, work).scale_pow2(n - 2);
        let half_k = if k % 2 == 0 {
            Interval::point(Dyadic::pow2(k as i64 / 2), work)
        } else {
            Interval::from_int(2, work).sqrt().scale_pow2((k as i64 - 1) / 2)
        };
        let rhs = base.mul(&Interval::from_int(36, work)).div(&half_k);
        d.sub(&base).abs().lt(&rhs)
    })
}

/// `2(1 - 2^-k)` as an exact dyadic.
pub fn root_lower_bracket(k: u64) -> Dyadic {
    Dyadic::from_int(2).sub(&Dyadic::pow2(1 - k as i64))
}
