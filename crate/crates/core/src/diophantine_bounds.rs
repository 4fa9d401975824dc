//! The discriminant `Delta_k` and the numeric bounds that reduce
//! `L_n^(k) = Delta_k` to finitely many cases.
//!
//! Double precision is used only where its error is provably negligible
//! (window membership for `k < 10^8`). Everything that ranges over `k` up to
//! `10^19` goes through [`crate::interval`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::interval::{decide_with_escalation, Interval};

const START_BITS: u32 = 128;
const CAP_BITS: u32 = 4096;

/// Largest `k` allowed by the linear-forms bound.
pub const K_CEILING: u64 = 70_000_000_000_000_000;
/// Quoted ceiling for `n`.
pub const N_CEILING: u64 = 4_000_000_000_000_000_000;
/// Quoted ceiling for `k` when `r` is 1 or 2.
pub const K_CEILING_R12: u64 = 70_000_000;
/// Quoted threshold of the `B = 10 log 2` branch.
pub const K_CEILING_CONST_BRANCH: u64 = 59_000;
/// Below this, double precision decides window membership.
pub const F64_WINDOW_LIMIT: u64 = 100_000_000;
/// Distance from a window endpoint below which the double-precision answer
/// is rechecked in interval arithmetic.
pub const F64_WINDOW_MARGIN: f64 = 1e-5;

/// `Delta_k = (2^(k+1) k^k - (k+1)^(k+1)) / (k-1)^2 = |Disc(g_k)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub k: u64,
    pub delta: BigUint,
}

impl Discriminant {
    /// Sign of `Disc(g_k)`, `(-1)^(binom(k+1, 2) - 1)`.
    pub fn sign(&self) -> i8 {
        let e = (self.k + 1) * self.k / 2 - 1;
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn discriminant(k: u64) -> Result<Discriminant> {
    if k < 2 {
        return domain(format!("k must be at least 2, got {k}"));
    }
    let ku = k as usize;
    let num = (BigUint::one() << (ku + 1)) * num_traits::pow(BigUint::from(k), ku)
        - num_traits::pow(BigUint::from(k + 1), ku + 1);
    let den = BigUint::from(k - 1) * BigUint::from(k - 1);
    let (delta, rem) = num.div_rem(&den);
    assert!(rem == BigUint::from(0u32), "(k-1)^2 does not divide the discriminant numerator at k={k}");
    Ok(Discriminant { k, delta })
}

fn require_k_above_200(k: u64) -> Result<()> {
    if k <= 200 {
        return domain(format!("the n-window is stated for k > 200, got {k}"));
    }
    Ok(())
}

/// `k + (k-2) log k / log 2`, the window centre before offsets.
pub fn window_base_f64(k: u64) -> f64 {
    let kf = k as f64;
    kf + (kf - 2.0) * kf.ln() / std::f64::consts::LN_2
}

/// Open window `(k + (k-2) log2 k - 0.1, k + (k-2) log2 k + 2.3)` containing
/// `n` for any solution with `k > 200`, evaluated in double precision.
///
/// The absolute error is below `10^-7` for `k < 10^8`; above that use
/// [`n_window_certified`].
pub fn n_window(k: u64) -> Result<(f64, f64)> {
    require_k_above_200(k)?;
    let base = window_base_f64(k);
    Ok((base - 0.1, base + 2.3))
}

/// Enclosures of both window endpoints.
#[derive(Clone, Debug)]
pub struct CertifiedWindow {
    pub k: u64,
    pub lo: Interval,
    pub hi: Interval,
}

fn window_base(k: u64, prec: u32) -> Interval {
    let kk = Interval::from_int(k, prec);
    let ln_k = kk.ln();
    let ln2 = crate::interval::ln2(prec);
    kk.add(&Interval::from_int(k - 2, prec).mul(&ln_k).div(&ln2))
}

pub fn n_window_certified(k: u64, prec: u32) -> Result<CertifiedWindow> {
    require_k_above_200(k)?;
    let base = window_base(k, prec);
    Ok(CertifiedWindow {
        k,
        lo: base.sub(&Interval::from_ratio(1, 10, prec)),
        hi: base.add(&Interval::from_ratio(23, 10, prec)),
    })
}

/// Exact decision of `lo < n < hi` for the open n-window.
pub fn n_in_window(k: u64, n: u64) -> Result<bool> {
    require_k_above_200(k)?;
    if k < F64_WINDOW_LIMIT {
        let (lo, hi) = n_window(k)?;
        let nf = n as f64;
        if nf - lo > F64_WINDOW_MARGIN && hi - nf > F64_WINDOW_MARGIN {
            return Ok(true);
        }
        if lo - nf > F64_WINDOW_MARGIN || nf - hi > F64_WINDOW_MARGIN {
            return Ok(false);
        }
    }
    decide_with_escalation(START_BITS, CAP_BITS, |p| {
        let w = n_window_certified(k, p).ok()?;
        let ni = Interval::from_int(n, p);
        match (w.lo.lt(&ni), ni.lt(&w.hi)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    })
    .ok_or(Error::Undecided {
        what: format!("window membership of n={n} at k={k}"),
        bits: CAP_BITS,
    })
}

/// Every integer strictly inside the n-window, in increasing order.
///
/// Candidates are the five integers nearest the double-precision centre;
/// each is confirmed by [`n_in_window`]. The window is 2.4 wide, so this
/// finds every member.
pub fn integers_in_window(k: u64) -> Result<Vec<u64>> {
    require_k_above_200(k)?;
    let centre = if k < F64_WINDOW_LIMIT {
        window_base_f64(k) + 1.1
    } else {
        let w = n_window_certified(k, START_BITS)?;
        w.lo.midpoint_f64() + 1.2
    };
    let c = centre.round() as u64;
    let mut out = Vec::with_capacity(3);
    for n in c.saturating_sub(2)..=c + 2 {
        if n_in_window(k, n)? {
            out.push(n);
        }
    }
    Ok(out)
}

/// Right-hand side `-1.4 * 30^(t+3) * t^4.5 * (1 + log B) * A_1 ... A_t` of
/// Matveev's lower bound for `log |Gamma|`.
pub fn matveev_lower_bound(t: u32, b: f64, a: &[f64]) -> Result<f64> {
    if t < 1 {
        return domain("t must be at least 1");
    }
    if !(b >= 3.0) {
        return domain(format!("B must be at least 3, got {b}"));
    }
    if a.len() != t as usize || a.iter().any(|&x| !(x > 0.0)) {
        return domain("need exactly t positive A_i");
    }
    let prod: f64 = a.iter().product();
    Ok(-1.4 * 30f64.powi(t as i32 + 3) * (t as f64).powf(4.5) * (1.0 + b.ln()) * prod)
}

/// Decides `(k/2) log 2 < 3.5e11 (log k)^2 log(3k log k)` at `prec` bits.
fn matveev_inequality(k: u64, prec: u32) -> Option<bool> {
    let kk = Interval::from_int(k, prec);
    let ln_k = kk.ln();
    let lhs = kk.mul(&crate::interval::ln2(prec)).scale_pow2(-1);
    let inner = Interval::from_int(3, prec).mul(&kk).mul(&ln_k);
    let rhs = Interval::from_decimal(35, 10, prec).mul(&ln_k).mul(&ln_k).mul(&inner.ln());
    lhs.lt(&rhs)
}

pub fn matveev_inequality_holds(k: u64) -> Result<bool> {
    if k < 2 {
        return domain("k must be at least 2");
    }
    decide_with_escalation(START_BITS, CAP_BITS, |p| matveev_inequality(k, p)).ok_or(Error::Undecided {
        what: format!("Matveev inequality at k={k}"),
        bits: CAP_BITS,
    })
}

/// Largest integer `k` in `[lo, hi]` satisfying `pred`, assuming `pred(lo)`
/// holds, `pred(hi)` fails, and the truth value changes exactly once.
fn last_true<F>(mut lo: u64, mut hi: u64, mut pred: F) -> Result<u64>
where
    F: FnMut(u64) -> Result<bool>,
{
    assert!(pred(lo)? && !pred(hi)?, "bisection bracket does not straddle the root");
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatveevBound {
    /// Largest `k` satisfying the aggregated inequality.
    pub k_max: u64,
    /// Largest integer strictly below the upper window endpoint at `k_max`.
    pub n_max: u64,
}

/// Largest `k` with `(k/2) log 2 < 3.5e11 (log k)^2 log(3k log k)` and the
/// implied bound on `n` from the window at that `k`.
pub fn solve_matveev_k_bound() -> Result<MatveevBound> {
    let k_max = last_true(1_000, 10_000_000_000_000_000_000, matveev_inequality_holds)?;
    let n_max = ceil_certified(|p| Ok(n_window_certified(k_max, p)?.hi), "n bound")? - 1u32;
    Ok(MatveevBound {
        k_max,
        n_max: n_max.to_u64().expect("n bound fits u64"),
    })
}

/// `floor(x)` for a quantity enclosed by `enclose(prec)`, escalating
/// precision until the floor is unambiguous.
fn floor_certified<F>(mut enclose: F, what: &str) -> Result<BigInt>
where
    F: FnMut(u32) -> Result<Interval>,
{
    let mut prec = START_BITS;
    loop {
        let x = enclose(prec)?;
        let (a, b) = (x.lo().floor(), x.hi().floor());
        if a == b {
            return Ok(a);
        }
        if prec >= CAP_BITS {
            return Err(Error::Undecided {
                what: what.to_string(),
                bits: CAP_BITS,
            });
        }
        prec *= 2;
    }
}

fn ceil_certified<F>(mut enclose: F, what: &str) -> Result<BigInt>
where
    F: FnMut(u32) -> Result<Interval>,
{
    floor_certified(|p| Ok(enclose(p)?.neg()), what).map(|f| -f)
}

/// `b' = (k + 6.4) / (5.4 log k)`.
pub fn bl_b_prime(k: u64) -> f64 {
    let kf = k as f64;
    (kf + 6.4) / (5.4 * kf.ln())
}

/// `B = max(log b' + log log 2 + 0.4, 10 log 2)`.
pub fn bl_b(k: u64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    (bl_b_prime(k).ln() + ln2.ln() + 0.4).max(10.0 * ln2)
}

/// Upper bound `1123 B^2 (log k) log(k+1)` on `nu_2((k+1)^(k+1) - alpha_2)`
/// for an even `k > 200` with `n = r + m(k+1)`, `r` in {1, 2}.
pub fn bl_valuation_bound(k: u64, m: u64, r: u64) -> Result<f64> {
    if k <= 200 || k % 2 != 0 {
        return domain(format!("k must be even and greater than 200, got {k}"));
    }
    if m < 1 {
        return domain("m must be at least 1");
    }
    if r != 1 && r != 2 {
        return domain(format!("r must be 1 or 2, got {r}"));
    }
    let kf = k as f64;
    Ok(1123.0 * bl_b(k).powi(2) * kf.ln() * (kf + 1.0).ln())
}

fn bl_b_prime_interval(k: u64, prec: u32) -> Interval {
    let kk = Interval::from_int(k, prec);
    kk.add(&Interval::from_ratio(32, 5, prec))
        .div(&Interval::from_ratio(27, 5, prec).mul(&kk.ln()))
}

fn bl_log_branch(k: u64, prec: u32) -> Interval {
    let ln_ln2 = crate::interval::ln2(prec).ln();
    bl_b_prime_interval(k, prec)
        .ln()
        .add(&ln_ln2)
        .add(&Interval::from_ratio(2, 5, prec))
}

/// Decides `log b' + log log 2 + 0.4 <= 10 log 2`, the condition under which
/// `B = 10 log 2`.
pub fn bl_const_branch_applies(k: u64) -> Result<bool> {
    decide_with_escalation(START_BITS, CAP_BITS, |p| {
        let ten_ln2 = crate::interval::ln2(p).mul(&Interval::from_int(10, p));
        bl_log_branch(k, p).le(&ten_ln2)
    })
    .ok_or(Error::Undecided {
        what: format!("B branch at k={k}"),
        bits: CAP_BITS,
    })
}

/// Decides `k - 1 < 1123 B^2 (log k) log(k+1)`.
pub fn bl_inequality_holds(k: u64) -> Result<bool> {
    decide_with_escalation(START_BITS, CAP_BITS, |p| {
        let ten_ln2 = crate::interval::ln2(p).mul(&Interval::from_int(10, p));
        let b = bl_log_branch(k, p).max(&ten_ln2);
        let kk = Interval::from_int(k, p);
        let rhs = Interval::from_int(1123, p)
            .mul(&b)
            .mul(&b)
            .mul(&kk.ln())
            .mul(&Interval::from_int(k + 1, p).ln());
        Interval::from_int(k - 1, p).lt(&rhs)
    })
    .ok_or(Error::Undecided {
        what: format!("valuation bound at k={k}"),
        bits: CAP_BITS,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BugeaudLaurentBounds {
    /// Largest `k` for which `B = 10 log 2`.
    pub const_branch_k_max: u64,
    /// Largest `k` satisfying `k - 1 < 1123 B^2 (log k) log(k+1)`.
    pub k_max: u64,
}

pub fn solve_bl_k_bounds() -> Result<BugeaudLaurentBounds> {
    let const_branch_k_max = last_true(202, 10_000_000, bl_const_branch_applies)?;
    let k_max = last_true(202, 10_000_000_000, bl_inequality_holds)?;
    Ok(BugeaudLaurentBounds {
        const_branch_k_max,
        k_max,
    })
}

/// `floor(6 log k + 2)`, the largest possible `nu_2(L(m, r))` for a solution.
pub fn a_max(k: u64) -> Result<u64> {
    let v = floor_certified(
        |p| {
            Ok(Interval::from_int(k, p)
                .ln()
                .mul(&Interval::from_int(6, p))
                .add(&Interval::from_int(2, p)))
        },
        "a bound",
    )?;
    Ok(v.to_u64().expect("small"))
}

/// Range of `m = floor(n / (k+1))` over `200 < k <= k_max`.
///
/// The lower end is the smallest integer above
/// `((k-2) log2 k - 0.1) / (k+1)` at `k = 201` (the expression increases in
/// `k`); the upper end is the largest integer below `n_hi / (k+1)` at `k_max`.
pub fn m_range(k_max: u64) -> Result<(u64, u64)> {
    if k_max <= 200 {
        return domain(format!("k_max must exceed 200, got {k_max}"));
    }
    let m_lower = |k: u64, p: u32| -> Result<Interval> {
        let base = window_base(k, p).sub(&Interval::from_int(k, p));
        Ok(base
            .sub(&Interval::from_ratio(1, 10, p))
            .div(&Interval::from_int(k + 1, p)))
    };
    let m_min = floor_certified(|p| m_lower(201, p), "m lower bound")? + 1u32;
    let m_max = ceil_certified(
        |p| Ok(n_window_certified(k_max, p)?.hi.div(&Interval::from_int(k_max + 1, p))),
        "m upper bound",
    )? - 1u32;
    Ok((m_min.to_u64().unwrap(), m_max.to_u64().unwrap()))
}

/// Open interval `(2^m - 300, 2^m + 300)` clipped to `(200, K_CEILING)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KWindow {
    /// exclusive
    pub lo: u64,
    /// exclusive
    pub hi: u64,
}

impl KWindow {
    pub fn is_empty(&self) -> bool {
        self.lo.saturating_add(1) >= self.hi
    }

    /// Odd `k` strictly inside the window.
    pub fn odd_ks(&self) -> impl Iterator<Item = u64> {
        let first = if self.lo % 2 == 0 { self.lo + 1 } else { self.lo + 2 };
        let hi = self.hi;
        (first..hi).step_by(2)
    }
}

pub fn localize_k_by_power2(m: u64) -> Result<KWindow> {
    if m < 8 {
        return domain(format!("m must be at least 8, got {m}"));
    }
    if m > 62 {
        return domain(format!("m = {m} is far beyond the k ceiling"));
    }
    let p = 1u64 << m;
    Ok(KWindow {
        lo: p.saturating_sub(300).max(200),
        hi: (p + 300).min(K_CEILING),
    })
}

/// Every derived constant for one `k`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundProfile {
    pub k: u64,
    pub n_lo: f64,
    pub n_hi: f64,
    pub m_lo: u64,
    pub m_hi: u64,
    pub a_max: u64,
    pub k_matveev_max: u64,
    pub k_bl_max: u64,
}

pub fn bound_profile(k: u64) -> Result<BoundProfile> {
    let w = n_window_certified(k, START_BITS)?;
    let mut m_lo = floor_certified(
        |p| {
            let w = n_window_certified(k, p)?;
            Ok(w.lo.sub(&Interval::from_int(k, p)).div(&Interval::from_int(k + 1, p)))
        },
        "m lower bound",
    )? + 1u32;
    if m_lo < BigInt::from(0) {
        m_lo = BigInt::from(0);
    }
    let m_hi = ceil_certified(
        |p| Ok(n_window_certified(k, p)?.hi.div(&Interval::from_int(k + 1, p))),
        "m upper bound",
    )? - 1u32;
    Ok(BoundProfile {
        k,
        n_lo: w.lo.midpoint_f64(),
        n_hi: w.hi.midpoint_f64(),
        m_lo: m_lo.to_u64().unwrap(),
        m_hi: m_hi.to_u64().unwrap(),
        a_max: a_max(k)?,
        k_matveev_max: solve_matveev_k_bound()?.k_max,
        k_bl_max: solve_bl_k_bounds()?.k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(2).unwrap().delta, BigUint::from(5u32));
        assert_eq!(discriminant(3).unwrap().delta, BigUint::from(44u32));
        assert_eq!(discriminant(4).unwrap().delta, BigUint::from(563u32));
        assert!(discriminant(1).is_err());
    }

    #[test]
    fn discriminant_sign() {
        // Disc(x^2 - x - 1) = 5, Disc(x^3 - x^2 - x - 1) = -44
        assert_eq!(discriminant(2).unwrap().sign(), 1);
        assert_eq!(discriminant(3).unwrap().sign(), -1);
    }

    #[test]
    fn window_examples() {
        let (lo, hi) = n_window(201).unwrap();
        let expected = 201.0 + 199.0 * (201f64).log2() - 0.1;
        assert!((lo - expected).abs() < 1e-9);
        assert!((lo - 1723.459).abs() < 0.001);
        assert!((hi - lo - 2.4).abs() < 1e-9);

        let (lo, hi) = n_window(1024).unwrap();
        assert!((lo - 11243.9).abs() < 1e-9 && (hi - 11246.3).abs() < 1e-9);
        assert_eq!(integers_in_window(1024).unwrap(), vec![11244, 11245, 11246]);
        assert!(n_window(200).is_err());
    }

    #[test]
    fn window_membership_near_endpoint_uses_intervals() {
        // k = 1024: lo = 11243.9 exactly in real arithmetic
        assert!(!n_in_window(1024, 11243).unwrap());
        assert!(n_in_window(1024, 11244).unwrap());
        assert!(n_in_window(1024, 11246).unwrap());
        assert!(!n_in_window(1024, 11247).unwrap());
    }

    #[test]
    fn matveev_formula() {
        let v = matveev_lower_bound(3, 3.0, &[1.0, 1.0, 1.0]).unwrap();
        let expected = -1.4 * 30f64.powi(6) * 3f64.powf(4.5) * (1.0 + 3f64.ln());
        assert!((v - expected).abs() < 1e-6 * expected.abs());
        let v = matveev_lower_bound(1, 10.0, &[2.0]).unwrap();
        assert!((v + 1.4 * 30f64.powi(4) * (1.0 + 10f64.ln()) * 2.0).abs() < 1e-3);
        assert!(matveev_lower_bound(3, 1.718, &[1.0, 1.0, 1.0]).is_err());
        assert!(matveev_lower_bound(2, 5.0, &[1.0]).is_err());
    }

    #[test]
    fn matveev_aggregate_constant() {
        let k = 7e16f64;
        let b = 4e18f64;
        let v = matveev_lower_bound(3, b, &[3.0 * k.ln(), 2f64.ln(), k.ln()]).unwrap();
        // the aggregated form 3e11 (1 + log B) (log k)^2 bounds it
        assert!(-v < 3e11 * (1.0 + b.ln()) * k.ln().powi(2));
        assert!(-v > 2.9e11 * (1.0 + b.ln()) * k.ln().powi(2));
    }

    #[test]
    fn bl_examples() {
        assert!(bl_valuation_bound(201, 9, 1).is_err());
        assert!(bl_valuation_bound(1_000_000, 9, 3).is_err());
        let v = bl_valuation_bound(1_000_000, 9, 1).unwrap();
        assert!(v.is_finite() && v > 999_999.0);
        let v = bl_valuation_bound(100_000_000, 9, 2).unwrap();
        assert!(v < 100_000_000.0 - 1.0);
        assert!((bl_b(1000) - 10.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn localize_examples() {
        assert_eq!(localize_k_by_power2(9).unwrap(), KWindow { lo: 212, hi: 812 });
        let w = localize_k_by_power2(55).unwrap();
        assert_eq!((w.lo, w.hi), ((1 << 55) - 300, (1 << 55) + 300));
        assert!(localize_k_by_power2(57).unwrap().is_empty());
        assert_eq!(localize_k_by_power2(8).unwrap(), KWindow { lo: 200, hi: 556 });
        assert!(localize_k_by_power2(7).is_err());
        let ks: Vec<u64> = localize_k_by_power2(9).unwrap().odd_ks().collect();
        assert_eq!(ks.first(), Some(&213));
        assert_eq!(ks.last(), Some(&811));
        assert_eq!(ks.len(), 300);
    }

    #[test]
    fn a_max_at_ceiling() {
        assert_eq!(a_max(K_CEILING).unwrap() - 1, 233);
    }

    #[test]
    fn solver_results() {
        let mv = solve_matveev_k_bound().unwrap();
        assert!(mv.k_max < K_CEILING && mv.k_max > 60_000_000_000_000_000);
        assert!(mv.n_max < N_CEILING);
        assert!(matveev_inequality_holds(mv.k_max).unwrap());
        assert!(!matveev_inequality_holds(mv.k_max + 1).unwrap());

        let bl = solve_bl_k_bounds().unwrap();
        assert!(bl.const_branch_k_max < K_CEILING_CONST_BRANCH);
        assert!(bl.k_max < K_CEILING_R12);
        assert!(bl_inequality_holds(bl.k_max).unwrap());
        assert!(!bl_inequality_holds(bl.k_max + 1).unwrap());
    }

    #[test]
    fn m_range_envelope() {
        let (lo, hi) = m_range(K_CEILING).unwrap();
        assert!(lo <= 9 && hi >= 55);
        assert_eq!(lo, 8);
        assert!(hi - lo < 52);
    }
}
