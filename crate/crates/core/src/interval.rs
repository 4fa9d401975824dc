//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every [`Interval`] is a closed interval `[lo, hi]` whose endpoints are
//! numbers of the form `m * 2^e` with an arbitrary-precision mantissa. Each
//! operation returns an interval that contains every exact result of the
//! operation applied to points of its operands; lower endpoints are rounded
//! toward negative infinity and upper endpoints toward positive infinity.
//! A comparison that comes back decided is therefore a proof, and one that
//! comes back `None` means more precision is needed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact dyadic rational `mantissa * 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        Self { mantissa, exponent }.normalized()
    }

    pub fn zero() -> Self {
        Self::new(BigInt::zero(), 0)
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::new(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Self::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    fn normalized(mut self) -> Self {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return self;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
        self
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exponent.min(b.exponent);
        let am = &a.mantissa << (a.exponent - e) as usize;
        let bm = &b.mantissa << (b.exponent - e) as usize;
        (am, bm, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = Self::aligned(self, other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = Self::aligned(self, other);
        Dyadic::new(a - b, e)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exponent + other.exponent)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    /// Midpoint of two dyadics (exact).
    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let s = self.add(other);
        Dyadic::new(s.mantissa, s.exponent - 1)
    }

    /// Round to at most `bits` significant bits, toward negative infinity.
    pub fn round_floor(&self, bits: u32) -> Dyadic {
        let len = self.mantissa.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let shift = len - bits as u64;
        // `>>` on BigInt rounds toward negative infinity.
        Dyadic::new(&self.mantissa >> shift as usize, self.exponent + shift as i64)
    }

    /// Round to at most `bits` significant bits, toward positive infinity.
    pub fn round_ceil(&self, bits: u32) -> Dyadic {
        self.neg().round_floor(bits).neg()
    }

    /// `floor(self)` as a big integer.
    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as usize
        } else {
            &self.mantissa >> (-self.exponent) as usize
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// `self / other` rounded toward negative infinity with `bits` bits of quotient.
    pub fn div_floor(&self, other: &Dyadic, bits: u32) -> Dyadic {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = (bits as i64 + other.mantissa.bits() as i64 - self.mantissa.bits() as i64 + 2).max(0);
        let num = &self.mantissa << shift as usize;
        let q = num.div_floor(&other.mantissa);
        Dyadic::new(q, self.exponent - other.exponent - shift)
    }

    pub fn div_ceil(&self, other: &Dyadic, bits: u32) -> Dyadic {
        self.neg().div_floor(other, bits).neg()
    }

    /// Exact non-negative integer power.
    pub fn pow(&self, n: u32) -> Dyadic {
        Dyadic::new(num_traits::pow(self.mantissa.clone(), n as usize), self.exponent * n as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mantissa >> drop as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exponent + drop) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::aligned(self, other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20e}", self.to_f64())
    }
}

/// Closed interval with dyadic endpoints and a working precision in bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi, prec }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Self::point(Dyadic::from_int(v), prec)
    }

    pub fn from_biguint(v: &BigUint, prec: u32) -> Self {
        Self::point(Dyadic::from_int(BigInt::from(v.clone())), prec)
    }

    /// Enclosure of the rational `num / den` (den > 0).
    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        assert!(den > 0);
        let n = Dyadic::from_int(num);
        let d = Dyadic::from_int(den);
        Self {
            lo: n.div_floor(&d, prec),
            hi: n.div_ceil(&d, prec),
            prec,
        }
    }

    /// Enclosure of a finite decimal given as `mantissa * 10^exp10`.
    pub fn from_decimal(mantissa: i64, exp10: i32, prec: u32) -> Self {
        let m = Interval::from_int(mantissa, prec);
        let ten = BigInt::from(10);
        let p = num_traits::pow(ten, exp10.unsigned_abs() as usize);
        let scale = Interval::point(Dyadic::from_int(p), prec);
        if exp10 >= 0 {
            m.mul(&scale)
        } else {
            m.div(&scale)
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.lo.midpoint(&self.hi).to_f64()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    fn rounded(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        Self {
            lo: lo.round_floor(prec),
            hi: hi.round_ceil(prec),
            prec,
        }
    }

    fn joint_prec(&self, other: &Interval) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Self::rounded(self.lo.add(&other.lo), self.hi.add(&other.hi), self.joint_prec(other))
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Self::rounded(self.lo.sub(&other.hi), self.hi.sub(&other.lo), self.joint_prec(other))
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Self::rounded(lo, hi, self.joint_prec(other))
    }

    pub fn scale_pow2(&self, e: i64) -> Interval {
        let f = Dyadic::pow2(e);
        Interval {
            lo: self.lo.mul(&f),
            hi: self.hi.mul(&f),
            prec: self.prec,
        }
    }

    /// True when zero is not inside the interval.
    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    pub fn recip(&self) -> Interval {
        assert!(self.excludes_zero(), "reciprocal of an interval containing zero");
        let one = Dyadic::from_int(1);
        Interval {
            lo: one.div_floor(&self.hi, self.prec),
            hi: one.div_ceil(&self.lo, self.prec),
            prec: self.prec,
        }
    }

    pub fn div(&self, other: &Interval) -> Interval {
        let prec = self.joint_prec(other);
        let other = Interval { prec, ..other.clone() };
        self.mul(&other.recip())
    }

    /// Integer power of an interval with non-negative lower endpoint.
    pub fn powi(&self, n: i64) -> Interval {
        if n == 0 {
            return Interval::from_int(1, self.prec);
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        assert!(!self.lo.is_negative(), "powi requires a non-negative interval");
        let lo = pow_rounded(&self.lo, n as u64, self.prec, false);
        let hi = pow_rounded(&self.hi, n as u64, self.prec, true);
        Interval { lo, hi, prec: self.prec }
    }

    pub fn sqrt(&self) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        Interval {
            lo: sqrt_floor(&self.lo, self.prec),
            hi: sqrt_ceil(&self.hi, self.prec),
            prec: self.prec,
        }
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self) -> Interval {
        assert!(self.lo.is_positive(), "ln of a non-positive interval");
        let lo = ln_dyadic(&self.lo, self.prec).lo;
        let hi = ln_dyadic(&self.hi, self.prec).hi;
        Interval { lo, hi, prec: self.prec }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = self.lo.neg().max(self.hi.clone());
            Interval {
                lo: Dyadic::zero(),
                hi,
                prec: self.prec,
            }
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.joint_prec(other),
        }
    }

    /// `Some(Less)` when every point is below every point of `other`,
    /// `Some(Greater)` when every point is above, `Some(Equal)` when both are
    /// the same degenerate point, `None` when the intervals overlap otherwise.
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Decides `self < other`; `None` when undecided at this precision.
    pub fn lt(&self, other: &Interval) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    /// Decides `self <= other`; `None` when undecided at this precision.
    pub fn le(&self, other: &Interval) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn pow_rounded(base: &Dyadic, mut n: u64, prec: u32, up: bool) -> Dyadic {
    let round = |d: Dyadic| if up { d.round_ceil(prec) } else { d.round_floor(prec) };
    let mut acc = Dyadic::from_int(1);
    let mut b = base.clone();
    // base >= 0, so rounding every partial product in one direction keeps
    // the result on the same side of the true power.
    while n > 0 {
        if n & 1 == 1 {
            acc = round(acc.mul(&b));
        }
        n >>= 1;
        if n > 0 {
            b = round(b.mul(&b));
        }
    }
    acc
}

fn sqrt_floor(x: &Dyadic, prec: u32) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    // Make the exponent even and give the mantissa about 2*prec bits.
    let mut shift = (2 * prec as i64 + 4 - x.mantissa.bits() as i64).max(0);
    if (x.exponent - shift) % 2 != 0 {
        shift += 1;
    }
    let m = (&x.mantissa << shift as usize).to_biguint().expect("non-negative");
    let r = m.sqrt();
    Dyadic::new(BigInt::from_biguint(Sign::Plus, r), (x.exponent - shift) / 2)
}

fn sqrt_ceil(x: &Dyadic, prec: u32) -> Dyadic {
    let f = sqrt_floor(x, prec);
    if f.mul(&f) == *x {
        f
    } else {
        f.add(&Dyadic::new(BigInt::one(), f.exponent))
    }
}

/// Enclosure of `2 * atanh(z) = ln((1+z)/(1-z))` for `z` in `[0, 1/3]`.
fn two_atanh(z: &Interval) -> Interval {
    let prec = z.prec;
    let z2 = z.mul(z);
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut i: i64 = 1;
    // Each term shrinks by at least z^2 <= 1/9; stop once terms are far below
    // the working precision and add a rigorous bound for the tail.
    let stop = Dyadic::pow2(-(prec as i64) - 8);
    loop {
        term = term.mul(&z2);
        let t = term.div(&Interval::from_int(2 * i + 1, prec));
        sum = sum.add(&t);
        i += 1;
        if t.hi <= stop {
            break;
        }
    }
    // Tail: sum_{j>=i} z^(2j+1)/(2j+1) <= z^(2i+1) / (1 - z^2).
    let next = term.mul(&z2);
    let one = Interval::from_int(1, prec);
    let tail_hi = next.div(&one.sub(&z2)).hi;
    let sum = Interval {
        lo: sum.lo,
        hi: sum.hi.add(&tail_hi).round_ceil(prec),
        prec,
    };
    sum.scale_pow2(1)
}

/// Enclosure of `ln 2` at the given precision.
pub fn ln2(prec: u32) -> Interval {
    let work = prec + 16;
    let third = Interval::from_ratio(1, 3, work);
    let r = two_atanh(&third);
    Interval::rounded(r.lo, r.hi, prec)
}

fn ln_dyadic(x: &Dyadic, prec: u32) -> Interval {
    assert!(x.is_positive());
    let work = prec + 16;
    // x = y * 2^e with y in [1, 2).
    let e = x.mantissa.bits() as i64 - 1 + x.exponent;
    let y = Interval::point(Dyadic::new(x.mantissa.clone(), x.exponent - e), work);
    let one = Interval::from_int(1, work);
    let z = y.sub(&one).div(&y.add(&one));
    let ln_y = two_atanh(&z);
    let r = ln2(work).mul(&Interval::from_int(e, work)).add(&ln_y);
    Interval::rounded(r.lo, r.hi, prec)
}

/// Repeatedly evaluates `check` at doubling precision, starting at `start`
/// bits and stopping after `cap` bits, until it returns a decided answer.
pub fn decide_with_escalation<F>(start: u32, cap: u32, mut check: F) -> Option<bool>
where
    F: FnMut(u32) -> Option<bool>,
{
    let mut prec = start;
    loop {
        if let Some(v) = check(prec) {
            return Some(v);
        }
        if prec >= cap {
            return None;
        }
        prec = (prec * 2).min(cap);
    }
}

/// Exact `floor(log2(v))` for a positive big integer.
pub fn ilog2(v: &BigUint) -> u64 {
    v.bits() - 1
}
