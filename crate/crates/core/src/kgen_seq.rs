//! k-generalized Fibonacci and Lucas numbers.
//!
//! Both families satisfy `x_n = x_{n-1} + ... + x_{n-k}` and are indexed from
//! `n = 2 - k`. Fibonacci starts `0, ..., 0, 1`; Lucas starts `0, ..., 0, 2, 1`.
//! The production path is a running-sum window ([`SeqWindow`]); the other
//! routes in this module exist so the campaigns can cross-check it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fibonacci,
    Lucas,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeqParams {
    k: u64,
    family: Family,
}

impl SeqParams {
    pub fn new(k: u64, family: Family) -> Result<Self> {
        if k < 2 {
            return domain(format!("order k must be at least 2, got {k}"));
        }
        Ok(Self { k, family })
    }

    pub fn lucas(k: u64) -> Result<Self> {
        Self::new(k, Family::Lucas)
    }

    pub fn fibonacci(k: u64) -> Result<Self> {
        Self::new(k, Family::Fibonacci)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Smallest valid index, `2 - k`.
    pub fn first_index(&self) -> i64 {
        2 - self.k as i64
    }

    fn check_index(&self, n: i64) -> Result<()> {
        if n < self.first_index() {
            return domain(format!(
                "index {n} is below the first index {} for k = {}",
                self.first_index(),
                self.k
            ));
        }
        Ok(())
    }

    /// Stored initial condition for `2 - k <= n <= 1`.
    fn initial(&self, n: i64) -> BigUint {
        debug_assert!(n <= 1 && n >= self.first_index());
        match (self.family, n) {
            (Family::Fibonacci, 1) => BigUint::one(),
            (Family::Lucas, 1) => BigUint::one(),
            (Family::Lucas, 0) => BigUint::from(2u32),
            _ => BigUint::zero(),
        }
    }
}

/// The last `k` terms of a sequence together with their running sum.
///
/// Advancing appends the sum as the new term and evicts the oldest one, so a
/// step costs one big-integer addition and one subtraction.
#[derive(Clone, Debug)]
pub struct SeqWindow {
    params: SeqParams,
    index: i64,
    terms: Vec<BigUint>,
    // position of the oldest term in `terms`
    head: usize,
    sum: BigUint,
}

impl SeqWindow {
    /// Window holding the initial terms `2 - k ..= 1`.
    pub fn new(params: SeqParams) -> Self {
        let terms: Vec<BigUint> = (params.first_index()..=1).map(|n| params.initial(n)).collect();
        let sum = terms.iter().sum();
        Self {
            params,
            index: 1,
            terms,
            head: 0,
            sum,
        }
    }

    pub fn params(&self) -> SeqParams {
        self.params
    }

    /// Index of the most recent term.
    pub fn index(&self) -> i64 {
        self.index
    }

    /// The most recent term.
    pub fn current(&self) -> &BigUint {
        let last = (self.head + self.terms.len() - 1) % self.terms.len();
        &self.terms[last]
    }

    /// Exact sum of the stored terms (the next term of the sequence).
    pub fn window_sum(&self) -> &BigUint {
        &self.sum
    }

    /// Stored terms, oldest first.
    pub fn terms(&self) -> impl Iterator<Item = &BigUint> {
        let (a, b) = self.terms.split_at(self.head);
        b.iter().chain(a.iter())
    }

    pub fn advance(&mut self) -> &BigUint {
        let next = self.sum.clone();
        let evicted = std::mem::replace(&mut self.terms[self.head], next);
        self.sum <<= 1;
        self.sum -= evicted;
        self.head = (self.head + 1) % self.terms.len();
        self.index += 1;
        self.current()
    }

    pub fn advance_to(&mut self, n: i64) -> &BigUint {
        assert!(n >= self.index, "window cannot move backwards");
        while self.index < n {
            self.advance();
        }
        self.current()
    }
}

/// Exact `F_n^(k)` or `L_n^(k)`.
pub fn term(params: SeqParams, n: i64) -> Result<BigUint> {
    params.check_index(n)?;
    if n <= 1 {
        return Ok(params.initial(n));
    }
    let mut w = SeqWindow::new(params);
    Ok(w.advance_to(n).clone())
}

/// Lazily yields `(n, x_n)` for `n = n_start, n_start + 1, ...`.
pub fn term_iter(params: SeqParams, n_start: i64) -> Result<TermIter> {
    params.check_index(n_start)?;
    Ok(TermIter {
        next: n_start,
        window: SeqWindow::new(params),
    })
}

#[derive(Clone, Debug)]
pub struct TermIter {
    next: i64,
    window: SeqWindow,
}

impl Iterator for TermIter {
    type Item = (i64, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next;
        self.next += 1;
        let value = if n <= 1 {
            self.window.params.initial(n)
        } else {
            self.window.advance_to(n).clone()
        };
        Some((n, value))
    }
}

/// `L_n^(k) = 2 F_{n+1}^(k) - F_n^(k)`.
pub fn lucas_from_fib(k: u64, n: i64) -> Result<BigUint> {
    let fib = SeqParams::fibonacci(k)?;
    fib.check_index(n)?;
    let mut it = term_iter(fib, n)?;
    let (_, f_n) = it.next().expect("infinite iterator");
    let (_, f_n1) = it.next().expect("infinite iterator");
    Ok((f_n1 << 1u32) - f_n)
}

/// Cooper and Howard's closed formula
/// `F_n = 2^(n-2) + sum_j C_{n,j} 2^(n - j(k+1) - 2)` with
/// `C_{n,j} = (-1)^j (binom(n - jk, j) - binom(n - jk - 2, j - 2))`.
///
/// The last summand can carry the factor `2^-1`, so the sum is accumulated
/// doubled and halved at the end. Indices below 2 are served from `term`.
pub fn cooper_howard_fib(k: u64, n: i64) -> Result<BigUint> {
    let params = SeqParams::fibonacci(k)?;
    if n < 2 {
        return term(params, n);
    }
    let k = k as i64;
    let upper = (n + k) / (k + 1) - 1;
    let mut doubled = BigInt::one() << (n - 1) as usize;
    for j in 1..=upper {
        let c = BigInt::from(binomial(n - j * k, j)) - BigInt::from(binomial(n - j * k - 2, j - 2));
        let shift = n - j * (k + 1) - 1;
        debug_assert!(shift >= 0);
        let term = c << shift as usize;
        if j % 2 == 0 {
            doubled += term;
        } else {
            doubled -= term;
        }
    }
    assert!(!doubled.is_negative(), "Cooper-Howard sum went negative");
    let (value, rem) = (&doubled >> 1usize, &doubled & BigInt::one());
    assert!(rem.is_zero(), "Cooper-Howard sum is not an integer");
    Ok(value.to_biguint().expect("non-negative"))
}

/// Checks `L_n = 2 L_{n-1} - L_{n-(k+1)}` exactly.
pub fn shift_identity_check(k: u64, n: i64) -> Result<bool> {
    let params = SeqParams::lucas(k)?;
    let back = n - (k as i64 + 1);
    if back < params.first_index() {
        return domain(format!(
            "n - (k + 1) = {back} is below the first index {}",
            params.first_index()
        ));
    }
    let values: Vec<BigUint> = term_iter(params, back)?
        .take((k + 2) as usize)
        .map(|(_, v)| v)
        .collect();
    let l_back = &values[0];
    let l_prev = &values[values.len() - 2];
    let l_n = &values[values.len() - 1];
    Ok(l_n + l_back == l_prev << 1u32)
}

/// `3 * 2^(n-2)` for `n >= 2`.
pub fn three_pow2(n: i64) -> BigUint {
    assert!(n >= 2);
    BigUint::from(3u32) << (n - 2) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Independent oracle: plain vector recurrence in u128.
    fn naive(k: usize, lucas: bool, n_max: usize) -> Vec<u128> {
        // index i of the vector corresponds to n = i + 2 - k
        let mut v = vec![0u128; k];
        if lucas {
            v[k - 2] = 2;
        }
        v[k - 1] = 1;
        while v.len() < n_max + k - 1 {
            let s: u128 = v[v.len() - k..].iter().sum();
            v.push(s);
        }
        v
    }

    fn at(v: &[u128], k: usize, n: i64) -> u128 {
        v[(n + k as i64 - 2) as usize]
    }

    fn big(x: u128) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(SeqParams::lucas(2).unwrap(), 5).unwrap(), big(11));
        assert_eq!(term(SeqParams::lucas(3).unwrap(), 4).unwrap(), big(10));
        assert_eq!(term(SeqParams::lucas(10).unwrap(), 7).unwrap(), big(96));
        assert_eq!(term(SeqParams::lucas(5).unwrap(), 9).unwrap(), big(352));
    }

    #[test]
    fn term_matches_naive_oracle() {
        for k in 2..=12usize {
            for lucas in [false, true] {
                let v = naive(k, lucas, 80);
                let p = SeqParams::new(k as u64, if lucas { Family::Lucas } else { Family::Fibonacci }).unwrap();
                for n in (2 - k as i64)..=80 {
                    assert_eq!(term(p, n).unwrap(), big(at(&v, k, n)), "k={k} n={n} lucas={lucas}");
                }
            }
        }
    }

    #[test]
    fn index_below_start_is_rejected() {
        let p = SeqParams::lucas(4).unwrap();
        assert!(term(p, -2).is_ok());
        assert!(matches!(term(p, -3), Err(crate::Error::Domain(_))));
        assert!(term_iter(p, -3).is_err());
        assert!(SeqParams::lucas(1).is_err());
    }

    #[test]
    fn iter_examples() {
        let got: Vec<_> = term_iter(SeqParams::lucas(2).unwrap(), 0).unwrap().take(4).collect();
        assert_eq!(got, vec![(0, big(2)), (1, big(1)), (2, big(3)), (3, big(4))]);
        let fib: Vec<_> = term_iter(SeqParams::fibonacci(2).unwrap(), 1)
            .unwrap()
            .take(5)
            .map(|(_, v)| v)
            .collect();
        assert_eq!(fib, [1u32, 1, 2, 3, 5].map(BigUint::from).to_vec());
    }

    #[test]
    fn iter_k200_powers_of_two() {
        let it = term_iter(SeqParams::lucas(200).unwrap(), 2).unwrap();
        for (n, v) in it.take(199) {
            assert_eq!(v, three_pow2(n), "n={n}");
        }
    }

    #[test]
    fn window_sum_tracks_terms() {
        let mut w = SeqWindow::new(SeqParams::lucas(7).unwrap());
        for _ in 0..50 {
            let s: BigUint = w.terms().sum();
            assert_eq!(&s, w.window_sum());
            w.advance();
        }
        assert_eq!(w.index(), 51);
    }

    #[test]
    fn lucas_from_fib_examples() {
        assert_eq!(lucas_from_fib(2, 4).unwrap(), big(7));
        assert_eq!(lucas_from_fib(3, 1).unwrap(), big(1));
        assert_eq!(lucas_from_fib(5, 9).unwrap(), big(352));
        assert!(lucas_from_fib(5, -4).is_err());
    }

    #[test]
    fn cooper_howard_examples() {
        assert_eq!(cooper_howard_fib(2, 10).unwrap(), big(55));
        assert_eq!(cooper_howard_fib(9, 5).unwrap(), big(8));
        assert_eq!(cooper_howard_fib(3, 12).unwrap(), big(504));
        // the last summand carries 2^-1 here
        assert_eq!(cooper_howard_fib(2, 4).unwrap(), big(3));
    }

    #[test]
    fn shift_identity_examples() {
        assert!(shift_identity_check(2, 5).unwrap());
        assert!(shift_identity_check(5, 9).unwrap());
        assert!(shift_identity_check(3, 2).is_err());
        assert!(shift_identity_check(3, 3).unwrap());
    }

    #[test]
    fn three_pow2_small() {
        assert_eq!(three_pow2(2), big(3));
        assert_eq!(three_pow2(10).to_u64(), Some(768));
    }
}
