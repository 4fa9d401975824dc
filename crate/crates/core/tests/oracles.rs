//! Cross-checks against computations that share no code with the library.

use klucas_core::diophantine_bounds::{discriminant, n_in_window};
use klucas_core::kgen_seq::{term, SeqParams};
use klucas_core::search_campaigns::campaign_case12;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Determinant by fraction-free Gaussian elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..n {
        if a[i][i].is_zero() {
            let Some(p) = (i + 1..n).find(|&r| !a[r][i].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(i, p);
            sign = -sign;
        }
        for r in i + 1..n {
            for c in i + 1..n {
                a[r][c] = (&a[r][c] * &a[i][i] - &a[r][i] * &a[i][c]) / &prev;
            }
        }
        prev = a[i][i].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Disc(g_k)` from the Sylvester matrix of `g_k` and `g_k'`.
fn disc_sylvester(k: usize) -> BigInt {
    // coefficients from the leading term down
    let f: Vec<BigInt> = (0..=k).map(|i| if i == 0 { BigInt::one() } else { BigInt::from(-1) }).collect();
    let df: Vec<BigInt> = (0..k).map(|i| &f[i] * BigInt::from((k - i) as i64)).collect();
    let size = 2 * k - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for row in 0..k - 1 {
        for (j, c) in f.iter().enumerate() {
            m[row][row + j] = c.clone();
        }
    }
    for row in 0..k {
        for (j, c) in df.iter().enumerate() {
            m[k - 1 + row][row + j] = c.clone();
        }
    }
    let res = bareiss(m);
    let sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    res * sign
}

#[test]
fn discriminant_matches_sylvester_resultant() {
    for k in 2..=12usize {
        let oracle = disc_sylvester(k);
        let d = discriminant(k as u64).unwrap();
        assert_eq!(oracle.abs(), BigInt::from(d.delta.clone()), "k={k}");
        assert_eq!(if oracle.is_negative() { -1 } else { 1 }, d.sign(), "sign at k={k}");
    }
}

/// `k + (k-2) log2 k - 0.1 < n < k + (k-2) log2 k + 2.3` in integers:
/// `2^(10(n-k) - 23) < k^(10(k-2)) < 2^(10(n-k) + 1)`.
fn in_window_exact(k: u64, n: u64) -> bool {
    if n < k + 3 {
        return false;
    }
    let e = 10 * (n - k);
    let kp = num_traits::pow(BigUint::from(k), 10 * (k as usize - 2));
    let upper = BigUint::one() << (e + 1) as usize;
    let lower = BigUint::one() << (e - 23) as usize;
    lower < kp && kp < upper
}

#[test]
fn window_membership_matches_integer_oracle() {
    for k in (202..=1200).step_by(2) {
        let centre = k as f64 + (k - 2) as f64 * (k as f64).log2();
        let c = centre as u64;
        for n in c - 4..=c + 6 {
            assert_eq!(n_in_window(k, n).unwrap(), in_window_exact(k, n), "k={k} n={n}");
        }
    }
}

#[test]
fn case12_pairs_below_ten_thousand() {
    let mut oracle = Vec::new();
    for k in (202u64..10_000).step_by(2) {
        let centre = k as f64 + (k - 2) as f64 * (k as f64).log2();
        let c = centre as u64;
        for n in c - 3..=c + 5 {
            let r = n % (k + 1);
            if (r == 1 || r == 2) && in_window_exact(k, n) {
                oracle.push((k, n));
            }
        }
    }
    let report = campaign_case12(202, 10_000, 100).unwrap();
    let found: Vec<(u64, u64)> = report.records.iter().map(|p| (p.k, p.n)).collect();
    assert_eq!(found, oracle);
    assert_eq!(found.len(), 10);
    assert_eq!(report.survivor_count(), 0);
}

#[test]
fn lucas_small_k_matches_closed_forms() {
    // k = 2: classical Lucas numbers
    let classical = [2u64, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123];
    for (n, &v) in classical.iter().enumerate() {
        assert_eq!(term(SeqParams::lucas(2).unwrap(), n as i64).unwrap(), BigUint::from(v));
    }
    // k = 3: 2, 1, 3, 6, 10, 19, 35, 64, 118, ... (L_n = L_{n-1} + L_{n-2} + L_{n-3})
    let trib = [2u64, 1, 3, 6, 10, 19, 35, 64, 118, 217];
    for (n, &v) in trib.iter().enumerate() {
        assert_eq!(term(SeqParams::lucas(3).unwrap(), n as i64).unwrap(), BigUint::from(v));
    }
}
