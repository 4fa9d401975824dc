//! Invariant suites over small parameter ranges, each checked against an
//! independent computation.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::binomial;
use crate::diophantine_bounds::{
    discriminant, integers_in_window, n_window_certified, solve_bl_k_bounds, solve_matveev_k_bound,
    K_CEILING, K_CEILING_CONST_BRANCH, K_CEILING_R12, N_CEILING,
};
use crate::interval::{Dyadic, Interval};
use crate::kgen_seq::{cooper_howard_fib, lucas_from_fib, shift_identity_check, term, three_pow2, SeqParams};
use crate::root_analysis::{
    below_sqrt_pow2, binet_error_check, binet_vs_power2_check, dominant_root, growth_bounds_check,
    root_lower_bracket,
};
use crate::two_adic::{
    disc_nu2, kummer_nu2_binomial, l_quantity, l_quantity_factored, lucas_congruence, nu2,
    predicted_lucas_nu2,
};

/// How much of each parameter range to cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Reduced ranges, a few seconds in total.
    Quick,
    /// The full documented ranges.
    Full,
}

impl Scale {
    fn pick(self, quick: i64, full: i64) -> i64 {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub lemma: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, lemma: &str, params: String, expected: T, actual: T) {
        self.cases += 1;
        if expected != actual {
            self.failures.push(Failure {
                lemma: lemma.to_string(),
                params,
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
        }
    }

    fn check_ok(&mut self, lemma: &str, params: String, actual: crate::Result<bool>) {
        let actual = actual.map_err(|e| e.to_string());
        self.check(lemma, params, Ok(true), actual);
    }
}

fn lucas(k: i64, n: i64) -> BigUint {
    term(SeqParams::lucas(k as u64).expect("k >= 2"), n).expect("n in range")
}

pub fn kgen_seq_suite(scale: Scale) -> SuiteResult {
    let mut s = SuiteResult::new("kgen_seq");
    let k_big = scale.pick(12, 30);
    let k_small = scale.pick(8, 20);
    let n_top = scale.pick(50, 120);
    for k in 2..=k_big {
        for n in 2..=k {
            s.check("powers of two below k+1", format!("k={k} n={n}"), three_pow2(n), lucas(k, n));
        }
        s.check(
            "first deficit at k+1",
            format!("k={k}"),
            three_pow2(k + 1) - 2u32,
            lucas(k, k + 1),
        );
        for n in k + 1..=k + scale.pick(20, 60) {
            s.check("strictly below 3*2^(n-2)", format!("k={k} n={n}"), true, lucas(k, n) < three_pow2(n));
        }
    }
    for k in 2..=k_small {
        for n in 2 - k..=n_top {
            s.check(
                "Lucas from Fibonacci",
                format!("k={k} n={n}"),
                Ok(lucas(k, n)),
                lucas_from_fib(k as u64, n),
            );
        }
        let fib = SeqParams::fibonacci(k as u64).unwrap();
        for n in 2..=n_top {
            s.check(
                "Cooper-Howard",
                format!("k={k} n={n}"),
                term(fib, n),
                cooper_howard_fib(k as u64, n),
            );
        }
        for n in 3..=n_top {
            s.check_ok("shift identity", format!("k={k} n={n}"), shift_identity_check(k as u64, n));
        }
        for n in 0..=n_top {
            s.check(
                "parity period k+1",
                format!("k={k} n={n}"),
                lucas(k, n).bit(0),
                lucas(k, n + k + 1).bit(0),
            );
        }
    }
    s
}

pub fn root_analysis_suite(scale: Scale) -> SuiteResult {
    let mut s = SuiteResult::new("root_analysis");
    for k in 2..=scale.pick(60, 400) as u64 {
        // alpha sits within 2^(1-k) of the lower end, so resolve beyond that
        let root = dominant_root(k, k as u32 + 64).expect("k >= 2");
        let inside = root.lo > root_lower_bracket(k) && root.hi < Dyadic::from_int(2);
        s.check("root bracket", format!("k={k}"), true, inside);
    }
    let k_top = scale.pick(8, 20);
    let n_top = scale.pick(40, 100);
    for k in 2..=k_top {
        for n in 0..=n_top {
            s.check_ok("growth bounds", format!("k={k} n={n}"), growth_bounds_check(k as u64, n));
        }
        for n in 2 - k..=n_top {
            s.check_ok("Binet error below 3/2", format!("k={k} n={n}"), binet_error_check(k as u64, n));
        }
    }
    for k in 12..=scale.pick(16, 30) as u64 {
        let mut n = 2;
        while n <= 200 && below_sqrt_pow2(k, n) {
            s.check_ok("Binet term near 3*2^(n-2)", format!("k={k} n={n}"), binet_vs_power2_check(k, n));
            n += 1;
        }
    }
    s
}

pub fn two_adic_suite(scale: Scale) -> SuiteResult {
    let mut s = SuiteResult::new("two_adic");
    let k_top = scale.pick(10, 16);
    for k in 5..=k_top {
        for m in 0..=6i64 {
            for r in 0..=k {
                let n = r + m * (k + 1);
                let c = lucas_congruence(k as u64, m as u64, r as u64).unwrap();
                let actual = BigInt::from(lucas(k, n));
                s.check(
                    "residue of L_n",
                    format!("k={k} m={m} r={r}"),
                    true,
                    c.holds_for(&actual),
                );
            }
        }
    }
    let lim = scale.pick(20, 60) as u64;
    for m in 2..=lim {
        for r in 3..=lim {
            s.check(
                "factored L(m, r)",
                format!("m={m} r={r}"),
                l_quantity(m, r),
                l_quantity_factored(m, r),
            );
        }
    }
    for n in 0..=scale.pick(100, 300) {
        for m in 0..=n {
            let exact = nu2(&binomial(n, m)).finite().map(|v| v as u32);
            s.check(
                "Kummer carries",
                format!("n={n} m={m}"),
                exact,
                kummer_nu2_binomial(n as u64, m as u64).ok(),
            );
        }
    }
    for k in 2..=scale.pick(30, 60) as u64 {
        s.check(
            "nu_2 of the discriminant",
            format!("k={k}"),
            nu2(&discriminant(k).unwrap().delta).finite(),
            disc_nu2(k).ok(),
        );
    }
    for k in 5..=k_top {
        for m in 1..=6i64 {
            for r in 3..=k {
                let n = r + m * (k + 1);
                if let Some(predicted) = predicted_lucas_nu2(k as u64, m as u64, r as u64).unwrap() {
                    s.check(
                        "valuation law",
                        format!("k={k} m={m} r={r}"),
                        Some(predicted),
                        nu2(&lucas(k, n)).finite(),
                    );
                }
            }
        }
    }
    s
}

pub fn bounds_suite(scale: Scale) -> SuiteResult {
    let mut s = SuiteResult::new("diophantine_bounds");
    for k in 2..=scale.pick(300, 2000) as u64 {
        // discriminant() asserts exact division; recompute the identity here
        let d = discriminant(k).unwrap();
        let ku = k as usize;
        let lhs = &d.delta * BigUint::from((k - 1) * (k - 1));
        let rhs = (BigUint::one() << (ku + 1)) * num_traits::pow(BigUint::from(k), ku)
            - num_traits::pow(BigUint::from(k + 1), ku + 1);
        s.check("discriminant identity", format!("k={k}"), rhs, lhs);
        if k <= 200 {
            s.check("discriminant parity", format!("k={k}"), k % 2 == 0, d.delta.bit(0));
        }
    }
    for k in 201..=scale.pick(400, 3000) as u64 {
        let count = integers_in_window(k).map(|v| v.len()).unwrap_or(0);
        s.check("2 or 3 integers in window", format!("k={k}"), true, count == 2 || count == 3);
    }
    let samples = scale.pick(200, 10_000);
    let span = (K_CEILING as f64 / 201.0).ln();
    for i in 0..samples {
        let k = (201.0 * (span * i as f64 / samples as f64).exp()) as u64;
        let k = k.clamp(201, K_CEILING - 1);
        let prec = 128;
        let w = n_window_certified(k, prec).unwrap();
        let centre = Interval::from_int(k, prec).add(
            &Interval::from_int(k - 2, prec)
                .mul(&Interval::from_int(k, prec).ln())
                .div(&crate::interval::ln2(prec)),
        );
        let width_ok = w.hi.sub(&w.lo).sub(&Interval::from_ratio(12, 5, prec)).abs().lt(&Interval::point(
            Dyadic::pow2(-40),
            prec,
        ));
        s.check(
            "window brackets its centre",
            format!("k={k}"),
            (Some(true), Some(true), Some(true)),
            (w.lo.lt(&centre), centre.lt(&w.hi), width_ok),
        );
    }
    match solve_matveev_k_bound() {
        Ok(b) => {
            s.check("k bound from Matveev", format!("k_max={}", b.k_max), true, b.k_max < K_CEILING);
            s.check("n bound from Matveev", format!("n_max={}", b.n_max), true, b.n_max < N_CEILING);
        }
        Err(e) => s.check("k bound from Matveev", String::new(), "solved".to_string(), e.to_string()),
    }
    match solve_bl_k_bounds() {
        Ok(b) => {
            s.check(
                "constant branch of B",
                format!("k_max={}", b.const_branch_k_max),
                true,
                b.const_branch_k_max < K_CEILING_CONST_BRANCH,
            );
            s.check("k bound for r in {1,2}", format!("k_max={}", b.k_max), true, b.k_max < K_CEILING_R12);
        }
        Err(e) => s.check("k bound for r in {1,2}", String::new(), "solved".to_string(), e.to_string()),
    }
    s
}

pub const SUITES: [&str; 4] = ["kgen_seq", "root_analysis", "two_adic", "diophantine_bounds"];

pub fn run_suite(name: &str, scale: Scale) -> Option<SuiteResult> {
    match name {
        "kgen_seq" => Some(kgen_seq_suite(scale)),
        "root_analysis" => Some(root_analysis_suite(scale)),
        "two_adic" => Some(two_adic_suite(scale)),
        "diophantine_bounds" => Some(bounds_suite(scale)),
        _ => None,
    }
}

pub fn run_all(scale: Scale) -> Vec<SuiteResult> {
    SUITES
        .par_iter().map(|name| run_suite(name, scale).expect("known suite")).collect()
}
