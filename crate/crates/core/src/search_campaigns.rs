//! The finite searches that rule out every remaining `(k, n)`.
//!
//! Each campaign is a pure function of its configuration and a shard
//! `(piece, of)`: the shard keeps one residue class of the outermost loop
//! variable. Reports of all shards merge into the unsharded report exactly.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diophantine_bounds::{
    discriminant, integers_in_window, localize_k_by_power2, m_range, n_in_window, n_window,
    F64_WINDOW_LIMIT, F64_WINDOW_MARGIN, K_CEILING,
};
use crate::error::{domain, Error, Result};
use crate::kgen_seq::{term_iter, SeqParams};
use crate::modpow::Pow2Modulus;
use crate::two_adic::{l_quantity, l_quantity_nu2, lucas_congruence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Campaign {
    Small,
    Case0,
    Case12,
    Case3,
}

impl Campaign {
    pub fn name(self) -> &'static str {
        match self {
            Campaign::Small => "small",
            Campaign::Case0 => "case0",
            Campaign::Case12 => "case12",
            Campaign::Case3 => "case3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Survivor,
    Rejected,
}

/// A pair `(k, n)` with `n = r + m(k+1)` that reached the final filter of a
/// campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub k: u64,
    pub n: u64,
    pub r: u64,
    pub m: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    /// Last stage the pair was tested in.
    pub stage: String,
    pub verdict: Verdict,
    pub flags: BTreeMap<String, bool>,
}

impl CandidatePair {
    fn sort_key(&self) -> (u64, u64, Option<u64>) {
        (self.k, self.n, self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCount {
    pub name: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: Campaign,
    /// Parameters of the run; identical for every shard.
    pub ranges: BTreeMap<String, Value>,
    /// Surviving count after each filter, in pipeline order.
    pub stage_counts: Vec<StageCount>,
    /// Auxiliary counters that add under merging.
    pub tallies: BTreeMap<String, u64>,
    /// Pairs that reached the final filter, sorted by `(k, n, a)`.
    pub records: Vec<CandidatePair>,
    /// Conclusions that do not depend on the shard.
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
}

impl CampaignReport {
    fn empty(campaign: Campaign, ranges: BTreeMap<String, Value>, stages: &[&str]) -> Self {
        Self {
            campaign,
            ranges,
            stage_counts: stages
                .iter()
                .map(|s| StageCount {
                    name: s.to_string(),
                    count: 0,
                })
                .collect(),
            tallies: BTreeMap::new(),
            records: Vec::new(),
            notes: Vec::new(),
            elapsed_seconds: None,
        }
    }

    pub fn survivors(&self) -> impl Iterator<Item = &CandidatePair> {
        self.records.iter().filter(|p| p.verdict == Verdict::Survivor)
    }

    pub fn survivor_count(&self) -> usize {
        self.survivors().count()
    }

    pub fn stage_count(&self, name: &str) -> Option<u64> {
        self.stage_counts.iter().find(|s| s.name == name).map(|s| s.count)
    }

    /// Whether stage counts never increase along the pipeline.
    pub fn counts_monotone(&self) -> bool {
        self.stage_counts.windows(2).all(|w| w[0].count >= w[1].count)
    }

    /// Drops timing so that reports can be compared byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_seconds = None;
        self
    }

    fn add_stage(&mut self, idx: usize, by: u64) {
        self.stage_counts[idx].count += by;
    }

    fn tally(&mut self, name: &str, by: u64) {
        *self.tallies.entry(name.to_string()).or_insert(0) += by;
    }

    fn finish(&mut self) {
        self.records.sort_by_key(CandidatePair::sort_key);
    }

    /// Combines the reports of two disjoint shards of the same run.
    pub fn merge(mut self, other: CampaignReport) -> Result<CampaignReport> {
        if self.campaign != other.campaign {
            return Err(Error::Merge(format!(
                "campaigns differ: {} vs {}",
                self.campaign.name(),
                other.campaign.name()
            )));
        }
        if self.ranges != other.ranges || self.notes != other.notes {
            return Err(Error::Merge("reports come from different configurations".into()));
        }
        let names = |r: &CampaignReport| r.stage_counts.iter().map(|s| s.name.clone()).collect::<Vec<_>>();
        if names(&self) != names(&other) {
            return Err(Error::Merge("stage lists differ".into()));
        }
        for (mine, theirs) in self.stage_counts.iter_mut().zip(&other.stage_counts) {
            mine.count += theirs.count;
        }
        for (name, v) in other.tallies {
            *self.tallies.entry(name).or_insert(0) += v;
        }
        self.records.extend(other.records);
        self.finish();
        self.elapsed_seconds = match (self.elapsed_seconds, other.elapsed_seconds) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(self)
    }
}

/// Walk every `L_n^(k)` for `k_min <= k <= k_max` and `0 <= n <= n_max`
/// until it reaches `Delta_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallConfig {
    pub k_min: u64,
    pub k_max: u64,
    pub n_max: u64,
}

impl Default for SmallConfig {
    fn default() -> Self {
        Self {
            k_min: 2,
            k_max: 200,
            n_max: 2529,
        }
    }
}

/// The residue class `r = 0`, where `L_n^(k) = +-2 mod 2^(k-2)` must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case0Config {
    /// Odd `k` up to this value have their residue checked explicitly.
    pub k_max: u64,
}

impl Default for Case0Config {
    fn default() -> Self {
        Self { k_max: 200 }
    }
}

/// Even `k` in `[k_lo, k_hi)` with `n` in the window and `r` in {1, 2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case12Config {
    pub k_lo: u64,
    pub k_hi: u64,
    pub modulus_bits: u64,
    /// Use `4m^2 + 6m + 1` for `r = 2`, as in the original search script.
    pub appendix_compat: bool,
}

impl Default for Case12Config {
    fn default() -> Self {
        Self {
            k_lo: 202,
            k_hi: 70_000_000,
            modulus_bits: 100,
            appendix_compat: false,
        }
    }
}

/// Odd `k` with `r = k - (a - 1) >= 3`, `k` within 300 of `2^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case3Config {
    pub extra_bits: u64,
    pub a_minus_one_max: u64,
    pub m_lo: u64,
    pub m_hi: u64,
}

impl Case3Config {
    /// `m` in `[9, 55]` as quoted for the search.
    pub fn paper_range(extra_bits: u64) -> Self {
        Self {
            extra_bits,
            a_minus_one_max: 233,
            m_lo: 9,
            m_hi: 55,
        }
    }

    /// `m` over the recomputed envelope from [`m_range`].
    pub fn widened(extra_bits: u64) -> Result<Self> {
        let (m_lo, m_hi) = m_range(K_CEILING)?;
        Ok(Self {
            extra_bits,
            a_minus_one_max: 233,
            m_lo,
            m_hi,
        })
    }
}

impl Default for Case3Config {
    fn default() -> Self {
        Self::paper_range(150)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CampaignConfig {
    Small(SmallConfig),
    Case0(Case0Config),
    Case12(Case12Config),
    Case3(Case3Config),
}

impl CampaignConfig {
    pub fn campaign(&self) -> Campaign {
        match self {
            CampaignConfig::Small(_) => Campaign::Small,
            CampaignConfig::Case0(_) => Campaign::Case0,
            CampaignConfig::Case12(_) => Campaign::Case12,
            CampaignConfig::Case3(_) => Campaign::Case3,
        }
    }

    pub fn run(&self) -> Result<CampaignReport> {
        shard(self, 0, 1)
    }
}

/// Runs the `piece`-th of `of` residue classes of the outermost loop.
pub fn shard(config: &CampaignConfig, piece: u64, of: u64) -> Result<CampaignReport> {
    if of == 0 || piece >= of {
        return domain(format!("shard {piece}/{of} is not in range"));
    }
    let start = Instant::now();
    let sel = Shard { piece, of };
    let mut report = match config {
        CampaignConfig::Small(c) => run_small(c, sel)?,
        CampaignConfig::Case0(c) => run_case0(c, sel)?,
        CampaignConfig::Case12(c) => run_case12(c, sel)?,
        CampaignConfig::Case3(c) => run_case3(c, sel)?,
    };
    report.finish();
    report.elapsed_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report)
}

#[derive(Clone, Copy)]
struct Shard {
    piece: u64,
    of: u64,
}

impl Shard {
    fn keeps(self, index: u64) -> bool {
        index % self.of == self.piece
    }
}

pub fn campaign_small(k_max: u64, n_max: u64) -> Result<CampaignReport> {
    CampaignConfig::Small(SmallConfig {
        k_max,
        n_max,
        ..SmallConfig::default()
    })
    .run()
}

pub fn campaign_case0() -> Result<CampaignReport> {
    CampaignConfig::Case0(Case0Config::default()).run()
}

pub fn campaign_case12(k_lo: u64, k_hi: u64, modulus_bits: u64) -> Result<CampaignReport> {
    CampaignConfig::Case12(Case12Config {
        k_lo,
        k_hi,
        modulus_bits,
        appendix_compat: false,
    })
    .run()
}

pub fn campaign_case3(extra_bits: u64) -> Result<CampaignReport> {
    CampaignConfig::Case3(Case3Config::paper_range(extra_bits)).run()
}

fn ranges(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn run_small(c: &SmallConfig, sel: Shard) -> Result<CampaignReport> {
    if c.k_min < 2 || c.k_max < c.k_min {
        return domain(format!("need 2 <= k_min <= k_max, got [{}, {}]", c.k_min, c.k_max));
    }
    let mut report = CampaignReport::empty(
        Campaign::Small,
        ranges(&[
            ("k_min", json!(c.k_min)),
            ("k_max", json!(c.k_max)),
            ("n_max", json!(c.n_max)),
        ]),
        &["pairs_checked", "equal"],
    );
    let ks: Vec<u64> = (c.k_min..=c.k_max).filter(|&k| sel.keeps(k)).collect();
    let per_k = ks
        .par_iter()
        .map(|&k| -> Result<(u64, Vec<CandidatePair>, bool)> {
            let delta = discriminant(k)?.delta;
            let mut checked = 0;
            let mut hits = Vec::new();
            let mut reached = false;
            for (n, l) in term_iter(SeqParams::lucas(k)?, 0)? {
                if n as u64 > c.n_max {
                    break;
                }
                checked += 1;
                if l == delta {
                    let (m, r) = (n as u64 / (k + 1), n as u64 % (k + 1));
                    hits.push(CandidatePair {
                        k,
                        n: n as u64,
                        r,
                        m,
                        a: None,
                        stage: "equal".into(),
                        verdict: Verdict::Survivor,
                        flags: BTreeMap::new(),
                    });
                }
                if l >= delta {
                    reached = true;
                    break;
                }
            }
            Ok((checked, hits, reached))
        })
        .collect::<Result<Vec<_>>>()?;
    for (checked, hits, reached) in per_k {
        report.add_stage(0, checked);
        report.add_stage(1, hits.len() as u64);
        report.records.extend(hits);
        if !reached {
            report.tally("k_not_reaching_delta_by_n_max", 1);
        }
    }
    Ok(report)
}

fn run_case0(c: &Case0Config, sel: Shard) -> Result<CampaignReport> {
    let mut report = CampaignReport::empty(
        Campaign::Case0,
        ranges(&[("k_max", json!(c.k_max))]),
        &["odd_k_checked", "residue_vanishes"],
    );
    report.notes = vec![
        "odd k > 4: the residue +-2 of L_n mod 2^(k-2) is nonzero, so Delta_k is not reached".into(),
        "k = 3: Delta_3 = 44 is covered by the small campaign".into(),
        "even k: r = 0 makes L_n even while Delta_k is odd, so the case is vacuous".into(),
    ];
    for k in (5..=c.k_max).step_by(2).filter(|&k| sel.keeps(k)) {
        report.add_stage(0, 1);
        // n = m(k+1); the sign depends on m, the magnitude does not
        let vanishes = (0..2).any(|m| {
            let c = lucas_congruence(k, m, 0).expect("k >= 5");
            c.residue == BigInt::from(0)
        });
        if vanishes {
            report.add_stage(1, 1);
        }
    }
    Ok(report)
}

fn window_pairs_r12(k: u64) -> Result<Vec<(u64, u64)>> {
    let keep = |n: u64| {
        let r = n % (k + 1);
        (r == 1 || r == 2).then_some(r)
    };
    let mut out = Vec::new();
    if k < F64_WINDOW_LIMIT {
        let (lo, hi) = n_window(k)?;
        let first = (lo - F64_WINDOW_MARGIN).floor() as u64 + 1;
        let last = (hi + F64_WINDOW_MARGIN).floor() as u64;
        for n in first..=last {
            if let Some(r) = keep(n) {
                if n_in_window(k, n)? {
                    out.push((n, r));
                }
            }
        }
    } else {
        for n in integers_in_window(k)? {
            if let Some(r) = keep(n) {
                out.push((n, r));
            }
        }
    }
    Ok(out)
}

/// `(-1)^m (k-1)^2 (4m+1)` for `r = 1`, `(-1)^m (k-1)^2 (4m^2+6m+c)` for
/// `r = 2`, with `c = 3` or the script's `c = 1`.
pub fn alpha2(k: u64, m: u64, r: u64, appendix_compat: bool) -> BigInt {
    let mb = BigInt::from(m);
    let factor: BigInt = match r {
        1 => 4 * &mb + 1,
        2 => {
            let c = if appendix_compat { 1 } else { 3 };
            4 * &mb * &mb + 6 * &mb + c
        }
        _ => panic!("alpha2 is defined for r in {{1, 2}}, got {r}"),
    };
    let v: BigInt = BigInt::from(k - 1).pow(2) * factor;
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

fn run_case12(c: &Case12Config, sel: Shard) -> Result<CampaignReport> {
    if c.k_lo % 2 != 0 || c.k_lo <= 200 {
        return domain(format!("k_lo must be even and greater than 200, got {}", c.k_lo));
    }
    if c.k_hi <= c.k_lo {
        return domain(format!("empty k range [{}, {})", c.k_lo, c.k_hi));
    }
    let stage2 = format!("congruence_mod_2^{}", c.modulus_bits);
    let mut report = CampaignReport::empty(
        Campaign::Case12,
        ranges(&[
            ("k_lo", json!(c.k_lo)),
            ("k_hi_exclusive", json!(c.k_hi)),
            ("modulus_bits", json!(c.modulus_bits)),
            ("r2_constant", json!(if c.appendix_compat { 1 } else { 3 })),
        ]),
        &["even_k", "in_window_r12", &stage2],
    );
    let count = (c.k_hi - c.k_lo).div_ceil(2);
    let indices: Vec<u64> = (0..count).filter(|&i| sel.keeps(i)).collect();
    report.add_stage(0, indices.len() as u64);
    let found = indices
        .par_iter()
        .map(|&i| {
            let k = c.k_lo + 2 * i;
            window_pairs_r12(k).map(|v| v.into_iter().map(move |(n, r)| (k, n, r)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let modulus = Pow2Modulus::new(c.modulus_bits);
    for (k, n, r) in found.into_iter().flatten() {
        report.add_stage(1, 1);
        let m = n / (k + 1);
        let lhs = modulus.pow(&BigUint::from(k + 1), k + 1);
        let alpha = alpha2(k, m, r, c.appendix_compat);
        let plus = lhs == modulus.reduce_signed(&alpha);
        let minus = lhs == modulus.reduce_signed(&-alpha);
        let survivor = plus || minus;
        if survivor {
            report.add_stage(2, 1);
            if plus != minus {
                report.tally("survivor_sign_conventions_disagree", 1);
            }
        }
        report.records.push(CandidatePair {
            k,
            n,
            r,
            m,
            a: None,
            stage: stage2.clone(),
            verdict: if survivor { Verdict::Survivor } else { Verdict::Rejected },
            flags: BTreeMap::from([
                ("matches_alpha2".to_string(), plus),
                ("matches_neg_alpha2".to_string(), minus),
            ]),
        });
    }
    Ok(report)
}

/// `(-1)^m (k-1)^2 L(m, r) == 2^(a+2) (k^k - ((k+1)/2)^(k+1))  (mod 2^bits)`
/// for odd `k`.
pub fn case3_congruence(k: u64, m: u64, r: u64, a: u64, bits: u64) -> Result<bool> {
    if k % 2 == 0 {
        return domain(format!("k must be odd, got {k}"));
    }
    let modulus = Pow2Modulus::new(bits);
    let mut lhs = BigInt::from(k - 1).pow(2) * BigInt::from(l_quantity(m, r)?);
    if m % 2 == 1 {
        lhs = -lhs;
    }
    let lhs = modulus.reduce_signed(&lhs);
    let diff = modulus.sub(
        &modulus.pow(&BigUint::from(k), k),
        &modulus.pow(&BigUint::from((k + 1) / 2), k + 1),
    );
    let rhs = modulus.reduce(&(diff << (a + 2) as usize));
    Ok(lhs == rhs)
}

#[derive(Default)]
struct Case3Partial {
    triples: u64,
    r_ge_3: u64,
    nu2_match: u64,
    modulus_exceeds_k: u64,
    capped_pass: u64,
    records: Vec<CandidatePair>,
}

impl Case3Partial {
    fn add(mut self, other: Case3Partial) -> Case3Partial {
        self.triples += other.triples;
        self.r_ge_3 += other.r_ge_3;
        self.nu2_match += other.nu2_match;
        self.modulus_exceeds_k += other.modulus_exceeds_k;
        self.capped_pass += other.capped_pass;
        self.records.extend(other.records);
        self
    }
}

fn case3_cell(c: &Case3Config, a1: u64, m: u64) -> Result<Case3Partial> {
    let mut part = Case3Partial::default();
    let a = a1 + 1;
    let bits = a + c.extra_bits;
    for k in localize_k_by_power2(m)?.odd_ks() {
        part.triples += 1;
        if k < a1 + 3 {
            continue;
        }
        let r = k - a1;
        part.r_ge_3 += 1;
        if l_quantity_nu2(m, r)? != a {
            continue;
        }
        part.nu2_match += 1;
        let exceeds = bits > k;
        if exceeds {
            part.modulus_exceeds_k += 1;
            if case3_congruence(k, m, r, a, k)? {
                part.capped_pass += 1;
            }
        }
        if case3_congruence(k, m, r, a, bits)? {
            part.records.push(CandidatePair {
                k,
                n: r + m * (k + 1),
                r,
                m,
                a: Some(a),
                stage: "congruence".into(),
                verdict: Verdict::Survivor,
                flags: BTreeMap::from([("modulus_exceeds_k".to_string(), exceeds)]),
            });
        }
    }
    Ok(part)
}

fn run_case3(c: &Case3Config, sel: Shard) -> Result<CampaignReport> {
    if c.extra_bits < 2 {
        return domain(format!("extra modulus bits must be at least 2, got {}", c.extra_bits));
    }
    if c.m_lo < 8 || c.m_hi < c.m_lo {
        return domain(format!("m range [{}, {}] is not valid", c.m_lo, c.m_hi));
    }
    let mut report = CampaignReport::empty(
        Campaign::Case3,
        ranges(&[
            ("a_minus_one_max", json!(c.a_minus_one_max)),
            ("m_lo", json!(c.m_lo)),
            ("m_hi", json!(c.m_hi)),
            ("extra_bits", json!(c.extra_bits)),
        ]),
        &["triples", "r_ge_3", "nu2_match", "congruence"],
    );
    let cells: Vec<(u64, u64)> = (0..=c.a_minus_one_max)
        .filter(|&a1| sel.keeps(a1))
        .flat_map(|a1| (c.m_lo..=c.m_hi).map(move |m| (a1, m)))
        .collect();
    let total = cells
        .par_iter()
        .map(|&(a1, m)| case3_cell(c, a1, m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(Case3Partial::default(), Case3Partial::add);
    report.add_stage(0, total.triples);
    report.add_stage(1, total.r_ge_3);
    report.add_stage(2, total.nu2_match);
    report.add_stage(3, total.records.len() as u64);
    report.tally("nu2_match_with_modulus_above_k", total.modulus_exceeds_k);
    report.tally("nu2_match_with_modulus_above_k_passing_mod_2^k", total.capped_pass);
    report.records = total.records;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let r = campaign_small(3, 2529).unwrap();
        assert_eq!(r.survivor_count(), 0);
        let r = campaign_small(2, 20).unwrap();
        assert_eq!(r.survivor_count(), 0);
        // L_0..L_3 = 2, 1, 3, 4, 7: stops at 7 >= 5
        assert_eq!(r.stage_count("pairs_checked"), Some(5));
    }

    #[test]
    fn case0_verdict() {
        let r = campaign_case0().unwrap();
        assert_eq!(r.stage_count("odd_k_checked"), Some(98));
        assert_eq!(r.stage_count("residue_vanishes"), Some(0));
        assert_eq!(r.survivor_count(), 0);
    }

    #[test]
    fn case12_rejects_bad_ranges() {
        assert!(campaign_case12(203, 1000, 100).is_err());
        assert!(campaign_case12(200, 1000, 100).is_err());
        assert!(campaign_case12(1000, 1000, 100).is_err());
    }

    #[test]
    fn case12_degenerate_modulus_passes_everything() {
        let r = campaign_case12(202, 20_000, 1).unwrap();
        let found = r.stage_count("in_window_r12").unwrap();
        assert!(found > 0);
        assert_eq!(r.survivor_count() as u64, found);
    }

    #[test]
    fn case12_pairs_are_exact() {
        let r = campaign_case12(202, 20_000, 100).unwrap();
        for p in &r.records {
            assert_eq!(p.k % 2, 0);
            assert_eq!(p.n, p.r + p.m * (p.k + 1));
            assert!(p.r == 1 || p.r == 2);
            assert!(n_in_window(p.k, p.n).unwrap());
        }
    }

    #[test]
    fn alpha2_values() {
        assert_eq!(alpha2(202, 9, 1, false), BigInt::from(-(201i64 * 201 * 37)));
        assert_eq!(alpha2(202, 8, 2, false), BigInt::from(201i64 * 201 * (256 + 48 + 3)));
        assert_eq!(alpha2(202, 8, 2, true), BigInt::from(201i64 * 201 * (256 + 48 + 1)));
    }

    #[test]
    fn shard_bounds() {
        let c = CampaignConfig::Small(SmallConfig::default());
        assert!(shard(&c, 2, 2).is_err());
        assert!(shard(&c, 0, 0).is_err());
    }

    #[test]
    fn merge_rejects_mismatched_reports() {
        let a = campaign_small(5, 100).unwrap();
        let b = campaign_small(6, 100).unwrap();
        assert!(a.clone().merge(b).is_err());
        let c = campaign_case0().unwrap();
        assert!(a.merge(c).is_err());
    }
}
