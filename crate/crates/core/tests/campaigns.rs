use klucas_core::diophantine_bounds::{discriminant, matveev_inequality_holds};
use klucas_core::kgen_seq::{term_iter, SeqParams};
use klucas_core::report::to_jsonl;
use klucas_core::search_campaigns::{
    case3_congruence, shard, CampaignConfig, CampaignReport, Case0Config, Case12Config, Case3Config,
    SmallConfig,
};
use klucas_core::two_adic::{lucas_congruence, ResidueDecomposition};
use num_bigint::BigInt;

fn merged(config: &CampaignConfig, of: u64) -> CampaignReport {
    (0..of)
        .map(|i| shard(config, i, of).unwrap())
        .reduce(|a, b| a.merge(b).unwrap())
        .unwrap()
        .without_timing()
}

fn configs() -> Vec<CampaignConfig> {
    vec![
        CampaignConfig::Small(SmallConfig {
            k_min: 2,
            k_max: 40,
            n_max: 600,
        }),
        CampaignConfig::Case0(Case0Config::default()),
        CampaignConfig::Case12(Case12Config {
            k_lo: 202,
            k_hi: 40_000,
            modulus_bits: 100,
            appendix_compat: false,
        }),
        CampaignConfig::Case3(Case3Config {
            extra_bits: 100,
            a_minus_one_max: 60,
            m_lo: 9,
            m_hi: 20,
        }),
    ]
}

#[test]
fn shard_merge_is_byte_identical() {
    for config in configs() {
        let whole = config.run().unwrap().without_timing();
        let text = to_jsonl(&whole);
        for of in [1, 2, 4, 8] {
            assert_eq!(to_jsonl(&merged(&config, of)), text, "{:?} in {of} shards", config.campaign());
        }
    }
}

#[test]
fn merge_order_does_not_matter() {
    let config = &configs()[2];
    let parts: Vec<CampaignReport> = (0..4).map(|i| shard(config, i, 4).unwrap().without_timing()).collect();
    let forward = parts.iter().cloned().reduce(|a, b| a.merge(b).unwrap()).unwrap();
    let backward = parts.into_iter().rev().reduce(|a, b| a.merge(b).unwrap()).unwrap();
    assert_eq!(forward, backward);
}

#[test]
fn shards_are_disjoint() {
    let config = CampaignConfig::Case3(Case3Config {
        extra_bits: 2,
        a_minus_one_max: 40,
        m_lo: 9,
        m_hi: 14,
    });
    let a = shard(&config, 3, 8).unwrap();
    let b = shard(&config, 4, 8).unwrap();
    for p in &a.records {
        assert!(!b.records.contains(p));
        assert_eq!((p.a.unwrap() - 1) % 8, 3);
    }
    for p in &b.records {
        assert_eq!((p.a.unwrap() - 1) % 8, 4);
    }
}

#[test]
fn case12_shard_is_subset() {
    let config = &configs()[2];
    let all = config.run().unwrap();
    let part = shard(config, 0, 4).unwrap();
    assert!(part.records.iter().all(|p| all.records.contains(p)));
}

#[test]
fn repeated_runs_agree_across_pool_sizes() {
    let config = &configs()[3];
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(6).build().unwrap();
    let a = one.install(|| config.run().unwrap().without_timing());
    let b = many.install(|| config.run().unwrap().without_timing());
    assert_eq!(to_jsonl(&a), to_jsonl(&b));
}

#[test]
fn stage_counts_never_increase() {
    for config in configs() {
        let r = config.run().unwrap();
        assert!(r.counts_monotone(), "{:?}", r.stage_counts);
    }
}

#[test]
fn larger_modulus_keeps_a_subset() {
    let small = |bits| Case3Config {
        extra_bits: bits,
        a_minus_one_max: 233,
        m_lo: 40,
        m_hi: 55,
    };
    let loose = CampaignConfig::Case3(small(60)).run().unwrap();
    let tight = CampaignConfig::Case3(small(100)).run().unwrap();
    assert!(tight.survivor_count() <= loose.survivor_count());
    for p in tight.survivors() {
        assert!(loose.survivors().any(|q| q == p));
    }
}

#[test]
fn appendix_variant_changes_only_r2_pairs() {
    let base = Case12Config {
        k_lo: 202,
        k_hi: 40_000,
        modulus_bits: 100,
        appendix_compat: false,
    };
    let a = CampaignConfig::Case12(base.clone()).run().unwrap();
    let b = CampaignConfig::Case12(Case12Config {
        appendix_compat: true,
        ..base
    })
    .run()
    .unwrap();
    let pairs = |r: &CampaignReport| r.records.iter().map(|p| (p.k, p.n)).collect::<Vec<_>>();
    assert_eq!(pairs(&a), pairs(&b));
    assert_eq!(b.survivor_count(), 0);
}

/// The residue used by the filters holds for every true `L_n^(k)`, and a
/// direct walk finds no `L_n^(k) = Delta_k` for small k.
#[test]
fn toy_scale_filters_agree_with_direct_search() {
    for k in 5u64..=16 {
        let delta = BigInt::from(discriminant(k).unwrap().delta);
        for (n, l) in term_iter(SeqParams::lucas(k).unwrap(), 0).unwrap() {
            let l = BigInt::from(l);
            let d = ResidueDecomposition::of_index(k, n as u64);
            let c = lucas_congruence(k, d.m, d.r).unwrap();
            assert!(c.holds_for(&l), "residue at k={k} n={n}");
            assert_ne!(l, delta, "unexpected solution k={k} n={n}");
            if l > delta {
                break;
            }
        }
    }
}

/// The case-3 filter modulo `2^k` is the residue congruence for `Delta_k`
/// multiplied through by `(k-1)^2`, so every true solution passes it.
#[test]
fn case3_congruence_matches_scaled_residue() {
    for k in (5u64..=15).step_by(2) {
        let delta = BigInt::from(discriminant(k).unwrap().delta);
        let sq = BigInt::from((k - 1) * (k - 1));
        for m in 0..=4 {
            for r in 3..=k {
                let a = k + 1 - r;
                let passes = case3_congruence(k, m, r, a, k).unwrap();
                let c = lucas_congruence(k, m, r).unwrap();
                let modulus = BigInt::from(1) << c.modulus_exp as usize;
                let scaled = (&sq * (&c.residue - &delta)) % &modulus == BigInt::from(0);
                assert_eq!(passes, scaled, "k={k} m={m} r={r}");
                if c.holds_for(&delta) {
                    assert!(passes);
                }
            }
        }
    }
}

#[test]
fn matveev_inequality_changes_sign_once() {
    let mut prev = None;
    let mut changes = 0;
    for i in 0..=400 {
        let k = (1e3f64 * (1e16f64.powf(i as f64 / 400.0))) as u64;
        let k = k.min(u64::MAX / 2);
        let holds = matveev_inequality_holds(k).unwrap();
        if let Some(p) = prev {
            if p != holds {
                changes += 1;
            }
        }
        prev = Some(holds);
    }
    assert_eq!(changes, 1);
    assert_eq!(prev, Some(false));
}
