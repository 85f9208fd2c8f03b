//! Analytic prediction against exhaustive orbit measurement.

use std::thread;

use iprng_core::analytic::PeriodTag;
use iprng_core::generator::PeriodMeter;
use iprng_core::{predict_period, IprngParams, PrimeModulus};

const PRIMES: [u64; 16] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];

/// Mismatches over all N^3 triples, with `a` split across threads.
fn sweep(n: u64) -> Vec<(u64, u64, u64)> {
    let modulus = PrimeModulus::new(n).unwrap();
    let workers = 8;
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let modulus = &modulus;
                s.spawn(move || {
                    let mut meter = PeriodMeter::new(modulus);
                    let mut bad = Vec::new();
                    for a in (w..n).step_by(workers as usize) {
                        for b in 0..n {
                            for x0 in 0..n {
                                let class = predict_period(&IprngParams::new(modulus, a, b, x0));
                                let measured = meter.measure(a, b, x0);
                                let zero_ok = match class.tag {
                                    PeriodTag::AZero => measured.hits_zero == (b == 0),
                                    PeriodTag::BZeroFixed => measured.hits_zero == (x0 == 0),
                                    PeriodTag::BZeroSwap => !measured.hits_zero,
                                    tag => measured.hits_zero == tag.hits_zero(),
                                };
                                if class.predicted_period != measured.period || !zero_ok {
                                    bad.push((a, b, x0));
                                }
                            }
                        }
                    }
                    bad
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    })
}

#[test]
fn prediction_matches_measurement_for_every_triple() {
    for n in PRIMES {
        let bad = sweep(n);
        assert!(
            bad.is_empty(),
            "N = {n}: {} mismatches, first {:?}",
            bad.len(),
            bad.first()
        );
    }
}

#[test]
fn split_and_inert_classes_carry_valid_k() {
    for n in [29u64, 31, 37] {
        let m = PrimeModulus::new(n).unwrap();
        for a in 1..n {
            for b in 1..n {
                for x0 in 0..n {
                    let c = predict_period(&IprngParams::new(&m, a, b, x0));
                    match c.tag {
                        PeriodTag::SplitFixed
                        | PeriodTag::SplitHitsZero
                        | PeriodTag::SplitNoZero => {
                            let k = c.k.unwrap();
                            assert!(k > 2 && (n - 1) % k == 0);
                        }
                        PeriodTag::InertHitsZero | PeriodTag::InertNoZero => {
                            let k = c.k.unwrap();
                            assert!(k > 2 && (n + 1) % k == 0);
                        }
                        _ => assert_eq!(c.k, None),
                    }
                }
            }
        }
    }
}
