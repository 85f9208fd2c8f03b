//! Construction of generator parameters with a prescribed period.

use std::collections::HashSet;

use crate::analytic::{params_from_gamma, predict_period, ratio_class_count};
use crate::census::achievable_periods;
use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::generator::{measure_period, IprngParams};

type Triples<'a> = Box<dyn Iterator<Item = (u64, u64, u64)> + 'a>;

/// Candidate triples for one ratio order `k`: every unit `b`, every ratio
/// class, every starting value.
fn gamma_route(modulus: &PrimeModulus, k: u64) -> Triples<'_> {
    let n = modulus.value();
    if k <= 2 || (!(n - 1).is_multiple_of(k) && !(n + 1).is_multiple_of(k)) {
        return Box::new(std::iter::empty());
    }
    Box::new((0..ratio_class_count(k)).flat_map(move |which| {
        (1..n).flat_map(move |b| {
            let (a, b) = params_from_gamma(modulus, k, modulus.elem(b), which)
                .expect("k divides N - 1 or N + 1 and exceeds 2");
            let (a, b) = (a.residue(), b.residue());
            // b itself always reaches 0, so try it first
            std::iter::once(b)
                .chain((0..n).filter(move |&x| x != b))
                .map(move |x0| (a, b, x0))
        })
    }))
}

fn candidates(modulus: &PrimeModulus, period: u64) -> Triples<'_> {
    let n = modulus.value();
    let sq = move |x: u64| x * x % n;
    let mut routes: Vec<Triples<'_>> = Vec::new();
    if period == 1 {
        // a = 0
        routes.push(Box::new(
            (0..n).flat_map(move |b| (0..n).map(move |x0| (0, b, x0))),
        ));
        // b = 0 with x0 = 0 or a = x0^2
        routes.push(Box::new((1..n).map(|a| (a, 0, 0))));
        routes.push(Box::new((1..n).map(move |x0| (sq(x0), 0, x0))));
        // double root alpha, x0 = alpha
        routes.push(Box::new(
            (1..n).map(move |alpha| ((n - sq(alpha)) % n, 2 * alpha % n, alpha)),
        ));
        // distinct roots in Z_N, x0 a root
        routes.push(Box::new((1..n).flat_map(move |alpha| {
            (1..n)
                .filter(move |&beta| beta != alpha && alpha + beta != n)
                .map(move |beta| ((n - alpha * beta % n) % n, (alpha + beta) % n, alpha))
        })));
    }
    if period == 2 {
        routes.push(Box::new((1..n).flat_map(move |x0| {
            (1..n)
                .filter(move |&a| a != sq(x0))
                .map(move |a| (a, 0, x0))
        })));
    }
    if period == n - 1 {
        routes.push(Box::new((1..n).flat_map(move |alpha| {
            let (a, b) = ((n - sq(alpha)) % n, 2 * alpha % n);
            (0..n)
                .filter(move |&x0| x0 != alpha)
                .map(move |x0| (a, b, x0))
        })));
    }
    // orbits through 0 have period k - 1, the others period k
    routes.push(gamma_route(modulus, period + 1));
    routes.push(gamma_route(modulus, period));
    Box::new(routes.into_iter().flatten())
}

/// Up to `count` distinct triples whose measured period is `period`.
/// Every emitted triple has been checked with [`measure_period`]. Fewer
/// than `count` are returned only when the family holds fewer.
pub fn design_triples(
    modulus: &PrimeModulus,
    period: u64,
    count: usize,
) -> Result<Vec<IprngParams<'_>>> {
    let n = modulus.value();
    if !achievable_periods(n)?.contains(&period) {
        return Err(Error::Unachievable { modulus: n, period });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    for (a, b, x0) in candidates(modulus, period) {
        if out.len() == count {
            break;
        }
        if !seen.insert((a, b, x0)) {
            continue;
        }
        let params = IprngParams::new(modulus, a, b, x0);
        if predict_period(&params).predicted_period != period {
            continue;
        }
        let measured = measure_period(&params);
        if measured.period != period {
            return Err(Error::Verification(format!(
                "(a, b, x0) = ({a}, {b}, {x0}) predicted period {period}, measured {}",
                measured.period
            )));
        }
        out.push(params);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{analytic_distribution, Family};
    use crate::field::is_prime;

    #[test]
    fn designs_full_period_n7() {
        let m = PrimeModulus::new(7).unwrap();
        let out = design_triples(&m, 7, 1).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(measure_period(&out[0]).period, 7);
    }

    #[test]
    fn designs_distinct_triples() {
        let m = PrimeModulus::new(31).unwrap();
        let out = design_triples(&m, 31, 5).unwrap();
        assert_eq!(out.len(), 5);
        let set: HashSet<_> = out.iter().map(|p| (p.a, p.b, p.x0)).collect();
        assert_eq!(set.len(), 5);
    }

    #[test]
    fn rejects_unachievable() {
        let m = PrimeModulus::new(31).unwrap();
        for period in [0, 11, 12, 13, 32] {
            assert_eq!(
                design_triples(&m, period, 1),
                Err(Error::Unachievable {
                    modulus: 31,
                    period
                })
            );
        }
    }

    #[test]
    fn every_achievable_period_is_designable() {
        for n in (5..=43).filter(|&n| is_prime(n)) {
            let m = PrimeModulus::new(n).unwrap();
            for p in achievable_periods(n).unwrap() {
                let out = design_triples(&m, p, 3).unwrap();
                assert_eq!(out.len(), 3, "N = {n}, period {p}");
            }
        }
    }

    #[test]
    fn exhausts_small_classes() {
        // N = 5 has exactly as many period-2 instances as the census says
        let m = PrimeModulus::new(5).unwrap();
        let expected = analytic_distribution(5, Family::All).unwrap().get(2) as usize;
        let out = design_triples(&m, 2, expected + 10).unwrap();
        assert_eq!(out.len(), expected);
    }
}
