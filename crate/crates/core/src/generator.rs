//! The inversive generator `x -> a*x^-1 + b` (with `0 -> b`), its companion
//! LFSR and exact orbit measurement.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, FieldElement, FpElem, PrimeModulus};

/// Moduli up to this size use a dense first-seen table.
const DENSE_TABLE_LIMIT: u64 = 1 << 24;
const UNSEEN: u32 = u32::MAX;

/// One generator instance `(N, a, b, x0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IprngParams<'m> {
    pub a: FpElem<'m>,
    pub b: FpElem<'m>,
    pub x0: FpElem<'m>,
}

impl<'m> IprngParams<'m> {
    /// Builds an instance, reducing every argument mod `N`.
    pub fn new(modulus: &'m PrimeModulus, a: u64, b: u64, x0: u64) -> Self {
        Self {
            a: modulus.elem(a),
            b: modulus.elem(b),
            x0: modulus.elem(x0),
        }
    }

    pub fn modulus(&self) -> &'m PrimeModulus {
        self.a.modulus()
    }

    pub fn with_x0(self, x0: FpElem<'m>) -> Self {
        Self { x0, ..self }
    }
}

/// Orbit structure: `x_{n+period} = x_n` for all `n >= preperiod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodResult {
    pub preperiod: u64,
    pub period: u64,
    /// Whether 0 lies on the cycle.
    pub hits_zero: bool,
}

pub fn step<'m>(params: &IprngParams<'m>, x: FpElem<'m>) -> FpElem<'m> {
    match x.inv() {
        Ok(x_inv) => params.a * x_inv + params.b,
        Err(_) => params.b,
    }
}

/// `[x_1, ..., x_count]`.
pub fn sequence<'m>(params: &IprngParams<'m>, count: usize) -> Vec<FpElem<'m>> {
    let mut x = params.x0;
    (0..count)
        .map(|_| {
            x = step(params, x);
            x
        })
        .collect()
}

/// Walks the orbit of `x0` until a state repeats. `mark(state, index)`
/// records the first visit and returns the earlier index on a revisit.
fn trace(
    x0: u64,
    mut next: impl FnMut(u64) -> u64,
    mut mark: impl FnMut(u64, u64) -> Option<u64>,
    orbit: &mut Vec<u64>,
) -> PeriodResult {
    orbit.clear();
    let mut x = x0;
    let first = loop {
        if let Some(i) = mark(x, orbit.len() as u64) {
            break i;
        }
        orbit.push(x);
        x = next(x);
    };
    let len = orbit.len() as u64;
    PeriodResult {
        preperiod: first,
        period: len - first,
        hits_zero: orbit[first as usize..].contains(&0),
    }
}

/// Exact preperiod and period of the orbit of `x0`.
pub fn measure_period(params: &IprngParams<'_>) -> PeriodResult {
    let n = params.modulus().value();
    let (a, b) = (params.a.residue(), params.b.residue());
    let next = |x: u64| match inv_mod(x, n) {
        Some(xi) => {
            let t = mul_mod(a, xi, n);
            (t as u128 + b as u128).rem_euclid(n as u128) as u64
        }
        None => b,
    };
    let mut orbit = Vec::new();
    if n <= DENSE_TABLE_LIMIT {
        let mut first_seen = vec![UNSEEN; n as usize];
        trace(
            params.x0.residue(),
            next,
            |x, i| match first_seen[x as usize] {
                UNSEEN => {
                    first_seen[x as usize] = i as u32;
                    None
                }
                j => Some(j as u64),
            },
            &mut orbit,
        )
    } else {
        let mut first_seen = HashMap::new();
        trace(
            params.x0.residue(),
            next,
            |x, i| match first_seen.insert(x, i) {
                Some(j) => {
                    first_seen.insert(x, j);
                    Some(j)
                }
                None => None,
            },
            &mut orbit,
        )
    }
}

/// Reusable orbit measurer for sweeps over many instances with one modulus.
/// Keeps an inverse table and a first-seen table across calls.
pub struct PeriodMeter {
    n: u64,
    inverses: Vec<u32>,
    first_seen: Vec<u32>,
    orbit: Vec<u64>,
}

impl PeriodMeter {
    pub fn new(modulus: &PrimeModulus) -> Self {
        let n = modulus.value();
        assert!(n <= DENSE_TABLE_LIMIT, "PeriodMeter supports N <= 2^24");
        let inverses = (0..n).map(|x| inv_mod(x, n).unwrap_or(0) as u32).collect();
        Self {
            n,
            inverses,
            first_seen: vec![UNSEEN; n as usize],
            orbit: Vec::with_capacity(n as usize),
        }
    }

    pub fn measure(&mut self, a: u64, b: u64, x0: u64) -> PeriodResult {
        let n = self.n;
        let inverses = &self.inverses;
        let first_seen = &mut self.first_seen;
        let result = trace(
            x0,
            |x| {
                if x == 0 {
                    b
                } else {
                    (a * inverses[x as usize] as u64 + b) % n
                }
            },
            |x, i| match first_seen[x as usize] {
                UNSEEN => {
                    first_seen[x as usize] = i as u32;
                    None
                }
                j => Some(j as u64),
            },
            &mut self.orbit,
        );
        for &x in &self.orbit {
            self.first_seen[x as usize] = UNSEEN;
        }
        result
    }
}

/// `[y_0, ..., y_{count-1}]` for `y_{n+2} = b*y_{n+1} + a*y_n`,
/// `y_0 = 1`, `y_1 = x0`.
pub fn lfsr_sequence<'m>(params: &IprngParams<'m>, count: usize) -> Vec<FpElem<'m>> {
    let m = params.modulus();
    let mut out = Vec::with_capacity(count);
    let (mut y0, mut y1) = (m.one(), params.x0);
    for _ in 0..count {
        out.push(y0);
        (y0, y1) = (y1, params.b * y1 + params.a * y0);
    }
    out
}

/// General term of the LFSR when `t^2 - b*t - a = (t - alpha)^2`:
/// `y_n = alpha^n * (1 + n*(alpha^-1 * x0 - 1))`.
pub fn closed_form_double<'m>(alpha: FpElem<'m>, x0: FpElem<'m>, n: u64) -> Result<FpElem<'m>> {
    let m = alpha.modulus();
    let slope = alpha.inv()? * x0 - m.one();
    Ok(alpha.pow(n as u128) * (m.one() + m.elem(n) * slope))
}

/// General term of the LFSR for distinct roots `alpha`, `beta`:
/// `y_n = ((x0 - beta)*alpha^n + (alpha - x0)*beta^n) / (alpha - beta)`.
pub fn closed_form_split<'m, F: FieldElement<'m>>(
    alpha: F,
    beta: F,
    x0: FpElem<'m>,
    n: u64,
) -> Result<F> {
    if alpha == beta {
        return Err(Error::RepeatedRoot);
    }
    let x0 = F::from_base(x0);
    let scale = (alpha - beta).inv()?;
    Ok(scale * ((x0 - beta) * alpha.pow(n as u128) + (alpha - x0) * beta.pow(n as u128)))
}

/// Checks the ratio correspondence `x_n = y_{n+1} / y_n` while the LFSR
/// stays nonzero, and that the first zero of `x` sits one index before
/// the first zero of `y`.
pub fn check_lemma1(params: &IprngParams<'_>, horizon: usize) -> bool {
    let mut xs = vec![params.x0];
    xs.extend(sequence(params, horizon));
    let ys = lfsr_sequence(params, horizon + 2);

    let first_y_zero = ys.iter().position(|y| y.is_zero());
    let limit = first_y_zero.unwrap_or(ys.len()).min(horizon + 1);
    for n in 0..limit {
        match ys[n].inv() {
            Ok(inv) if xs[n] == ys[n + 1] * inv => {}
            _ => return false,
        }
    }
    let first_x_zero = xs.iter().position(|x| x.is_zero());
    first_x_zero.map(|m| m + 1) == first_y_zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{is_prime, Fp2Elem};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn residues(v: &[FpElem<'_>]) -> Vec<u64> {
        v.iter().map(|x| x.residue()).collect()
    }

    #[test]
    fn step_examples() {
        let m = PrimeModulus::new(7).unwrap();
        let p = IprngParams::new(&m, 1, 1, 0);
        assert_eq!(step(&p, m.elem(0)), m.elem(1));
        assert_eq!(step(&p, m.elem(2)), m.elem(5));
        let q = IprngParams::new(&m, 3, 0, 0);
        assert_eq!(step(&q, m.elem(2)), m.elem(5));
    }

    #[test]
    fn sequence_examples() {
        let m = PrimeModulus::new(7).unwrap();
        let p = IprngParams::new(&m, 1, 1, 1);
        assert_eq!(residues(&sequence(&p, 7)), vec![2, 5, 4, 3, 6, 0, 1]);
        let q = IprngParams::new(&m, 0, 4, 2);
        assert_eq!(residues(&sequence(&q, 3)), vec![4, 4, 4]);
        assert!(sequence(&p, 0).is_empty());
    }

    #[test]
    fn measure_period_examples() {
        let m7 = PrimeModulus::new(7).unwrap();
        let m5 = PrimeModulus::new(5).unwrap();
        assert_eq!(
            measure_period(&IprngParams::new(&m7, 1, 1, 1)),
            PeriodResult {
                preperiod: 0,
                period: 7,
                hits_zero: true
            }
        );
        let r = measure_period(&IprngParams::new(&m5, 1, 1, 0));
        assert_eq!((r.preperiod, r.period), (0, 4));
        let r = measure_period(&IprngParams::new(&m7, 0, 4, 2));
        assert_eq!(
            r,
            PeriodResult {
                preperiod: 1,
                period: 1,
                hits_zero: false
            }
        );
    }

    /// Brute force via the raw definition: the least L such that
    /// x_{n+L} = x_n for every n >= n0, over a window long enough to
    /// cover any orbit in Z_N.
    fn definition_oracle(p: &IprngParams<'_>) -> (u64, u64) {
        let n = p.modulus().value() as usize;
        let mut xs = vec![p.x0];
        xs.extend(sequence(p, 3 * n));
        for n0 in 0..=n {
            for l in 1..=n {
                if (n0..2 * n).all(|i| xs[i + l] == xs[i]) {
                    return (n0 as u64, l as u64);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn measure_period_matches_definition() {
        for n in [5u64, 7, 11] {
            let m = PrimeModulus::new(n).unwrap();
            for a in 0..n {
                for b in 0..n {
                    for x0 in 0..n {
                        let p = IprngParams::new(&m, a, b, x0);
                        let r = measure_period(&p);
                        assert_eq!((r.preperiod, r.period), definition_oracle(&p));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_fits_in_state_space() {
        for n in (5..=31).filter(|&n| is_prime(n)) {
            let m = PrimeModulus::new(n).unwrap();
            let mut meter = PeriodMeter::new(&m);
            for a in 0..n {
                for b in 0..n {
                    for x0 in 0..n {
                        let r = measure_period(&IprngParams::new(&m, a, b, x0));
                        assert!(r.period >= 1 && r.preperiod + r.period <= n);
                        assert_eq!(meter.measure(a, b, x0), r);
                    }
                }
            }
        }
    }

    #[test]
    fn shift_invariance() {
        let m = PrimeModulus::new(23).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let p = IprngParams::new(
                &m,
                rng.gen_range(0..23),
                rng.gen_range(0..23),
                rng.gen_range(0..23),
            );
            let r = measure_period(&p);
            let xs = sequence(&p, 2 * 23);
            for idx in r.preperiod..r.preperiod + r.period {
                let x = if idx == 0 { p.x0 } else { xs[idx as usize - 1] };
                let s = measure_period(&p.with_x0(x));
                assert_eq!((s.preperiod, s.period), (0, r.period));
            }
        }
    }

    #[test]
    fn b_zero_alternates() {
        let m = PrimeModulus::new(13).unwrap();
        for a in 1..13 {
            for x0 in 1..13 {
                if a == x0 * x0 % 13 {
                    continue;
                }
                let p = IprngParams::new(&m, a, 0, x0);
                let xs = sequence(&p, 20);
                for i in 0..18 {
                    assert_eq!(xs[i + 2], xs[i]);
                    assert_ne!(xs[i + 1], xs[i]);
                }
            }
        }
    }

    #[test]
    fn lfsr_examples() {
        let m7 = PrimeModulus::new(7).unwrap();
        assert_eq!(
            residues(&lfsr_sequence(&IprngParams::new(&m7, 1, 1, 1), 5)),
            vec![1, 1, 2, 3, 5]
        );
        assert_eq!(
            residues(&lfsr_sequence(&IprngParams::new(&m7, 1, 2, 3), 2)),
            vec![1, 3]
        );
        let m5 = PrimeModulus::new(5).unwrap();
        assert_eq!(
            residues(&lfsr_sequence(&IprngParams::new(&m5, 4, 2, 4), 6)),
            vec![1, 4, 2, 0, 3, 1]
        );
    }

    #[test]
    fn closed_form_double_examples() {
        let m = PrimeModulus::new(11).unwrap();
        let alpha = m.elem(4);
        let x0 = m.elem(7);
        assert_eq!(closed_form_double(alpha, x0, 0).unwrap(), m.one());
        assert_eq!(closed_form_double(alpha, x0, 1).unwrap(), x0);
        let twice = alpha + alpha;
        for n in 0..30 {
            let expect = m.elem(n + 1) * alpha.pow(n as u128);
            assert_eq!(closed_form_double(alpha, twice, n).unwrap(), expect);
        }
        assert_eq!(closed_form_double(m.zero(), x0, 3), Err(Error::ZeroInverse));
    }

    #[test]
    fn misplaced_double_root_term_breaks_seed() {
        // alpha^n (n alpha^-1 x0 - 1) + 1 evaluates to 0 at n = 0
        let m = PrimeModulus::new(7).unwrap();
        let (alpha, x0) = (m.elem(3), m.elem(5));
        let misplaced = |n: u64| {
            alpha.pow(n as u128) * (m.elem(n) * alpha.inv().unwrap() * x0 - m.one()) + m.one()
        };
        assert_eq!(misplaced(0), m.zero());
        assert_eq!(closed_form_double(alpha, x0, 0).unwrap(), m.one());
    }

    #[test]
    fn closed_form_split_examples() {
        let m = PrimeModulus::new(7).unwrap();
        let (alpha, beta, x0) = (m.elem(2), m.elem(3), m.elem(1));
        assert_eq!(closed_form_split(alpha, beta, x0, 0).unwrap(), m.one());
        assert_eq!(closed_form_split(alpha, beta, x0, 1).unwrap(), x0);
        // a = -6 = 1, b = 5
        let ys = lfsr_sequence(&IprngParams::new(&m, 1, 5, 1), 3);
        assert_eq!(ys[2], m.elem(6));
        assert_eq!(closed_form_split(alpha, beta, x0, 2).unwrap(), m.elem(6));
        assert_eq!(
            closed_form_split(alpha, alpha, x0, 2),
            Err(Error::RepeatedRoot)
        );
    }

    #[test]
    fn closed_forms_agree_with_recurrence() {
        let mut rng = StdRng::seed_from_u64(0x1f);
        for n in [5u64, 7, 11, 13, 31] {
            let m = PrimeModulus::new(n).unwrap();
            let horizon = 2 * n as usize + 1;
            for _ in 0..200 {
                let x0 = m.elem(rng.gen_range(0..n));

                let alpha = m.elem(rng.gen_range(1..n));
                let p = IprngParams {
                    a: -(alpha * alpha),
                    b: alpha + alpha,
                    x0,
                };
                for (i, y) in lfsr_sequence(&p, horizon).into_iter().enumerate() {
                    assert_eq!(closed_form_double(alpha, x0, i as u64).unwrap(), y);
                }

                let (alpha, beta) = loop {
                    let (u, v) = (m.elem(rng.gen_range(0..n)), m.elem(rng.gen_range(0..n)));
                    if u != v {
                        break (u, v);
                    }
                };
                let p = IprngParams {
                    a: -(alpha * beta),
                    b: alpha + beta,
                    x0,
                };
                for (i, y) in lfsr_sequence(&p, horizon).into_iter().enumerate() {
                    assert_eq!(closed_form_split(alpha, beta, x0, i as u64).unwrap(), y);
                }

                let alpha = Fp2Elem::new(m.elem(rng.gen_range(0..n)), m.elem(rng.gen_range(1..n)));
                let beta = alpha.frobenius();
                let p = IprngParams {
                    a: -alpha.norm(),
                    b: (alpha + beta).c0(),
                    x0,
                };
                for (i, y) in lfsr_sequence(&p, horizon).into_iter().enumerate() {
                    assert_eq!(
                        closed_form_split(alpha, beta, x0, i as u64).unwrap(),
                        Fp2Elem::from_base(y)
                    );
                }
            }
        }
    }

    #[test]
    fn ratio_correspondence_examples() {
        let m7 = PrimeModulus::new(7).unwrap();
        assert!(check_lemma1(&IprngParams::new(&m7, 1, 1, 1), 7));
        let m5 = PrimeModulus::new(5).unwrap();
        let p = IprngParams::new(&m5, 1, 1, 0);
        assert!(check_lemma1(&p, 5));
        // x_0 = 0 pairs with y_1 = x0 = 0
        assert!(lfsr_sequence(&p, 2)[1].is_zero());
    }

    #[test]
    fn ratio_correspondence_random_triples() {
        let m = PrimeModulus::new(31).unwrap();
        let mut rng = StdRng::seed_from_u64(100);
        for _ in 0..100 {
            let p = IprngParams::new(
                &m,
                rng.gen_range(0..31),
                rng.gen_range(0..31),
                rng.gen_range(0..31),
            );
            assert!(check_lemma1(&p, 31));
        }
    }
}
