//! Closed-form period prediction.
//!
//! Periods follow from the characteristic polynomial `f(t) = t^2 - b*t - a`
//! of the companion LFSR. With distinct roots `alpha`, `beta` the ratio
//! `gamma = alpha / beta` has some order `k > 2`; an orbit that passes
//! through 0 has period `k - 1`, any other non-fixed orbit has period `k`.
//! Whether the orbit of `x0` reaches 0 is decided by whether
//! `(x0 - alpha) / (x0 - beta)` is a power of `gamma`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{gcd, FieldElement, Fp2Elem, FpElem, PrimeModulus};
use crate::generator::IprngParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootLocation {
    /// Two distinct roots in `Z_N`.
    Subfield,
    /// Two conjugate roots in `GF(N^2) \ Z_N`.
    Extension,
    /// One root of multiplicity two.
    Double,
}

/// Roots of `t^2 - b*t - a`, with `alpha` the root of smaller encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootData<'m> {
    Double {
        alpha: FpElem<'m>,
    },
    Subfield {
        alpha: FpElem<'m>,
        beta: FpElem<'m>,
    },
    Extension {
        alpha: Fp2Elem<'m>,
        beta: Fp2Elem<'m>,
    },
}

impl<'m> RootData<'m> {
    pub fn location(&self) -> RootLocation {
        match self {
            RootData::Double { .. } => RootLocation::Double,
            RootData::Subfield { .. } => RootLocation::Subfield,
            RootData::Extension { .. } => RootLocation::Extension,
        }
    }

    /// Both roots lifted into `GF(N^2)`.
    pub fn roots_in_extension(&self) -> (Fp2Elem<'m>, Fp2Elem<'m>) {
        match *self {
            RootData::Double { alpha } => (Fp2Elem::from_base(alpha), Fp2Elem::from_base(alpha)),
            RootData::Subfield { alpha, beta } => {
                (Fp2Elem::from_base(alpha), Fp2Elem::from_base(beta))
            }
            RootData::Extension { alpha, beta } => (alpha, beta),
        }
    }

    /// `alpha / beta` in `GF(N^2)`; `None` for a double root.
    pub fn gamma(&self) -> Option<Result<Fp2Elem<'m>>> {
        match self {
            RootData::Double { .. } => None,
            _ => {
                let (alpha, beta) = self.roots_in_extension();
                Some(beta.inv().map(|bi| alpha * bi))
            }
        }
    }
}

pub fn find_roots<'m>(a: FpElem<'m>, b: FpElem<'m>) -> RootData<'m> {
    let m = a.modulus();
    let two_inv = m.elem(2).inv().expect("N is odd");
    let disc = b * b + m.elem(4) * a;
    match disc.legendre() {
        0 => RootData::Double { alpha: b * two_inv },
        1 => {
            let (s, _) = disc.sqrt().expect("residue has a root");
            let r1 = (b + s) * two_inv;
            let r2 = (b - s) * two_inv;
            let (alpha, beta) = if r1.residue() <= r2.residue() {
                (r1, r2)
            } else {
                (r2, r1)
            };
            RootData::Subfield { alpha, beta }
        }
        _ => {
            // disc = r^2 * c, so sqrt(disc) = r*w
            let c_inv = m.find_nonresidue().inv().expect("non-residue is a unit");
            let (r, _) = (disc * c_inv)
                .sqrt()
                .expect("quotient of non-residues is a residue");
            let half_b = Fp2Elem::from_base(b * two_inv);
            let shift = Fp2Elem::new(m.zero(), r * two_inv);
            let (r1, r2) = (half_b + shift, half_b - shift);
            let (alpha, beta) = if r1.encoding() <= r2.encoding() {
                (r1, r2)
            } else {
                (r2, r1)
            };
            debug_assert_eq!(beta, alpha.frobenius());
            RootData::Extension { alpha, beta }
        }
    }
}

fn ratio_order<'m, F: FieldElement<'m>>(alpha: F, beta: F) -> Result<u64> {
    Ok((alpha * beta.inv()?).mult_order()? as u64)
}

fn cross_ratio<'m, F: FieldElement<'m>>(alpha: F, beta: F, x0: F) -> Result<F> {
    if x0 == alpha || x0 == beta {
        return Err(Error::RootHit);
    }
    Ok((x0 - alpha) * (x0 - beta).inv()?)
}

/// `k = ord(alpha / beta)`.
pub fn gamma_order(roots: &RootData<'_>) -> Result<u64> {
    match *roots {
        RootData::Double { .. } => Err(Error::DegenerateRoots),
        RootData::Subfield { alpha, beta } => ratio_order(alpha, beta),
        RootData::Extension { alpha, beta } => ratio_order(alpha, beta),
    }
}

/// Whether `(x0 - alpha) / (x0 - beta)` is a non-identity power of
/// `alpha / beta`, i.e. whether the orbit of `x0` reaches 0.
pub fn ratio_in_omega(roots: &RootData<'_>, x0: FpElem<'_>) -> Result<bool> {
    let k = gamma_order(roots)? as u128;
    match *roots {
        RootData::Double { .. } => Err(Error::DegenerateRoots),
        RootData::Subfield { alpha, beta } => {
            let r = cross_ratio(alpha, beta, x0)?;
            Ok(r.pow(k) == r.one_like())
        }
        RootData::Extension { alpha, beta } => {
            let r = cross_ratio(alpha, beta, Fp2Elem::from_base(x0))?;
            debug_assert_eq!(r.norm(), x0.modulus().one());
            Ok(r.pow(k) == r.one_like())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PeriodTag {
    AZero,
    BZeroFixed,
    BZeroSwap,
    DoubleRootFixed,
    DoubleRootFull,
    SplitFixed,
    SplitHitsZero,
    SplitNoZero,
    InertHitsZero,
    InertNoZero,
}

impl PeriodTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PeriodTag::AZero => "A_ZERO",
            PeriodTag::BZeroFixed => "B_ZERO_FIXED",
            PeriodTag::BZeroSwap => "B_ZERO_SWAP",
            PeriodTag::DoubleRootFixed => "DOUBLE_ROOT_FIXED",
            PeriodTag::DoubleRootFull => "DOUBLE_ROOT_FULL",
            PeriodTag::SplitFixed => "SPLIT_FIXED",
            PeriodTag::SplitHitsZero => "SPLIT_HITS_ZERO",
            PeriodTag::SplitNoZero => "SPLIT_NO_ZERO",
            PeriodTag::InertHitsZero => "INERT_HITS_ZERO",
            PeriodTag::InertNoZero => "INERT_NO_ZERO",
        }
    }

    /// Tags whose orbits pass through 0 when `a` and `b` are units.
    pub fn hits_zero(self) -> bool {
        matches!(
            self,
            PeriodTag::SplitHitsZero | PeriodTag::InertHitsZero | PeriodTag::DoubleRootFull
        )
    }
}

impl fmt::Display for PeriodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Predicted eventual period together with the case that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodClass {
    pub tag: PeriodTag,
    /// `ord(alpha / beta)` for the split and inert cases.
    pub k: Option<u64>,
    pub predicted_period: u64,
}

impl PeriodClass {
    fn fixed(tag: PeriodTag, period: u64) -> Self {
        Self {
            tag,
            k: None,
            predicted_period: period,
        }
    }
}

pub fn predict_period(params: &IprngParams<'_>) -> PeriodClass {
    let IprngParams { a, b, x0 } = *params;
    let n = params.modulus().value();

    if a.is_zero() {
        return PeriodClass::fixed(PeriodTag::AZero, 1);
    }
    if b.is_zero() {
        return if x0.is_zero() || a == x0 * x0 {
            PeriodClass::fixed(PeriodTag::BZeroFixed, 1)
        } else {
            PeriodClass::fixed(PeriodTag::BZeroSwap, 2)
        };
    }

    let roots = find_roots(a, b);
    if let RootData::Double { alpha } = roots {
        return if x0 == alpha {
            PeriodClass::fixed(PeriodTag::DoubleRootFixed, 1)
        } else {
            PeriodClass::fixed(PeriodTag::DoubleRootFull, n - 1)
        };
    }

    let k = gamma_order(&roots).expect("a and b are units, so both roots are");
    debug_assert!(k > 2);
    let class = |tag, period| PeriodClass {
        tag,
        k: Some(k),
        predicted_period: period,
    };
    let split = roots.location() == RootLocation::Subfield;
    match ratio_in_omega(&roots, x0) {
        Err(Error::RootHit) => class(PeriodTag::SplitFixed, 1),
        Err(e) => unreachable!("unexpected {e}"),
        Ok(true) if split => class(PeriodTag::SplitHitsZero, k - 1),
        Ok(false) if split => class(PeriodTag::SplitNoZero, k),
        Ok(true) => class(PeriodTag::InertHitsZero, k - 1),
        Ok(false) => class(PeriodTag::InertNoZero, k),
    }
}

/// Number of unordered classes `{gamma, gamma^-1}` of elements of order `k`.
pub fn ratio_class_count(k: u64) -> u64 {
    (1..k).filter(|&j| 2 * j < k && gcd(j, k) == 1).count() as u64
}

/// An element of order exactly `k` in `Z_N^*` (when `k | N-1`) or in the
/// norm-1 subgroup of `GF(N^2)^*` (when `k | N+1`), together with the
/// exponents `j < k/2` coprime to `k` that enumerate the ratio classes.
fn cyclic_generator_of_order<'m>(modulus: &'m PrimeModulus, k: u64) -> Result<Fp2Elem<'m>> {
    let n = modulus.value();
    let bad = Error::BadTarget { modulus: n, k };
    if k <= 2 {
        return Err(bad);
    }
    if (n - 1).is_multiple_of(k) {
        let g = modulus
            .elements()
            .skip(2)
            .find(|&x| x.mult_order() == Ok(n - 1))
            .expect("Z_N^* is cyclic");
        return Ok(Fp2Elem::from_base(g.pow(((n - 1) / k) as u128)));
    }
    if (n + 1).is_multiple_of(k) {
        // u^(N-1) has norm 1; scan until it generates the whole norm-1 group
        for c1 in modulus.elements().skip(1) {
            for c0 in modulus.elements() {
                let v = Fp2Elem::new(c0, c1).pow((n - 1) as u128);
                if v.mult_order() == Ok(n as u128 + 1) {
                    return Ok(v.pow(((n + 1) / k) as u128));
                }
            }
        }
        unreachable!("the norm-1 subgroup is cyclic of order N+1");
    }
    Err(bad)
}

/// `gamma` of order `k` from ratio class `which` (`0 <= which < phi(k)/2`).
pub fn gamma_for_class<'m>(modulus: &'m PrimeModulus, k: u64, which: u64) -> Result<Fp2Elem<'m>> {
    let h = cyclic_generator_of_order(modulus, k)?;
    let j = (1..k)
        .filter(|&j| 2 * j < k && gcd(j, k) == 1)
        .nth(which as usize)
        .ok_or(Error::BadTarget {
            modulus: modulus.value(),
            k,
        })?;
    Ok(h.pow(j as u128))
}

/// Coefficients `(a, b)` whose root ratio has order `k`, from
/// `a = -b^2 / (gamma + gamma^-1 + 2)`.
pub fn params_from_gamma<'m>(
    modulus: &'m PrimeModulus,
    k: u64,
    b: FpElem<'m>,
    which: u64,
) -> Result<(FpElem<'m>, FpElem<'m>)> {
    if b.is_zero() {
        return Err(Error::BadTarget {
            modulus: modulus.value(),
            k,
        });
    }
    let gamma = gamma_for_class(modulus, k, which)?;
    let trace = gamma + gamma.inv()?;
    debug_assert!(trace.in_subfield());
    let denom = trace.c0() + modulus.elem(2);
    let a = -(b * b) * denom.inv()?;
    Ok((a, b))
}
