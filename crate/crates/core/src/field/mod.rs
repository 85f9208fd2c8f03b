//! Exact arithmetic in `Z_N` and `GF(N^2)`.
//!
//! Elements borrow the [`PrimeModulus`] they live in, which caches the
//! factorizations of `N - 1`, `N + 1` and `N^2 - 1` together with the fixed
//! non-residue `c` that defines `GF(N^2) = Z_N[w] / (w^2 - c)`.

mod arith;
mod fp;
mod fp2;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use arith::{divisors, euler_phi, factorize, gcd, inv_mod, is_prime, lcm, mul_mod, pow_mod};
pub use fp::FpElem;
pub use fp2::Fp2Elem;

use crate::error::{Error, Result};

/// A prime `N > 3` with the factorizations needed for order computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeModulus {
    value: u64,
    factor_n_minus_1: Vec<(u64, u32)>,
    factor_n_plus_1: Vec<(u64, u32)>,
    factor_ext_order: Vec<(u64, u32)>,
    nonresidue: u64,
}

impl PrimeModulus {
    pub fn new(n: u64) -> Result<Self> {
        if n <= 3 {
            return Err(Error::ModulusTooSmall(n));
        }
        if !is_prime(n) {
            return Err(Error::NotPrime(n));
        }
        let factor_n_minus_1 = factorize(n - 1);
        let factor_n_plus_1 = factorize(n + 1);
        let mut factor_ext_order = factor_n_minus_1.clone();
        for &(p, e) in &factor_n_plus_1 {
            match factor_ext_order.iter_mut().find(|(q, _)| *q == p) {
                Some((_, f)) => *f += e,
                None => factor_ext_order.push((p, e)),
            }
        }
        factor_ext_order.sort_unstable();
        let half = (n - 1) / 2;
        let nonresidue = (2..n)
            .find(|&c| pow_mod(c, half as u128, n) == n - 1)
            .expect("an odd prime has a quadratic non-residue");
        Ok(Self {
            value: n,
            factor_n_minus_1,
            factor_n_plus_1,
            factor_ext_order,
            nonresidue,
        })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Prime factorization of `N - 1` as `(prime, exponent)` pairs.
    pub fn factor_n_minus_1(&self) -> &[(u64, u32)] {
        &self.factor_n_minus_1
    }

    /// Prime factorization of `N + 1` as `(prime, exponent)` pairs.
    pub fn factor_n_plus_1(&self) -> &[(u64, u32)] {
        &self.factor_n_plus_1
    }

    /// Prime factorization of `N^2 - 1`, the order of `GF(N^2)^*`.
    pub fn factor_ext_order(&self) -> &[(u64, u32)] {
        &self.factor_ext_order
    }

    /// Reduces `v` into `Z_N`.
    #[inline]
    pub fn elem(&self, v: u64) -> FpElem<'_> {
        FpElem::new(v, self)
    }

    pub fn zero(&self) -> FpElem<'_> {
        FpElem::new(0, self)
    }

    pub fn one(&self) -> FpElem<'_> {
        FpElem::new(1, self)
    }

    /// Smallest `c >= 2` that is not a square mod `N`.
    pub fn find_nonresidue(&self) -> FpElem<'_> {
        FpElem::new(self.nonresidue, self)
    }

    /// The element `w` with `w^2 = c`.
    pub fn omega(&self) -> Fp2Elem<'_> {
        Fp2Elem::new(self.zero(), self.one())
    }

    /// All residues `0..N` in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = FpElem<'_>> + '_ {
        (0..self.value).map(move |v| FpElem::from_reduced(v, self))
    }
}

/// Operations shared by `Z_N` and `GF(N^2)` elements, so that closed forms
/// and root bookkeeping can be written once for both.
pub trait FieldElement<'m>:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn modulus(&self) -> &'m PrimeModulus;
    fn from_base(x: FpElem<'m>) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    fn pow(&self, exp: u128) -> Self;
    /// Order of the full multiplicative group the element lives in.
    fn group_order(modulus: &PrimeModulus) -> u128;
    fn group_order_factors(modulus: &PrimeModulus) -> &[(u64, u32)];
    /// Integer encoding used for canonical ordering.
    fn encoding(&self) -> u128;

    fn one_like(&self) -> Self {
        Self::from_base(self.modulus().one())
    }

    /// Smallest `e >= 1` with `x^e = 1`, found by stripping prime factors
    /// off the group order.
    fn mult_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroOrder);
        }
        let one = self.one_like();
        let mut order = Self::group_order(self.modulus());
        for &(p, e) in Self::group_order_factors(self.modulus()) {
            for _ in 0..e {
                let candidate = order / p as u128;
                if self.pow(candidate) == one {
                    order = candidate;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }
}

/// Period of `(t - alpha)(t - beta)`: `lcm(ord(alpha), ord(beta))` for
/// distinct nonzero roots.
pub fn quadratic_per<'m, F: FieldElement<'m>>(roots: (F, F), distinct: bool) -> Result<u128> {
    if !distinct || roots.0 == roots.1 {
        return Err(Error::RepeatedRoot);
    }
    Ok(lcm(roots.0.mult_order()?, roots.1.mult_order()?))
}
