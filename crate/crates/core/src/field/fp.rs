use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::arith::{inv_mod, mul_mod, pow_mod};
use super::{FieldElement, PrimeModulus};
use crate::error::{Error, Result};

/// A residue in `Z_N`.
#[derive(Clone, Copy)]
pub struct FpElem<'m> {
    residue: u64,
    modulus: &'m PrimeModulus,
}

impl<'m> FpElem<'m> {
    pub fn new(v: u64, modulus: &'m PrimeModulus) -> Self {
        Self {
            residue: v % modulus.value(),
            modulus,
        }
    }

    #[inline]
    pub(crate) fn from_reduced(residue: u64, modulus: &'m PrimeModulus) -> Self {
        debug_assert!(residue < modulus.value());
        Self { residue, modulus }
    }

    #[inline]
    pub fn residue(self) -> u64 {
        self.residue
    }

    #[inline]
    pub fn modulus(self) -> &'m PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    #[inline]
    fn n(self) -> u64 {
        self.modulus.value()
    }

    pub fn inv(self) -> Result<Self> {
        inv_mod(self.residue, self.n())
            .map(|r| Self::from_reduced(r, self.modulus))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(self, exp: u128) -> Self {
        Self::from_reduced(pow_mod(self.residue, exp, self.n()), self.modulus)
    }

    /// Legendre symbol as `-1`, `0` or `1`, via Euler's criterion.
    pub fn legendre(self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.pow(((self.n() - 1) / 2) as u128).residue == 1 {
            1
        } else {
            -1
        }
    }

    /// Both square roots, smaller residue first (Tonelli-Shanks).
    pub fn sqrt(self) -> Result<(Self, Self)> {
        match self.legendre() {
            0 => return Ok((self, self)),
            -1 => return Err(Error::NotASquare),
            _ => {}
        }
        let n = self.n();
        let mut q = n - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = self.modulus.nonresidue;
        let mut m = s;
        let mut c = pow_mod(z, q as u128, n);
        let mut t = pow_mod(self.residue, q as u128, n);
        let mut r = pow_mod(self.residue, q.div_ceil(2) as u128, n);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, n);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mul_mod(b, b, n);
            }
            m = i;
            c = mul_mod(b, b, n);
            t = mul_mod(t, c, n);
            r = mul_mod(r, b, n);
        }
        let (lo, hi) = if r <= n - r { (r, n - r) } else { (n - r, r) };
        Ok((
            Self::from_reduced(lo, self.modulus),
            Self::from_reduced(hi, self.modulus),
        ))
    }

    /// Multiplicative order in `Z_N^*`.
    pub fn mult_order(self) -> Result<u64> {
        FieldElement::mult_order(&self).map(|k| k as u64)
    }
}

impl<'m> FieldElement<'m> for FpElem<'m> {
    fn modulus(&self) -> &'m PrimeModulus {
        self.modulus
    }

    fn from_base(x: FpElem<'m>) -> Self {
        x
    }

    fn is_zero(&self) -> bool {
        self.residue == 0
    }

    fn inv(&self) -> Result<Self> {
        FpElem::inv(*self)
    }

    fn pow(&self, exp: u128) -> Self {
        FpElem::pow(*self, exp)
    }

    fn group_order(modulus: &PrimeModulus) -> u128 {
        (modulus.value() - 1) as u128
    }

    fn group_order_factors(modulus: &PrimeModulus) -> &[(u64, u32)] {
        modulus.factor_n_minus_1()
    }

    fn encoding(&self) -> u128 {
        self.residue as u128
    }
}

impl PartialEq for FpElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue && self.n() == other.n()
    }
}

impl Eq for FpElem<'_> {}

impl Hash for FpElem<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.residue.hash(state);
    }
}

impl fmt::Debug for FpElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.n())
    }
}

impl fmt::Display for FpElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl<'m> Add for FpElem<'m> {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.n(), rhs.n());
        let n = self.n();
        let s = self.residue as u128 + rhs.residue as u128;
        Self::from_reduced((s % n as u128) as u64, self.modulus)
    }
}

impl<'m> Sub for FpElem<'m> {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'m> Neg for FpElem<'m> {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        if self.residue == 0 {
            self
        } else {
            Self::from_reduced(self.n() - self.residue, self.modulus)
        }
    }
}

impl<'m> Mul for FpElem<'m> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.n(), rhs.n());
        Self::from_reduced(mul_mod(self.residue, rhs.residue, self.n()), self.modulus)
    }
}

impl AddAssign for FpElem<'_> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FpElem<'_> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FpElem<'_> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}
