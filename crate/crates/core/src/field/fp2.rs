use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldElement, FpElem, PrimeModulus};
use crate::error::Result;

/// An element `c0 + c1*w` of `GF(N^2)`, with `w^2 = c` for the modulus'
/// fixed non-residue `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2Elem<'m> {
    c0: FpElem<'m>,
    c1: FpElem<'m>,
}

impl<'m> Fp2Elem<'m> {
    pub fn new(c0: FpElem<'m>, c1: FpElem<'m>) -> Self {
        debug_assert_eq!(c0.modulus().value(), c1.modulus().value());
        Self { c0, c1 }
    }

    pub fn c0(self) -> FpElem<'m> {
        self.c0
    }

    pub fn c1(self) -> FpElem<'m> {
        self.c1
    }

    pub fn nonresidue(self) -> FpElem<'m> {
        self.c0.modulus().find_nonresidue()
    }

    pub fn is_zero(self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// True when the element lies in the prime subfield.
    pub fn in_subfield(self) -> bool {
        self.c1.is_zero()
    }

    /// `x -> x^N`, computed as `c0 + c1 * c^((N-1)/2) * w`.
    pub fn frobenius(self) -> Self {
        let m = self.c0.modulus();
        let twist = self.nonresidue().pow(((m.value() - 1) / 2) as u128);
        Self::new(self.c0, self.c1 * twist)
    }

    /// `x * x^N = c0^2 - c*c1^2`.
    pub fn norm(self) -> FpElem<'m> {
        self.c0 * self.c0 - self.nonresidue() * self.c1 * self.c1
    }

    pub fn inv(self) -> Result<Self> {
        let n_inv = self.norm().inv()?;
        Ok(Self::new(self.c0 * n_inv, -self.c1 * n_inv))
    }

    pub fn pow(self, mut exp: u128) -> Self {
        let mut base = self;
        let mut acc = Self::from_base(self.c0.modulus().one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn mult_order(self) -> Result<u128> {
        FieldElement::mult_order(&self)
    }
}

impl<'m> FieldElement<'m> for Fp2Elem<'m> {
    fn modulus(&self) -> &'m PrimeModulus {
        self.c0.modulus()
    }

    fn from_base(x: FpElem<'m>) -> Self {
        Self::new(x, x.modulus().zero())
    }

    fn is_zero(&self) -> bool {
        Fp2Elem::is_zero(*self)
    }

    fn inv(&self) -> Result<Self> {
        Fp2Elem::inv(*self)
    }

    fn pow(&self, exp: u128) -> Self {
        Fp2Elem::pow(*self, exp)
    }

    fn group_order(modulus: &PrimeModulus) -> u128 {
        let n = modulus.value() as u128;
        n * n - 1
    }

    fn group_order_factors(modulus: &PrimeModulus) -> &[(u64, u32)] {
        modulus.factor_ext_order()
    }

    fn encoding(&self) -> u128 {
        self.c1.residue() as u128 * self.c0.modulus().value() as u128 + self.c0.residue() as u128
    }
}

impl fmt::Debug for Fp2Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}w (mod {})",
            self.c0,
            self.c1,
            self.c0.modulus().value()
        )
    }
}

impl fmt::Display for Fp2Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.c0, self.c1)
    }
}

impl<'m> Add for Fp2Elem<'m> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl<'m> Sub for Fp2Elem<'m> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl<'m> Neg for Fp2Elem<'m> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1)
    }
}

impl<'m> Mul for Fp2Elem<'m> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let c = self.nonresidue();
        Self::new(
            self.c0 * rhs.c0 + c * self.c1 * rhs.c1,
            self.c0 * rhs.c1 + self.c1 * rhs.c0,
        )
    }
}
