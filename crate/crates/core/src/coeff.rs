//! Coefficient rings for series: exact rationals and cyclotomic fields.
//!
//! The series kernel is generic over [`Coeff`]; concrete aliases live at the
//! crate root. Rationals embed into every cyclotomic field as conductor-1
//! elements, so `CycloElement` gets nullary `zero`/`one` via that embedding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::cyclo::CycloElement;
use crate::rational::Rat;

/// An exact commutative ring with enough structure for series arithmetic.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, None for zero (or non-units).
    fn inv(&self) -> Option<Self>;
    /// Canonical image of a rational scalar.
    fn from_rat(r: &Rat) -> Self;
    /// Multiply by a rational scalar.
    fn scale_rat(&self, r: &Rat) -> Self;
    /// In-place `self += o` without consuming the argument.
    fn acc(&mut self, o: &Self);
    fn mul_ref(&self, o: &Self) -> Self;
}

impl Coeff for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn scale_rat(&self, r: &Rat) -> Self {
        self * r
    }

    fn acc(&mut self, o: &Self) {
        *self += o;
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Add for CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: Self) -> Self {
        CycloElement::add(&self, &rhs)
    }
}

impl Sub for CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: Self) -> Self {
        CycloElement::sub(&self, &rhs)
    }
}

impl Mul for CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: Self) -> Self {
        CycloElement::mul(&self, &rhs)
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> Self {
        CycloElement::neg(&self)
    }
}

impl Zero for CycloElement {
    fn zero() -> Self {
        CycloElement::zero(1)
    }
    fn is_zero(&self) -> bool {
        CycloElement::is_zero(self)
    }
}

impl One for CycloElement {
    fn one() -> Self {
        CycloElement::one(1)
    }
    fn is_one(&self) -> bool {
        CycloElement::is_one(self)
    }
}

impl Coeff for CycloElement {
    fn inv(&self) -> Option<Self> {
        self.invert()
    }

    fn from_rat(r: &Rat) -> Self {
        CycloElement::from_rat(1, r.clone())
    }

    fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(r)
    }

    fn acc(&mut self, o: &Self) {
        *self = CycloElement::add(self, o);
    }

    fn mul_ref(&self, o: &Self) -> Self {
        CycloElement::mul(self, o)
    }
}
