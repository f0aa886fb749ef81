//! Field abstraction shared by every numerical routine in the crate.
//!
//! Frames live over ℝ or ℂ. [`Scalar`] is the element type of the field and
//! [`Real`] is its real subfield; for real scalars the two coincide.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, Num, NumAssign, Zero};
use serde::{Deserialize, Serialize};

/// Field tag carried by frames and their serialized form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

/// An element of ℝ or ℂ over a floating-point real type.
pub trait Scalar:
    Num
    + Copy
    + Debug
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Send
    + Sync
    + 'static
{
    type Real: Real;

    const FIELD: Field;

    fn conj(self) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;

    /// Builds a scalar from real and imaginary parts. Real scalars drop `im`.
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;

    /// The imaginary unit, if the field has one.
    fn imaginary_unit() -> Option<Self>;

    fn abs_sq(self) -> Self::Real {
        let (re, im) = (self.re(), self.im());
        re * re + im * im
    }

    fn modulus(self) -> Self::Real {
        self.re().hypot(self.im())
    }

    fn scale(self, r: Self::Real) -> Self {
        self * Self::from_real(r)
    }

    fn finite(self) -> bool {
        Float::is_finite(self.re()) && Float::is_finite(self.im())
    }

    /// `self / |self|`, or one when `self` is zero.
    fn phase(self) -> Self {
        let m = self.modulus();
        if m == Self::Real::zero() {
            Self::one()
        } else {
            self.scale(m.recip())
        }
    }

    fn from_f64_parts(re: f64, im: f64) -> Self {
        Self::from_parts(
            Self::Real::from_f64_lossy(re),
            Self::Real::from_f64_lossy(im),
        )
    }
}

/// Floating-point real field (f32 or f64).
pub trait Real:
    Scalar<Real = Self> + Float + NumAssign + FromPrimitive + PartialOrd + Display + LowerExp + Default
{
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts to every float type")
    }

    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("usize converts to every float type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;
            const FIELD: Field = Field::Real;

            fn conj(self) -> Self {
                self
            }
            fn re(self) -> Self {
                self
            }
            fn im(self) -> Self {
                0.0
            }
            fn from_real(r: Self) -> Self {
                r
            }
            fn from_parts(re: Self, _im: Self) -> Self {
                re
            }
            fn imaginary_unit() -> Option<Self> {
                None
            }
            fn abs_sq(self) -> Self {
                self * self
            }
            fn modulus(self) -> Self {
                self.abs()
            }
            fn scale(self, r: Self) -> Self {
                self * r
            }
        }

        impl Real for $t {}
    };
}

impl_real!(f32);
impl_real!(f64);

impl<T: Real> Scalar for Complex<T> {
    type Real = T;
    const FIELD: Field = Field::Complex;

    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn re(self) -> T {
        self.re
    }
    fn im(self) -> T {
        self.im
    }
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
    fn from_parts(re: T, im: T) -> Self {
        Complex::new(re, im)
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(T::zero(), T::one()))
    }
    fn scale(self, r: T) -> Self {
        Complex::new(self.re * r, self.im * r)
    }
}

/// Converts an f64 constant into the real type `R`.
pub(crate) fn real<R: Real>(x: f64) -> R {
    R::from_f64_lossy(x)
}

/// Inner product, linear in the first argument and conjugate-linear in the second.
pub fn inner<S: Scalar>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| a * b.conj()).sum()
}

pub fn norm_sq<S: Scalar>(x: &[S]) -> S::Real {
    x.iter().fold(S::Real::zero(), |acc, &a| acc + a.abs_sq())
}

pub fn norm<S: Scalar>(x: &[S]) -> S::Real {
    norm_sq(x).sqrt()
}
