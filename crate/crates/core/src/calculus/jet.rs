//! First-order forward-mode jets over the six real coordinates of the cover.
//!
//! A [`Jet6`] carries a complex value together with its partial derivatives
//! with respect to `(x, y, Re α, Im α, σ, t)`. All coordinate formulas in the
//! crate are written once, generically over [`Scalar`], and evaluated either on
//! plain `Complex64` values or on jets to obtain exact first derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Number of real coordinates on `ℂ × ℍ × ℍ`.
pub const REAL_DIM: usize = 6;

/// Field-like scalar the closed-form formulas are generic over.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: Complex64) -> Self;

    fn real(r: f64) -> Self {
        Self::constant(Complex64::new(r, 0.0))
    }

    fn zero() -> Self {
        Self::real(0.0)
    }

    fn conj(self) -> Self;

    /// Real part, as a scalar with zero imaginary part.
    fn re(self) -> Self;

    /// Imaginary part, as a scalar with zero imaginary part.
    fn im(self) -> Self;

    fn value(&self) -> Complex64;
}

impl Scalar for Complex64 {
    fn constant(c: Complex64) -> Self {
        c
    }

    fn conj(self) -> Self {
        Complex64::conj(&self)
    }

    fn re(self) -> Self {
        Complex64::new(self.re, 0.0)
    }

    fn im(self) -> Self {
        Complex64::new(self.im, 0.0)
    }

    fn value(&self) -> Complex64 {
        *self
    }
}

/// A complex value with its six real partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet6 {
    pub value: Complex64,
    pub partials: [Complex64; REAL_DIM],
}

impl Jet6 {
    pub fn new(value: Complex64, partials: [Complex64; REAL_DIM]) -> Self {
        Self { value, partials }
    }

    pub fn constant(value: Complex64) -> Self {
        Self { value, partials: [Complex64::new(0.0, 0.0); REAL_DIM] }
    }

    /// The complex coordinate whose real part is real slot `re_slot` and whose
    /// imaginary part is real slot `re_slot + 1`.
    pub fn complex_variable(value: Complex64, re_slot: usize) -> Self {
        let mut partials = [Complex64::new(0.0, 0.0); REAL_DIM];
        partials[re_slot] = Complex64::new(1.0, 0.0);
        partials[re_slot + 1] = Complex64::new(0.0, 1.0);
        Self { value, partials }
    }

    fn map_partials(self, f: impl Fn(Complex64) -> Complex64) -> [Complex64; REAL_DIM] {
        let mut out = self.partials;
        for p in out.iter_mut() {
            *p = f(*p);
        }
        out
    }
}

impl Add for Jet6 {
    type Output = Jet6;

    fn add(self, rhs: Jet6) -> Jet6 {
        let mut partials = self.partials;
        for (p, q) in partials.iter_mut().zip(rhs.partials) {
            *p += q;
        }
        Jet6 { value: self.value + rhs.value, partials }
    }
}

impl Sub for Jet6 {
    type Output = Jet6;

    fn sub(self, rhs: Jet6) -> Jet6 {
        let mut partials = self.partials;
        for (p, q) in partials.iter_mut().zip(rhs.partials) {
            *p -= q;
        }
        Jet6 { value: self.value - rhs.value, partials }
    }
}

impl Mul for Jet6 {
    type Output = Jet6;

    fn mul(self, rhs: Jet6) -> Jet6 {
        let mut partials = [Complex64::new(0.0, 0.0); REAL_DIM];
        for (k, p) in partials.iter_mut().enumerate() {
            *p = self.partials[k] * rhs.value + self.value * rhs.partials[k];
        }
        Jet6 { value: self.value * rhs.value, partials }
    }
}

impl Div for Jet6 {
    type Output = Jet6;

    fn div(self, rhs: Jet6) -> Jet6 {
        debug_assert!(rhs.value != Complex64::new(0.0, 0.0), "jet division by zero");
        let inv = rhs.value.inv();
        let value = self.value * inv;
        let mut partials = [Complex64::new(0.0, 0.0); REAL_DIM];
        for (k, p) in partials.iter_mut().enumerate() {
            // (f/g)' = (f' - (f/g) g') / g
            *p = (self.partials[k] - value * rhs.partials[k]) * inv;
        }
        Jet6 { value, partials }
    }
}

impl Neg for Jet6 {
    type Output = Jet6;

    fn neg(self) -> Jet6 {
        Jet6 { value: -self.value, partials: self.map_partials(|p| -p) }
    }
}

impl Scalar for Jet6 {
    fn constant(c: Complex64) -> Self {
        Jet6::constant(c)
    }

    // The coordinates are real, so conjugation commutes with each partial.
    fn conj(self) -> Self {
        Jet6 { value: self.value.conj(), partials: self.map_partials(|p| p.conj()) }
    }

    fn re(self) -> Self {
        Jet6 {
            value: Complex64::new(self.value.re, 0.0),
            partials: self.map_partials(|p| Complex64::new(p.re, 0.0)),
        }
    }

    fn im(self) -> Self {
        Jet6 {
            value: Complex64::new(self.value.im, 0.0),
            partials: self.map_partials(|p| Complex64::new(p.im, 0.0)),
        }
    }

    fn value(&self) -> Complex64 {
        self.value
    }
}
