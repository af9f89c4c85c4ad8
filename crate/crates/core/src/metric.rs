//! The natural hermitian metric on the cover `ℂ × ℍ × ℍ` in closed form.
//!
//! With `v = Im α`, `t = Im s`, `y = Im z` the four blocks are
//!
//! ```text
//! g_fiber = (α − ᾱ)/(s − s̄)          = v/t
//! g_l2    = (i/2) / (α − ᾱ)           = 1/(4v)
//! g_wp    = (i/2)(α − ᾱ)/(s − s̄)²     = v/(4t²)
//! a       = −(z − z̄)/(s − s̄)          = −y/t
//! ```
//!
//! and the metric is the fiber block plus the Weil–Petersson block carried
//! along the lift `∂/∂s − a ∂/∂z`, with the Kähler-cone block orthogonal:
//!
//! ```text
//! [ g      0     g·ā          ]
//! [ 0      g_l2  0            ]
//! [ a·g    0     g_wp + a·g·ā ]
//! ```

use num_complex::Complex64;

use crate::calculus::{MetricField, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{HermitianMatrix3, TotalSpacePoint};

/// The four scalar blocks of the metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricBlocks<T = Complex64> {
    pub g_fiber: T,
    pub g_l2: T,
    pub g_wp: T,
    pub a: T,
}

pub fn blocks_of<T: Scalar>([z, alpha, s]: [T; 3]) -> MetricBlocks<T> {
    let half_i = T::constant(Complex64::new(0.0, 0.5));
    let da = alpha - alpha.conj();
    let ds = s - s.conj();
    let dz = z - z.conj();
    MetricBlocks {
        g_fiber: da / ds,
        g_l2: half_i / da,
        g_wp: half_i * da / (ds * ds),
        a: -(dz / ds),
    }
}

pub fn assembled<T: Scalar>(b: &MetricBlocks<T>) -> [[T; 3]; 3] {
    let zero = T::zero();
    let g = b.g_fiber;
    [
        [g, zero, g * b.a.conj()],
        [zero, b.g_l2, zero],
        [b.a * g, zero, b.g_wp + b.a * g * b.a.conj()],
    ]
}

pub fn blocks(p: &TotalSpacePoint) -> MetricBlocks {
    blocks_of(p.coords())
}

pub fn metric(p: &TotalSpacePoint) -> HermitianMatrix3 {
    NaturalMetric.at(p)
}

/// Builds the metric from its blocks, rejecting non-positive diagonal blocks.
pub fn assemble_metric(b: &MetricBlocks) -> Result<HermitianMatrix3> {
    for (block, value) in [("g_fiber", b.g_fiber), ("g_l2", b.g_l2), ("g_wp", b.g_wp)] {
        if !(value.re > 0.0) {
            return Err(Error::Positivity { block, value: value.re });
        }
    }
    Ok(HermitianMatrix3::from_rows(assembled(b)))
}

/// Volume of the fiber `X_s` for the class `α`.
pub fn volume(p: &TotalSpacePoint) -> f64 {
    p.alpha().im
}

pub fn normalized_metric(p: &TotalSpacePoint) -> HermitianMatrix3 {
    NormalizedMetric.at(p)
}

/// The metric field `ω`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaturalMetric;

impl MetricField for NaturalMetric {
    fn eval<T: Scalar>(&self, coords: [T; 3]) -> [[T; 3]; 3] {
        assembled(&blocks_of(coords))
    }
}

/// The volume-normalized field `ω_U = ω / Im α`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NormalizedMetric;

impl MetricField for NormalizedMetric {
    fn eval<T: Scalar>(&self, coords: [T; 3]) -> [[T; 3]; 3] {
        let vol = coords[1].im();
        let mut h = assembled(&blocks_of(coords));
        for row in h.iter_mut() {
            for e in row.iter_mut() {
                *e = *e / vol;
            }
        }
        h
    }
}

/// A field with the same coefficients everywhere.
#[derive(Debug, Clone, Copy)]
pub struct ConstantMetric(pub HermitianMatrix3);

impl MetricField for ConstantMetric {
    fn eval<T: Scalar>(&self, _coords: [T; 3]) -> [[T; 3]; 3] {
        let mut out = [[T::zero(); 3]; 3];
        for (j, row) in out.iter_mut().enumerate() {
            for (k, e) in row.iter_mut().enumerate() {
                *e = T::constant(self.0.get(j, k));
            }
        }
        out
    }
}
