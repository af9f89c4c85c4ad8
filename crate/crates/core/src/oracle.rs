//! First-principles reconstruction of the metric blocks for elliptic curves.
//!
//! On `X_s = ℂ/(ℤ ⊕ sℤ)` the Ricci-flat metric in the class
//! `(α/Im s)(i/2) dz∧dz̄` is the flat metric `λ |dz|²` with `λ = Im α/Im s`.
//! Harmonic forms are the constant-coefficient ones, and the L² products are
//! integrals of pointwise norms over a fundamental parallelogram. Pointwise
//! conventions for a flat coefficient `λ`:
//!
//! * `|∂/∂z|² = λ`, `|dz|² = |dz̄|² = 1/λ`, norms of decomposable tensors multiply;
//! * volume form `dV = λ (i/2) dz∧dz̄`, so `X_s` has volume `λ Im s = Im α`.
//!
//! Nothing here reads the closed-form blocks; agreement is checked by tests.

use num_complex::Complex64;

use crate::calculus::{wirtinger, Jet6, Scalar};
use crate::geometry::{Coord, TotalSpacePoint};

/// Default midpoint-rule grid size.
pub const DEFAULT_GRID: usize = 32;

/// Flat metric coefficient `λ` with `h(∂/∂z, ∂/∂z) = λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatMetricCoefficient {
    pub lambda: f64,
}

impl FlatMetricCoefficient {
    pub fn tangent_norm_sq(&self) -> f64 {
        self.lambda
    }

    pub fn cotangent_norm_sq(&self) -> f64 {
        1.0 / self.lambda
    }

    /// Density of `dV` against the Euclidean area `dx dy`.
    pub fn volume_density(&self) -> f64 {
        self.lambda
    }
}

/// The form `f · (i/2) dz∧dz̄` with constant coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicOneOneForm {
    pub f: Complex64,
}

impl HarmonicOneOneForm {
    /// `⟨φ, ψ⟩` pointwise: `f_φ conj(f_ψ) |i/2|² |dz|² |dz̄|²`.
    pub fn pointwise_inner(&self, other: &HarmonicOneOneForm, g: &FlatMetricCoefficient) -> Complex64 {
        self.f * other.f.conj() * 0.25 * g.cotangent_norm_sq() * g.cotangent_norm_sq()
    }
}

/// The `T_X`-valued (0,1)-form `c · dz̄ ⊗ ∂/∂z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KodairaSpencerRep {
    pub c: Complex64,
}

impl KodairaSpencerRep {
    pub fn pointwise_inner(&self, other: &KodairaSpencerRep, g: &FlatMetricCoefficient) -> Complex64 {
        self.c * other.c.conj() * g.cotangent_norm_sq() * g.tangent_norm_sq()
    }
}

/// The flat representative of the class `(α, s)`: `λ = Im α / Im s`.
pub fn ricci_flat_coefficient(alpha: Complex64, s: Complex64) -> FlatMetricCoefficient {
    FlatMetricCoefficient { lambda: alpha.im / s.im }
}

/// Midpoint rule for `∫ f dx dy` over the parallelogram `{u + w s : u, w ∈ [0, 1)}`,
/// where the integrand is given in the `(u, w)` parametrisation. The
/// parametrisation has area element `Im s du dw`.
pub fn fundamental_domain_integral(
    f: impl Fn(f64, f64) -> Complex64,
    s: Complex64,
    n: usize,
) -> Complex64 {
    let n = n.max(1);
    let h = 1.0 / n as f64;
    let mut re = NeumaierSum::default();
    let mut im = NeumaierSum::default();
    for a in 0..n {
        let u = (a as f64 + 0.5) * h;
        for b in 0..n {
            let w = (b as f64 + 0.5) * h;
            let val = f(u, w);
            re.add(val.re);
            im.add(val.im);
        }
    }
    let cells = (n * n) as f64;
    Complex64::new(re.total() / cells, im.total() / cells) * s.im
}

/// `‖∂/∂α‖²_{L²}` where `∂/∂α` is represented by `(1/Im s)(i/2) dz∧dz̄`.
pub fn l2_metric_oracle(alpha: Complex64, s: Complex64, n: usize) -> f64 {
    let g = ricci_flat_coefficient(alpha, s);
    let rep = HarmonicOneOneForm { f: Complex64::new(1.0 / s.im, 0.0) };
    let density = rep.pointwise_inner(&rep, &g) * g.volume_density();
    fundamental_domain_integral(|_, _| density, s, n).re
}

/// Harmonic representative of the Kodaira–Spencer class of `∂/∂s`.
pub fn kodaira_spencer_rep(s: Complex64) -> KodairaSpencerRep {
    KodairaSpencerRep { c: (s - s.conj()).inv() }
}

/// `‖ρ(∂/∂s)‖²_{L²}` for the flat metric of the class `(α, s)`.
pub fn wp_metric_oracle(alpha: Complex64, s: Complex64, n: usize) -> f64 {
    let g = ricci_flat_coefficient(alpha, s);
    let rep = kodaira_spencer_rep(s);
    let density = rep.pointwise_inner(&rep, &g) * g.volume_density();
    fundamental_domain_integral(|_, _| density, s, n).re
}

pub fn canonical_lift_coefficient_of<T: Scalar>(z: T, s: T) -> T {
    (z - z.conj()) / (s - s.conj())
}

/// Coefficient `c` of the harmonic lift `∂/∂s + c ∂/∂z`.
pub fn canonical_lift_coefficient(p: &TotalSpacePoint) -> Complex64 {
    canonical_lift_coefficient_of(p.z(), p.s())
}

/// `∂c/∂z̄` at `p`, the coefficient of `∂̄η` restricted to the fiber.
pub fn lift_dbar(p: &TotalSpacePoint) -> Complex64 {
    let [z, _, s] = p.jets();
    let c: Jet6 = canonical_lift_coefficient_of(z, s);
    wirtinger(&c, Coord::Z, true)
}

/// Largest deviation of `∂c/∂z̄` from the constant `1/(s̄ − s)` over `p` and a
/// 4×4 grid of fiber points `z + u + w s`. Zero exactly when `∂̄η` has constant
/// coefficient on the fiber, i.e. is harmonic for the flat metric.
pub fn lift_harmonicity_defect(p: &TotalSpacePoint) -> f64 {
    let expected = (p.s().conj() - p.s()).inv();
    let at_p = lift_dbar(p);
    let mut worst = (at_p - expected).norm();
    for a in 0..4 {
        for b in 0..4 {
            let (u, w) = (a as f64 * 0.25, b as f64 * 0.25);
            let q = TotalSpacePoint::new_unchecked(p.z() + u + p.s() * w, p.alpha(), p.s());
            let d = lift_dbar(&q);
            worst = worst.max((d - expected).norm()).max((d - at_p).norm());
        }
    }
    worst
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
