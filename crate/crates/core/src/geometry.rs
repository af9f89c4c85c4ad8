//! Points of the cover `ℂ × ℍ × ℍ`, hermitian coefficient matrices, and the
//! conversions between the complex and real pictures.
//!
//! Coordinates are always ordered `(z, α, s)` in the complex picture and
//! `(x, y, Re α, Im α, σ, t)` in the real one. A hermitian matrix `h` stands
//! for the form `ω = i Σ h_{jk̄} dz_j ∧ dz̄_k`; its Riemannian metric is
//! `G(v, w) = Re Σ h_{jk̄} v_j conj(w_k)` with `v_j = a_j + i b_j`.

use nalgebra::{Matrix3, Matrix6, SymmetricEigen};
use num_complex::Complex64;

use crate::calculus::jet::Jet6;
use crate::error::{Error, Param, Result};

/// Tolerance for conjugate-symmetry of metric coefficient matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Tolerance above which [`to_real_metric`] rejects its input.
pub const REAL_METRIC_SYMMETRY_TOL: f64 = 1e-10;

/// One of the three complex coordinates of the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Z,
    Alpha,
    S,
}

impl Coord {
    pub const ALL: [Coord; 3] = [Coord::Z, Coord::Alpha, Coord::S];

    pub fn index(self) -> usize {
        match self {
            Coord::Z => 0,
            Coord::Alpha => 1,
            Coord::S => 2,
        }
    }

    /// Slot of the real part in the real coordinate order; the imaginary part
    /// follows immediately.
    pub fn real_slot(self) -> usize {
        2 * self.index()
    }

    pub fn from_index(i: usize) -> Coord {
        Coord::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::Z => "z",
            Coord::Alpha => "alpha",
            Coord::S => "s",
        }
    }
}

/// A point `(z, α, s)` of the universal cover of the fiber product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalSpacePoint {
    z: Complex64,
    alpha: Complex64,
    s: Complex64,
}

impl TotalSpacePoint {
    pub fn new(z: Complex64, alpha: Complex64, s: Complex64) -> Result<Self> {
        if !(alpha.im > 0.0) {
            return Err(Error::Domain { param: Param::Alpha, im: alpha.im });
        }
        if !(s.im > 0.0) {
            return Err(Error::Domain { param: Param::S, im: s.im });
        }
        Ok(Self { z, alpha, s })
    }

    /// Builds a point from `(x, y, Re α, Im α, σ, t)`.
    pub fn from_real(coords: [f64; 6]) -> Result<Self> {
        Self::new(
            Complex64::new(coords[0], coords[1]),
            Complex64::new(coords[2], coords[3]),
            Complex64::new(coords[4], coords[5]),
        )
    }

    /// For maps known to preserve the domain.
    pub(crate) fn new_unchecked(z: Complex64, alpha: Complex64, s: Complex64) -> Self {
        debug_assert!(alpha.im > 0.0 && s.im > 0.0);
        Self { z, alpha, s }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn x(&self) -> f64 {
        self.z.re
    }

    pub fn y(&self) -> f64 {
        self.z.im
    }

    pub fn sigma(&self) -> f64 {
        self.s.re
    }

    pub fn t(&self) -> f64 {
        self.s.im
    }

    /// `Im α`.
    pub fn v(&self) -> f64 {
        self.alpha.im
    }

    pub fn coord(&self, c: Coord) -> Complex64 {
        self.coords()[c.index()]
    }

    pub fn coords(&self) -> [Complex64; 3] {
        [self.z, self.alpha, self.s]
    }

    pub fn real_coords(&self) -> [f64; 6] {
        [self.z.re, self.z.im, self.alpha.re, self.alpha.im, self.s.re, self.s.im]
    }

    /// The three coordinates as seeded jets.
    pub fn jets(&self) -> [Jet6; 3] {
        [
            Jet6::complex_variable(self.z, Coord::Z.real_slot()),
            Jet6::complex_variable(self.alpha, Coord::Alpha.real_slot()),
            Jet6::complex_variable(self.s, Coord::S.real_slot()),
        ]
    }

    /// Max modulus of the coordinate differences.
    pub fn distance(&self, other: &TotalSpacePoint) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficients `h_{jk̄}` of a (1,1)-form in the `(z, α, s)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix3(pub Matrix3<Complex64>);

impl HermitianMatrix3 {
    /// Wraps a matrix without checking conjugate-symmetry.
    pub fn new(m: Matrix3<Complex64>) -> Self {
        Self(m)
    }

    pub fn try_new(m: Matrix3<Complex64>) -> Result<Self> {
        let h = Self(m);
        let deviation = h.symmetry_error();
        if deviation > HERMITIAN_TOL {
            return Err(Error::Symmetry { deviation, tolerance: HERMITIAN_TOL });
        }
        Ok(h)
    }

    pub fn from_rows(rows: [[Complex64; 3]; 3]) -> Self {
        Self(Matrix3::from_fn(|j, k| rows[j][k]))
    }

    pub fn from_real_rows(rows: [[f64; 3]; 3]) -> Self {
        Self(Matrix3::from_fn(|j, k| Complex64::new(rows[j][k], 0.0)))
    }

    pub fn diag(d: [f64; 3]) -> Self {
        Self(Matrix3::from_fn(|j, k| {
            if j == k {
                Complex64::new(d[j], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn zeros() -> Self {
        Self(Matrix3::zeros())
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.0[(j, k)]
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.0
    }

    /// `max |h(k,j) - conj(h(j,k))|`.
    pub fn symmetry_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for j in 0..3 {
            for k in j..3 {
                err = err.max((self.0[(k, j)] - self.0[(j, k)].conj()).norm());
            }
        }
        err
    }

    /// Eigenvalues in ascending order. Uses the hermitian part, so the result
    /// is real even when the input is only approximately hermitian.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let herm = (self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        let mut vals = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.symmetry_error() <= HERMITIAN_TOL && self.min_eigenvalue() > 0.0
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0 * Complex64::new(factor, 0.0))
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix3) -> f64 {
        (self.0 - other.0).iter().map(|d| d.norm()).fold(0.0, f64::max)
    }
}

/// A real symmetric 6×6 metric in the `(x, y, Re α, Im α, σ, t)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMetric6(pub Matrix6<f64>);

impl RealMetric6 {
    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    pub fn symmetry_error(&self) -> f64 {
        (self.0 - self.0.transpose()).abs().max()
    }

    pub fn eigenvalues(&self) -> [f64; 6] {
        let sym = (self.0 + self.0.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut vals = [0.0; 6];
        vals.copy_from_slice(eig.eigenvalues.as_slice());
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn max_abs_diff(&self, other: &RealMetric6) -> f64 {
        (self.0 - other.0).abs().max()
    }
}

/// Complex Jacobian `J(l, j) = ∂F_l/∂z_j` of a holomorphic self-map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexJacobian3(pub Matrix3<Complex64>);

impl ComplexJacobian3 {
    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    pub fn from_rows(rows: [[Complex64; 3]; 3]) -> Self {
        Self(Matrix3::from_fn(|j, k| rows[j][k]))
    }

    pub fn get(&self, l: usize, j: usize) -> Complex64 {
        self.0[(l, j)]
    }

    /// Chain rule: the Jacobian of `F ∘ G` is `J_F · J_G`.
    pub fn compose(&self, inner: &ComplexJacobian3) -> Self {
        Self(self.0 * inner.0)
    }

    /// Replaces each entry `a + bi` by the block `[[a, -b], [b, a]]`.
    pub fn realify(&self) -> Matrix6<f64> {
        Matrix6::from_fn(|r, c| {
            let e = self.0[(r / 2, c / 2)];
            match (r % 2, c % 2) {
                (0, 0) | (1, 1) => e.re,
                (0, 1) => -e.im,
                _ => e.im,
            }
        })
    }
}

fn i_pow(p: usize) -> Complex64 {
    if p == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    }
}

/// The Riemannian metric `Re h` in real coordinates.
pub fn to_real_metric(h: &HermitianMatrix3) -> Result<RealMetric6> {
    let deviation = h.symmetry_error();
    if deviation > REAL_METRIC_SYMMETRY_TOL {
        return Err(Error::Symmetry { deviation, tolerance: REAL_METRIC_SYMMETRY_TOL });
    }
    Ok(RealMetric6(Matrix6::from_fn(|r, c| {
        (h.get(r / 2, c / 2) * i_pow(r % 2) * i_pow(c % 2).conj()).re
    })))
}

/// The 2-form `ω` in real coordinates: `Ω(v, w) = Im Σ h_{jk̄} v_j conj(w_k)`.
///
/// With `ω = i Σ h dz_j ∧ dz̄_k` one has `ω(v, w) = -2 Ω(v, w)`; only the
/// antisymmetric structure matters for pullback comparisons.
pub fn to_real_two_form(h: &HermitianMatrix3) -> Matrix6<f64> {
    Matrix6::from_fn(|r, c| (h.get(r / 2, c / 2) * i_pow(r % 2) * i_pow(c % 2).conj()).im)
}

/// `F*h` for a holomorphic `F` with Jacobian `j`, given `h` at `F(p)`.
pub fn pullback_holomorphic(h_at_image: &HermitianMatrix3, j: &ComplexJacobian3) -> HermitianMatrix3 {
    HermitianMatrix3(j.0.transpose() * h_at_image.0 * j.0.map(|e| e.conj()))
}

/// `Jrᵀ · G · Jr`.
pub fn pullback_real(g_at_image: &RealMetric6, jr: &Matrix6<f64>) -> RealMetric6 {
    RealMetric6(jr.transpose() * g_at_image.0 * jr)
}
