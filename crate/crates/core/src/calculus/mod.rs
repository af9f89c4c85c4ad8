//! Differentiation on the cover: Wirtinger derivatives of jets, the Kähler
//! defect of a hermitian form, its restriction to fibers, and Jacobians of
//! coordinate maps.

pub mod forms;
pub mod jet;

use nalgebra::{Matrix2, Matrix6};
use num_complex::Complex64;

use crate::geometry::{ComplexJacobian3, Coord, HermitianMatrix3, TotalSpacePoint};
pub use forms::{exterior_derivative_omega, ThreeForm};
pub use jet::{Jet6, Scalar};

/// A field of hermitian coefficient matrices `h_{jk̄}` on the cover, written
/// generically so it can be evaluated on values or on jets.
pub trait MetricField: Sync {
    fn eval<T: Scalar>(&self, coords: [T; 3]) -> [[T; 3]; 3];

    fn at(&self, p: &TotalSpacePoint) -> HermitianMatrix3 {
        HermitianMatrix3::from_rows(self.eval(p.coords()))
    }

    fn jets(&self, p: &TotalSpacePoint) -> [[Jet6; 3]; 3] {
        self.eval(p.jets())
    }
}

/// `∂/∂w = ½(∂_re − i ∂_im)` or, when `barred`, `∂/∂w̄ = ½(∂_re + i ∂_im)`.
pub fn wirtinger(j: &Jet6, coord: Coord, barred: bool) -> Complex64 {
    let re = j.partials[coord.real_slot()];
    let im = j.partials[coord.real_slot() + 1];
    let i = Complex64::new(0.0, 1.0);
    if barred {
        (re + i * im) * 0.5
    } else {
        (re - i * im) * 0.5
    }
}

/// The two holomorphic fibrations of the fiber product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberKind {
    /// Fibers of `ν`: `s` fixed, coordinates `(z, α)`.
    Nu,
    /// Fibers of `η`: `α` fixed, coordinates `(z, s)`.
    Eta,
}

impl FiberKind {
    pub fn active(self) -> [Coord; 2] {
        match self {
            FiberKind::Nu => [Coord::Z, Coord::Alpha],
            FiberKind::Eta => [Coord::Z, Coord::S],
        }
    }
}

/// The triple `(j, k, l)` realising a Kähler defect, with
/// `value = |∂h_{jk̄}/∂z_l − ∂h_{lk̄}/∂z_j|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectWitness {
    pub j: Coord,
    pub k: Coord,
    pub l: Coord,
    pub value: f64,
}

/// Largest violation of the Kähler symmetry `∂_l h_{jk̄} = ∂_j h_{lk̄}` over
/// the active coordinates.
pub fn kahler_defect_witness<F: MetricField>(
    field: &F,
    p: &TotalSpacePoint,
    active: &[Coord],
) -> Option<DefectWitness> {
    let h = field.jets(p);
    let mut worst: Option<DefectWitness> = None;
    for &j in active {
        for &k in active {
            for &l in active {
                if j >= l {
                    continue;
                }
                let lhs = wirtinger(&h[j.index()][k.index()], l, false);
                let rhs = wirtinger(&h[l.index()][k.index()], j, false);
                let value = (lhs - rhs).norm();
                if worst.is_none_or(|w| value > w.value) {
                    worst = Some(DefectWitness { j, k, l, value });
                }
            }
        }
    }
    worst
}

/// Zero exactly when the form restricted to the active coordinates is Kähler.
pub fn kahler_defect<F: MetricField>(field: &F, p: &TotalSpacePoint, active: &[Coord]) -> f64 {
    kahler_defect_witness(field, p, active).map_or(0.0, |w| w.value)
}

/// `dω` of the restricted form: the full `dω` with every term involving an
/// inactive differential removed.
pub fn exterior_derivative_restricted<F: MetricField>(
    field: &F,
    p: &TotalSpacePoint,
    active: &[Coord],
) -> ThreeForm {
    exterior_derivative_omega(field, p).restrict_to(active)
}

/// The coefficient sub-matrix on the fiber coordinates of `kind`.
pub fn restrict<F: MetricField>(field: &F, kind: FiberKind, p: &TotalSpacePoint) -> Matrix2<Complex64> {
    let h = field.at(p);
    let [a, b] = kind.active();
    Matrix2::new(
        h.get(a.index(), a.index()),
        h.get(a.index(), b.index()),
        h.get(b.index(), a.index()),
        h.get(b.index(), b.index()),
    )
}

/// Complex Jacobian of a holomorphic map written over [`Scalar`].
pub fn holomorphic_jacobian(
    map: impl Fn([Jet6; 3]) -> [Jet6; 3],
    p: &TotalSpacePoint,
) -> ComplexJacobian3 {
    let out = map(p.jets());
    let mut rows = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (l, row) in rows.iter_mut().enumerate() {
        for j in Coord::ALL {
            row[j.index()] = wirtinger(&out[l], j, false);
        }
    }
    ComplexJacobian3::from_rows(rows)
}

/// Largest `∂F_l/∂z̄_j` of a map; zero when the map is holomorphic.
pub fn antiholomorphic_part(map: impl Fn([Jet6; 3]) -> [Jet6; 3], p: &TotalSpacePoint) -> f64 {
    let out = map(p.jets());
    let mut worst: f64 = 0.0;
    for f in &out {
        for j in Coord::ALL {
            worst = worst.max(wirtinger(f, j, true).norm());
        }
    }
    worst
}

/// Real 6×6 Jacobian of an arbitrary smooth map of the cover.
pub fn real_jacobian(map: impl Fn([Jet6; 3]) -> [Jet6; 3], p: &TotalSpacePoint) -> Matrix6<f64> {
    let out = map(p.jets());
    Matrix6::from_fn(|r, c| {
        let d = out[r / 2].partials[c];
        if r % 2 == 0 {
            d.re
        } else {
            d.im
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> TotalSpacePoint {
        TotalSpacePoint::new(c(0.3, -0.7), c(1.1, 2.0), c(-0.4, 0.9)).unwrap()
    }

    #[test]
    fn wirtinger_of_coordinates() {
        let [z, _, s] = sample().jets();
        assert_eq!(wirtinger(&z, Coord::Z, false), c(1.0, 0.0));
        assert_eq!(wirtinger(&z, Coord::Z, true), c(0.0, 0.0));
        let zbar = z.conj();
        assert_eq!(wirtinger(&zbar, Coord::Z, false), c(0.0, 0.0));
        assert_eq!(wirtinger(&zbar, Coord::Z, true), c(1.0, 0.0));
        assert_eq!(wirtinger(&s.im(), Coord::S, false), c(0.0, -0.5));
        assert_eq!(wirtinger(&s.im(), Coord::S, true), c(0.0, 0.5));
        assert_eq!(wirtinger(&z, Coord::S, false), c(0.0, 0.0));
    }

    #[test]
    fn constant_field_is_closed() {
        let f = crate::metric::ConstantMetric(HermitianMatrix3::diag([1.0, 1.0, 1.0]));
        let p = sample();
        assert_eq!(exterior_derivative_omega(&f, &p), ThreeForm::zero());
        assert_eq!(kahler_defect(&f, &p, &Coord::ALL), 0.0);
    }

    #[test]
    fn jacobian_of_simple_maps() {
        let p = sample();
        let jac = holomorphic_jacobian(|[z, a, s]| [z * s, a, s], &p);
        assert_eq!(jac.get(0, 0), p.s());
        assert_eq!(jac.get(0, 2), p.z());
        assert_eq!(antiholomorphic_part(|[z, a, s]| [z * s, a, s], &p), 0.0);
        assert_eq!(antiholomorphic_part(|[z, a, s]| [z.conj(), a, s], &p), 1.0);

        let jr = real_jacobian(|[z, a, s]| [z, a, s], &p);
        assert_eq!(jr, Matrix6::identity());
    }
}
