//! Deck transformations, the lifted `SL₂(ℤ)` action, the fibrations `ν` and
//! `η`, and the mirror map `φ`.

use nalgebra::{Matrix2, Matrix6};
use num_complex::Complex64;

use crate::calculus::{holomorphic_jacobian, real_jacobian, Jet6, MetricField, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{
    pullback_real, to_real_metric, to_real_two_form, ComplexJacobian3, TotalSpacePoint,
};
use crate::metric::NormalizedMetric;

/// `g_{n,m}(z, α, s) = (z + n + m s, α, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeckElement {
    pub n: i64,
    pub m: i64,
}

impl DeckElement {
    pub fn new(n: i64, m: i64) -> Self {
        Self { n, m }
    }

    /// `self ∘ other`; the group is abelian on each fiber.
    pub fn compose(&self, other: &DeckElement) -> DeckElement {
        DeckElement { n: self.n + other.n, m: self.m + other.m }
    }
}

pub fn deck_apply(g: &DeckElement, p: &TotalSpacePoint) -> TotalSpacePoint {
    let z = p.z() + g.n as f64 + p.s() * g.m as f64;
    TotalSpacePoint::new_unchecked(z, p.alpha(), p.s())
}

pub fn deck_jacobian(g: &DeckElement) -> ComplexJacobian3 {
    let mut j = ComplexJacobian3::identity();
    j.0[(0, 2)] = Complex64::new(g.m as f64, 0.0);
    j
}

/// An element `[[a, b], [c, d]]` of `SL₂(ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModularElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl ModularElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(Self { a, b, c, d })
    }

    pub const IDENTITY: ModularElement = ModularElement { a: 1, b: 0, c: 0, d: 1 };
    pub const T: ModularElement = ModularElement { a: 1, b: 1, c: 0, d: 1 };
    pub const S: ModularElement = ModularElement { a: 0, b: -1, c: 1, d: 0 };

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Matrix product `self · other`, acting as "apply `other`, then `self`".
    pub fn compose(&self, other: &ModularElement) -> ModularElement {
        ModularElement {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn word(letters: &[ModularElement]) -> ModularElement {
        letters.iter().fold(ModularElement::IDENTITY, |acc, g| acc.compose(g))
    }

    /// `(z, α, s) ↦ (z/(cs+d), α, (as+b)/(cs+d))`.
    pub fn apply_of<T: Scalar>(&self, [z, alpha, s]: [T; 3]) -> [T; 3] {
        let r = |k: i64| T::real(k as f64);
        let denom = r(self.c) * s + r(self.d);
        [z / denom, alpha, (r(self.a) * s + r(self.b)) / denom]
    }
}

pub fn modular_apply(g: &ModularElement, p: &TotalSpacePoint) -> TotalSpacePoint {
    let [z, alpha, s] = g.apply_of(p.coords());
    TotalSpacePoint::new_unchecked(z, alpha, s)
}

pub fn modular_jacobian(g: &ModularElement, p: &TotalSpacePoint) -> ComplexJacobian3 {
    let [_, _, c, d] = g.entries();
    let denom = p.s() * c as f64 + d as f64;
    let inv = denom.inv();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    ComplexJacobian3::from_rows([
        [inv, zero, -p.z() * c as f64 * inv * inv],
        [zero, one, zero],
        [zero, zero, inv * inv],
    ])
}

/// The same Jacobian obtained by differentiating [`ModularElement::apply_of`].
pub fn modular_jacobian_jets(g: &ModularElement, p: &TotalSpacePoint) -> ComplexJacobian3 {
    holomorphic_jacobian(|c: [Jet6; 3]| g.apply_of(c), p)
}

/// `ν`: the complex-structure parameter.
pub fn nu_projection(p: &TotalSpacePoint) -> Complex64 {
    p.s()
}

/// `η`: the Kähler parameter in the trivialisation of the cone bundle.
pub fn eta_projection(p: &TotalSpacePoint) -> Complex64 {
    p.alpha()
}

/// An ℝ-linear endomorphism of `ℂ ≅ ℝ²` in the basis `(1, i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealLinearMap(pub Matrix2<f64>);

impl RealLinearMap {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let v = self.0 * nalgebra::Vector2::new(z.re, z.im);
        Complex64::new(v[0], v[1])
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }
}

/// The ℝ-linear map sending the basis `(1, s)` to `(1, α)`.
#[allow(non_snake_case)]
pub fn real_linear_L(alpha: Complex64, s: Complex64) -> Result<RealLinearMap> {
    if s.im == 0.0 || alpha.im == 0.0 {
        return Err(Error::DegenerateBasis);
    }
    let shift = (alpha.re - s.re) / s.im;
    Ok(RealLinearMap(Matrix2::new(1.0, shift, 0.0, alpha.im / s.im)))
}

/// `L(α, s)(z)` as `u + w α` where `z = u + w s` with `u, w` real.
pub fn apply_l_of<T: Scalar>(z: T, alpha: T, s: T) -> T {
    let w = z.im() / s.im();
    let u = z.re() - s.re() * w;
    u + w * alpha
}

pub fn mirror_of<T: Scalar>([z, alpha, s]: [T; 3]) -> [T; 3] {
    [apply_l_of(z, alpha, s), s, alpha]
}

/// `φ(z, α, s) = (L(α, s)(z), s, α)`.
pub fn mirror_map(p: &TotalSpacePoint) -> TotalSpacePoint {
    let [z, alpha, s] = mirror_of(p.coords());
    TotalSpacePoint::new_unchecked(z, alpha, s)
}

pub fn mirror_jacobian_real(p: &TotalSpacePoint) -> Matrix6<f64> {
    real_jacobian(|c: [Jet6; 3]| mirror_of(c), p)
}

/// `max |Jrᵀ G_U(φ(p)) Jr − G_U(p)|` with `G_U = Re ω_U`.
pub fn mirror_isometry_defect(p: &TotalSpacePoint) -> f64 {
    let jr = mirror_jacobian_real(p);
    let here = to_real_metric(&NormalizedMetric.at(p)).expect("metric is hermitian");
    let there = to_real_metric(&NormalizedMetric.at(&mirror_map(p))).expect("metric is hermitian");
    pullback_real(&there, &jr).max_abs_diff(&here)
}

/// `max |φ*ω_U − ω_U|` comparing `ω_U` as a real 2-form.
pub fn mirror_form_defect(p: &TotalSpacePoint) -> f64 {
    let jr = mirror_jacobian_real(p);
    let here = to_real_two_form(&NormalizedMetric.at(p));
    let there = to_real_two_form(&NormalizedMetric.at(&mirror_map(p)));
    (jr.transpose() * there * jr - here).abs().max()
}

/// Coordinate distance between `φ(g·p)` and `g·φ(p)`.
pub fn mirror_commutator_distance(g: &ModularElement, p: &TotalSpacePoint) -> f64 {
    let a = mirror_map(&modular_apply(g, p));
    let b = modular_apply(g, &mirror_map(p));
    a.distance(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pullback_holomorphic;
    use crate::metric::metric;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(z: Complex64, a: Complex64, s: Complex64) -> TotalSpacePoint {
        TotalSpacePoint::new(z, a, s).unwrap()
    }

    fn p0() -> TotalSpacePoint {
        pt(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0))
    }

    #[test]
    fn deck_examples() {
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        assert_eq!(deck_apply(&DeckElement::new(0, 0), &p), p);
        assert_eq!(deck_apply(&DeckElement::new(1, 1), &p0()).coords(), [c(1.0, 1.0), c(0.0, 1.0), c(0.0, 1.0)]);
        let q = deck_apply(&DeckElement::new(2, -1), &pt(c(0.0, 1.0), c(0.0, 1.0), c(0.0, 2.0)));
        assert_eq!(q.z(), c(2.0, -1.0));
    }

    #[test]
    fn deck_jacobian_examples() {
        assert_eq!(deck_jacobian(&DeckElement::new(4, 0)), ComplexJacobian3::identity());
        let j = deck_jacobian(&DeckElement::new(0, 1));
        assert_eq!(j.get(0, 2), c(1.0, 0.0));
        let j = deck_jacobian(&DeckElement::new(3, -2));
        assert_eq!(j.get(0, 2), c(-2.0, 0.0));
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        let g = DeckElement::new(3, -2);
        let jets = holomorphic_jacobian(
            |[z, a, s]: [Jet6; 3]| [z + Jet6::real(3.0) + s * Jet6::real(-2.0), a, s],
            &p,
        );
        assert_eq!(jets, deck_jacobian(&g));
    }

    #[test]
    fn modular_element_requires_unit_determinant() {
        assert!(ModularElement::new(2, 1, 1, 1).is_ok());
        assert_eq!(ModularElement::new(2, 0, 0, 1), Err(Error::NotUnimodular { det: 2 }));
        assert_eq!(ModularElement::S.compose(&ModularElement::S), ModularElement::new(-1, 0, 0, -1).unwrap());
    }

    #[test]
    fn modular_apply_examples() {
        let q = modular_apply(&ModularElement::T, &p0());
        assert_eq!(q.coords(), [c(0.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)]);
        let q = modular_apply(&ModularElement::S, &pt(c(0.0, 1.0), c(0.0, 1.0), c(0.0, 2.0)));
        assert!((q.z() - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(q.alpha(), c(0.0, 1.0));
        assert!((q.s() - c(0.0, 0.5)).norm() < 1e-15);
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        assert_eq!(modular_apply(&ModularElement::IDENTITY, &p), p);
    }

    #[test]
    fn modular_jacobian_examples() {
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        assert_eq!(modular_jacobian(&ModularElement::T, &p), ComplexJacobian3::identity());
        let q = pt(c(0.0, 1.0), c(0.0, 1.0), c(0.0, 2.0));
        let j = modular_jacobian(&ModularElement::S, &q);
        assert!((j.get(0, 0) - c(0.0, -0.5)).norm() < 1e-15);
        assert!((j.get(0, 2) - c(0.0, 0.25)).norm() < 1e-15);
        assert!((j.get(2, 2) - c(-0.25, 0.0)).norm() < 1e-15);
        for g in [ModularElement::S, ModularElement::T, ModularElement::new(2, 1, 1, 1).unwrap()] {
            let diff = (modular_jacobian(&g, &p).0 - modular_jacobian_jets(&g, &p).0)
                .iter()
                .map(|e| e.norm())
                .fold(0.0, f64::max);
            assert!(diff <= 1e-12);
        }
    }

    #[test]
    fn modular_invariance_at_a_point() {
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        for g in [ModularElement::S, ModularElement::T, ModularElement::new(3, 2, 4, 3).unwrap()] {
            let pulled = pullback_holomorphic(&metric(&modular_apply(&g, &p)), &modular_jacobian(&g, &p));
            assert!(pulled.max_abs_diff(&metric(&p)) <= 1e-12);
        }
    }

    #[test]
    fn projections() {
        assert_eq!((nu_projection(&p0()), eta_projection(&p0())), (c(0.0, 1.0), c(0.0, 1.0)));
        let p = pt(c(0.0, 1.0), c(0.0, 2.0), c(0.0, 3.0));
        assert_eq!((nu_projection(&p), eta_projection(&p)), (c(0.0, 3.0), c(0.0, 2.0)));
        let q = deck_apply(&DeckElement::new(-3, 4), &p);
        assert_eq!(nu_projection(&q), nu_projection(&p));
    }

    #[test]
    fn real_linear_map_examples() {
        let l = real_linear_L(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
        assert_eq!(l.0, Matrix2::identity());
        let l = real_linear_L(c(0.0, 2.0), c(0.0, 1.0)).unwrap();
        assert_eq!(l.apply(c(0.0, 1.0)), c(0.0, 2.0));
        let (alpha, s) = (c(-1.2, 0.4), c(0.7, 2.3));
        let l = real_linear_L(alpha, s).unwrap();
        assert_eq!(l.apply(c(1.0, 0.0)), c(1.0, 0.0));
        assert!((l.apply(s) - alpha).norm() < 1e-15);
        assert!((l.apply(c(0.3, -0.8)) - apply_l_of(c(0.3, -0.8), alpha, s)).norm() < 1e-15);
        assert_eq!(real_linear_L(c(0.0, 1.0), c(1.0, 0.0)), Err(Error::DegenerateBasis));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror_map(&p0()), p0());
        let q = mirror_map(&pt(c(0.0, 1.0), c(0.0, 1.0), c(0.0, 2.0)));
        assert!((q.z() - c(0.0, 0.5)).norm() < 1e-15);
        assert_eq!((q.alpha(), q.s()), (c(0.0, 2.0), c(0.0, 1.0)));
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        assert!(mirror_map(&mirror_map(&p)).distance(&p) <= 1e-15);
    }

    #[test]
    fn mirror_jacobian_at_fixed_point() {
        let jr = mirror_jacobian_real(&p0());
        let perm = [0usize, 1, 4, 5, 2, 3];
        let expected = Matrix6::from_fn(|r, c| if perm[r] == c { 1.0 } else { 0.0 });
        assert_eq!(jr, expected);
    }

    #[test]
    fn mirror_jacobian_matches_finite_differences() {
        let p = pt(c(0.3, 0.2), c(1.0, 2.0), c(-0.5, 0.8));
        let jr = mirror_jacobian_real(&p);
        assert!(jr.determinant().abs() > 0.0);
        let h = 1e-6;
        let base = p.real_coords();
        for col in 0..6 {
            let mut plus = base;
            let mut minus = base;
            plus[col] += h;
            minus[col] -= h;
            let fp = mirror_map(&TotalSpacePoint::from_real(plus).unwrap()).real_coords();
            let fm = mirror_map(&TotalSpacePoint::from_real(minus).unwrap()).real_coords();
            for row in 0..6 {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                assert!((fd - jr[(row, col)]).abs() <= 1e-6, "({row},{col})");
            }
        }
    }

    #[test]
    fn mirror_is_isometric_on_the_parameter_block_only() {
        // The (α, s) part of G_U is exchanged exactly; the z–z block picks up
        // Lᵀ L, which is conformal only when L is complex-linear (α = s).
        let p = pt(c(0.0, 0.0), c(0.5, 2.0), c(-0.2, 0.7));
        let jr = mirror_jacobian_real(&p);
        let here = to_real_metric(&NormalizedMetric.at(&p)).unwrap();
        let there = to_real_metric(&NormalizedMetric.at(&mirror_map(&p))).unwrap();
        let pulled = pullback_real(&there, &jr);
        for r in 2..6 {
            for col in 2..6 {
                assert!((pulled.0[(r, col)] - here.0[(r, col)]).abs() <= 1e-12);
            }
        }
        assert!(mirror_isometry_defect(&p) > 0.1);
        assert!(mirror_isometry_defect(&p0()) <= 1e-15);
        let diag = pt(c(0.4, -0.3), c(0.1, 1.7), c(0.1, 1.7));
        assert!(mirror_isometry_defect(&diag) <= 1e-12);
    }

    #[test]
    fn mirror_preserves_the_two_form() {
        let p = pt(c(0.3, 0.4), c(0.5, 2.0), c(-0.2, 0.7));
        assert!(mirror_form_defect(&p) <= 1e-12);
    }

    #[test]
    fn mirror_does_not_commute_with_s() {
        let p = pt(c(0.3, 0.4), c(0.5, 2.0), c(-0.2, 0.7));
        assert!(mirror_commutator_distance(&ModularElement::S, &p) > 1e-3);
        assert!(mirror_commutator_distance(&ModularElement::IDENTITY, &p) <= 1e-15);
    }
}
