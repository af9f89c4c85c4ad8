//! Frozen reference values and a finite-difference reconstruction of dω that
//! shares nothing with the jet arithmetic.

use num_complex::Complex64;

use kahler_fiber::calculus::forms::{
    antiholomorphic, holomorphic, DALPHA, DALPHA_BAR, DS, DS_BAR, DZ, DZ_BAR,
};
use kahler_fiber::calculus::{
    exterior_derivative_omega, kahler_defect, restrict, FiberKind, MetricField,
};
use kahler_fiber::geometry::{Coord, HermitianMatrix3, TotalSpacePoint};
use kahler_fiber::metric::{NaturalMetric, NormalizedMetric};
use kahler_fiber::verify::{sample_points, SamplerConfig};

const STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p0() -> TotalSpacePoint {
    TotalSpacePoint::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0)).unwrap()
}

/// Wirtinger derivatives of every metric entry by central differences:
/// `[holomorphic, antiholomorphic][coordinate]` of a 3×3 array.
fn fd_wirtinger<F: MetricField>(field: &F, p: &TotalSpacePoint) -> [[[[Complex64; 3]; 3]; 3]; 2] {
    let at = |slot: usize, delta: f64| -> HermitianMatrix3 {
        let mut x = p.real_coords();
        x[slot] += delta;
        field.at(&TotalSpacePoint::from_real(x).unwrap())
    };
    let mut out = [[[[Complex64::new(0.0, 0.0); 3]; 3]; 3]; 2];
    for coord in 0..3 {
        let (re_p, re_m) = (at(2 * coord, STEP), at(2 * coord, -STEP));
        let (im_p, im_m) = (at(2 * coord + 1, STEP), at(2 * coord + 1, -STEP));
        for j in 0..3 {
            for k in 0..3 {
                let d_re = (re_p.get(j, k) - re_m.get(j, k)) / (2.0 * STEP);
                let d_im = (im_p.get(j, k) - im_m.get(j, k)) / (2.0 * STEP);
                let i = Complex64::i();
                out[0][coord][j][k] = 0.5 * (d_re - i * d_im);
                out[1][coord][j][k] = 0.5 * (d_re + i * d_im);
            }
        }
    }
    out
}

fn check_against_fd<F: MetricField>(field: &F, p: &TotalSpacePoint) {
    let d = fd_wirtinger(field, p);
    let form = exterior_derivative_omega(field, p);
    let i = Complex64::i();
    let scale = d.iter().flatten().flatten().flatten().map(|e| e.norm()).fold(1.0, f64::max);
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                let (ca, cb, ck) = (Coord::from_index(a), Coord::from_index(b), Coord::from_index(k));
                if a != b {
                    // dz_a ∧ dz_b ∧ dz̄_k
                    let expected = i * (d[0][a][b][k] - d[0][b][a][k]);
                    let got = form.coefficient(holomorphic(ca), holomorphic(cb), antiholomorphic(ck));
                    assert!((got - expected).norm() <= FD_TOL * scale, "({a},{b},{k}̄): {got} vs {expected} at {p:?}");
                    // dz_k ∧ dz̄_a ∧ dz̄_b
                    let expected = i * (d[1][b][k][a] - d[1][a][k][b]);
                    let got = form.coefficient(holomorphic(ck), antiholomorphic(ca), antiholomorphic(cb));
                    assert!((got - expected).norm() <= FD_TOL * scale, "({k},{a}̄,{b}̄): {got} vs {expected} at {p:?}");
                }
            }
        }
    }
    for t in [[DZ, DALPHA, DS], [DZ_BAR, DALPHA_BAR, DS_BAR]] {
        assert_eq!(form.coefficient(t[0], t[1], t[2]).norm(), 0.0);
    }
}

#[test]
fn d_omega_matches_finite_differences() {
    let points = sample_points(&SamplerConfig::new(7, 200)).unwrap();
    for p in &points {
        check_against_fd(&NaturalMetric, p);
        check_against_fd(&NormalizedMetric, p);
    }
}

#[test]
fn d_omega_reference_values() {
    let form = exterior_derivative_omega(&NaturalMetric, &p0());
    let close = |a: Complex64, b: f64| (a - b).norm() <= 1e-15;
    assert!(close(form.coefficient(DZ, DZ_BAR, DALPHA), 0.5));
    assert!(close(form.coefficient(DZ, DZ_BAR, DALPHA_BAR), -0.5));
    assert!(close(form.coefficient(DALPHA, DS, DS_BAR), 0.125));
    assert!(close(form.coefficient(DALPHA_BAR, DS, DS_BAR), -0.125));
    assert_eq!(form.coefficient(DZ, DZ_BAR, DS).norm(), 0.0);
    assert_eq!(form.coefficient(DZ, DZ_BAR, DS_BAR).norm(), 0.0);
    assert_eq!(form.nonzero_terms(1e-14).count(), 4);
    assert!((kahler_defect(&NaturalMetric, &p0(), &Coord::ALL) - 0.5).abs() <= 1e-15);

    let p = TotalSpacePoint::new(c(0.3, 0.2), c(-0.5, 2.0), c(1.0, 0.5)).unwrap();
    let coeff = exterior_derivative_omega(&NaturalMetric, &p).coefficient(DZ, DZ_BAR, DALPHA);
    assert!((coeff - 1.0).norm() <= 1e-14);
}

#[test]
fn fiber_restrictions() {
    let nu = restrict(&NormalizedMetric, FiberKind::Nu, &p0());
    assert!((nu[(0, 0)] - 1.0).norm() <= 1e-15 && (nu[(1, 1)] - 0.25).norm() <= 1e-15);
    assert_eq!(nu[(0, 1)].norm() + nu[(1, 0)].norm(), 0.0);

    let q = TotalSpacePoint::new(c(0.0, 1.0), c(0.0, 1.0), c(0.0, 1.0)).unwrap();
    let eta = restrict(&NormalizedMetric, FiberKind::Eta, &q);
    let expected = [[1.0, -1.0], [-1.0, 1.25]];
    for (j, row) in expected.iter().enumerate() {
        for (k, &e) in row.iter().enumerate() {
            assert!((eta[(j, k)] - e).norm() <= 1e-15, "({j},{k}) = {}", eta[(j, k)]);
        }
    }
}

#[test]
fn normalized_metric_splits_off_the_alpha_plane() {
    // ω_U has no α-dependence outside its (α, ᾱ) entry, so dω_U = 0 on the whole cover.
    for p in &sample_points(&SamplerConfig::new(11, 500)).unwrap() {
        assert!(kahler_defect(&NormalizedMetric, p, &Coord::ALL) <= 1e-10);
        assert!(kahler_defect(&NaturalMetric, p, &Coord::ALL) > 0.0);
    }
}
