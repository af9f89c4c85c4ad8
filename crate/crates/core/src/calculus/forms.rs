//! Degree-3 forms on the cover and the exterior derivative of a hermitian form.

use std::fmt;

use num_complex::Complex64;

use super::{wirtinger, MetricField};
use crate::geometry::{Coord, TotalSpacePoint};

/// Index of a basis 1-form in the order `dz < dz̄ < dα < dᾱ < ds < ds̄`.
pub type Differential = usize;

pub const DZ: Differential = 0;
pub const DZ_BAR: Differential = 1;
pub const DALPHA: Differential = 2;
pub const DALPHA_BAR: Differential = 3;
pub const DS: Differential = 4;
pub const DS_BAR: Differential = 5;

const LABELS: [&str; 6] = ["dz", "dz̄", "dα", "dᾱ", "ds", "ds̄"];

pub fn holomorphic(c: Coord) -> Differential {
    2 * c.index()
}

pub fn antiholomorphic(c: Coord) -> Differential {
    2 * c.index() + 1
}

pub fn coord_of(d: Differential) -> Coord {
    Coord::from_index(d / 2)
}

pub fn label(d: Differential) -> &'static str {
    LABELS[d]
}

/// Sorts a triple into increasing order, returning the permutation sign, or
/// `None` when an index repeats.
pub fn canonical(mut t: [Differential; 3]) -> Option<([Differential; 3], f64)> {
    let mut sign = 1.0;
    for i in 0..3 {
        for j in 0..2 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if t[0] == t[1] || t[1] == t[2] {
        None
    } else {
        Some((t, sign))
    }
}

/// The 20 strictly increasing triples in lexicographic order.
pub fn basis() -> [[Differential; 3]; 20] {
    let mut out = [[0; 3]; 20];
    let mut n = 0;
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                out[n] = [a, b, c];
                n += 1;
            }
        }
    }
    out
}

fn basis_index(t: [Differential; 3]) -> usize {
    basis().iter().position(|b| *b == t).expect("canonical triple")
}

/// A complex 3-form `Σ c_I e_I` over the canonical basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeForm {
    coeffs: [Complex64; 20],
}

impl Default for ThreeForm {
    fn default() -> Self {
        Self::zero()
    }
}

impl ThreeForm {
    pub fn zero() -> Self {
        Self { coeffs: [Complex64::new(0.0, 0.0); 20] }
    }

    pub fn coefficients(&self) -> &[Complex64; 20] {
        &self.coeffs
    }

    /// Coefficient of `d_a ∧ d_b ∧ d_c` in any order.
    pub fn coefficient(&self, a: Differential, b: Differential, c: Differential) -> Complex64 {
        match canonical([a, b, c]) {
            Some((t, sign)) => self.coeffs[basis_index(t)] * sign,
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Adds `value · d_a ∧ d_b ∧ d_c`.
    pub fn add_term(&mut self, a: Differential, b: Differential, c: Differential, value: Complex64) {
        if let Some((t, sign)) = canonical([a, b, c]) {
            self.coeffs[basis_index(t)] += value * sign;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ThreeForm) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest violation of `c_{I'} = sign · conj(c_I)`, where `I'` is the
    /// conjugate triple; zero exactly when the form is real.
    pub fn reality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, t) in basis().iter().enumerate() {
            let conj = [t[0] ^ 1, t[1] ^ 1, t[2] ^ 1];
            let (ct, sign) = canonical(conj).expect("conjugation preserves distinctness");
            let expected = self.coeffs[i].conj() * sign;
            worst = worst.max((self.coeffs[basis_index(ct)] - expected).norm());
        }
        worst
    }

    /// Pullback to a submanifold where only the `active` coordinates vary:
    /// every basis element containing an inactive differential is dropped.
    pub fn restrict_to(&self, active: &[Coord]) -> ThreeForm {
        let mut out = *self;
        for (i, t) in basis().iter().enumerate() {
            if !t.iter().all(|d| active.contains(&coord_of(*d))) {
                out.coeffs[i] = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    pub fn nonzero_terms(&self, tol: f64) -> impl Iterator<Item = ([Differential; 3], Complex64)> + '_ {
        basis()
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(move |(_, c)| c.norm() > tol)
    }
}

impl fmt::Display for ThreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, c) in basis().iter().zip(self.coeffs.iter()) {
            writeln!(
                f,
                "{}∧{}∧{}  {:+.12e} {:+.12e}i",
                label(t[0]),
                label(t[1]),
                label(t[2]),
                c.re,
                c.im
            )?;
        }
        Ok(())
    }
}

/// `dω` at `p` for `ω = i Σ h_{jk̄} dz_j ∧ dz̄_k`.
///
/// Each coefficient contributes `i · dh_{jk̄} ∧ dz_j ∧ dz̄_k` with
/// `dh = Σ_l (∂_l h dz_l + ∂_{l̄} h dz̄_l)`.
pub fn exterior_derivative_omega<F: MetricField>(field: &F, p: &TotalSpacePoint) -> ThreeForm {
    let h = field.jets(p);
    let i = Complex64::new(0.0, 1.0);
    let mut form = ThreeForm::zero();
    for j in Coord::ALL {
        for k in Coord::ALL {
            let entry = &h[j.index()][k.index()];
            for l in Coord::ALL {
                let dh = wirtinger(entry, l, false);
                form.add_term(holomorphic(l), holomorphic(j), antiholomorphic(k), i * dh);
                let dh_bar = wirtinger(entry, l, true);
                form.add_term(antiholomorphic(l), holomorphic(j), antiholomorphic(k), i * dh_bar);
            }
        }
    }
    form
}
