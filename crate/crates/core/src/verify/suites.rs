//! The property suites run by `verify`.
//!
//! Each suite evaluates one property at every sampled point (in parallel),
//! then aggregates sequentially: the maximum error, and the five points with
//! the largest ranking value (ties broken by sample index). The result does
//! not depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::calculus::forms::{DALPHA, DZ, DZ_BAR};
use crate::calculus::{exterior_derivative_omega, kahler_defect, FiberKind};
use crate::error::{Error, Result};
use crate::geometry::{pullback_holomorphic, Coord, TotalSpacePoint};
use crate::metric::{blocks, metric, NaturalMetric, NormalizedMetric};
use crate::oracle::{
    canonical_lift_coefficient, l2_metric_oracle, lift_harmonicity_defect, ricci_flat_coefficient,
    wp_metric_oracle, DEFAULT_GRID,
};
use crate::symmetries::{
    deck_apply, deck_jacobian, eta_projection, mirror_commutator_distance, mirror_form_defect,
    mirror_isometry_defect, mirror_map, modular_apply, modular_jacobian, nu_projection,
    DeckElement, ModularElement,
};
use crate::verify::report::{finite_or_max, VerificationReport, Witness};
use crate::verify::sampler::{sample_points, SamplerConfig, Stream};

/// Number of worst points kept per report.
pub const MAX_WITNESSES: usize = 5;

/// Some sampled point must have a total-space Kähler defect at least this large.
pub const NON_KAHLER_THRESHOLD: f64 = 0.09;

/// Number of random words tested by the modular suite, besides `T` and `S`.
pub const RANDOM_WORDS: usize = 5;
pub const MAX_WORD_LENGTH: usize = 4;

/// Range of `n` and `m` for random deck elements.
pub const DECK_RANGE: i64 = 5;

const DECK_STREAM: u64 = 0x6465_636b_0000_0001;
const WORD_STREAM: u64 = 0x776f_7264_0000_0002;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    HermitianPositivity,
    OracleEquivalence,
    NonKahlerTotal,
    KahlerNuFiber,
    KahlerEtaFiber,
    DeckInvariance,
    ModularInvariance,
    MirrorInvolution,
    FibrationExchange,
    MirrorIsometry,
    MirrorNonequivariance,
    LiftHarmonicity,
    MirrorFormPreservation,
}

impl SuiteId {
    pub const ALL: [SuiteId; 13] = [
        SuiteId::HermitianPositivity,
        SuiteId::OracleEquivalence,
        SuiteId::NonKahlerTotal,
        SuiteId::KahlerNuFiber,
        SuiteId::KahlerEtaFiber,
        SuiteId::DeckInvariance,
        SuiteId::ModularInvariance,
        SuiteId::MirrorInvolution,
        SuiteId::FibrationExchange,
        SuiteId::MirrorIsometry,
        SuiteId::MirrorNonequivariance,
        SuiteId::LiftHarmonicity,
        SuiteId::MirrorFormPreservation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::HermitianPositivity => "hermitian-positivity",
            SuiteId::OracleEquivalence => "oracle-equivalence",
            SuiteId::NonKahlerTotal => "non-kahler-total",
            SuiteId::KahlerNuFiber => "kahler-nu-fiber",
            SuiteId::KahlerEtaFiber => "kahler-eta-fiber",
            SuiteId::DeckInvariance => "deck-invariance",
            SuiteId::ModularInvariance => "modular-invariance",
            SuiteId::MirrorInvolution => "mirror-involution",
            SuiteId::FibrationExchange => "fibration-exchange",
            SuiteId::MirrorIsometry => "mirror-isometry",
            SuiteId::MirrorNonequivariance => "mirror-nonequivariance",
            SuiteId::LiftHarmonicity => "lift-harmonicity",
            SuiteId::MirrorFormPreservation => "mirror-form-preservation",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            SuiteId::HermitianPositivity => 1e-12,
            SuiteId::OracleEquivalence => 1e-12,
            SuiteId::NonKahlerTotal => 1e-10,
            SuiteId::KahlerNuFiber | SuiteId::KahlerEtaFiber => 1e-10,
            SuiteId::DeckInvariance => 1e-12,
            SuiteId::ModularInvariance => 1e-9,
            SuiteId::MirrorInvolution => 1e-12,
            SuiteId::FibrationExchange => 0.0,
            SuiteId::MirrorIsometry => 1e-9,
            // Threshold the commutator distance must exceed somewhere.
            SuiteId::MirrorNonequivariance => 1e-3,
            SuiteId::LiftHarmonicity => 1e-12,
            SuiteId::MirrorFormPreservation => 1e-9,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Per-point outcome: `error` feeds `max_error`, `rank` orders witnesses.
#[derive(Debug, Clone, Copy)]
struct Outcome {
    error: f64,
    rank: f64,
}

impl Outcome {
    fn error(e: f64) -> Self {
        Self { error: e, rank: e }
    }
}

/// The modular elements exercised at every point: `T`, `S`, then random words.
pub fn modular_test_elements(seed: u64) -> Vec<ModularElement> {
    let mut rng = Stream::new(seed ^ WORD_STREAM);
    let mut out = vec![ModularElement::T, ModularElement::S];
    for _ in 0..RANDOM_WORDS {
        let len = rng.int_in(1, MAX_WORD_LENGTH as i64) as usize;
        let letters: Vec<_> = (0..len)
            .map(|_| if rng.next_u64() & 1 == 0 { ModularElement::T } else { ModularElement::S })
            .collect();
        out.push(ModularElement::word(&letters));
    }
    out
}

/// One deck element per sampled point, `n, m ∈ [−5, 5]`.
pub fn deck_test_elements(seed: u64, count: usize) -> Vec<DeckElement> {
    let mut rng = Stream::new(seed ^ DECK_STREAM);
    (0..count)
        .map(|_| {
            let n = rng.int_in(-DECK_RANGE, DECK_RANGE);
            let m = rng.int_in(-DECK_RANGE, DECK_RANGE);
            DeckElement::new(n, m)
        })
        .collect()
}

fn hermitian_positivity(p: &TotalSpacePoint) -> Outcome {
    let h = metric(p);
    let b = blocks(p);
    let det_zs = h.get(0, 0) * h.get(2, 2) - h.get(0, 2) * h.get(2, 0);
    let det_err = (det_zs - b.g_fiber * b.g_wp).norm();
    let mut err = h.symmetry_error().max(det_err);
    if !(h.min_eigenvalue() > 0.0) {
        err = f64::INFINITY;
    }
    Outcome::error(err)
}

fn oracle_equivalence(p: &TotalSpacePoint) -> Outcome {
    let b = blocks(p);
    let (alpha, s) = (p.alpha(), p.s());
    let errs = [
        (b.g_fiber - ricci_flat_coefficient(alpha, s).lambda).norm(),
        (b.g_l2 - l2_metric_oracle(alpha, s, DEFAULT_GRID)).norm(),
        (b.g_wp - wp_metric_oracle(alpha, s, DEFAULT_GRID)).norm(),
        (b.a + canonical_lift_coefficient(p)).norm(),
    ];
    Outcome::error(errs.into_iter().fold(0.0, f64::max))
}

fn non_kahler_total(p: &TotalSpacePoint) -> Outcome {
    let d_omega = exterior_derivative_omega(&NaturalMetric, p);
    let coeff = d_omega.coefficient(DZ, DZ_BAR, DALPHA);
    let expected = 1.0 / (2.0 * p.t());
    Outcome {
        error: (coeff - expected).norm(),
        rank: kahler_defect(&NaturalMetric, p, &Coord::ALL),
    }
}

fn kahler_fiber(kind: FiberKind, p: &TotalSpacePoint) -> Outcome {
    Outcome::error(kahler_defect(&NormalizedMetric, p, &kind.active()))
}

fn deck_invariance(g: &DeckElement, p: &TotalSpacePoint) -> Outcome {
    let pulled = pullback_holomorphic(&metric(&deck_apply(g, p)), &deck_jacobian(g));
    Outcome::error(pulled.max_abs_diff(&metric(p)))
}

fn modular_invariance(elements: &[ModularElement], p: &TotalSpacePoint) -> Outcome {
    let here = metric(p);
    let err = elements
        .iter()
        .map(|g| {
            let pulled = pullback_holomorphic(&metric(&modular_apply(g, p)), &modular_jacobian(g, p));
            pulled.max_abs_diff(&here)
        })
        .fold(0.0, f64::max);
    Outcome::error(err)
}

fn fibration_exchange(p: &TotalSpacePoint) -> Outcome {
    let q = mirror_map(p);
    let err = (nu_projection(&q) - eta_projection(p))
        .norm()
        .max((eta_projection(&q) - nu_projection(p)).norm());
    Outcome::error(err)
}

fn evaluate(id: SuiteId, cfg: &SamplerConfig, points: &[TotalSpacePoint]) -> Vec<Outcome> {
    match id {
        SuiteId::DeckInvariance => {
            let decks = deck_test_elements(cfg.seed, points.len());
            points.par_iter().zip(decks.par_iter()).map(|(p, g)| deck_invariance(g, p)).collect()
        }
        SuiteId::ModularInvariance => {
            let elements = modular_test_elements(cfg.seed);
            points.par_iter().map(|p| modular_invariance(&elements, p)).collect()
        }
        _ => points
            .par_iter()
            .map(|p| match id {
                SuiteId::HermitianPositivity => hermitian_positivity(p),
                SuiteId::OracleEquivalence => oracle_equivalence(p),
                SuiteId::NonKahlerTotal => non_kahler_total(p),
                SuiteId::KahlerNuFiber => kahler_fiber(FiberKind::Nu, p),
                SuiteId::KahlerEtaFiber => kahler_fiber(FiberKind::Eta, p),
                SuiteId::MirrorInvolution => Outcome::error(mirror_map(&mirror_map(p)).distance(p)),
                SuiteId::FibrationExchange => fibration_exchange(p),
                SuiteId::MirrorIsometry => Outcome::error(mirror_isometry_defect(p)),
                SuiteId::MirrorNonequivariance => {
                    Outcome::error(mirror_commutator_distance(&ModularElement::S, p))
                }
                SuiteId::LiftHarmonicity => Outcome::error(lift_harmonicity_defect(p)),
                SuiteId::MirrorFormPreservation => Outcome::error(mirror_form_defect(p)),
                SuiteId::DeckInvariance | SuiteId::ModularInvariance => unreachable!(),
            })
            .collect(),
    }
}

fn worst_witnesses(points: &[TotalSpacePoint], outcomes: &[Outcome]) -> Vec<Witness> {
    let mut order: Vec<usize> = (0..outcomes.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = finite_or_max(outcomes[a].rank);
        let rb = finite_or_max(outcomes[b].rank);
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    order
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|i| Witness { point: points[i].real_coords(), value: finite_or_max(outcomes[i].rank) })
        .collect()
}

/// Runs one suite over the points sampled from `cfg`.
///
/// Error-bound suites pass iff `max_error <= tol`. Two suites also need an
/// existence witness: `non-kahler-total` requires a point with total Kähler
/// defect at least [`NON_KAHLER_THRESHOLD`], and `mirror-nonequivariance`
/// passes iff some commutator distance exceeds `tol`.
pub fn run_suite(id: SuiteId, cfg: &SamplerConfig, tol: f64) -> Result<VerificationReport> {
    let points = sample_points(cfg)?;
    let outcomes = evaluate(id, cfg, &points);
    let max_error = finite_or_max(
        outcomes.iter().map(|o| if o.error.is_nan() { f64::INFINITY } else { o.error }).fold(0.0, f64::max),
    );
    let max_rank = outcomes.iter().map(|o| o.rank).fold(0.0, f64::max);
    let pass = match id {
        SuiteId::MirrorNonequivariance => max_error > tol,
        SuiteId::NonKahlerTotal => max_error <= tol && max_rank >= NON_KAHLER_THRESHOLD,
        _ => max_error <= tol,
    };
    Ok(VerificationReport {
        suite: id.name().to_string(),
        seed: cfg.seed,
        samples: cfg.samples,
        tolerance: tol,
        max_error,
        pass,
        witnesses: worst_witnesses(&points, &outcomes),
    })
}

pub fn run_suite_named(name: &str, cfg: &SamplerConfig, tol: Option<f64>) -> Result<VerificationReport> {
    let id: SuiteId = name.parse()?;
    run_suite(id, cfg, tol.unwrap_or(id.default_tolerance()))
}

/// Every suite, each at its default tolerance unless `tol` overrides it.
pub fn run_all(cfg: &SamplerConfig, tol: Option<f64>) -> Result<Vec<VerificationReport>> {
    SuiteId::ALL
        .into_iter()
        .map(|id| run_suite(id, cfg, tol.unwrap_or(id.default_tolerance())))
        .collect()
}
