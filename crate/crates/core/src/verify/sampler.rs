//! Seeded, platform-independent sampling of points on the cover.
//!
//! The generator is SplitMix64 with its state initialised to the seed. A
//! uniform `f64` in `[0, 1)` is `(next_u64 >> 11) · 2⁻⁵³`. Each point draws, in
//! order: `Re α`, `Im α`, `Re s`, `Im s`, then two values for `z`. Real parts
//! are uniform on `re_range`, imaginary parts log-uniform on `im_range`.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::geometry::TotalSpacePoint;

/// Half-width of the square used by [`ZMode::Box`].
pub const Z_BOX_HALF_WIDTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMode {
    /// `z = u + w s` with `u, w` uniform in `[0, 1)`.
    Fundamental,
    /// `Re z, Im z` uniform in `[-2, 2)`.
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub z_mode: ZMode,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 1000,
            re_range: (-2.0, 2.0),
            im_range: (0.1, 5.0),
            z_mode: ZMode::Fundamental,
        }
    }
}

impl SamplerConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        let (re_lo, re_hi) = self.re_range;
        if !(re_lo.is_finite() && re_hi.is_finite() && re_lo <= re_hi) {
            return Err(Error::Config(format!("bad re_range [{re_lo}, {re_hi}]")));
        }
        let (im_lo, im_hi) = self.im_range;
        if !(im_lo > 0.0 && im_hi.is_finite() && im_lo <= im_hi) {
            return Err(Error::Config(format!("bad im_range [{im_lo}, {im_hi}]")));
        }
        Ok(())
    }
}

/// Thin wrapper fixing the integer-to-float conversion.
#[derive(Debug, Clone)]
pub struct Stream(SplitMix64);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = self.unit();
        (lo.ln() + (hi.ln() - lo.ln()) * u).exp().clamp(lo, hi)
    }

    /// Integer uniform on `lo..=hi` (modulo reduction).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

pub fn sample_points(cfg: &SamplerConfig) -> Result<Vec<TotalSpacePoint>> {
    cfg.validate()?;
    let mut rng = Stream::new(cfg.seed);
    let (re_lo, re_hi) = cfg.re_range;
    let (im_lo, im_hi) = cfg.im_range;
    let mut out = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let alpha = Complex64::new(rng.uniform(re_lo, re_hi), rng.log_uniform(im_lo, im_hi));
        let s = Complex64::new(rng.uniform(re_lo, re_hi), rng.log_uniform(im_lo, im_hi));
        let z = match cfg.z_mode {
            ZMode::Fundamental => {
                let u = rng.unit();
                let w = rng.unit();
                u + s * w
            }
            ZMode::Box => Complex64::new(
                rng.uniform(-Z_BOX_HALF_WIDTH, Z_BOX_HALF_WIDTH),
                rng.uniform(-Z_BOX_HALF_WIDTH, Z_BOX_HALF_WIDTH),
            ),
        };
        out.push(TotalSpacePoint::new(z, alpha, s)?);
    }
    Ok(out)
}
