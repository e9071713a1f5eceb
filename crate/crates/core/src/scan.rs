//! Parameter scans over β and their CSV rendering.
//!
//! Matrix-backed rows clamp β to [`BETA_CAP`] and record the clamped value.
//! Rows are computed in parallel and returned in grid order.

use rayon::prelude::*;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::bell::{bell_state, boost_two_particle, fmt_sig17, BellLabel};
use crate::error::{Error, Result};
use crate::kinematics::{BoostSpec, FourMomentum};
use crate::linalg::Vec3;
use crate::observables::{chsh, ChshSettings};
use crate::optimizer::{maximize_chsh, OptimizerConfig};
use crate::wigner::wigner_angle;

/// Largest β used on the matrix path.
pub const BETA_CAP: f64 = 1.0 - 1e-12;

pub const WIGNER_HEADER: &str = "beta,e_over_m,omega_rad";
pub const CHSH_HEADER: &str = "beta,chsh,omega_rad";

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub beta_min: f64,
    pub beta_max: f64,
    pub steps: usize,
    pub e_over_m: Vec<f64>,
    pub seed: u64,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta_min >= 0.0 && self.beta_min < self.beta_max && self.beta_max <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "need 0 <= beta-min < beta-max <= 1, got [{}, {}]",
                self.beta_min, self.beta_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidInput(format!("steps must be at least 2, got {}", self.steps)));
        }
        if self.e_over_m.is_empty() {
            return Err(Error::InvalidInput("e-over-m list is empty".into()));
        }
        for &r in &self.e_over_m {
            if !(r.is_finite() && r >= 1.0) {
                return Err(Error::InvalidEnergyRatio(r));
            }
        }
        Ok(())
    }

    /// `steps` evenly spaced values from `beta_min` to `beta_max` inclusive.
    pub fn beta_grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        let span = self.beta_max - self.beta_min;
        (0..=n)
            .map(|i| if i == n { self.beta_max } else { self.beta_min + span * i as f64 / n as f64 })
            .collect()
    }
}

/// Measurement settings used by a CHSH scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vectors {
    Case1,
    Case2,
    /// The state's own maximally violating settings at β = 0.
    Matched,
    /// Numerically optimized at each grid point.
    Optimal,
}

impl FromStr for Vectors {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "case1" => Ok(Vectors::Case1),
            "case2" => Ok(Vectors::Case2),
            "matched" => Ok(Vectors::Matched),
            "optimal" => Ok(Vectors::Optimal),
            other => Err(Error::InvalidInput(format!("unknown vectors '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRow {
    pub beta: f64,
    pub e_over_m: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshRow {
    pub beta: f64,
    pub chsh: f64,
    /// Present for states whose value depends on the Wigner angle.
    pub omega: Option<f64>,
}

fn clamp(beta: f64) -> f64 {
    beta.min(BETA_CAP)
}

/// One block of rows per E/m, each in β order.
pub fn wigner_scan(cfg: &ScanConfig) -> Result<Vec<WignerRow>> {
    cfg.validate()?;
    let grid: Vec<(f64, f64)> = cfg
        .e_over_m
        .iter()
        .flat_map(|&r| cfg.beta_grid().into_iter().map(move |b| (clamp(b), r)))
        .collect();
    grid.par_iter()
        .map(|&(beta, r)| {
            Ok(WignerRow {
                beta,
                e_over_m: r,
                omega: wigner_angle(beta, r)?,
            })
        })
        .collect()
}

/// Whether boosting `label` along x̂ with momentum along ẑ mixes it with
/// another Bell state.
pub fn depends_on_angle(label: BellLabel) -> bool {
    matches!(label, BellLabel::B00 | BellLabel::B11)
}

/// CHSH values for `label` with momentum along ẑ and boost along x̂.
///
/// States that rotate under the boost get one block per E/m with the Wigner
/// angle recorded; the others get a single block.
pub fn chsh_scan(cfg: &ScanConfig, label: BellLabel, vectors: Vectors) -> Result<Vec<ChshRow>> {
    cfg.validate()?;
    let energies: &[f64] = if depends_on_angle(label) { &cfg.e_over_m } else { &cfg.e_over_m[..1] };
    let grid: Vec<(f64, f64)> = energies
        .iter()
        .flat_map(|&r| cfg.beta_grid().into_iter().map(move |b| (clamp(b), r)))
        .collect();
    let opt = OptimizerConfig {
        seed: cfg.seed,
        ..OptimizerConfig::default()
    };
    grid.par_iter()
        .map(|&(beta, r)| {
            let p = FourMomentum::from_energy_ratio(Vec3::Z, r, 1.0)?;
            let boost = BoostSpec::from_beta(Vec3::X, beta)?;
            let s = boost_two_particle(&bell_state(label, &p)?, &boost);
            let value = match vectors {
                Vectors::Case1 => chsh(&s, &ChshSettings::case1(), beta, &Vec3::X)?,
                Vectors::Case2 => chsh(&s, &ChshSettings::case2(), beta, &Vec3::X)?,
                Vectors::Matched => chsh(&s, &ChshSettings::matched(label), beta, &Vec3::X)?,
                Vectors::Optimal => maximize_chsh(&s, beta, &Vec3::X, &opt)?.value,
            };
            let omega = if depends_on_angle(label) { Some(wigner_angle(beta, r)?) } else { None };
            Ok(ChshRow { beta, chsh: value, omega })
        })
        .collect()
}

pub fn wigner_csv(rows: &[WignerRow]) -> String {
    let mut out = format!("{WIGNER_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", fmt_sig17(r.beta), fmt_sig17(r.e_over_m), fmt_sig17(r.omega));
    }
    out
}

pub fn chsh_csv(rows: &[ChshRow]) -> String {
    let mut out = format!("{CHSH_HEADER}\n");
    for r in rows {
        let omega = r.omega.map(fmt_sig17).unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", fmt_sig17(r.beta), fmt_sig17(r.chsh), omega);
    }
    out
}
