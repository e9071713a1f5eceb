//! Relativistic spin observables, joint expectations and CHSH values.
//!
//! For a boost of speed β along `ê`, a measurement direction `a⃗` is mapped
//! to the normalized operator
//! `â = (√(1−β²) a⃗⊥ + a⃗∥)·σ⃗ / √(1 + β²[(ê·a⃗)² − 1])`,
//! which has eigenvalues ±1. Closed forms in this module assume the standard
//! geometry: pair momentum along `ẑ`, boost along `x̂`.

use crate::bell::{BellLabel, TwoQubitState};
use crate::error::{Error, Result};
use crate::linalg::{sigma_dot, tensor, Mat2, Vec3, C64};

/// Unit-norm tolerance for measurement directions.
pub const UNIT_TOL: f64 = 1e-12;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A unit measurement direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection(Vec3);

impl MeasurementDirection {
    /// Requires `|v| = 1` to [`UNIT_TOL`].
    pub fn new(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !v.is_finite() || (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(n));
        }
        Ok(MeasurementDirection(v))
    }

    /// Normalizes any finite nonzero vector.
    pub fn normalized(v: Vec3) -> Result<Self> {
        v.normalized()
            .map(MeasurementDirection)
            .ok_or_else(|| Error::InvalidDirection(v.to_string()))
    }

    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        MeasurementDirection(Vec3::from_spherical(theta, phi))
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }
}

/// The four settings of a CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: MeasurementDirection,
    pub a_prime: MeasurementDirection,
    pub b: MeasurementDirection,
    pub b_prime: MeasurementDirection,
}

impl ChshSettings {
    /// Directions in the xy plane chosen for a state with correlations
    /// `⟨σx⊗σx⟩ = tx`, `⟨σy⊗σy⟩ = ty`:
    /// `a = (tx, ty)/√2`, `a' = (−tx, ty)/√2`, `b = ŷ`, `b' = x̂`.
    fn xy_plane(tx: f64, ty: f64) -> Self {
        let h = FRAC_1_SQRT_2;
        ChshSettings {
            a: MeasurementDirection(Vec3::new(tx * h, ty * h, 0.0)),
            a_prime: MeasurementDirection(Vec3::new(-tx * h, ty * h, 0.0)),
            b: MeasurementDirection(Vec3::Y),
            b_prime: MeasurementDirection(Vec3::X),
        }
    }

    /// `a = (1/√2, −1/√2, 0)`, `a' = (−1/√2, −1/√2, 0)`, `b = ŷ`, `b' = x̂`;
    /// maximal violation for `Ψ00` at rest.
    pub fn case1() -> Self {
        ChshSettings::xy_plane(1.0, -1.0)
    }

    /// `a = (1/√2, 1/√2, 0)`, `a' = (−1/√2, 1/√2, 0)`, `b = ŷ`, `b' = x̂`;
    /// maximal violation for `Ψ10` at rest.
    ///
    /// `a'` carries `+1/√2` in y: with `a' = −a` the combination collapses
    /// to `2⟨a⊗b'⟩` and cannot exceed √2.
    pub fn case2() -> Self {
        ChshSettings::xy_plane(1.0, 1.0)
    }

    /// The maximally violating xy-plane settings for each Bell state at β = 0.
    pub fn matched(label: BellLabel) -> Self {
        match label {
            BellLabel::B00 => ChshSettings::xy_plane(1.0, -1.0),
            BellLabel::B01 => ChshSettings::xy_plane(-1.0, 1.0),
            BellLabel::B10 => ChshSettings::xy_plane(1.0, 1.0),
            BellLabel::B11 => ChshSettings::xy_plane(-1.0, -1.0),
        }
    }

    pub fn directions(&self) -> [MeasurementDirection; 4] {
        [self.a, self.a_prime, self.b, self.b_prime]
    }
}

/// A boost-corrected spin observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservable {
    pub m: Mat2,
    pub direction: MeasurementDirection,
    pub beta: f64,
    pub boost_direction: Vec3,
}

fn check_beta_closed(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta))
    }
}

/// The normalized relativistic spin observable for direction `d`.
///
/// Accepts `β = 1` unless `d ⊥ ê`, where the operator is undefined.
pub fn rel_spin_observable(d: &MeasurementDirection, beta: f64, e: &Vec3) -> Result<SpinObservable> {
    check_beta_closed(beta)?;
    let e_hat = e.normalized().ok_or_else(|| Error::InvalidDirection(e.to_string()))?;
    let a = d.0;
    let along = a.dot(&e_hat);
    let parallel = e_hat * along;
    let perp = a - parallel;
    let one_minus = (1.0 - beta) * (1.0 + beta);
    let denom_sq = 1.0 + beta * beta * (along * along - 1.0);
    if denom_sq <= 0.0 {
        return Err(Error::DegenerateObservable);
    }
    let eff = (perp * one_minus.sqrt() + parallel) * (1.0 / denom_sq.sqrt());
    Ok(SpinObservable {
        m: sigma_dot(&eff),
        direction: *d,
        beta,
        boost_direction: e_hat,
    })
}

/// `⟨ψ| A ⊗ B |ψ⟩` in the normalized spin sector.
pub fn joint_expectation(s: &TwoQubitState, a: &SpinObservable, b: &SpinObservable) -> f64 {
    let op = tensor(&a.m, &b.m);
    let image = op.apply(&s.amps);
    let value: C64 = s.amps.iter().zip(&image).map(|(x, y)| x.conj() * y).sum();
    debug_assert!(value.im.abs() < 1e-12, "non-Hermitian expectation {value}");
    value.re
}

fn closed_normalizer(a: &Vec3, b: &Vec3, beta: f64) -> Result<f64> {
    check_beta_closed(beta)?;
    let b2 = beta * beta;
    let n = ((1.0 + b2 * (a.x * a.x - 1.0)) * (1.0 + b2 * (b.x * b.x - 1.0))).sqrt();
    if n == 0.0 {
        return Err(Error::DegenerateObservable);
    }
    Ok(n)
}

/// `⟨â⊗b̂⟩` on the boosted `Ψ00`, with `Ω` the Wigner angle:
/// `{[a_x b_x + (1−β²) a_z b_z] cos 2Ω − (1−β²) a_y b_y
///   − √(1−β²)(a_z b_x − b_z a_x) sin 2Ω} / N`.
pub fn expectation_case1_closed(
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    beta: f64,
    omega: f64,
) -> Result<f64> {
    let (a, b) = (a.0, b.0);
    let n = closed_normalizer(&a, &b, beta)?;
    let k2 = (1.0 - beta) * (1.0 + beta);
    let k = k2.sqrt();
    let (s2, c2) = (2.0 * omega).sin_cos();
    Ok(((a.x * b.x + k2 * a.z * b.z) * c2 - k2 * a.y * b.y - k * (a.z * b.x - b.z * a.x) * s2) / n)
}

/// `⟨â⊗b̂⟩` on the boosted `Ψ10`:
/// `{a_x b_x + (1−β²)(a_y b_y − a_z b_z)} / N`.
pub fn expectation_case2_closed(a: &MeasurementDirection, b: &MeasurementDirection, beta: f64) -> Result<f64> {
    let (a, b) = (a.0, b.0);
    let n = closed_normalizer(&a, &b, beta)?;
    let k2 = (1.0 - beta) * (1.0 + beta);
    Ok((a.x * b.x + k2 * (a.y * b.y - a.z * b.z)) / n)
}

/// `⟨â⊗b̂⟩ + ⟨â⊗b̂'⟩ + ⟨â'⊗b̂⟩ − ⟨â'⊗b̂'⟩` with boost-corrected observables.
pub fn chsh(s: &TwoQubitState, c: &ChshSettings, beta: f64, e: &Vec3) -> Result<f64> {
    let a = rel_spin_observable(&c.a, beta, e)?;
    let a2 = rel_spin_observable(&c.a_prime, beta, e)?;
    let b = rel_spin_observable(&c.b, beta, e)?;
    let b2 = rel_spin_observable(&c.b_prime, beta, e)?;
    Ok(joint_expectation(s, &a, &b) + joint_expectation(s, &a, &b2) + joint_expectation(s, &a2, &b)
        - joint_expectation(s, &a2, &b2))
}

/// `(2/√(2−β²))(1 + √(1−β²))`, valid on the closed interval `[0, 1]`.
pub fn chsh_universal(beta: f64) -> Result<f64> {
    check_beta_closed(beta)?;
    let k = ((1.0 - beta) * (1.0 + beta)).sqrt();
    Ok(2.0 / (2.0 - beta * beta).sqrt() * (1.0 + k))
}

/// CHSH value of the boosted `Ψ00` (and `Ψ11`) with its matched settings:
/// `(2/√(2−β²))(√(1−β²) + cos 2Ω)`.
pub fn chsh_case1_closed(beta: f64, omega: f64) -> Result<f64> {
    check_beta_closed(beta)?;
    let k = ((1.0 - beta) * (1.0 + beta)).sqrt();
    Ok(2.0 / (2.0 - beta * beta).sqrt() * (k + (2.0 * omega).cos()))
}
