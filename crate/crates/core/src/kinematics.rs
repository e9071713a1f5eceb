//! Four-momenta and 4×4 Lorentz boosts in natural units (c = 1).
//!
//! Four-vectors are stored with index order `(x, y, z, t)`, so `p^μ = (p⃗, E)`
//! and the Minkowski metric is `η = diag(+1, +1, +1, −1)`.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::linalg::Vec3;

/// Relative tolerance for the mass-shell check.
pub const MASS_SHELL_TOL: f64 = 1e-9;

/// An on-shell four-momentum of a massive particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum {
    p: Vec3,
    energy: f64,
    mass: f64,
}

impl FourMomentum {
    /// On-shell momentum with spatial part `p`; the energy is derived.
    pub fn new(p: Vec3, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if !p.is_finite() {
            return Err(Error::InvalidDirection(p.to_string()));
        }
        let energy = (mass * mass + p.dot(&p)).sqrt();
        Ok(FourMomentum { p, energy, mass })
    }

    /// Checked constructor from all three components.
    pub fn with_energy(p: Vec3, energy: f64, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        let got = energy * energy - p.dot(&p);
        let expected = mass * mass;
        if !got.is_finite() || energy < mass * (1.0 - MASS_SHELL_TOL) || (got - expected).abs() > MASS_SHELL_TOL * energy * energy {
            return Err(Error::OffMassShell { got, expected });
        }
        Ok(FourMomentum { p, energy, mass })
    }

    pub fn at_rest(mass: f64) -> Result<Self> {
        FourMomentum::new(Vec3::ZERO, mass)
    }

    /// Momentum along `direction` with energy `e_over_m · mass`.
    pub fn from_energy_ratio(direction: Vec3, e_over_m: f64, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if !(e_over_m.is_finite() && e_over_m >= 1.0) {
            return Err(Error::InvalidEnergyRatio(e_over_m));
        }
        let dir = direction
            .normalized()
            .ok_or_else(|| Error::InvalidDirection(direction.to_string()))?;
        // |p| = m sinh δ with cosh δ = E/m
        let p_mag = mass * ((e_over_m - 1.0) * (e_over_m + 1.0)).sqrt();
        Ok(FourMomentum {
            p: dir * p_mag,
            energy: e_over_m * mass,
            mass,
        })
    }

    pub fn spatial(&self) -> Vec3 {
        self.p
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `|p⃗|`.
    pub fn momentum(&self) -> f64 {
        self.p.norm()
    }

    /// `p̂`, or `None` at rest.
    pub fn direction(&self) -> Option<Vec3> {
        self.p.normalized()
    }

    /// Rapidity δ of the particle itself, `cosh δ = E/m`.
    pub fn rapidity(&self) -> f64 {
        (self.momentum() / self.mass).asinh()
    }

    /// The parity image `(−p⃗, E)`.
    pub fn parity(&self) -> FourMomentum {
        FourMomentum { p: -self.p, ..*self }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.p.x, self.p.y, self.p.z, self.energy]
    }

    /// `E² − |p⃗|²`.
    pub fn invariant_mass_sq(&self) -> f64 {
        self.energy * self.energy - self.p.dot(&self.p)
    }
}

fn check_mass(mass: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMass(mass))
    }
}

/// A pure boost: unit direction `ê` and signed rapidity `α`.
///
/// User-facing constructors take `0 ≤ β < 1`; negative rapidity only arises
/// from [`BoostSpec::inverse`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostSpec {
    direction: Vec3,
    rapidity: f64,
}

impl BoostSpec {
    pub fn from_beta(direction: Vec3, beta: f64) -> Result<Self> {
        let rapidity = rapidity_from_beta(beta)?;
        BoostSpec::from_rapidity(direction, rapidity)
    }

    /// Any finite rapidity, including negative values.
    pub fn from_rapidity(direction: Vec3, rapidity: f64) -> Result<Self> {
        if !rapidity.is_finite() {
            return Err(Error::InvalidInput(format!("rapidity {rapidity} is not finite")));
        }
        let direction = direction
            .normalized()
            .ok_or_else(|| Error::InvalidDirection(direction.to_string()))?;
        Ok(BoostSpec { direction, rapidity })
    }

    pub fn identity() -> Self {
        BoostSpec {
            direction: Vec3::Z,
            rapidity: 0.0,
        }
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// Signed speed `tanh α`.
    pub fn beta(&self) -> f64 {
        self.rapidity.tanh()
    }

    pub fn gamma(&self) -> f64 {
        self.rapidity.cosh()
    }

    /// Same axis, opposite rapidity.
    pub fn inverse(&self) -> Self {
        BoostSpec {
            direction: self.direction,
            rapidity: -self.rapidity,
        }
    }

    /// Boosted momentum via the longitudinal/transverse split:
    /// `p⃗' = p⃗⊥ + (E sinh α + p∥ cosh α) ê`, `E' = E cosh α + p∥ sinh α`.
    pub fn boost_momentum(&self, p: &FourMomentum) -> FourMomentum {
        let e = self.direction;
        let (sh, ch) = (self.rapidity.sinh(), self.rapidity.cosh());
        let p_par = p.p.dot(&e);
        let perp = p.p - e * p_par;
        FourMomentum {
            p: perp + e * (p.energy * sh + p_par * ch),
            energy: p.energy * ch + p_par * sh,
            mass: p.mass,
        }
    }
}

/// `α = artanh β` for `0 ≤ β < 1`.
pub fn rapidity_from_beta(beta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidBeta(beta));
    }
    Ok(beta.atanh())
}

/// A real 4×4 Lorentz matrix `Λ^μ_ν` in `(x, y, z, t)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentz4(pub [[f64; 4]; 4]);

const METRIC: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

impl Lorentz4 {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1.0;
        }
        Lorentz4(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.0[c][r];
            }
        }
        Lorentz4(m)
    }

    /// `Λ⁻¹ = η Λᵀ η`.
    pub fn inverse(&self) -> Self {
        let mut m = self.transpose().0;
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v *= METRIC[r] * METRIC[c];
            }
        }
        Lorentz4(m)
    }

    /// max |ΛᵀηΛ − η|.
    pub fn minkowski_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (r, &eta) in METRIC.iter().enumerate() {
            for c in 0..4 {
                let v: f64 = (0..4).map(|k| self.0[k][r] * METRIC[k] * self.0[k][c]).sum();
                let target = if r == c { eta } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (r, row) in self.0.iter().enumerate() {
            out[r] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Lorentz4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// The spatial 3×3 block.
    pub fn spatial_block(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            row.copy_from_slice(&self.0[r][..3]);
        }
        out
    }
}

impl Mul for Lorentz4 {
    type Output = Lorentz4;
    fn mul(self, o: Lorentz4) -> Lorentz4 {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        Lorentz4(m)
    }
}

/// Boost matrix:
/// `Λ^i_j = δ_ij + e_i e_j (cosh α − 1)`, `Λ^i_0 = Λ^0_i = e_i sinh α`,
/// `Λ^0_0 = cosh α`.
pub fn boost_matrix(b: &BoostSpec) -> Lorentz4 {
    let (sh, ch) = (b.rapidity.sinh(), b.rapidity.cosh());
    boost_from_hyperbolic(&b.direction, sh, ch, sh * sh / (ch + 1.0))
}

fn boost_from_hyperbolic(dir: &Vec3, sh: f64, ch: f64, ch_minus_one: f64) -> Lorentz4 {
    let e = dir.to_array();
    let mut m = [[0.0; 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i][j] = delta + e[i] * e[j] * ch_minus_one;
        }
        m[i][3] = e[i] * sh;
        m[3][i] = e[i] * sh;
    }
    m[3][3] = ch;
    Lorentz4(m)
}

/// `Λp` by direct matrix multiplication. The mass label is carried over.
pub fn apply_boost(l: &Lorentz4, p: &FourMomentum) -> FourMomentum {
    let v = l.apply(&p.to_array());
    FourMomentum {
        p: Vec3::new(v[0], v[1], v[2]),
        energy: v[3],
        mass: p.mass,
    }
}

/// The pure boost `L(p)` along `p̂` with `cosh δ = E/m`, taking `(0,0,0,m)`
/// to `p`. Identity at rest.
pub fn standard_boost(p: &FourMomentum) -> Lorentz4 {
    match p.direction() {
        None => Lorentz4::identity(),
        Some(dir) => {
            let (k, m) = (p.momentum(), p.mass);
            let e = k.hypot(m);
            boost_from_hyperbolic(&dir, k / m, e / m, k * k / (m * (e + m)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rapidity_examples() {
        assert_eq!(rapidity_from_beta(0.0).unwrap(), 0.0);
        let a = rapidity_from_beta(0.6).unwrap();
        assert!((a.cosh() - 1.25).abs() < 1e-13 * 1.25);
        assert!((a.sinh() - 0.75).abs() < 1e-13);
        let a = rapidity_from_beta(0.99).unwrap();
        let gamma = 1.0 / (1.0f64 - 0.9801).sqrt();
        assert!((a.cosh() - gamma).abs() < 1e-13 * gamma);
        assert!((gamma - 7.0888).abs() < 1e-4);
        for bad in [1.0, 1.5, -0.1, f64::NAN] {
            assert!(rapidity_from_beta(bad).is_err());
        }
    }

    #[test]
    fn boost_matrix_examples() {
        let id = boost_matrix(&BoostSpec::from_beta(Vec3::X, 0.0).unwrap());
        assert_eq!(id, Lorentz4::identity());

        let l = boost_matrix(&BoostSpec::from_beta(Vec3::X, 0.6).unwrap());
        let mut expected = Lorentz4::identity();
        expected.0[3][3] = 1.25;
        expected.0[0][0] = 1.25;
        expected.0[0][3] = 0.75;
        expected.0[3][0] = 0.75;
        assert!(l.max_abs_diff(&expected) < 1e-14);
        assert!(l.minkowski_residual() < 1e-14);
        assert!(BoostSpec::from_beta(Vec3::X, 1.0).is_err());
    }

    #[test]
    fn z_boost_commutes_with_z_rotation() {
        let l = boost_matrix(&BoostSpec::from_rapidity(Vec3::Z, 1.7).unwrap());
        let (s, c) = 0.4f64.sin_cos();
        let mut r = Lorentz4::identity();
        r.0[0][0] = c;
        r.0[0][1] = -s;
        r.0[1][0] = s;
        r.0[1][1] = c;
        assert!((l * r).max_abs_diff(&(r * l)) < 1e-14);
    }

    #[test]
    fn apply_boost_examples() {
        let p = FourMomentum::new(Vec3::new(0.2, -0.1, 0.5), 1.0).unwrap();
        assert_eq!(apply_boost(&Lorentz4::identity(), &p), p);

        let alpha: f64 = 0.9;
        let b = BoostSpec::from_rapidity(Vec3::X, alpha).unwrap();
        let rest = FourMomentum::at_rest(2.0).unwrap();
        let q = apply_boost(&boost_matrix(&b), &rest);
        let expected = [2.0 * alpha.sinh(), 0.0, 0.0, 2.0 * alpha.cosh()];
        for (a, e) in q.to_array().iter().zip(expected) {
            assert!((a - e).abs() < 1e-14);
        }

        // p along z, boost along x: p⃗_Λ = (E sinh α, 0, p)
        let p = FourMomentum::from_energy_ratio(Vec3::Z, 10.0, 1.0).unwrap();
        let q = apply_boost(&boost_matrix(&b), &p);
        let closed = b.boost_momentum(&p);
        let expected = [10.0 * alpha.sinh(), 0.0, p.momentum(), 10.0 * alpha.cosh()];
        for ((a, c), e) in q.to_array().iter().zip(closed.to_array()).zip(expected) {
            assert!((a - e).abs() < 1e-13 * e.abs().max(1.0));
            assert!((c - e).abs() < 1e-13 * e.abs().max(1.0));
        }
    }

    #[test]
    fn standard_boost_examples() {
        let rest = FourMomentum::at_rest(1.0).unwrap();
        assert_eq!(standard_boost(&rest), Lorentz4::identity());

        let p = FourMomentum::from_energy_ratio(Vec3::Z, 3.0, 1.0).unwrap();
        let delta = 3.0f64.acosh();
        let expected = boost_matrix(&BoostSpec::from_rapidity(Vec3::Z, delta).unwrap());
        assert!(standard_boost(&p).max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn mass_shell_validation() {
        assert!(FourMomentum::with_energy(Vec3::X, 2.0f64.sqrt(), 1.0).is_ok());
        assert!(matches!(
            FourMomentum::with_energy(Vec3::X, 3.0, 1.0),
            Err(Error::OffMassShell { .. })
        ));
        assert!(FourMomentum::new(Vec3::X, 0.0).is_err());
        assert!(FourMomentum::from_energy_ratio(Vec3::X, 0.5, 1.0).is_err());
        assert!(FourMomentum::from_energy_ratio(Vec3::ZERO, 2.0, 1.0).is_err());
    }

    fn unit() -> impl Strategy<Value = Vec3> {
        (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(t, p)| Vec3::from_spherical(t, p))
    }

    proptest! {
        #[test]
        fn boost_preserves_minkowski_form(e in unit(), beta in 0.0f64..0.999) {
            let l = boost_matrix(&BoostSpec::from_beta(e, beta).unwrap());
            prop_assert!(l.minkowski_residual() < 1e-10);
            prop_assert!(l.max_abs_diff(&l.transpose()) == 0.0);
        }

        #[test]
        fn boost_times_inverse_is_identity(e in unit(), beta in 0.0f64..0.999) {
            let b = BoostSpec::from_beta(e, beta).unwrap();
            let prod = boost_matrix(&b) * boost_matrix(&b.inverse());
            prop_assert!(prod.max_abs_diff(&Lorentz4::identity()) < 1e-10);
            prop_assert!(boost_matrix(&b).inverse().max_abs_diff(&boost_matrix(&b.inverse())) < 1e-10);
        }

        #[test]
        fn apply_boost_preserves_mass_shell(
            e in unit(), beta in 0.0f64..0.999, dir in unit(), r in 1.0f64..1e4,
        ) {
            let p = FourMomentum::from_energy_ratio(dir, r, 1.0).unwrap();
            let q = apply_boost(&boost_matrix(&BoostSpec::from_beta(e, beta).unwrap()), &p);
            // relative to E², the scale at which the subtraction happens
            let rel = (q.invariant_mass_sq() - 1.0).abs() / (q.energy() * q.energy());
            prop_assert!(rel < 1e-9);
            prop_assert!(FourMomentum::with_energy(q.spatial(), q.energy(), 1.0).is_ok());
        }

        #[test]
        fn standard_boost_maps_rest_to_p(dir in unit(), r in 1.0f64..1e4) {
            let p = FourMomentum::from_energy_ratio(dir, r, 1.0).unwrap();
            let rest = FourMomentum::at_rest(1.0).unwrap();
            let q = apply_boost(&standard_boost(&p), &rest);
            for (a, b) in q.to_array().iter().zip(p.to_array()) {
                prop_assert!((a - b).abs() < 1e-10 * r);
            }
        }

        #[test]
        fn closed_boost_matches_matrix(e in unit(), beta in 0.0f64..0.999, dir in unit(), r in 1.0f64..1e3) {
            let b = BoostSpec::from_beta(e, beta).unwrap();
            let p = FourMomentum::from_energy_ratio(dir, r, 1.0).unwrap();
            let a = apply_boost(&boost_matrix(&b), &p);
            let c = b.boost_momentum(&p);
            for (x, y) in a.to_array().iter().zip(c.to_array()) {
                prop_assert!((x - y).abs() < 1e-12 * a.energy());
            }
        }
    }
}
