//! Momentum-conserved two-particle Bell states and their transformation
//! under a Lorentz boost.
//!
//! Spin amplitudes are stored in the `(++, +−, −+, −−)` basis with the spin
//! quantization axis fixed at `ẑ` in every frame. The relativistic
//! normalization factor `√((Λp)⁰/p⁰)` per particle is kept apart from the
//! amplitudes in `kin_factor`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kinematics::{BoostSpec, FourMomentum};
use crate::linalg::{tensor, C64};
use crate::wigner::little_group_closed;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Labels for the two-qubit basis, in storage order.
pub const BASIS_LABELS: [&str; 4] = ["++", "+-", "-+", "--"];

/// Which of the four Bell states `Ψ_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellLabel {
    /// `(|++⟩ + |−−⟩)/√2`
    B00,
    /// `(|++⟩ − |−−⟩)/√2`
    B01,
    /// `(|+−⟩ + |−+⟩)/√2`
    B10,
    /// `(|+−⟩ − |−+⟩)/√2`
    B11,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::B00, BellLabel::B01, BellLabel::B10, BellLabel::B11];

    pub fn from_bits(i: u8, j: u8) -> Result<Self> {
        match (i, j) {
            (0, 0) => Ok(BellLabel::B00),
            (0, 1) => Ok(BellLabel::B01),
            (1, 0) => Ok(BellLabel::B10),
            (1, 1) => Ok(BellLabel::B11),
            _ => Err(Error::InvalidInput(format!("Bell indices must be bits, got ({i}, {j})"))),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Normalized amplitudes in basis order.
    pub fn amplitudes(self) -> [C64; 4] {
        let h = C64::from(FRAC_1_SQRT_2);
        let z = C64::from(0.0);
        match self {
            BellLabel::B00 => [h, z, z, h],
            BellLabel::B01 => [h, z, z, -h],
            BellLabel::B10 => [z, h, h, z],
            BellLabel::B11 => [z, h, -h, z],
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellLabel::B00 => "00",
            BellLabel::B01 => "01",
            BellLabel::B10 => "10",
            BellLabel::B11 => "11",
        })
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(BellLabel::B00),
            "01" => Ok(BellLabel::B01),
            "10" => Ok(BellLabel::B10),
            "11" => Ok(BellLabel::B11),
            other => Err(Error::InvalidInput(format!("unknown Bell state '{other}', expected 00, 01, 10 or 11"))),
        }
    }
}

/// A two-particle state: normalized spin amplitudes plus kinematics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    pub amps: [C64; 4],
    /// Product of the per-particle normalization factors, excluded from
    /// spin expectation values.
    pub kin_factor: f64,
    /// Momentum of the first particle.
    pub momentum: FourMomentum,
    /// Momentum of the second particle; `(−p⃗, E)` in the pair rest frame.
    pub partner: FourMomentum,
}

impl TwoQubitState {
    /// A spin state on a back-to-back pair `(p, −p)` with unit `kin_factor`.
    /// The amplitudes are normalized here.
    pub fn new(amps: [C64; 4], momentum: FourMomentum) -> Result<Self> {
        let norm = amps_norm(&amps);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidInput("state amplitudes must be finite and nonzero".into()));
        }
        Ok(TwoQubitState {
            amps: amps.map(|a| a / norm),
            kin_factor: 1.0,
            momentum,
            partner: momentum.parity(),
        })
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `basis_label re im` per amplitude and a trailing `kin_factor` line,
    /// 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (label, a) in BASIS_LABELS.iter().zip(&self.amps) {
            let _ = writeln!(out, "{label} {} {}", fmt_sig17(a.re), fmt_sig17(a.im));
        }
        let _ = writeln!(out, "kin_factor {}", fmt_sig17(self.kin_factor));
        out
    }

    /// Reads back the amplitudes and `kin_factor` written by [`dump`](Self::dump).
    pub fn parse_dump(text: &str) -> Result<([C64; 4], f64)> {
        let mut amps = [None; 4];
        let mut kin = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("bad number '{s}' in dump")))
            };
            match fields.as_slice() {
                ["kin_factor", v] => kin = Some(num(v)?),
                [label, re, im] => {
                    let k = BASIS_LABELS
                        .iter()
                        .position(|b| b == label)
                        .ok_or_else(|| Error::InvalidInput(format!("unknown basis label '{label}'")))?;
                    amps[k] = Some(C64::new(num(re)?, num(im)?));
                }
                _ => return Err(Error::InvalidInput(format!("malformed dump line '{line}'"))),
            }
        }
        let missing = || Error::InvalidInput("incomplete state dump".into());
        let mut out = [C64::from(0.0); 4];
        for (o, a) in out.iter_mut().zip(amps) {
            *o = a.ok_or_else(missing)?;
        }
        Ok((out, kin.ok_or_else(missing)?))
    }
}

/// Scientific notation with 17 significant digits, locale independent.
pub fn fmt_sig17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn amps_norm(amps: &[C64; 4]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Expansion coefficients of a state in the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellCoefficients {
    pub c00: C64,
    pub c01: C64,
    pub c10: C64,
    pub c11: C64,
}

impl BellCoefficients {
    pub fn as_array(&self) -> [C64; 4] {
        [self.c00, self.c01, self.c10, self.c11]
    }

    pub fn get(&self, label: BellLabel) -> C64 {
        self.as_array()[label.index()]
    }

    pub fn norm_sq(&self) -> f64 {
        self.as_array().iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ c_ij Ψ_ij` in the computational basis.
    pub fn reconstruct(&self) -> [C64; 4] {
        let mut out = [C64::from(0.0); 4];
        for (c, label) in self.as_array().iter().zip(BellLabel::ALL) {
            for (o, b) in out.iter_mut().zip(label.amplitudes()) {
                *o += c * b;
            }
        }
        out
    }
}

/// The Bell state `Ψ_ij` on the pair `(p, −p)`.
pub fn bell_state(label: BellLabel, p: &FourMomentum) -> Result<TwoQubitState> {
    if p.momentum() == 0.0 {
        return Err(Error::RestMomentum);
    }
    Ok(TwoQubitState {
        amps: label.amplitudes(),
        kin_factor: 1.0,
        momentum: *p,
        partner: p.parity(),
    })
}

/// Applies the boost to both particles: `amps' = (W(Λ,p₁) ⊗ W(Λ,p₂)) amps`,
/// with each particle's momentum carried to its boosted value.
pub fn boost_two_particle(s: &TwoQubitState, b: &BoostSpec) -> TwoQubitState {
    let w1 = little_group_closed(b, &s.momentum);
    let w2 = little_group_closed(b, &s.partner);
    let amps = tensor(&w1.su2.0, &w2.su2.0).apply(&s.amps);

    let p1 = b.boost_momentum(&s.momentum);
    let p2 = b.boost_momentum(&s.partner);
    let kin = (p1.energy() / s.momentum.energy() * p2.energy() / s.partner.energy()).sqrt();

    let norm = amps_norm(&amps);
    TwoQubitState {
        amps: amps.map(|a| a / norm),
        kin_factor: s.kin_factor * kin * norm,
        momentum: p1,
        partner: p2,
    }
}

/// Inner products `⟨Ψ_ij|s⟩`.
pub fn bell_decompose(s: &TwoQubitState) -> BellCoefficients {
    let c = BellLabel::ALL.map(|label| {
        label
            .amplitudes()
            .iter()
            .zip(&s.amps)
            .map(|(b, a)| b.conj() * a)
            .sum::<C64>()
    });
    BellCoefficients {
        c00: c[0],
        c01: c[1],
        c10: c[2],
        c11: c[3],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vec3;
    use crate::wigner::wigner_angle;
    use proptest::prelude::*;

    fn z_pair(r: f64) -> FourMomentum {
        FourMomentum::from_energy_ratio(Vec3::Z, r, 1.0).unwrap()
    }

    fn coeffs_close(c: &BellCoefficients, expected: [f64; 4], tol: f64) -> bool {
        c.as_array()
            .iter()
            .zip(expected)
            .all(|(a, e)| (a - C64::from(e)).norm() < tol)
    }

    #[test]
    fn bell_state_amplitudes() {
        let p = z_pair(2.0);
        let h = FRAC_1_SQRT_2;
        let s = bell_state(BellLabel::B00, &p).unwrap();
        assert_eq!(s.amps.map(|a| a.re), [h, 0.0, 0.0, h]);
        let s = bell_state(BellLabel::B11, &p).unwrap();
        assert_eq!(s.amps.map(|a| a.re), [0.0, h, -h, 0.0]);
        for label in BellLabel::ALL {
            let s = bell_state(label, &p).unwrap();
            assert!((s.norm_sq() - 1.0).abs() < 1e-15);
            assert_eq!(s.kin_factor, 1.0);
            assert_eq!(s.partner.spatial(), -p.spatial());
        }
        let rest = FourMomentum::at_rest(1.0).unwrap();
        assert_eq!(bell_state(BellLabel::B00, &rest), Err(Error::RestMomentum));
    }

    #[test]
    fn label_parsing() {
        for label in BellLabel::ALL {
            assert_eq!(label.to_string().parse::<BellLabel>().unwrap(), label);
        }
        assert!("12".parse::<BellLabel>().is_err());
        assert_eq!(BellLabel::from_bits(1, 0).unwrap(), BellLabel::B10);
        assert!(BellLabel::from_bits(2, 0).is_err());
    }

    #[test]
    fn zero_boost_is_identity() {
        let s = bell_state(BellLabel::B11, &z_pair(3.0)).unwrap();
        let b = BoostSpec::from_beta(Vec3::X, 0.0).unwrap();
        let t = boost_two_particle(&s, &b);
        for (a, b) in t.amps.iter().zip(&s.amps) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!((t.kin_factor - 1.0).abs() < 1e-15);
        assert_eq!(t.momentum, s.momentum);
    }

    #[test]
    fn boosted_bell_states_rotate_within_sectors() {
        let (beta, r) = (0.8, 10.0);
        let omega = wigner_angle(beta, r).unwrap();
        let b = BoostSpec::from_beta(Vec3::X, beta).unwrap();
        let p = z_pair(r);
        let (s, c) = omega.sin_cos();

        let d = bell_decompose(&boost_two_particle(&bell_state(BellLabel::B00, &p).unwrap(), &b));
        assert!(coeffs_close(&d, [c, 0.0, 0.0, -s], 1e-12));
        let d = bell_decompose(&boost_two_particle(&bell_state(BellLabel::B11, &p).unwrap(), &b));
        assert!(coeffs_close(&d, [s, 0.0, 0.0, c], 1e-12));
        let d = bell_decompose(&boost_two_particle(&bell_state(BellLabel::B01, &p).unwrap(), &b));
        assert!(coeffs_close(&d, [0.0, 1.0, 0.0, 0.0], 1e-12));
        let d = bell_decompose(&boost_two_particle(&bell_state(BellLabel::B10, &p).unwrap(), &b));
        assert!(coeffs_close(&d, [0.0, 0.0, 1.0, 0.0], 1e-12));

        let t = boost_two_particle(&bell_state(BellLabel::B00, &p).unwrap(), &b);
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        assert!((t.kin_factor - gamma).abs() < 1e-12);
        assert!((t.momentum.spatial().x - r * (gamma * beta)).abs() < 1e-12);
    }

    #[test]
    fn decompose_of_bell_state_is_basis_vector() {
        let p = z_pair(2.0);
        let d = bell_decompose(&bell_state(BellLabel::B00, &p).unwrap());
        assert!(coeffs_close(&d, [1.0, 0.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn dump_format() {
        let s = bell_state(BellLabel::B01, &z_pair(2.0)).unwrap();
        let text = s.dump();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "++ 7.0710678118654757e-1 0.0000000000000000e0");
        assert_eq!(lines[3], "-- -7.0710678118654757e-1 0.0000000000000000e0");
        assert_eq!(lines[4], "kin_factor 1.0000000000000000e0");
        assert!(TwoQubitState::parse_dump("++ 1 0\nkin_factor 1").is_err());
    }

    fn unit() -> impl Strategy<Value = Vec3> {
        (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(t, p)| Vec3::from_spherical(t, p))
    }

    fn label() -> impl Strategy<Value = BellLabel> {
        prop::sample::select(BellLabel::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn boost_preserves_norm(l in label(), e in unit(), beta in 0.0f64..0.99, dir in unit(), r in 1.01f64..1e3) {
            let p = FourMomentum::from_energy_ratio(dir, r, 1.0).unwrap();
            let s = bell_state(l, &p).unwrap();
            let t = boost_two_particle(&s, &BoostSpec::from_beta(e, beta).unwrap());
            prop_assert!((t.norm_sq() - 1.0).abs() < 1e-12);
            let d = bell_decompose(&t);
            prop_assert!((d.norm_sq() - 1.0).abs() < 1e-12);
            let rebuilt = d.reconstruct();
            for (a, b) in rebuilt.iter().zip(&t.amps) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }

        #[test]
        fn collinear_boosts_compose(l in label(), a1 in 0.0f64..1.5, a2 in 0.0f64..1.5, r in 1.01f64..100.0) {
            let p = z_pair(r);
            let s = bell_state(l, &p).unwrap();
            let b1 = BoostSpec::from_rapidity(Vec3::X, a1).unwrap();
            let b2 = BoostSpec::from_rapidity(Vec3::X, a2).unwrap();
            let b12 = BoostSpec::from_rapidity(Vec3::X, a1 + a2).unwrap();
            let chained = boost_two_particle(&boost_two_particle(&s, &b1), &b2);
            let direct = boost_two_particle(&s, &b12);
            for (a, b) in chained.amps.iter().zip(&direct.amps) {
                prop_assert!((a - b).norm() < 1e-10);
            }
            prop_assert!((chained.kin_factor - direct.kin_factor).abs() < 1e-10 * direct.kin_factor);
        }

        #[test]
        fn sectors_are_invariant(beta in 0.0f64..0.99, r in 1.01f64..1e3) {
            let b = BoostSpec::from_beta(Vec3::X, beta).unwrap();
            let p = z_pair(r);
            let omega = wigner_angle(beta, r).unwrap();
            let (s, c) = omega.sin_cos();
            let d00 = bell_decompose(&boost_two_particle(&bell_state(BellLabel::B00, &p).unwrap(), &b));
            let d11 = bell_decompose(&boost_two_particle(&bell_state(BellLabel::B11, &p).unwrap(), &b));
            // columns of the {Ψ00, Ψ11} mixing matrix
            prop_assert!(coeffs_close(&d00, [c, 0.0, 0.0, -s], 1e-12));
            prop_assert!(coeffs_close(&d11, [s, 0.0, 0.0, c], 1e-12));
            for l in [BellLabel::B01, BellLabel::B10] {
                let d = bell_decompose(&boost_two_particle(&bell_state(l, &p).unwrap(), &b));
                prop_assert!((d.get(l).norm() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn dump_round_trip(re in proptest::array::uniform4(-1.0f64..1.0), im in proptest::array::uniform4(-1.0f64..1.0), kin in 1.0f64..1e6) {
            let amps = [0, 1, 2, 3].map(|k| C64::new(re[k], im[k]));
            let state = TwoQubitState { amps, kin_factor: kin, momentum: z_pair(2.0), partner: z_pair(2.0).parity() };
            let (back, k) = TwoQubitState::parse_dump(&state.dump()).unwrap();
            prop_assert_eq!(back, amps);
            prop_assert_eq!(k, kin);
        }
    }
}
