//! The spin-½ Wigner little-group element `W(Λ, p) = L⁻¹(Λp) Λ L(p)`.
//!
//! Three routes are provided and cross-checked in tests:
//! - [`little_group_closed`]: half-angle closed form for `cos(Ω/2)` and
//!   `sin(Ω/2) n̂` in terms of the boost rapidity α and particle rapidity δ;
//! - [`little_group_oracle`]: the literal product of three 2×2 spinor
//!   matrices;
//! - [`lorentz_little_group`]: the same composition in 4×4 form, from which
//!   the rotation angle is read off the spatial block.
//!
//! The spinor rotation is `cos(Ω/2) I + i sin(Ω/2) σ·n̂` with `Ω ≥ 0` and
//! `n̂ ∝ ê × p̂`.

use crate::error::{Error, Result};
use crate::kinematics::{apply_boost, boost_matrix, BoostSpec, FourMomentum, Lorentz4};
use crate::linalg::{exp2, sigma_dot, Mat2, Vec3, C64};
use twofloat::TwoFloat;

/// A 2×2 spinor representation matrix `D^(1/2)(·)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorMatrix(pub Mat2);

impl SpinorMatrix {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Option<SpinorMatrix> {
        self.0.inverse().map(SpinorMatrix)
    }

    pub fn max_abs_diff(&self, other: &SpinorMatrix) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

impl std::ops::Mul for SpinorMatrix {
    type Output = SpinorMatrix;
    fn mul(self, o: SpinorMatrix) -> SpinorMatrix {
        SpinorMatrix(self.0 * o.0)
    }
}

/// A little-group element for a massive spin-½ particle: a pure rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    /// Rotation angle Ω in `[0, π]`.
    pub omega: f64,
    /// Unit rotation axis; `ẑ` when the rotation is trivial.
    pub axis: Vec3,
    pub su2: SpinorMatrix,
}

impl WignerRotation {
    pub fn identity() -> Self {
        WignerRotation {
            omega: 0.0,
            axis: Vec3::Z,
            su2: SpinorMatrix(Mat2::identity()),
        }
    }

    /// `cos(Ω/2) I + i sin(Ω/2) σ·n̂`.
    pub fn from_angle_axis(omega: f64, axis: Vec3) -> Self {
        let (s, c) = (omega / 2.0).sin_cos();
        let su2 = Mat2::identity() * c + sigma_dot(&axis).scale(C64::new(0.0, s));
        WignerRotation {
            omega,
            axis,
            su2: SpinorMatrix(su2),
        }
    }
}

/// `D(Λ) = cosh(α/2) I + sinh(α/2) σ·ê`.
pub fn d_half_pure_boost(b: &BoostSpec) -> SpinorMatrix {
    let half = b.rapidity() / 2.0;
    SpinorMatrix(Mat2::identity() * half.cosh() + sigma_dot(&b.direction()) * half.sinh())
}

/// `D(L(p)) = √((E+m)/2m) I + √((E−m)/2m) σ·p̂`; identity at rest.
pub fn d_half_standard(p: &FourMomentum) -> SpinorMatrix {
    let Some(dir) = p.direction() else {
        return SpinorMatrix(Mat2::identity());
    };
    let m = p.mass();
    let e = p.energy();
    let plus = ((e + m) / (2.0 * m)).sqrt();
    // (E − m) cancels badly near rest; |p|² / (E + m) is the same quantity.
    let minus = (p.momentum() * p.momentum() / ((e + m) * 2.0 * m)).sqrt();
    SpinorMatrix(Mat2::identity() * plus + sigma_dot(&dir) * minus)
}

/// `exp((α/2) σ·ê)`, the generator form of the spinor boost.
pub fn d_half_exponential(e: &Vec3, alpha: f64) -> SpinorMatrix {
    SpinorMatrix(exp2(&(sigma_dot(e) * (alpha / 2.0))))
}

/// `(cos(Ω/2), sin(Ω/2) n̂)` from the rapidity form of the little group.
///
/// With `c = ê·p̂` and `N = [½ + ½ cosh α cosh δ + ½ sinh α sinh δ c]^½`:
/// `cos(Ω/2) = (cosh(α/2) cosh(δ/2) + sinh(α/2) sinh(δ/2) c) / N` and
/// `sin(Ω/2) n̂ = sinh(α/2) sinh(δ/2) (ê × p̂) / N`.
pub fn half_angle_terms(b: &BoostSpec, p: &FourMomentum) -> (f64, Vec3) {
    let Some(p_hat) = p.direction() else {
        return (1.0, Vec3::ZERO);
    };
    let e = b.direction();
    let alpha = b.rapidity();
    let delta = p.rapidity();
    let c = e.dot(&p_hat);
    let (sa2, ca2) = ((alpha / 2.0).sinh(), (alpha / 2.0).cosh());
    let (sd2, cd2) = ((delta / 2.0).sinh(), (delta / 2.0).cosh());
    // ½(1 + cosh α cosh δ + sinh α sinh δ c) rewritten in half-angle
    // products so it stays accurate at large rapidities.
    let norm_sq = (ca2 * cd2 + sa2 * sd2 * c).powi(2) + (sa2 * sd2).powi(2) * (1.0 - c * c).max(0.0);
    let norm = norm_sq.sqrt();
    let cos_half = (ca2 * cd2 + sa2 * sd2 * c) / norm;
    let sin_axis = e.cross(&p_hat) * (sa2 * sd2 / norm);
    (cos_half, sin_axis)
}

/// Closed-form little-group rotation for boost `b` acting on momentum `p`.
///
/// Collinear boosts and particles at rest give the identity rotation with
/// the axis set to `ẑ`.
pub fn little_group_closed(b: &BoostSpec, p: &FourMomentum) -> WignerRotation {
    let (cos_half, sin_axis) = half_angle_terms(b, p);
    let sin_half = sin_axis.norm();
    if sin_half == 0.0 {
        return WignerRotation::identity();
    }
    let axis = sin_axis * (1.0 / sin_half);
    let omega = 2.0 * sin_half.atan2(cos_half);
    let su2 = Mat2::identity() * cos_half + sigma_dot(&sin_axis).scale(C64::new(0.0, 1.0));
    WignerRotation {
        omega,
        axis,
        su2: SpinorMatrix(su2),
    }
}

/// `D⁻¹(L(Λp)) D(Λ) D(L(p))`, evaluated literally.
pub fn little_group_oracle(b: &BoostSpec, p: &FourMomentum) -> SpinorMatrix {
    let boosted = apply_boost(&boost_matrix(b), p);
    let outer = d_half_standard(&boosted)
        .inverse()
        .expect("spinor boost has unit determinant");
    outer * d_half_pure_boost(b) * d_half_standard(p)
}

/// `W = L⁻¹(Λp) Λ L(p)` as a 4×4 matrix.
///
/// The factors reach `E′γE/m²` in size while `W` is `O(1)`, so the
/// composition runs in double-double and is rounded once at the end.
pub fn lorentz_little_group(b: &BoostSpec, p: &FourMomentum) -> Lorentz4 {
    let sh = Dd::from(b.rapidity().sinh());
    let ch = (sh * sh + 1.0).sqrt();
    let lambda = dd_boost(dd_unit(b.direction()), sh, ch, dd_div(sh * sh, ch + 1.0));

    let m = Dd::from(p.mass());
    let pv = p.spatial().to_array().map(Dd::from);
    let energy = (dd_dot(&pv, &pv) + m * m).sqrt();
    let boosted = dd_apply(&lambda, [pv[0], pv[1], pv[2], energy]);

    let outer = dd_standard([boosted[0], boosted[1], boosted[2]], m);
    let w = dd_mul(&dd_mul(&dd_inverse(&outer), &lambda), &dd_standard(pv, m));
    Lorentz4(w.map(|row| row.map(f64::from)))
}

type Dd = TwoFloat;
type DdMat = [[Dd; 4]; 4];

// twofloat's dd/dd quotient is only f64-accurate; one correction step fixes it
fn dd_div(a: Dd, b: Dd) -> Dd {
    let q = a / b;
    q + (a - q * b) / b.hi()
}

fn dd_dot(a: &[Dd; 3], b: &[Dd; 3]) -> Dd {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dd_unit(v: Vec3) -> [Dd; 3] {
    let v = v.to_array().map(Dd::from);
    let n = dd_dot(&v, &v).sqrt();
    v.map(|x| dd_div(x, n))
}

fn dd_boost(e: [Dd; 3], sh: Dd, ch: Dd, ch_minus_one: Dd) -> DdMat {
    let mut m = [[Dd::from(0.0); 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = e[i] * e[j] * ch_minus_one;
        }
        m[i][i] += 1.0;
        m[i][3] = e[i] * sh;
        m[3][i] = e[i] * sh;
    }
    m[3][3] = ch;
    m
}

fn dd_standard(p: [Dd; 3], m: Dd) -> DdMat {
    let k2 = dd_dot(&p, &p);
    if k2.hi() == 0.0 {
        return dd_boost([Dd::from(0.0); 3], Dd::from(0.0), Dd::from(1.0), Dd::from(0.0));
    }
    let k = k2.sqrt();
    let e = (k2 + m * m).sqrt();
    dd_boost(p.map(|x| dd_div(x, k)), dd_div(k, m), dd_div(e, m), dd_div(k2, m * (e + m)))
}

fn dd_apply(l: &DdMat, v: [Dd; 4]) -> [Dd; 4] {
    let mut out = [Dd::from(0.0); 4];
    for (o, row) in out.iter_mut().zip(l) {
        for (x, y) in row.iter().zip(&v) {
            *o += *x * *y;
        }
    }
    out
}

fn dd_mul(a: &DdMat, b: &DdMat) -> DdMat {
    let mut out = [[Dd::from(0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// `η Λᵀ η`
fn dd_inverse(l: &DdMat) -> DdMat {
    let mut out = [[Dd::from(0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let sign = if (i == 3) != (j == 3) { -1.0 } else { 1.0 };
            out[i][j] = l[j][i] * sign;
        }
    }
    out
}

/// Angle and axis of the spatial rotation block of a little-group element.
///
/// The angle comes from `tr R = 1 + 2 cos Ω` and the antisymmetric part;
/// the axis is the one of the active 3D rotation (`None` if trivial).
pub fn rotation_from_lorentz(w: &Lorentz4) -> (f64, Option<Vec3>) {
    let r = w.spatial_block();
    let trace = r[0][0] + r[1][1] + r[2][2];
    let anti = Vec3::new(r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]);
    let sin_omega = anti.norm() / 2.0;
    let cos_omega = (trace - 1.0) / 2.0;
    (sin_omega.atan2(cos_omega), anti.normalized())
}

fn check_scan_inputs(beta: f64, e_over_m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidBeta(beta));
    }
    if !(e_over_m.is_finite() && e_over_m >= 1.0) {
        return Err(Error::InvalidEnergyRatio(e_over_m));
    }
    Ok(())
}

/// Wigner angle for momentum along `ẑ` and a boost along `x̂`:
/// `tan Ω = sinh α sinh δ / (cosh α + cosh δ)`.
pub fn wigner_angle(beta: f64, e_over_m: f64) -> Result<f64> {
    check_scan_inputs(beta, e_over_m)?;
    let alpha = beta.atanh();
    let sinh_delta = ((e_over_m - 1.0) * (e_over_m + 1.0)).sqrt();
    Ok((alpha.sinh() * sinh_delta).atan2(alpha.cosh() + e_over_m))
}

/// The same special geometry as [`wigner_angle`], as a full rotation:
/// `[[cos(Ω/2), −sin(Ω/2)], [sin(Ω/2), cos(Ω/2)]]` about `−ŷ`.
pub fn wigner_su2_special(beta: f64, e_over_m: f64) -> Result<WignerRotation> {
    let omega = wigner_angle(beta, e_over_m)?;
    if omega == 0.0 {
        return Ok(WignerRotation::identity());
    }
    let (s, c) = (omega / 2.0).sin_cos();
    Ok(WignerRotation {
        omega,
        axis: -Vec3::Y,
        su2: SpinorMatrix(Mat2::from_real([[c, -s], [s, c]])),
    })
}
