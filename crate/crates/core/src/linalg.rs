//! Fixed-size complex matrix algebra for spin-½ and two-spin operators.
//!
//! Two-qubit operators use the basis ordering `|σ₁σ₂⟩ = (++, +−, −+, −−)`,
//! which makes [`tensor`] the ordinary Kronecker product.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

/// Default tolerance for elementwise comparisons of O(1) quantities.
pub const DEFAULT_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// A real Cartesian 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self * (1.0 / n))
    }

    /// Largest componentwise absolute difference.
    pub fn max_dist(&self, other: &Vec3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Unit vector from polar angle `theta` and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Vec3 {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Vec3::new(st * cp, st * sp, ct)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(v: [f64; 3]) -> Self {
        Vec3::new(v[0], v[1], v[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.17e}, {:.17e}, {:.17e})", self.x, self.y, self.z)
    }
}

/// Pauli axis tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Mat2([
            [C64::from(m[0][0]), C64::from(m[0][1])],
            [C64::from(m[1][0]), C64::from(m[1][1])],
        ])
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        let inv_d = d.inv();
        Some(Mat2([
            [m[1][1] * inv_d, -m[0][1] * inv_d],
            [-m[1][0] * inv_d, m[0][0] * inv_d],
        ]))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// max |U†U − I|.
    pub fn unitarity_residual(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    /// Coefficients `(a, b)` with `self = a·I + b·σ`, `b` complex.
    pub fn pauli_decompose(&self) -> (C64, [C64; 3]) {
        let m = &self.0;
        let a = (m[0][0] + m[1][1]) * 0.5;
        let bx = (m[0][1] + m[1][0]) * 0.5;
        let by = (m[1][0] - m[0][1]) * (I * -0.5);
        let bz = (m[0][0] - m[1][1]) * 0.5;
        (a, [bx, by, bz])
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut out = self;
        out += o;
        out
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, o: Mat2) {
        for r in 0..2 {
            for c in 0..2 {
                self.0[r][c] += o.0[r][c];
            }
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-ONE)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(C64::from(s))
    }
}

/// A 4×4 complex matrix acting on the two-qubit space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub const fn zero() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for k in 0..4 {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Mat4::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = self.0[c][r].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (r, row) in self.0.iter().enumerate() {
            out[r] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, o: Mat4) -> Mat4 {
        let mut out = self;
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] += o.0[r][c];
            }
        }
        out
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, o: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = (0..4).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        out
    }
}

/// The Pauli matrix for `axis`.
pub fn pauli(axis: Axis) -> Mat2 {
    match axis {
        Axis::X => Mat2([[ZERO, ONE], [ONE, ZERO]]),
        Axis::Y => Mat2([[ZERO, -I], [I, ZERO]]),
        Axis::Z => Mat2([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// `v·σ = v_x σ_x + v_y σ_y + v_z σ_z`.
pub fn sigma_dot(v: &Vec3) -> Mat2 {
    Mat2([
        [C64::new(v.z, 0.0), C64::new(v.x, -v.y)],
        [C64::new(v.x, v.y), C64::new(-v.z, 0.0)],
    ])
}

/// `a·I + b·σ` for complex coefficients.
fn compose_pauli(a: C64, b: [C64; 3]) -> Mat2 {
    Mat2([
        [a + b[2], b[0] - I * b[1]],
        [b[0] + I * b[1], a - b[2]],
    ])
}

/// Kronecker product `a ⊗ b` in the `(++, +−, −+, −−)` ordering.
pub fn tensor(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// Matrix exponential of a 2×2 complex matrix.
///
/// Writes `m = a·I + b·σ`; since `(b·σ)² = (b·b) I` with `q² = b·b`,
/// `exp(m) = e^a [cosh q · I + (sinh q / q) b·σ]`. This holds for every
/// complex 2×2 matrix, with a series for `sinh q / q` near `q = 0`.
pub fn exp2(m: &Mat2) -> Mat2 {
    let (a, b) = m.pauli_decompose();
    let q2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    let q = q2.sqrt();
    let (cosh_q, sinhc_q) = if q.norm() < 1e-4 {
        // Taylor tails are below 1e-20 at this radius.
        (
            ONE + q2 / 2.0 + q2 * q2 / 24.0 + q2 * q2 * q2 / 720.0,
            ONE + q2 / 6.0 + q2 * q2 / 120.0 + q2 * q2 * q2 / 5040.0,
        )
    } else {
        (q.cosh(), q.sinh() / q)
    };
    let scale = a.exp();
    compose_pauli(scale * cosh_q, [
        scale * sinhc_q * b[0],
        scale * sinhc_q * b[1],
        scale * sinhc_q * b[2],
    ])
}

/// Matrix exponential by scaling and squaring with a truncated Taylor
/// series. Slower than [`exp2`]; kept as an independent route.
pub fn exp2_series(m: &Mat2) -> Mat2 {
    let norm = m.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max) * 2.0;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = *m * (0.5f64).powi(squarings as i32);
    let mut term = Mat2::identity();
    let mut sum = Mat2::identity();
    for k in 1..=20 {
        term = (term * scaled) * (1.0 / k as f64);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pauli_matrices_are_standard() {
        assert_eq!(pauli(Axis::X), Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]));
        assert_eq!(pauli(Axis::Y), Mat2([[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]));
        assert_eq!(pauli(Axis::Z), Mat2::from_real([[1.0, 0.0], [0.0, -1.0]]));
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let s = pauli(axis);
            assert_eq!(s.hermiticity_residual(), 0.0);
            assert_eq!(s.trace(), ZERO);
            assert_eq!(s * s, Mat2::identity());
        }
    }

    #[test]
    fn pauli_algebra_identity() {
        // (σ·a)(σ·b) = a·b + iσ·(a×b)
        let a = Vec3::new(0.3, -1.2, 0.7);
        let b = Vec3::new(-0.4, 0.5, 2.0);
        let lhs = sigma_dot(&a) * sigma_dot(&b);
        let rhs = Mat2::identity() * a.dot(&b) + sigma_dot(&a.cross(&b)).scale(I);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn sigma_dot_basis_cases() {
        assert_eq!(sigma_dot(&Vec3::ZERO), Mat2::zero());
        assert_eq!(sigma_dot(&Vec3::Z), pauli(Axis::Z));
        assert_eq!(sigma_dot(&Vec3::X), pauli(Axis::X));
        assert_eq!(sigma_dot(&Vec3::Y), pauli(Axis::Y));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(&Mat2::identity(), &Mat2::identity()), Mat4::identity());
        let zz = tensor(&pauli(Axis::Z), &pauli(Axis::Z));
        let mut expected = Mat4::zero();
        for (k, d) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            expected.0[k][k] = c(d, 0.0);
        }
        assert_eq!(zz, expected);

        // σx ⊗ σy expanded by hand: anti-diagonal reading from top-right.
        let xy = tensor(&pauli(Axis::X), &pauli(Axis::Y));
        let mut expected = Mat4::zero();
        expected.0[0][3] = c(0.0, -1.0);
        expected.0[1][2] = c(0.0, 1.0);
        expected.0[2][1] = c(0.0, -1.0);
        expected.0[3][0] = c(0.0, 1.0);
        assert_eq!(xy, expected);
    }

    #[test]
    fn exp2_examples() {
        assert!(exp2(&Mat2::zero()).max_abs_diff(&Mat2::identity()) < 1e-15);

        let m = sigma_dot(&Vec3::X) * 0.5;
        let closed = Mat2::identity() * 0.5f64.cosh() + pauli(Axis::X) * 0.5f64.sinh();
        assert!(exp2(&m).max_abs_diff(&closed) < 1e-13);
        assert!(exp2_series(&m).max_abs_diff(&closed) < 1e-13);

        // i(π/2)σ_y → iσ_y
        let m = pauli(Axis::Y).scale(c(0.0, std::f64::consts::FRAC_PI_2));
        let expected = pauli(Axis::Y).scale(I);
        assert!(exp2(&m).max_abs_diff(&expected) < 1e-13);
        assert!(exp2_series(&m).max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn exp2_handles_nilpotent_and_trace() {
        // [[0,1],[0,0]] is nilpotent: exp = I + m.
        let n = Mat2([[ZERO, ONE], [ZERO, ZERO]]);
        assert!(exp2(&n).max_abs_diff(&(Mat2::identity() + n)) < 1e-15);
        let d = Mat2([[c(0.3, 0.1), ZERO], [ZERO, c(-1.1, 0.4)]]);
        let expected = Mat2([[c(0.3, 0.1).exp(), ZERO], [ZERO, c(-1.1, 0.4).exp()]]);
        assert!(exp2(&d).max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn inverse_of_singular_is_none() {
        assert!(Mat2::from_real([[1.0, 2.0], [2.0, 4.0]]).inverse().is_none());
        let m = Mat2([[c(1.0, 2.0), c(0.5, 0.0)], [c(0.0, -1.0), c(3.0, 0.2)]]);
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(&Mat2::identity()) < 1e-15);
    }

    fn entry() -> impl Strategy<Value = C64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(r, i)| C64::new(r, i))
    }

    fn mat2() -> impl Strategy<Value = Mat2> {
        proptest::array::uniform4(entry()).prop_map(|e| Mat2([[e[0], e[1]], [e[2], e[3]]]))
    }

    fn unit() -> impl Strategy<Value = Vec3> {
        (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(t, p)| Vec3::from_spherical(t, p))
    }

    proptest! {
        #[test]
        fn sigma_dot_unit_squares_to_identity(v in unit()) {
            let s = sigma_dot(&v);
            prop_assert!(s.hermiticity_residual() < 1e-14);
            prop_assert!(s.trace().norm() < 1e-14);
            prop_assert!((s * s).max_abs_diff(&Mat2::identity()) < 1e-14);
        }

        #[test]
        fn tensor_mixed_product(a in mat2(), b in mat2(), c in mat2(), d in mat2()) {
            let lhs = tensor(&a, &b) * tensor(&c, &d);
            let rhs = tensor(&(a * c), &(b * d));
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        }

        #[test]
        fn tensor_is_bilinear(a in mat2(), a2 in mat2(), b in mat2(), s in entry()) {
            let lhs = tensor(&(a.scale(s) + a2), &b);
            let rhs = tensor(&a, &b).scale(s) + tensor(&a2, &b);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        }

        #[test]
        fn exp2_inverse_pair(m in mat2()) {
            let prod = exp2(&m) * exp2(&(-m));
            prop_assert!(prod.max_abs_diff(&Mat2::identity()) < 1e-12);
        }

        #[test]
        fn exp2_agrees_with_series(m in mat2()) {
            let closed = exp2(&m);
            let series = exp2_series(&m);
            let scale = closed.0.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(closed.max_abs_diff(&series) < 1e-12 * scale);
        }
    }
}
