//! Randomized invariant suite.
//!
//! Every check draws `samples` random inputs from its own ChaCha stream under
//! the master seed and records the largest residual together with the inputs
//! that produced it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, SQRT_2, TAU};
use std::fmt;

use crate::bell::{bell_decompose, bell_state, boost_two_particle, BellLabel};
use crate::kinematics::{apply_boost, boost_matrix, BoostSpec, FourMomentum};
use crate::linalg::{Mat2, Vec3, C64};
use crate::observables::{
    chsh, expectation_case1_closed, expectation_case2_closed, joint_expectation, rel_spin_observable, ChshSettings,
    MeasurementDirection,
};
use crate::wigner::{
    d_half_exponential, d_half_pure_boost, d_half_standard, little_group_closed, little_group_oracle,
    lorentz_little_group, rotation_from_lorentz, wigner_angle, WignerRotation,
};

/// Signature of the closed-form little-group routine under test.
pub type LittleGroupFn = fn(&BoostSpec, &FourMomentum) -> WignerRotation;

pub const BETA_MAX: f64 = 0.99;
pub const E_OVER_M_MAX: f64 = 1e3;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_residual: f64,
    /// Inputs of the worst sample, for reproduction.
    pub worst_inputs: String,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} max_residual={:.3e} tol={:.0e} samples={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tolerance,
            self.samples
        )?;
        if !self.passed {
            write!(f, "\n     worst: {}", self.worst_inputs)?;
        }
        Ok(())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={}", self.seed)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn unit(&mut self) -> Vec3 {
        let cos_t: f64 = self.rng.gen_range(-1.0..=1.0);
        let phi = self.rng.gen_range(0.0..TAU);
        Vec3::from_spherical(cos_t.acos(), phi)
    }

    fn beta(&mut self) -> f64 {
        self.rng.gen_range(0.0..=BETA_MAX)
    }

    fn e_over_m(&mut self) -> f64 {
        self.rng.gen_range(1.0..=E_OVER_M_MAX)
    }

    fn label(&mut self) -> BellLabel {
        BellLabel::ALL[self.rng.gen_range(0..4)]
    }

    fn direction(&mut self) -> MeasurementDirection {
        MeasurementDirection::from_spherical(self.rng.gen_range(0.0..PI), self.rng.gen_range(0.0..TAU))
    }
}

type SampleFn = Box<dyn Fn(&mut Sampler) -> (f64, String) + Send + Sync>;

struct Check {
    name: &'static str,
    tolerance: f64,
    sample: SampleFn,
}

fn check<F>(name: &'static str, tolerance: f64, f: F) -> Check
where
    F: Fn(&mut Sampler) -> (f64, String) + Send + Sync + 'static,
{
    Check {
        name,
        tolerance,
        sample: Box::new(f),
    }
}

fn special(beta: f64, r: f64) -> (BoostSpec, FourMomentum) {
    (
        BoostSpec::from_beta(Vec3::X, beta).expect("β in range"),
        FourMomentum::from_energy_ratio(Vec3::Z, r, 1.0).expect("E/m ≥ 1"),
    )
}

fn general(s: &mut Sampler) -> (BoostSpec, FourMomentum, String) {
    let (e, beta, dir, r) = (s.unit(), s.beta(), s.unit(), s.e_over_m());
    let b = BoostSpec::from_beta(e, beta).expect("β in range");
    let p = FourMomentum::from_energy_ratio(dir, r, 1.0).expect("E/m ≥ 1");
    (b, p, format!("beta={beta:?} e_over_m={r:?} boost_dir={e:?} p_dir={dir:?}"))
}

fn unit_det_residual(m: &Mat2) -> f64 {
    m.unitarity_residual().max((m.det() - C64::from(1.0)).norm())
}

fn checks(little_group: LittleGroupFn) -> Vec<Check> {
    vec![
        check("little_group_oracle", 1e-10, move |s| {
            let (b, p, inputs) = general(s);
            let closed = little_group(&b, &p);
            (closed.su2.max_abs_diff(&little_group_oracle(&b, &p)), inputs)
        }),
        check("little_group_unitary", 1e-12, move |s| {
            let (b, p, inputs) = general(s);
            (unit_det_residual(&little_group(&b, &p).su2.0), inputs)
        }),
        check("lorentz_composition_angle", 1e-9, |s| {
            let (beta, r) = (s.beta(), s.e_over_m());
            let (b, p) = special(beta, r);
            let (angle, _) = rotation_from_lorentz(&lorentz_little_group(&b, &p));
            let want = wigner_angle(beta, r).expect("valid inputs");
            ((angle - want).abs(), format!("beta={beta:?} e_over_m={r:?}"))
        }),
        check("spinor_exponential", 1e-12, |s| {
            let (e, alpha) = (s.unit(), s.rng.gen_range(0.0..5.0));
            let b = BoostSpec::from_rapidity(e, alpha).expect("unit direction");
            let res = d_half_exponential(&e, alpha).max_abs_diff(&d_half_pure_boost(&b));
            (res, format!("alpha={alpha:?} dir={e:?}"))
        }),
        check("spinor_standard", 1e-12, |s| {
            let (dir, r) = (s.unit(), s.e_over_m());
            let p = FourMomentum::from_energy_ratio(dir, r, 1.0).expect("E/m ≥ 1");
            let res = d_half_standard(&p).max_abs_diff(&d_half_exponential(&dir, p.rapidity()));
            (res, format!("e_over_m={r:?} p_dir={dir:?}"))
        }),
        check("mass_shell", 1e-12, |s| {
            let (b, p, inputs) = general(s);
            let q = apply_boost(&boost_matrix(&b), &p);
            ((q.invariant_mass_sq() - 1.0).abs() / (q.energy() * q.energy()), inputs)
        }),
        check("minkowski_form", 1e-12, |s| {
            let (b, _, inputs) = general(s);
            let l = boost_matrix(&b);
            (l.minkowski_residual() / (b.gamma() * b.gamma()), inputs)
        }),
        check("norm_preservation", 1e-12, |s| {
            let (b, p, inputs) = general(s);
            let label = s.label();
            let t = boost_two_particle(&bell_state(label, &p).expect("moving"), &b);
            ((t.norm_sq() - 1.0).abs(), format!("{inputs} state={label}"))
        }),
        check("bell_sector_rotation", 1e-12, |s| {
            let (beta, r) = (s.beta(), s.e_over_m());
            let (b, p) = special(beta, r);
            let omega = wigner_angle(beta, r).expect("valid inputs");
            let (sn, cs) = omega.sin_cos();
            let expected = [
                (BellLabel::B00, [cs, 0.0, 0.0, -sn]),
                (BellLabel::B01, [0.0, 1.0, 0.0, 0.0]),
                (BellLabel::B10, [0.0, 0.0, 1.0, 0.0]),
                (BellLabel::B11, [sn, 0.0, 0.0, cs]),
            ];
            let mut worst: f64 = 0.0;
            for (label, want) in expected {
                let d = bell_decompose(&boost_two_particle(&bell_state(label, &p).expect("moving"), &b));
                for (got, w) in d.as_array().iter().zip(want) {
                    worst = worst.max((got - C64::from(w)).norm());
                }
            }
            (worst, format!("beta={beta:?} e_over_m={r:?}"))
        }),
        check("observable_square", 1e-12, |s| {
            let (d, e, beta) = (s.direction(), s.unit(), s.rng.gen_range(0.0..=1.0));
            let inputs = format!("beta={beta:?} dir={:?} boost_dir={e:?}", d.vector());
            match rel_spin_observable(&d, beta, &e) {
                Ok(o) => ((o.m * o.m).max_abs_diff(&Mat2::identity()), inputs),
                Err(_) => (0.0, inputs),
            }
        }),
        check("expectation_closed_forms", 1e-12, |s| {
            let (a, b, beta, r) = (s.direction(), s.direction(), s.beta(), s.e_over_m());
            let (boost, p) = special(beta, r);
            let oa = rel_spin_observable(&a, beta, &Vec3::X).expect("β < 1");
            let ob = rel_spin_observable(&b, beta, &Vec3::X).expect("β < 1");
            let omega = wigner_angle(beta, r).expect("valid inputs");
            let s00 = boost_two_particle(&bell_state(BellLabel::B00, &p).expect("moving"), &boost);
            let s10 = boost_two_particle(&bell_state(BellLabel::B10, &p).expect("moving"), &boost);
            let r1 = (joint_expectation(&s00, &oa, &ob) - expectation_case1_closed(&a, &b, beta, omega).expect("β < 1")).abs();
            let r2 = (joint_expectation(&s10, &oa, &ob) - expectation_case2_closed(&a, &b, beta).expect("β < 1")).abs();
            (
                r1.max(r2),
                format!("beta={beta:?} e_over_m={r:?} a={:?} b={:?}", a.vector(), b.vector()),
            )
        }),
        check("tsirelson_bound", 1e-12, |s| {
            let (b, p, inputs) = general(s);
            let label = s.label();
            let st = boost_two_particle(&bell_state(label, &p).expect("moving"), &b);
            let c = ChshSettings {
                a: s.direction(),
                a_prime: s.direction(),
                b: s.direction(),
                b_prime: s.direction(),
            };
            let v = chsh(&st, &c, b.beta(), &b.direction()).expect("β < 1");
            ((v.abs() - 2.0 * SQRT_2).max(0.0), format!("{inputs} state={label} settings={c:?}"))
        }),
    ]
}

/// Runs the suite against the library's own closed-form little group.
pub fn run_suite(seed: u64, samples: usize) -> VerifyReport {
    run_suite_with(seed, samples, little_group_closed)
}

/// Runs the suite with `little_group` substituted for the closed form.
pub fn run_suite_with(seed: u64, samples: usize, little_group: LittleGroupFn) -> VerifyReport {
    let checks = checks(little_group);
    let reports = checks
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut sampler = Sampler { rng };
            let mut worst = (f64::NEG_INFINITY, String::new());
            for _ in 0..samples {
                let (res, inputs) = (c.sample)(&mut sampler);
                if res.is_nan() || res > worst.0 {
                    worst = (res, inputs);
                    if res.is_nan() {
                        break;
                    }
                }
            }
            CheckReport {
                name: c.name,
                tolerance: c.tolerance,
                max_residual: worst.0,
                worst_inputs: worst.1,
                samples,
                passed: worst.0 <= c.tolerance,
            }
        })
        .collect();
    VerifyReport { seed, checks: reports }
}
