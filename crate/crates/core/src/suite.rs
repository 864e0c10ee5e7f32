//! Seeded randomized property suite over every module.
//!
//! Each property draws its inputs from its own ChaCha stream derived from the
//! suite seed, so a report is a pure function of the seed and of the
//! derivative formulas under test.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kinematics::{
    body_rate_from_rdot, rdot_body_rate, rdot_inverse_body_rate, rdot_inverse_world_rate, rdot_world_rate,
    world_rate_from_rdot, RotationDerivative,
};
use crate::linalg::{Mat3, Vec3};
use crate::planar::{embed_planar, planar_consistency_check, rot2};
use crate::propagation::{exp_so3_matrix, propagate, GyroSample, IntegratorChoice};
use crate::random::{random_rotation, random_unit_axis, random_vector};
use crate::so3::{skew, unskew, AngularVelocity, FrameId, RotationMatrix};
use crate::verification::{check_against_body_rate, check_against_world_rate, FnTrajectory};

const A: FrameId = FrameId::World;
const B: FrameId = FrameId::Body;

type DerivativeFn = fn(&RotationMatrix<f64>, &AngularVelocity<f64>) -> Result<RotationDerivative<f64>>;

/// The four derivative formulas the suite exercises.
///
/// Swapping one out lets a deliberately broken formula be run through the
/// same properties.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub world_rate: DerivativeFn,
    pub body_rate: DerivativeFn,
    pub inverse_world_rate: DerivativeFn,
    pub inverse_body_rate: DerivativeFn,
}

impl Default for Formulas {
    fn default() -> Self {
        Self {
            world_rate: rdot_world_rate,
            body_rate: rdot_body_rate,
            inverse_world_rate: rdot_inverse_world_rate,
            inverse_body_rate: rdot_inverse_body_rate,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_defect: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Inputs of the worst failing case, printed with round-trip precision.
    pub failing_case: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "property suite, seed {}", self.seed);
        for o in &self.outcomes {
            let _ = writeln!(
                out,
                "{} {:<34} cases={:<5} max_defect={:.3e} tol={:.1e}",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.cases,
                o.max_defect,
                o.tolerance
            );
            if let Some(case) = &o.failing_case {
                let _ = writeln!(out, "     replay: {case}");
            }
        }
        let passed = self.outcomes.iter().filter(|o| o.passed).count();
        let _ = writeln!(out, "{passed}/{} properties passed", self.outcomes.len());
        out
    }
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    max_defect: f64,
    failed: bool,
    worst_failure: Option<(f64, String)>,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, cases: 0, max_defect: 0.0, failed: false, worst_failure: None }
    }

    fn record(&mut self, defect: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        let ok = defect <= self.tolerance;
        if defect.is_nan() {
            self.max_defect = f64::NAN;
        } else if !self.max_defect.is_nan() {
            self.max_defect = self.max_defect.max(defect);
        }
        if !ok {
            self.failed = true;
            let worse = match &self.worst_failure {
                None => true,
                Some((d, _)) => defect.is_nan() || defect > *d,
            };
            if worse {
                self.worst_failure = Some((defect, case()));
            }
        }
    }

    fn error(&mut self, case: String) {
        self.record(f64::NAN, || case);
    }

    fn finish(self) -> PropertyOutcome {
        PropertyOutcome {
            name: self.name,
            cases: self.cases,
            max_defect: self.max_defect,
            tolerance: self.tolerance,
            passed: !self.failed && self.cases > 0,
            failing_case: self.worst_failure.map(|(_, c)| c),
        }
    }
}

fn stream(seed: u64, property: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(property);
    rng
}

fn rate(v: Vec3<f64>, frame: FrameId) -> AngularVelocity<f64> {
    AngularVelocity::new(v, frame)
}

fn entrywise(a: &Mat3<f64>, b: &Mat3<f64>) -> f64 {
    (*a - *b).max_abs()
}

fn cross_reference(a: &Vec3<f64>, b: &Vec3<f64>) -> Vec3<f64> {
    let (a, b) = (a.0, b.0);
    Vec3([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])
}

fn case_rw(r: &RotationMatrix<f64>, w: &Vec3<f64>) -> String {
    format!("R={:?} w={:?}", r.matrix().to_row_array(), w.0)
}

fn skew_layout(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 1);
    let mut t = Tracker::new("skew layout", 0.0);
    for _ in 0..1000 {
        let w: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        match skew(w) {
            Ok(s) => {
                let m = s.matrix();
                let d = (m + m.transpose()).max_abs().max((unskew(&s) - w).max_abs());
                t.record(d, || format!("w={:?}", w.0));
            }
            Err(e) => t.error(format!("w={:?} error={e}", w.0)),
        }
    }
    t.finish()
}

fn cross_product(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 2);
    let mut t = Tracker::new("cross-product equivalence", 1e-12);
    for _ in 0..1000 {
        let w: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        let x: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        match skew(w) {
            Ok(s) => {
                let d = (s.apply(x) - cross_reference(&w, &x)).norm();
                t.record(d, || format!("w={:?} x={:?}", w.0, x.0));
            }
            Err(e) => t.error(format!("w={:?} error={e}", w.0)),
        }
    }
    t.finish()
}

fn conjugation(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 3);
    let mut t = Tracker::new("conjugation identity", 1e-12);
    for _ in 0..1000 {
        let r = random_rotation::<f64, _>(&mut rng, B, A);
        let w: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        match (r.conjugate_skew(w), r.conjugate_skew_by_products(w)) {
            (Ok(lhs), Ok(rhs)) => t.record(lhs.matrix().distance(&rhs), || case_rw(&r, &w)),
            _ => t.error(case_rw(&r, &w)),
        }
    }
    t.finish()
}

fn inverse_involution(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 4);
    let mut t = Tracker::new("inverse involution", 0.0);
    for _ in 0..1000 {
        let r = random_rotation::<f64, _>(&mut rng, B, A);
        let rr = r.inverse().inverse();
        let tags_ok = rr.from_frame() == B && rr.to_frame() == A;
        let d = if tags_ok { entrywise(rr.matrix(), r.matrix()) } else { f64::INFINITY };
        t.record(d, || format!("R={:?}", r.matrix().to_row_array()));
    }
    t.finish()
}

struct DerivativeCase {
    r: RotationMatrix<f64>,
    w_b: Vec3<f64>,
    w_a: Vec3<f64>,
    world: RotationDerivative<f64>,
    body: RotationDerivative<f64>,
    inverse_world: RotationDerivative<f64>,
    inverse_body: RotationDerivative<f64>,
}

impl DerivativeCase {
    fn describe(&self) -> String {
        case_rw(&self.r, &self.w_b)
    }
}

fn derivative_cases(seed: u64, formulas: &Formulas) -> std::result::Result<Vec<DerivativeCase>, String> {
    let mut rng = stream(seed, 5);
    let mut out = Vec::with_capacity(1000);
    for _ in 0..1000 {
        let r = random_rotation::<f64, _>(&mut rng, B, A);
        let w_b: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        let w_a = *r.matrix() * w_b;
        let r_inv = r.inverse();
        let built = (|| -> Result<_> {
            Ok((
                (formulas.world_rate)(&r, &rate(w_a, A))?,
                (formulas.body_rate)(&r, &rate(w_b, B))?,
                (formulas.inverse_world_rate)(&r_inv, &rate(w_a, A))?,
                (formulas.inverse_body_rate)(&r_inv, &rate(w_b, B))?,
            ))
        })();
        match built {
            Ok((world, body, inverse_world, inverse_body)) => {
                out.push(DerivativeCase { r, w_b, w_a, world, body, inverse_world, inverse_body })
            }
            Err(e) => return Err(format!("{} error={e}", case_rw(&r, &w_b))),
        }
    }
    Ok(out)
}

fn four_formula(cases: &[DerivativeCase]) -> PropertyOutcome {
    let mut t = Tracker::new("four-formula consistency", 1e-12);
    for c in cases {
        let d = entrywise(c.world.matrix(), c.body.matrix())
            .max(entrywise(c.inverse_world.matrix(), c.inverse_body.matrix()));
        t.record(d, || c.describe());
    }
    t.finish()
}

fn transpose_duality(cases: &[DerivativeCase]) -> PropertyOutcome {
    let mut t = Tracker::new("transpose duality", 1e-12);
    for c in cases {
        let d = entrywise(&c.world.matrix().transpose(), c.inverse_world.matrix());
        t.record(d, || c.describe());
    }
    t.finish()
}

fn tangent_skewness(cases: &[DerivativeCase]) -> PropertyOutcome {
    let mut t = Tracker::new("skew-symmetry of rdot r^T", 1e-12);
    for c in cases {
        let r = *c.r.matrix();
        let ri = r.transpose();
        let defect = |rdot: &Mat3<f64>, rot: &Mat3<f64>| (*rdot * rot.transpose()).skewness_defect();
        let d = defect(c.world.matrix(), &r)
            .max(defect(c.body.matrix(), &r))
            .max(defect(c.inverse_world.matrix(), &ri))
            .max(defect(c.inverse_body.matrix(), &ri));
        t.record(d, || c.describe());
    }
    t.finish()
}

fn rate_recovery(cases: &[DerivativeCase]) -> PropertyOutcome {
    let mut t = Tracker::new("rate recovery round trip", 1e-12);
    let tol = 1e-9;
    for c in cases {
        let recovered = (|| -> Result<f64> {
            let mut d: f64 = 0.0;
            for rdot in [&c.world, &c.body] {
                let wa = world_rate_from_rdot(&c.r, rdot, tol)?;
                let wb = body_rate_from_rdot(&c.r, rdot, tol)?;
                d = d.max((wa.rate() - c.w_a).norm()).max((wb.rate() - c.w_b).norm());
            }
            Ok(d)
        })();
        match recovered {
            Ok(d) => t.record(d, || c.describe()),
            Err(e) => t.error(format!("{} error={e}", c.describe())),
        }
    }
    t.finish()
}

fn point_velocity(seed: u64, formulas: &Formulas) -> PropertyOutcome {
    let mut rng = stream(seed, 6);
    let mut t = Tracker::new("point-velocity identity", 1e-12);
    let p_b = Vec3::new(1.0, -2.0, 0.5);
    for _ in 0..100 {
        let r = random_rotation::<f64, _>(&mut rng, B, A);
        let w_a: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        match (formulas.world_rate)(&r, &rate(w_a, A)) {
            Ok(rdot) => {
                let lhs = *rdot.matrix() * p_b;
                let rhs = cross_reference(&w_a, &(*r.matrix() * p_b));
                t.record((lhs - rhs).norm(), || case_rw(&r, &w_a));
            }
            Err(e) => t.error(format!("{} error={e}", case_rw(&r, &w_a))),
        }
    }
    t.finish()
}

fn planar_consistency(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 7);
    let mut t = Tracker::new("planar consistency", 1e-13);
    for _ in 0..1000 {
        let alpha: f64 = rng.random_range(-10.0..=10.0);
        let alpha_dot: f64 = rng.random_range(-10.0..=10.0);
        t.record(planar_consistency_check(alpha, alpha_dot), || format!("alpha={alpha:?} alpha_dot={alpha_dot:?}"));
    }
    t.finish()
}

fn planar_rate_invariance(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 8);
    let mut t = Tracker::new("planar w_A = w_B", 1e-15);
    for _ in 0..1000 {
        let alpha: f64 = rng.random_range(-10.0..=10.0);
        let alpha_dot: f64 = rng.random_range(-10.0..=10.0);
        let w_b = Vec3::new(0.0, 0.0, alpha_dot);
        match embed_planar(alpha).transform_angular_velocity(&rate(w_b, B)) {
            Ok(w_a) => t.record((w_a.rate() - w_b).max_abs(), || format!("alpha={alpha:?} alpha_dot={alpha_dot:?}")),
            Err(e) => t.error(format!("alpha={alpha:?} error={e}")),
        }
    }
    t.finish()
}

fn planar_periodicity(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 9);
    let mut t = Tracker::new("planar 2pi periodicity", 1e-13);
    for _ in 0..1000 {
        let alpha: f64 = rng.random_range(-10.0..=10.0);
        let (a, b) = (rot2(alpha), rot2(alpha + TAU));
        let d = a.iter().flatten().zip(b.iter().flatten()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        t.record(d, || format!("alpha={alpha:?}"));
    }
    t.finish()
}

fn random_log(rng: &mut ChaCha8Rng, steps: usize) -> Vec<GyroSample<f64>> {
    let mut t = 0.0;
    (0..=steps)
        .map(|_| {
            let s = GyroSample::body(t, random_vector(rng, -5.0, 5.0));
            t += rng.random_range(1e-3..=1e-2);
            s
        })
        .collect()
}

fn group_preservation(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 10);
    let mut t = Tracker::new("group preservation", 1e-9);
    for i in 0..10 {
        let r0 = random_rotation::<f64, _>(&mut rng, B, A);
        let log = random_log(&mut rng, 2000);
        for method in [IntegratorChoice::ExpmapBody, IntegratorChoice::ExpmapWorld] {
            match propagate(&r0, &log, method) {
                Ok(traj) => t.record(traj.max_orth_defect(), || format!("log={i} method={method}")),
                Err(e) => t.error(format!("log={i} method={method} error={e}")),
            }
        }
    }
    t.finish()
}

fn left_right_stepping(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 11);
    let mut t = Tracker::new("left/right stepping agreement", 1e-9);
    for _ in 0..10 {
        let r0 = random_rotation::<f64, _>(&mut rng, B, A);
        let w_b: Vec3<f64> = random_vector(&mut rng, -3.0, 3.0);
        let log: Vec<_> = (0..=1000).map(|k| GyroSample::body(k as f64 * 1e-3, w_b)).collect();
        match (propagate(&r0, &log, IntegratorChoice::ExpmapBody), propagate(&r0, &log, IntegratorChoice::ExpmapWorld))
        {
            (Ok(body), Ok(world)) => {
                let d = body
                    .samples
                    .iter()
                    .zip(&world.samples)
                    .fold(0.0f64, |m, (b, w)| m.max(b.attitude.distance(&w.attitude)));
                t.record(d, || case_rw(&r0, &w_b));
            }
            _ => t.error(case_rw(&r0, &w_b)),
        }
    }
    t.finish()
}

fn zero_order_hold(seed: u64) -> PropertyOutcome {
    let mut rng = stream(seed, 12);
    let mut t = Tracker::new("zero-order-hold substep invariance", 1e-12);
    for _ in 0..20 {
        let r0 = random_rotation::<f64, _>(&mut rng, B, A);
        let coarse = random_log(&mut rng, 10);
        let mut fine = Vec::new();
        for pair in coarse.windows(2) {
            let dt = (pair[1].t - pair[0].t) / 4.0;
            for k in 0..4 {
                fine.push(GyroSample { t: pair[0].t + k as f64 * dt, rate: pair[0].rate });
            }
        }
        fine.push(*coarse.last().unwrap());
        match (
            propagate(&r0, &coarse, IntegratorChoice::ExpmapBody),
            propagate(&r0, &fine, IntegratorChoice::ExpmapBody),
        ) {
            (Ok(a), Ok(b)) => t.record(a.last().attitude.distance(&b.last().attitude), || {
                format!("R0={:?} first_rate={:?}", r0.matrix().to_row_array(), coarse[0].rate.rate().0)
            }),
            _ => t.error(format!("R0={:?}", r0.matrix().to_row_array())),
        }
    }
    t.finish()
}

fn finite_difference(seed: u64) -> (PropertyOutcome, PropertyOutcome) {
    let mut rng = stream(seed, 13);
    let mut order = Tracker::new("finite-difference order", 0.2);
    let mut accuracy = Tracker::new("finite-difference accuracy", 1e-7);
    for _ in 0..10 {
        let v: Vec3<f64> = random_unit_axis(&mut rng);
        let m0 = *random_rotation::<f64, _>(&mut rng, B, A).matrix();
        let world_flow = FnTrajectory::new(-10.0, 10.0, move |t: f64| {
            RotationMatrix::from_matrix_unchecked(exp_so3_matrix(v.scale(t)) * m0, B, A)
        });
        let body_flow = FnTrajectory::new(-10.0, 10.0, move |t: f64| {
            RotationMatrix::from_matrix_unchecked(m0 * exp_so3_matrix(v.scale(t)), B, A)
        });
        for _ in 0..5 {
            let t: f64 = rng.random_range(0.0..=PI);
            let case = || format!("axis={:?} R0={:?} t={t:?}", v.0, m0.to_row_array());
            let reports = (|| -> Result<_> {
                Ok([
                    check_against_world_rate(&world_flow, |_| rate(v, A), t, 1e-3)?,
                    check_against_body_rate(&body_flow, |_| rate(v, B), t, 1e-3)?,
                    check_against_world_rate(&world_flow, |_| rate(v, A), t, 1e-5)?,
                    check_against_body_rate(&body_flow, |_| rate(v, B), t, 1e-5)?,
                ])
            })();
            match reports {
                Ok([w, b, w_fine, b_fine]) => {
                    for rep in [w, b] {
                        order.record((rep.order_estimate - 2.0).abs(), case);
                    }
                    for rep in [w_fine, b_fine] {
                        accuracy.record(rep.analytic_error, case);
                    }
                }
                Err(e) => {
                    order.error(format!("{} error={e}", case()));
                    accuracy.error(format!("{} error={e}", case()));
                }
            }
        }
    }
    (order.finish(), accuracy.finish())
}

/// Runs every property with the given seed against `formulas`.
pub fn run_property_suite(seed: u64, formulas: &Formulas) -> SuiteReport {
    let mut outcomes = vec![skew_layout(seed), cross_product(seed), conjugation(seed), inverse_involution(seed)];

    match derivative_cases(seed, formulas) {
        Ok(cases) => {
            outcomes.push(four_formula(&cases));
            outcomes.push(transpose_duality(&cases));
            outcomes.push(tangent_skewness(&cases));
            outcomes.push(rate_recovery(&cases));
        }
        Err(case) => {
            for name in [
                "four-formula consistency",
                "transpose duality",
                "skew-symmetry of rdot r^T",
                "rate recovery round trip",
            ] {
                let mut t = Tracker::new(name, 1e-12);
                t.error(case.clone());
                outcomes.push(t.finish());
            }
        }
    }
    outcomes.push(point_velocity(seed, formulas));
    outcomes.push(planar_consistency(seed));
    outcomes.push(planar_rate_invariance(seed));
    outcomes.push(planar_periodicity(seed));
    outcomes.push(group_preservation(seed));
    outcomes.push(left_right_stepping(seed));
    outcomes.push(zero_order_hold(seed));
    let (order, accuracy) = finite_difference(seed);
    outcomes.push(order);
    outcomes.push(accuracy);

    SuiteReport { seed, outcomes }
}
