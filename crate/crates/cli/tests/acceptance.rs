//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p rotkin-cli --test acceptance`.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotkin::propagation::exp_so3_matrix;
use rotkin::random::{random_rotation, random_unit_axis, random_vector};
use rotkin::verification::FnTrajectory;
use rotkin::{
    body_rate_from_rdot, check_against_body_rate, check_against_world_rate, embed_planar, planar_consistency_check,
    propagate, rdot_body_rate, rdot_inverse_body_rate, rdot_inverse_world_rate, rdot_world_rate, skew, unskew,
    world_rate_from_rdot, AngularVelocity, FrameId, GyroSample, IntegratorChoice, Mat3, RotationMatrix, Vec3,
};
use rotkin_cli::io::parse_trajectory_csv;

const A: FrameId = FrameId::World;
const B: FrameId = FrameId::Body;
const SEED: u64 = 20_240_601;
const CASES: usize = 1000;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    match limit {
        Some(l) => Verdict::new(
            v.passed && elapsed < l,
            format!("{} runtime={:.3}s (limit {}s)", v.detail, elapsed.as_secs_f64(), l.as_secs()),
        ),
        None => Verdict::new(v.passed, format!("{} runtime={:.3}s", v.detail, elapsed.as_secs_f64())),
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn vdist(a: Vec3<f64>, b: Vec3<f64>) -> f64 {
    (a - b).norm()
}

fn max_entry(a: &Mat3<f64>, b: &Mat3<f64>) -> f64 {
    (*a - *b).max_abs()
}

fn skew_identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cross_err: f64 = 0.0;
    for _ in 0..CASES {
        let w: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        let x: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        let got = skew(w).unwrap().apply(x);
        cross_err = cross_err.max(vdist(got, Vec3(cross(w.0, x.0))));
    }
    let mut conj_err: f64 = 0.0;
    for _ in 0..CASES {
        let r: RotationMatrix = random_rotation(&mut rng, B, A);
        let w: Vec3<f64> = random_vector(&mut rng, -10.0, 10.0);
        let lhs = skew(*r.matrix() * w).unwrap().matrix();
        let rhs = *r.matrix() * skew(w).unwrap().matrix() * r.matrix().transpose();
        conj_err = conj_err.max(lhs.distance(&rhs));
    }
    Verdict::new(
        cross_err <= 1e-12 && conj_err <= 1e-12,
        format!("cross max={cross_err:.3e} conjugation max={conj_err:.3e} tol=1e-12"),
    )
}

struct KinematicCase {
    r: RotationMatrix,
    w_a: AngularVelocity,
    w_b: AngularVelocity,
    rdot: Mat3<f64>,
}

fn kinematic_cases() -> Vec<KinematicCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x2);
    (0..CASES)
        .map(|_| {
            let r: RotationMatrix = random_rotation(&mut rng, B, A);
            let w_b = AngularVelocity::new(random_vector(&mut rng, -10.0, 10.0), B);
            let w_a = r.transform_angular_velocity(&w_b).unwrap();
            KinematicCase { r, w_a, w_b, rdot: Mat3::zeros() }
        })
        .collect()
}

fn four_formula(cases: &mut [KinematicCase]) -> Verdict {
    let (mut fwd, mut inv, mut dual): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for c in cases.iter_mut() {
        let r_inv = c.r.inverse();
        let eq_world = rdot_world_rate(&c.r, &c.w_a).unwrap();
        let eq_body = rdot_body_rate(&c.r, &c.w_b).unwrap();
        let eq_inv_world = rdot_inverse_world_rate(&r_inv, &c.w_a).unwrap();
        let eq_inv_body = rdot_inverse_body_rate(&r_inv, &c.w_b).unwrap();
        fwd = fwd.max(max_entry(eq_world.matrix(), eq_body.matrix()));
        inv = inv.max(max_entry(eq_inv_world.matrix(), eq_inv_body.matrix()));
        dual = dual.max(max_entry(eq_inv_world.matrix(), &eq_world.matrix().transpose()));
        c.rdot = *eq_world.matrix();
    }
    Verdict::new(
        fwd <= 1e-12 && inv <= 1e-12 && dual <= 1e-12,
        format!("forward max={fwd:.3e} inverse max={inv:.3e} transpose max={dual:.3e} tol=1e-12"),
    )
}

fn skewness(cases: &[KinematicCase]) -> Verdict {
    let worst = cases
        .iter()
        .map(|c| {
            let r = c.r.matrix();
            (c.rdot * r.transpose() + *r * c.rdot.transpose()).frobenius_norm()
        })
        .fold(0.0, f64::max);
    Verdict::new(worst <= 1e-12, format!("max={worst:.3e} tol=1e-12 cases={}", cases.len()))
}

fn finite_difference() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x4);
    let (mut order_lo, mut order_hi, mut worst_err): (f64, f64, f64) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for _ in 0..10 {
        let m0 = *random_rotation::<f64, _>(&mut rng, B, A).matrix();
        let v: Vec3<f64> = random_unit_axis::<f64, _>(&mut rng).scale(rng.random_range(0.5..3.0));
        let t: f64 = rng.random_range(0.1..0.9);

        let left =
            FnTrajectory::new(0.0, 1.0, |s: f64| RotationMatrix::new(exp_so3_matrix(v.scale(s)) * m0, B, A).unwrap());
        let right =
            FnTrajectory::new(0.0, 1.0, |s: f64| RotationMatrix::new(m0 * exp_so3_matrix(v.scale(s)), B, A).unwrap());
        let world = |_: f64| AngularVelocity::new(v, A);
        let body = |_: f64| AngularVelocity::new(v, B);

        for rep in [
            check_against_world_rate(&left, world, t, 1e-3).unwrap(),
            check_against_body_rate(&right, body, t, 1e-3).unwrap(),
        ] {
            order_lo = order_lo.min(rep.order_estimate);
            order_hi = order_hi.max(rep.order_estimate);
        }
        for rep in [
            check_against_world_rate(&left, world, t, 1e-5).unwrap(),
            check_against_body_rate(&right, body, t, 1e-5).unwrap(),
        ] {
            worst_err = worst_err.max(rep.analytic_error);
        }
    }
    Verdict::new(
        order_lo >= 1.8 && order_hi <= 2.2 && worst_err <= 1e-7,
        format!("order in [{order_lo:.4}, {order_hi:.4}] want [1.8, 2.2]; error@1e-5 max={worst_err:.3e} tol=1e-7"),
    )
}

fn rate_recovery(cases: &[KinematicCase]) -> Verdict {
    let (mut world, mut body): (f64, f64) = (0.0, 0.0);
    for c in cases {
        let d = rotkin::RotationDerivative::of(&c.r, c.rdot);
        let w_a = world_rate_from_rdot(&c.r, &d, 1e-9).unwrap();
        let w_b = body_rate_from_rdot(&c.r, &d, 1e-9).unwrap();
        assert_eq!((w_a.expressed_in(), w_b.expressed_in()), (A, B));
        world = world.max(vdist(w_a.rate(), c.w_a.rate()));
        body = body.max(vdist(w_b.rate(), c.w_b.rate()));
        let direct = unskew(&skew(w_a.rate()).unwrap());
        world = world.max(vdist(direct, c.w_a.rate()));
    }
    Verdict::new(world <= 1e-12 && body <= 1e-12, format!("w_A max={world:.3e} w_B max={body:.3e} tol=1e-12"))
}

fn planar() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x6);
    let (mut defect, mut rates): (f64, f64) = (0.0, 0.0);
    for _ in 0..CASES {
        let alpha: f64 = rng.random_range(-10.0..10.0);
        let alpha_dot: f64 = rng.random_range(-10.0..10.0);
        defect = defect.max(planar_consistency_check(alpha, alpha_dot));
        let e3 = Vec3::new(0.0, 0.0, alpha_dot);
        let w_a = embed_planar(alpha).transform_angular_velocity(&AngularVelocity::new(e3, B)).unwrap();
        rates = rates.max(vdist(w_a.rate(), e3));
    }
    Verdict::new(
        defect <= 1e-13 && rates <= 1e-15,
        format!("consistency max={defect:.3e} tol=1e-13; |w_A - w_B| max={rates:.3e} tol=1e-15"),
    )
}

fn constant_log(rate: Vec3<f64>, dt: f64, steps: usize) -> Vec<GyroSample> {
    (0..=steps).map(|i| GyroSample::body(i as f64 * dt, rate)).collect()
}

fn propagation() -> Verdict {
    let r0 = RotationMatrix::identity(B, A);
    let w = Vec3::new(0.0, 0.0, FRAC_PI_2);
    let target = *embed_planar(FRAC_PI_2).matrix();

    let mut worst: f64 = 0.0;
    for (dt, steps) in [(1.0, 1), (0.1, 10), (0.001, 1000)] {
        let traj = propagate(&r0, &constant_log(w, dt, steps), IntegratorChoice::ExpmapBody).unwrap();
        worst = worst.max(traj.last().attitude.distance(&target));
    }

    let ten_seconds = constant_log(w, 0.01, 1000);
    let raw = propagate(&r0, &ten_seconds, IntegratorChoice::EulerRaw).unwrap().last().orth_defect;
    let exp = propagate(&r0, &ten_seconds, IntegratorChoice::ExpmapBody).unwrap().last().orth_defect;

    let long = propagate(&r0, &constant_log(Vec3::new(0.3, -1.1, 0.7), 1e-3, 100_000), IntegratorChoice::ExpmapBody)
        .unwrap()
        .last()
        .orth_defect;

    Verdict::new(
        worst <= 1e-10 && raw > exp && long <= 1e-9,
        format!(
            "quarter-turn max={worst:.3e} tol=1e-10; 10s defect EULER_RAW={raw:.3e} > EXPMAP_BODY={exp:.3e}; \
             1e5-step defect={long:.3e} tol=1e-9"
        ),
    )
}

fn cli_end_to_end() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_rotkin");
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/quarter_turn.csv");
    let run = |input: &Path| Command::new(bin).args(["deadreckon", "--input"]).arg(input).output().unwrap();

    let first = run(&fixture);
    let second = run(&fixture);
    let rows = parse_trajectory_csv(&String::from_utf8_lossy(&first.stdout)).unwrap_or_default();
    let dist = rows.last().map_or(f64::INFINITY, |r| r.attitude.distance(embed_planar(FRAC_PI_2).matrix()));
    let identical = first.status.success() && first.stdout == second.stdout;

    let dir = std::env::temp_dir().join(format!("rotkin-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let corrupted = dir.join("corrupted.csv");
    let text = fs::read_to_string(&fixture).unwrap().replacen("t,wx,wy,wz", "t,wx,wy,wq", 1);
    fs::write(&corrupted, text).unwrap();
    let code = run(&corrupted).status.code();
    let _ = fs::remove_dir_all(&dir);

    Verdict::new(
        dist <= 1e-10 && identical && code == Some(2),
        format!(
            "quarter-turn distance={dist:.3e} tol=1e-10; byte-identical={identical}; corrupted header exit={code:?}"
        ),
    )
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut cases = kinematic_cases();
    let verdicts = [
        (1, "skew-operator identities", timed(secs(1), skew_identities)),
        (2, "four-formula consistency", timed(secs(1), || four_formula(&mut cases))),
        (3, "skewness of rdot r^T", timed(None, || skewness(&cases))),
        (4, "finite-difference oracle", timed(secs(5), finite_difference)),
        (5, "rate recovery round trip", timed(None, || rate_recovery(&cases))),
        (6, "planar consistency", timed(None, planar)),
        (7, "propagation", timed(secs(10), propagation)),
        (8, "cli end-to-end", timed(None, cli_end_to_end)),
    ];
    let mut failed = 0;
    for (n, name, v) in &verdicts {
        println!("criterion {n}: {} {name:<26} {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.passed);
    }
    println!("{}/{} criteria passed", verdicts.len() - failed, verdicts.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
