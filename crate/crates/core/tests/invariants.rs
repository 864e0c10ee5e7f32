use proptest::prelude::*;
use rotkin::so3::Vector3 as Tagged;
use rotkin::*;

fn vec3() -> impl Strategy<Value = Vec3<f64>> {
    prop::array::uniform3(-10.0f64..10.0).prop_map(Vec3)
}

fn rotation() -> impl Strategy<Value = RotationMatrix> {
    (prop::array::uniform3(-1.0f64..1.0), 0.0f64..std::f64::consts::PI)
        .prop_filter_map("axis too short", |(a, angle)| {
            let axis = Vec3(a);
            let n = axis.norm();
            (n > 1e-3).then(|| exp_so3(axis.scale(angle / n), FrameId::Body).unwrap())
        })
        .prop_map(|r| RotationMatrix::new(*r.matrix(), FrameId::Body, FrameId::World).unwrap())
}

fn cross(a: &Vec3<f64>, b: &Vec3<f64>) -> Vec3<f64> {
    Vec3([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])
}

fn frame() -> impl Strategy<Value = FrameId> {
    prop_oneof![Just(FrameId::World), Just(FrameId::Body), Just(FrameId::Named("aux"))]
}

proptest! {
    #[test]
    fn skew_is_exactly_skew_and_invertible(w in vec3()) {
        let s = skew(w).unwrap();
        let m = s.matrix();
        prop_assert_eq!((m + m.transpose()).max_abs(), 0.0);
        prop_assert_eq!(unskew(&s), w);
    }

    #[test]
    fn skew_product_is_cross_product(w in vec3(), x in vec3()) {
        let d = (skew(w).unwrap().apply(x) - cross(&w, &x)).norm();
        prop_assert!(d <= 1e-12);
    }

    #[test]
    fn conjugation_identity(r in rotation(), w in vec3()) {
        let lhs = r.conjugate_skew(w).unwrap().matrix();
        let rhs = r.conjugate_skew_by_products(w).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-12);
    }

    #[test]
    fn double_inverse_is_identity(r in rotation()) {
        prop_assert_eq!(r.inverse().inverse(), r);
        prop_assert!((*r.matrix() * *r.inverse().matrix()).distance(&Mat3::identity()) <= 1e-14);
    }

    #[test]
    fn transforms_reject_wrong_frames(r in rotation(), v in vec3(), f in frame()) {
        let p = Tagged::from_vec(v, f);
        let w = so3::AngularVelocity::new(v, f);
        prop_assert_eq!(r.transform_point(&p).is_ok(), f == FrameId::Body);
        prop_assert_eq!(r.transform_angular_velocity(&w).is_ok(), f == FrameId::Body);
    }

    #[test]
    fn transforms_are_isometries(r in rotation(), v in vec3()) {
        let w = so3::AngularVelocity::new(v, FrameId::Body);
        let wa = r.transform_angular_velocity(&w).unwrap();
        prop_assert!((wa.rate().norm() - v.norm()).abs() <= 1e-13);
        let p = Tagged::from_vec(v, FrameId::Body);
        let back = r.inverse().transform_point(&r.transform_point(&p).unwrap()).unwrap();
        prop_assert!((back.components - v).norm() <= 1e-13);
    }

    #[test]
    fn four_formulas_agree(r in rotation(), w_b in vec3()) {
        let wb = so3::AngularVelocity::new(w_b, FrameId::Body);
        let wa = r.transform_angular_velocity(&wb).unwrap();
        let d2 = rdot_world_rate(&r, &wa).unwrap();
        let d3 = rdot_body_rate(&r, &wb).unwrap();
        let d4 = rdot_inverse_world_rate(&r.inverse(), &wa).unwrap();
        let d5 = rdot_inverse_body_rate(&r.inverse(), &wb).unwrap();
        prop_assert!((*d2.matrix() - *d3.matrix()).max_abs() <= 1e-12);
        prop_assert!((*d4.matrix() - *d5.matrix()).max_abs() <= 1e-12);
        prop_assert!((d2.matrix().transpose() - *d4.matrix()).max_abs() <= 1e-12);
        prop_assert!(skewness_defect(&(*d2.matrix() * r.matrix().transpose())) <= 1e-12);
    }

    #[test]
    fn point_velocity(r in rotation(), w_a in vec3(), p_b in vec3()) {
        let wa = so3::AngularVelocity::new(w_a, FrameId::World);
        let rdot = rdot_world_rate(&r, &wa).unwrap();
        let lhs = *rdot.matrix() * p_b;
        let rhs = cross(&w_a, &(*r.matrix() * p_b));
        prop_assert!((lhs - rhs).norm() <= 1e-11);
    }

    #[test]
    fn planar_identities(alpha in -10.0f64..10.0, alpha_dot in -10.0f64..10.0) {
        prop_assert!(planar_consistency_check(alpha, alpha_dot) <= 1e-13);
        let w = so3::AngularVelocity::new(Vec3::new(0.0, 0.0, alpha_dot), FrameId::Body);
        let wa = embed_planar(alpha).transform_angular_velocity(&w).unwrap();
        prop_assert!((wa.rate() - w.rate()).max_abs() <= 1e-15);
    }

    #[test]
    fn reorthonormalize_projects_perturbed_rotations(r in rotation(), noise in prop::array::uniform9(-1e-3f64..1e-3)) {
        let m = *r.matrix() + Mat3::from_row_slice(&noise);
        let q = reorthonormalize(&m, FrameId::Body, FrameId::World).unwrap();
        prop_assert!(q.orthogonality_error() <= 1e-14);
        prop_assert!(q.matrix().distance(r.matrix()) <= 1e-2);
    }
}

#[test]
fn single_precision_path() {
    let w = Vec3::new(0.0f32, 0.0, 1.0);
    let r = embed_planar(0.5f32);
    let wb = so3::AngularVelocity::new(w, FrameId::Body);
    let rdot = rdot_body_rate(&r, &wb).unwrap();
    let back = body_rate_from_rdot(&r, &rdot, kinematics::default_recovery_tol()).unwrap();
    assert!((back.rate() - w).norm() < 1e-6);
    assert!(planar_consistency_check(0.5f32, 1.0) < 1e-6);
    let q = reorthonormalize(&Mat3::<f32>::identity().scale(1.5), FrameId::Body, FrameId::World).unwrap();
    assert!(q.orthogonality_error() <= 1e-6);
    let step: RotationMatrixF32 = step_expmap_body(&r, &wb, 0.25).unwrap();
    assert!(step.matrix().distance(embed_planar(0.75f32).matrix()) < 1e-6);
}
