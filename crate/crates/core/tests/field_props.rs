use num_complex::Complex64;
use proptest::prelude::*;
use qvf_core::field::*;

fn cplx(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, t)
}

fn raw() -> impl Strategy<Value = (Complex64, Complex64, Complex64, Complex64)> {
    let z = || (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b));
    (-1.0..1.0f64, prop_oneof![0.2..3.0f64, -3.0..-0.2f64], z(), z(), z())
        .prop_map(|(l, w, a, b, c)| (Complex64::new(l, w), a, b, c))
}

fn normalized() -> impl Strategy<Value = FieldParams> {
    (0.0..1.0f64, 0..3usize, 0.0..1.0f64, 0.0..6.3f64, 0.0..1.0f64, 0.0..6.3f64).prop_map(|(l, form, r1, t1, r2, t2)| {
        let one = Complex64::new(1.0, 0.0);
        match form {
            0 => FieldParams::new(l, one, cplx(2.0 * r1, t1), cplx(r2, t2), Form::N1),
            1 => FieldParams::new(l, cplx(r1, t1), Complex64::new(2.0, 0.0), cplx(r2, t2), Form::N2),
            _ => FieldParams::new(l, cplx(r1, t1), cplx(2.0 * r2, t2), one, Form::N3),
        }
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent((mu, a, b, c) in raw()) {
        let (once, _) = normalize(mu, a, b, c).unwrap();
        let (twice, t) = normalize(once.mu(), once.a, once.b, once.c).unwrap();
        prop_assert_eq!(once, twice);
        prop_assert_eq!(t, Transform::IDENTITY);
    }

    #[test]
    fn transform_reproduces_output((mu, a, b, c) in raw()) {
        let (f, t) = normalize(mu, a, b, c).unwrap();
        let (m2, a2, b2, c2) = t.apply(mu, a, b, c);
        let scale = 1.0 + a.norm() + b.norm() + c.norm();
        prop_assert!((m2 - f.mu()).norm() <= 1e-12 * scale);
        prop_assert!((a2 - f.a).norm() <= 1e-12 * scale);
        prop_assert!((b2 - f.b).norm() <= 1e-12 * scale);
        prop_assert!((c2 - f.c).norm() <= 1e-12 * scale);
    }

    #[test]
    fn polar_h_is_bounded(f in normalized(), theta in 0.0..6.3f64) {
        prop_assert!(polar_data(&f, theta).h.norm() <= 4.0 + 1e-12);
    }

    #[test]
    fn real_coefficients_give_centers(a in -1.0..1.0f64, b in -2.0..2.0f64) {
        let f = FieldParams::new(0.0, Complex64::new(1.0, 0.0), Complex64::new(b, 0.0), Complex64::new(a, 0.0), Form::N1).unwrap();
        prop_assert_eq!(center_residuals(&f).as_array(), [0.0; 4]);
    }

    #[test]
    fn singular_points_solve_the_system(f in normalized()) {
        let tol = 1e-10;
        let set = singular_points(&f, tol).unwrap();
        let mu = f.mu();
        for p in &set.points {
            let (u, v) = (p.u, p.v);
            let e1 = mu * u + f.a * u * u + f.b * u * v + f.c * v * v;
            let e2 = mu.conj() * v + f.a.conj() * v * v + f.b.conj() * u * v + f.c.conj() * u * u;
            let scale = 1.0 + u.norm_sqr() + v.norm_sqr();
            prop_assert!(e1.norm() <= 10.0 * tol * scale && e2.norm() <= 10.0 * tol * scale, "{:?}", p);
        }
    }

    #[test]
    fn decomposition_reassembles(l in 0.0..1.0f64, r1 in 0.0..1.0f64, t1 in 0.0..6.3f64, r2 in 0.0..1.0f64, t2 in 0.0..6.3f64) {
        let f = FieldParams::new(l, Complex64::new(1.0, 0.0), cplx(2.0 * r1, t1), cplx(r2, t2), Form::N1).unwrap();
        let d = singular_decomposition(&f).unwrap();
        let (a, b, c) = reassemble(f.mu(), d.b, d.c);
        prop_assert_eq!(a, f.a);
        prop_assert_eq!(c, f.c);
        prop_assert!((b - f.b).norm() <= 4.0 * f64::EPSILON * (1.0 + f.b.norm()));
    }
}
