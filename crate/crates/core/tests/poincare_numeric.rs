use std::f64::consts::PI;

use num_complex::Complex64;
use qvf_core::field::{FieldParams, Form};
use qvf_core::poincare::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn n1(l: f64, b: Complex64, cc: Complex64) -> FieldParams {
    FieldParams::new(l, c(1.0, 0.0), b, cc, Form::N1).unwrap()
}

fn opts() -> IntegratorOptions {
    IntegratorOptions::for_delta(0.1)
}

#[test]
fn linear_map_and_derivative_at_zero() {
    for l in [0.0, 0.05, 0.5] {
        let f = FieldParams::linear(l);
        let want = (2.0 * PI * l).exp();
        for x in [1e-6, 1e-4, 1e-3] {
            let p = poincare_map(&f, c(x, 0.0), &opts()).unwrap();
            assert!((p.re - x * want).abs() <= 1e-9 * x * want && p.im.abs() <= 1e-9 * x);
        }
        let x = 1e-6;
        let slope = displacement(&f, c(x, 0.0), &opts()).unwrap().re / x;
        assert!((slope - (want - 1.0)).abs() <= 1e-8 * (1.0 + want));
    }
}

#[test]
fn center_field_has_no_displacement() {
    let f = n1(0.0, c(2.0, 0.0), c(1.0, 0.0));
    for x in [1e-5, 1e-4, 1e-3, 5e-3, 1e-2] {
        assert!(displacement(&f, c(x, 0.0), &opts()).unwrap().norm() <= 1e-8);
    }
}

#[test]
fn cubic_term_is_minus_two_pi_g2() {
    // A = 1, B = i: g₂ = 1
    let f = n1(0.0, c(0.0, 1.0), c(0.0, 0.0));
    let ratios: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&x| displacement(&f, c(x, 0.0), &opts()).unwrap().re / (x * x * x))
        .collect();
    let errs: Vec<f64> = ratios.iter().map(|r| (r + 2.0 * PI).abs()).collect();
    assert!(errs[2] < 0.05 * 2.0 * PI, "{ratios:?}");
    assert!(errs[2] < errs[1] && errs[1] < errs[0], "{ratios:?}");
}

#[test]
fn map_is_monotone_on_the_admissible_segment() {
    let f = n1(0.03, c(0.7, -1.2), c(0.4, 0.5));
    let eps = admissible_radius(f.lambda1);
    let mut last = f64::NEG_INFINITY;
    for k in 0..=50 {
        let x = eps * k as f64 / 50.0;
        let p = poincare_map(&f, c(x, 0.0), &opts()).unwrap();
        assert!(p.im.abs() < 1e-12);
        assert!(p.re > last || k == 0);
        last = p.re;
    }
}

#[test]
fn one_tame_cycle_near_the_balance_point() {
    let f = n1(1e-4, c(0.0, 1.0), c(0.0, 0.0));
    let s = find_cycles(&f, 0.1, DEFAULT_X_MIN, DEFAULT_GRID_POINTS, &opts()).unwrap();
    let tame: Vec<_> = s.cycles.iter().filter(|r| r.tame).collect();
    assert_eq!(tame.len(), 1, "{:?}", s.cycles);
    let x = tame[0].x_star;
    assert!((x / 1e-2 - 1.0).abs() < 0.2);
    assert_eq!(s.outermost_tame, Some(x));
    for r in &s.cycles {
        let d = |y: f64| displacement(&f, c(y, 0.0), &opts()).unwrap().re;
        assert!(d(r.x_star).abs() <= 1e-9);
        assert!(d(r.x_star * 0.99) * d(r.x_star * 1.01) < 0.0);
    }
    // a singular point 0.70 away is inside a 0.9-ball
    let near = classify_tame(&f, 0.9, x, &opts()).unwrap();
    assert!(!near.tame && near.min_singular_distance < 0.9);
}

#[test]
fn fields_without_isolated_cycles() {
    let lin = find_cycles(&FieldParams::linear(0.2), 0.1, DEFAULT_X_MIN, 256, &opts()).unwrap();
    assert!(lin.cycles.is_empty());
    let center = n1(0.0, c(2.0, 0.0), c(1.0, 0.0));
    let s = find_cycles(&center, 0.1, DEFAULT_X_MIN, 512, &opts()).unwrap();
    assert!(s.cycles.is_empty());
    assert!(!s.degenerate_zero_intervals.is_empty());
}

#[test]
fn displacement_maxima() {
    let center = n1(0.0, c(2.0, 0.0), c(1.0, 0.0));
    let m = max_displacement(&center, Region::K { a: None }, 64, &opts()).unwrap();
    assert!(m.value <= 1e-8 && m.disc_only);
    let focus = n1(0.5, c(0.3, 0.2), c(0.1, -0.4));
    let eps = admissible_radius(0.5);
    let m = max_displacement(&focus, Region::K { a: None }, 64, &opts()).unwrap();
    assert!(m.value >= eps * ((2.0 * PI * 0.5).exp() - 1.0) * (1.0 - 1e-9));
    let cyc = n1(1e-4, c(0.0, 1.0), c(0.0, 0.0));
    let u = max_displacement(&cyc, Region::U { a: Some(0.0099), gap: 1e-3 }, 64, &opts()).unwrap();
    assert!(u.value > 0.0 && u.value <= 0.1f64.recip() + 1.0);
}

#[test]
fn gronwall_at_the_edge_of_the_disc() {
    let f = n1(0.0, c(-1.1, 0.9), c(0.6, 0.3));
    let r = gronwall_check(&f, c(0.0005, 0.0), &opts()).unwrap();
    assert!((r.bound - 0.0005 * (0.4 * PI).exp()).abs() < 1e-15 && r.bound < 0.01);
    assert!(r.holds());
    let z = gronwall_check(&f, c(0.0, 0.0), &opts()).unwrap();
    assert_eq!((z.sup_actual, z.bound), (0.0, 0.0));
}

#[test]
fn slow_focus_stays_close_to_the_center_flow() {
    // m₀ = 2·10⁻²³σ with σ = 0.1
    let m0 = 2e-24;
    let f = n1(1e-24, c(0.5, 1.2), c(-0.3, 0.6));
    let r = divergence_check(&f, c(0.0004, 0.0002)).unwrap();
    assert!(r.holds() && r.actual < 0.4 * m0, "{r:?}");
    assert!(r.actual > 0.0);
}

#[test]
fn jet_agreement_is_eighth_order() {
    let jet = qvf_core::bautin::jet();
    let f = n1(0.0, c(-0.8, 0.9), c(0.2, 0.7));
    let r = jet_agreement(&f, &jet, 1e-3, 5e-4).unwrap();
    assert!((64.0..=1024.0).contains(&r.ratio), "{r:?}");
}

#[test]
fn trajectory_csv_has_the_published_layout() {
    let t = integrate(&n1(0.0, c(0.1, 0.2), c(0.0, 0.3)), c(1e-3, 0.0), &opts()).unwrap();
    let csv = t.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,re_w,im_w"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 3);
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert!(t.samples.windows(2).all(|w| w[1].theta > w[0].theta));
    assert!((t.samples.last().unwrap().theta - 2.0 * PI).abs() < 1e-12);
}
