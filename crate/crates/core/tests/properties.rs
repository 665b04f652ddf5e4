use std::f64::consts::PI;

use eigenrestrict::geometry::{exp_map, sphere_distance, tangent_frame, CurveSpec, UnitVector};
use eigenrestrict::torus::{r2_table, representations};
use proptest::prelude::*;

fn unit3() -> impl Strategy<Value = UnitVector> {
    (0.0..PI, 0.0..2.0 * PI).prop_map(|(th, ph)| {
        UnitVector::new(&[th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]).unwrap()
    })
}

fn unit4() -> impl Strategy<Value = UnitVector> {
    prop::collection::vec(-1.0f64..1.0, 4)
        .prop_filter("nonzero", |v| v.iter().map(|a| a * a).sum::<f64>() > 1e-2)
        .prop_map(|v| UnitVector::normalized(&v).unwrap())
}

proptest! {
    #[test]
    fn triangle_inequality(x in unit3(), y in unit3(), z in unit3()) {
        let d = |a: &UnitVector, b: &UnitVector| sphere_distance(a, b).unwrap();
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() < 1e-15);
        prop_assert!(d(&x, &y) <= PI);
    }

    #[test]
    fn triangle_inequality_s3(x in unit4(), y in unit4(), z in unit4()) {
        let d = |a: &UnitVector, b: &UnitVector| sphere_distance(a, b).unwrap();
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
    }

    #[test]
    fn exp_moves_by_its_length(x in unit3(), a in 0.0..2.0 * PI, t in 0.0..3.1f64) {
        let f = tangent_frame(&x);
        let v: Vec<f64> = (0..3).map(|i| t * (a.cos() * f[0][i] + a.sin() * f[1][i])).collect();
        let y = exp_map(&x, &v).unwrap();
        prop_assert!((sphere_distance(&x, &y).unwrap() - t).abs() < 1e-12);
        prop_assert!((y.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn latitude_closed_form(th in 0.05..PI / 2.0, s in -10.0..10.0f64) {
        let c = CurveSpec::latitude(th).unwrap();
        let p = c.point(s);
        let axis = UnitVector::new(&[0.0, 0.0, 1.0]).unwrap();
        // constant angular radius, and arc length matches the chord
        prop_assert!((sphere_distance(&p, &axis).unwrap() - th).abs() < 1e-12);
        let q = c.point(s + 0.01);
        let chord = 2.0 * th.sin() * (0.01 / (2.0 * th.sin())).sin();
        let euclid: f64 = p.coords().iter().zip(q.coords()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        prop_assert!((euclid - chord).abs() < 1e-13);
        prop_assert!((c.point(s + c.length()).coords()[0] - p.coords()[0]).abs() < 1e-12);
    }

    #[test]
    fn r2_counts_are_multiples_of_four(n in 1u64..200_000) {
        let reps = representations(n);
        prop_assert_eq!(reps.r2() % 4, 0);
        for &(a, b) in &reps.points {
            prop_assert_eq!((a * a + b * b) as u64, n);
        }
    }
}

#[test]
fn r2_table_agrees_with_scan_on_a_prefix() {
    let t = r2_table(20_000);
    for n in 1..=20_000u64 {
        assert_eq!(t[n as usize] as usize, representations(n).r2());
    }
}
