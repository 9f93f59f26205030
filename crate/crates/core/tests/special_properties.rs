use std::f64::consts::PI;

use dngap::special::*;
use proptest::prelude::*;

fn orders() -> Vec<BesselOrder> {
    ["0", "2/3", "1", "4/3", "5", "50"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn wronskian_on_log_grid() {
    for o in orders() {
        for i in 0..=80 {
            let x = 0.1 * 10f64.powf(i as f64 * 4.0 / 80.0);
            let v = bessel_jy(o, x).unwrap();
            let w = v.j * v.yp - v.jp * v.y;
            let want = 2.0 / (PI * x);
            assert!(
                ((w - want) / want).abs() <= 1e-10,
                "order {o}, x = {x}: {w} vs {want}"
            );
        }
    }
}

#[test]
fn zeros_interlace() {
    for o in orders() {
        let next = o.plus(1);
        let a = bessel_j_zeros_below(o, 120.0).unwrap();
        let b = bessel_j_zeros_below(next, 120.0).unwrap();
        for k in 0..b.len().min(a.len() - 1) {
            assert!(a[k] < b[k] && b[k] < a[k + 1], "order {o}, k = {}", k + 1);
        }
        let p = bessel_jprime_zeros_below(o, 120.0).unwrap();
        for (k, jp) in p.iter().enumerate().take(a.len()) {
            assert!(*jp <= a[k], "j'_{{{o},{}}} > j_{{{o},{}}}", k + 1, k + 1);
        }
    }
}

#[test]
fn returned_zeros_are_roots() {
    for o in orders() {
        for k in 1..=8 {
            let z = bessel_j_zero(o, k).unwrap();
            let v = bessel_jy(o, z).unwrap();
            assert!(
                v.j.abs() <= 1e-10 * (1.0f64).max(v.jp.abs() * 1e-11),
                "j_{{{o},{k}}}"
            );
            assert!(v.j.abs() <= 1e-11);
        }
    }
}

#[test]
fn ball_roots_respect_closed_form_bounds() {
    for d in 2..=8u32 {
        for l in 1..=30u32 {
            let r = ball_neumann_radial_root(d, l, 1).unwrap();
            match neumann_first_bounds(d, l) {
                Ok(b) => assert!(
                    b.contains(r * r),
                    "d = {d}, l = {l}: {} not in {b:?}",
                    r * r
                ),
                Err(dngap::Error::BoundInapplicable { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn sector_cross_roots_increase() {
    for m in 0..6u64 {
        let o = BesselOrder::new(2 * m, 3).unwrap();
        for kind in [CrossKind::Dirichlet, CrossKind::Neumann] {
            let mut prev = 0.0;
            for k in 1..=6 {
                let r = annulus_cross_zero(o, 2.0, k, kind).unwrap();
                assert!(r > prev);
                prev = r;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wronskian_at_random_points(num in 0u64..600, den in 1u64..4, lx in -1.0f64..3.0) {
        let o = BesselOrder::new(num, den).unwrap();
        prop_assume!(o.value() <= 200.0);
        let x = 10f64.powf(lx);
        let v = bessel_jy(o, x).unwrap();
        prop_assume!(v.y.is_finite() && v.yp.is_finite());
        let want = 2.0 / (PI * x);
        let w = v.j * v.yp - v.jp * v.y;
        prop_assert!(((w - want) / want).abs() <= 1e-10);
    }

    #[test]
    fn three_term_recurrence(num in 0u64..300, den in 1u64..4, x in 0.2f64..500.0) {
        // J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu, checked at nu >= 1 on the modulus scale.
        let o = BesselOrder::new(num, den).unwrap().plus(1);
        let lo = BesselOrder::new(num, den).unwrap();
        let hi = o.plus(1);
        let (a, b, c) = (bessel_jy(lo, x).unwrap(), bessel_jy(o, x).unwrap(), bessel_jy(hi, x).unwrap());
        let scale = a.j.abs().max(c.j.abs()).max(b.j.abs() * 2.0 * o.value() / x);
        prop_assert!((a.j + c.j - 2.0 * o.value() / x * b.j).abs() <= 1e-12 * scale.max(1e-300));
    }
}
