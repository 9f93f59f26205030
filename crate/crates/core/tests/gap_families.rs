use dngap::disk_counting::*;
use dngap::exact::Side;
use dngap::spectra::{spectrum_below, Bc, DomainSpec};
use dngap::verify::{disk_sandwich, verify_disk_theorems, verify_gap, Verdict};
use dngap::weyl::GapSequence;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Sides `sqrt(q) x 1` with `a/b` spread over `[1, 10]`, `q = 1 + 99 i / 24`.
fn aspect_family() -> Vec<(Side, Side)> {
    (0..25)
        .map(|i| {
            let q = BigRational::new(BigInt::from(24 + 99 * i), BigInt::from(24));
            (Side::new(q, false).unwrap(), "1".parse().unwrap())
        })
        .collect()
}

#[test]
fn rectangle_sequence_has_no_violations() {
    for (a, b) in aspect_family() {
        let d = DomainSpec::rectangle(a.clone(), b.clone());
        let r = verify_gap(&d, &GapSequence::rectangle(a.value(), b.value()), 1000).unwrap();
        assert!(r.holds(), "{d}: violations {:?}", r.violations);
        assert!(r
            .records
            .iter()
            .all(|x| x.verdict != Verdict::Indeterminate));
    }
}

#[test]
fn plus_one_variant_holds_for_long_rectangles() {
    let mut tested = 0;
    for (a, b) in aspect_family() {
        if a.value() < 4.0 * b.value() {
            continue;
        }
        tested += 1;
        let d = DomainSpec::rectangle(a.clone(), b.clone());
        let seq = GapSequence::Shifted {
            base: Box::new(GapSequence::rectangle(a.value(), b.value())),
            by: 1,
        };
        let r = verify_gap(&d, &seq, 1000).unwrap();
        assert!(r.holds(), "{d}: violations {:?}", r.violations);
    }
    assert!(tested >= 15);
}

#[test]
fn universal_rectangle_sequence_has_no_violations() {
    for (a, b) in aspect_family() {
        let d = DomainSpec::rectangle(a, b);
        let r = verify_gap(&d, &GapSequence::RectangleUniversal, 1000).unwrap();
        assert!(r.holds(), "{d}: violations {:?}", r.violations);
    }
}

#[test]
fn disk_band_sequences_hold_to_2000() {
    let (single, multi) = verify_disk_theorems(2000).unwrap();
    assert!(single.holds(), "single band: {:?}", single.violations);
    assert!(multi.holds(), "multi band: {:?}", multi.violations);
}

#[test]
fn band_height_is_decreasing_and_convex() {
    for &lambda in &[3.0, 17.5, 120.0] {
        let n = 400;
        let h: Vec<f64> = (0..=n)
            .map(|i| band_height(lambda * i as f64 / n as f64, lambda).unwrap())
            .collect();
        let dm = lambda / n as f64;
        let slopes: Vec<f64> = h.windows(2).map(|w| (w[1] - w[0]) / dm).collect();
        for s in &slopes {
            assert!(*s > -0.5 - 1e-12 && *s < 0.0, "lambda {lambda}: slope {s}");
        }
        for w in slopes.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "lambda {lambda}: slopes {w:?}");
        }
    }
}

#[test]
fn neumann_minus_dirichlet_bound_dominates_the_crossings() {
    for i in 1..=400 {
        let lambda = 200.0 * i as f64 / 400.0;
        let gap = p2_neumann(lambda).unwrap() - p2_dirichlet(lambda).unwrap();
        let c = band_crossings_lower(lambda).unwrap();
        assert!(gap >= c.multi, "lambda {lambda}: {gap} < {}", c.multi);
        assert!(c.multi >= c.single, "lambda {lambda}");
    }
}

#[test]
fn band_truncation_grows_like_a_cube_root() {
    for &lambda in &[1e3, 1e5, 1e7] {
        let c = band_crossings_lower(lambda).unwrap();
        let want = (lambda * std::f64::consts::PI.powi(2) / 18.0).cbrt();
        let ratio = c.terms as f64 / want;
        assert!(
            (0.7..1.3).contains(&ratio),
            "lambda {lambda}: {} terms vs {want}",
            c.terms
        );
    }
}

#[test]
fn sandwich_on_a_finer_grid() {
    for (l, row) in disk_sandwich(500, 20.0).unwrap() {
        assert!(
            row.dirichlet_count <= row.p2_dirichlet,
            "lambda {l}: {row:?}"
        );
        assert!(row.p2_neumann <= row.neumann_count, "lambda {l}: {row:?}");
    }
}

#[test]
fn sandwich_counts_match_an_independent_count() {
    let d = spectrum_below(&DomainSpec::unit_disk(), Bc::Dirichlet, 70.0).unwrap();
    for (l, row) in disk_sandwich(50, 8.0).unwrap() {
        let direct = d.values().iter().filter(|v| **v <= l * l).count() as u64;
        assert_eq!(row.dirichlet_count, direct);
    }
}

#[test]
fn band_sequences_are_nondecreasing_and_ordered() {
    let mut prev = (0, 0);
    for k in 1..=5000 {
        let now = (p_disk_theorem33(k), p_disk_theorem34(k));
        assert!(now.0 >= prev.0 && now.1 >= prev.1, "k = {k}");
        assert!(now.1 >= now.0, "k = {k}");
        prev = now;
    }
}
