//! Acceptance suite: one test per criterion, every tolerance pinned in code.
//! Run with `cargo test -p qgheat-core --test acceptance -- --nocapture` to
//! see one PASS line per criterion.

use num_bigint::BigInt;

use qgheat_core::chebyshev::{cheb_pair, cheb_zeros};
use qgheat_core::contractivity::{
    dimension_estimate, envelope_f, envelope_g_o2, l1_linf_envelope, sum_s2_gaussian,
    u2_gauss_integral, EnvelopeParams,
};
use qgheat_core::hypercontractivity::{
    constant_c, constant_d, dn_log_upper_bound, r_p, tau_cubic, tau_series, HypParams,
};
use qgheat_core::interval::CertifiedValue;
use qgheat_core::levelmodel::{
    check_hyper_chain_at, check_spectral_gap, check_ultra, heat_apply, l2_norm,
    random_level_vectors,
};
use qgheat_core::rational::{from_int, Rational};
use qgheat_core::spectrum::{
    bound_reports_up_to, eigenvalue, spectral_lines_up_to, Family, GroupKind,
};

fn o(n: u64) -> GroupKind {
    GroupKind::free_orthogonal(n).unwrap()
}

fn s(n: u64) -> GroupKind {
    GroupKind::free_permutation(n).unwrap()
}

#[test]
fn criterion_01_exact_o2_eigenvalues() {
    for k in 0..=200u64 {
        let expected = Rational::new(-BigInt::from(k) * BigInt::from(k + 2), BigInt::from(6));
        assert_eq!(eigenvalue(o(2), k), expected, "s = {k}");
    }
    println!("criterion 01 PASS: lambda_s = -s(s+2)/6 on O_2+ exactly for s <= 200");
}

#[test]
fn criterion_02_exact_s4_eigenvalues() {
    for k in 0..=200u64 {
        let expected = Rational::new(-BigInt::from(k) * BigInt::from(k + 1), BigInt::from(6));
        assert_eq!(eigenvalue(s(4), k), expected, "s = {k}");
    }
    println!("criterion 02 PASS: lambda_s = -s(s+1)/6 on S_4+ exactly for s <= 200");
}

#[test]
fn criterion_03_chebyshev_special_values() {
    let two = from_int(2);
    for k in 0..=500u64 {
        let (value, derivative) = cheb_pair(k, &two);
        assert_eq!(value, from_int(k as i64 + 1), "value at s = {k}");
        let expected = Rational::new(
            BigInt::from(k) * BigInt::from(k + 1) * BigInt::from(k + 2),
            BigInt::from(6),
        );
        assert_eq!(derivative, expected, "derivative at s = {k}");
    }
    println!("criterion 03 PASS: U_s(2) = s+1 and U_s'(2) = s(s+1)(s+2)/6 exactly for s <= 500");
}

#[test]
fn criterion_04_bound_lemmas_exact() {
    let mut checked = 0usize;
    for n in 2..=20u64 {
        for report in bound_reports_up_to(o(n), 200) {
            assert!(report.holds, "O_{n}+ violated");
            checked += 1;
        }
    }
    for n in 4..=20u64 {
        for report in bound_reports_up_to(s(n), 200) {
            assert!(report.holds, "S_{n}+ violated");
            checked += 1;
        }
    }
    println!("criterion 04 PASS: s/N <= -lambda_s <= upper exactly, {checked} cases, 0 failures");
}

#[test]
fn criterion_05_zeros_lemma_and_interlacing() {
    let eps = Rational::new(BigInt::from(1), BigInt::from(1_000_000));
    let two = from_int(2);
    let mut previous: Option<Vec<qgheat_core::RootEnclosure>> = None;
    for k in 1..=64u64 {
        let zeros = cheb_zeros(k, &eps).unwrap();
        assert_eq!(zeros.len(), k as usize);
        for e in &zeros {
            assert!(e.lo >= -two.clone() && e.hi <= two, "outside [-2,2] at s = {k}");
        }
        for w in zeros.windows(2) {
            assert!(w[0].hi < w[1].lo, "overlap at s = {k}");
        }
        if k <= 41 {
            if let Some(inner) = &previous {
                // roots of U_{k-1} interlace those of U_k
                for (j, e) in inner.iter().enumerate() {
                    assert!(zeros[j].hi < e.lo, "interlacing left, s = {k}");
                    assert!(e.hi < zeros[j + 1].lo, "interlacing right, s = {k}");
                }
            }
            previous = Some(zeros);
        }
    }
    println!("criterion 05 PASS: all enclosures in [-2,2] for s <= 64, interlacing for s <= 40");
}

#[test]
fn criterion_06_r4_identity_and_constants() {
    let r4 = r_p(Family::FreeOrthogonal, 4.0, 1e-10).unwrap();
    assert!(r4.contains(1.0), "R_4 = {r4}");
    assert!(r4.width() <= 1e-10, "R_4 width {}", r4.width());

    let c = constant_c();
    let three_c = CertifiedValue::exact(3.0).pow(&c);
    let target = 4.0 + 2.0 * 3.0f64.sqrt();
    assert!((three_c.midpoint() - target).abs() <= 1e-12);

    let d = constant_d();
    let z = CertifiedValue::exact(3.0).pow(&d.neg()).midpoint();
    assert!((4.0 * z * z - 11.0 * z + 1.0).abs() <= 1e-12);

    assert!((c.midpoint() - 1.8297).abs() <= 5e-5);
    assert!((d.midpoint() - 2.15096).abs() <= 5e-5);
    println!(
        "criterion 06 PASS: R_4 in {r4} (width {:.2e}), 3^c = 4+2sqrt(3) and 4z^2-11z+1 = 0 \
         to 1e-12, c = {:.5}, d = {:.5}",
        r4.width(),
        c.midpoint(),
        d.midpoint()
    );
}

#[test]
fn criterion_07_cubic_series_equivalence() {
    // closed forms against truncated series with certified geometric tails
    for ix in 1..=9u32 {
        let x = ix as f64 / 10.0;
        let xe = CertifiedValue::exact(x);
        let one_minus_cubed = CertifiedValue::one().sub(&xe).powi(3);
        let closed_o = xe
            .powi(3)
            .sub(&xe.powi(2).scale(3.0))
            .add(&xe.scale(4.0))
            .div(&one_minus_cubed);
        let closed_s = xe
            .powi(3)
            .sub(&xe.powi(2).scale(2.0))
            .add(&xe.scale(9.0))
            .div(&one_minus_cubed);

        let mut sum_o = qgheat_core::interval::NonnegSum::new();
        let mut sum_s = qgheat_core::interval::NonnegSum::new();
        let mut xp = CertifiedValue::one();
        let m = 3000u64;
        for k in 1..=m {
            xp = xp.mul(&xe);
            sum_o.add(&xp.scale(((k + 1) * (k + 1)) as f64));
            sum_s.add(&xp.scale(((2 * k + 1) * (2 * k + 1)) as f64));
        }
        // Σ_{s>m}(s+1)²X^s ≤ 2(m+2)²X^{m+1}/(1−X)³ (tiny at m = 3000)
        let tail = xe
            .powi(m + 1)
            .scale(((m + 2) * (m + 2)) as f64 * 2.0)
            .div(&CertifiedValue::one().sub(&xe).powi(3));
        let series_o = CertifiedValue::new(sum_o.enclosure().lo, sum_o.enclosure().hi + tail.hi);
        let series_s = CertifiedValue::new(
            sum_s.enclosure().lo,
            sum_s.enclosure().hi + 4.0 * tail.hi,
        );

        assert!(closed_o.intersects(&series_o), "O disjoint at X = {x}");
        assert!(closed_s.intersects(&series_s), "S disjoint at Y = {x}");
        let rel_o = (closed_o.midpoint() - series_o.midpoint()).abs() / closed_o.midpoint();
        let rel_s = (closed_s.midpoint() - series_s.midpoint()).abs() / closed_s.midpoint();
        assert!(rel_o <= 1e-9, "O rel {rel_o} at X = {x}");
        assert!(rel_s <= 1e-9, "S rel {rel_s} at Y = {x}");
    }
    println!("criterion 07 PASS: cubic closed forms match weighted series at X,Y in 0.1..0.9");
}

#[test]
fn criterion_08_tau_ordering() {
    let ps = [3.0, 4.0, 6.0, 10.0];
    let mut cases = 0usize;
    for kind in (2u64..=8).map(o).chain((4u64..=8).map(s)) {
        let mut prev_series: Option<CertifiedValue> = None;
        let mut prev_cubic: Option<CertifiedValue> = None;
        for p in ps {
            let params = HypParams::new(p, 1.0).unwrap();
            let series = tau_series(kind, &params, 1e-9).unwrap();
            let cubic = tau_cubic(kind, &params, 1e-9).unwrap();
            assert!(
                series.tau.le_enclosurewise(&cubic.tau),
                "{kind} p = {p}: series {} vs cubic {}",
                series.tau,
                cubic.tau
            );
            if let Some(prev) = prev_series {
                assert!(prev.le_enclosurewise(&series.tau), "{kind}: series not increasing");
            }
            if let Some(prev) = prev_cubic {
                assert!(prev.le_enclosurewise(&cubic.tau), "{kind}: cubic not increasing");
            }
            prev_series = Some(series.tau);
            prev_cubic = Some(cubic.tau);
            cases += 1;
        }
    }
    println!("criterion 08 PASS: tau_series <= tau_cubic and both increase in p ({cases} cases)");
}

#[test]
fn criterion_09_small_time_laws() {
    // envelope_f(params, t)·t³ → β²/(4α³) within 1% at t = 1e-6
    let params = EnvelopeParams::new(0.5, 1.0, 1.0).unwrap();
    let t = 1e-6;
    let value = envelope_f(&params, t).unwrap().midpoint() * t * t * t;
    let limit = params.beta * params.beta / (4.0 * params.alpha.powi(3));
    let rel = (value - limit).abs() / limit;
    assert!(rel <= 0.01, "small-time law off by {rel}");

    // dimension 6 for the general O_N⁺ L¹→L∞ envelope
    let params_o2 = EnvelopeParams::for_group(o(2), 1.0).unwrap();
    let dim_o2 = dimension_estimate(|t| l1_linf_envelope(&params_o2, t), 1e-6, 1e-4, 9).unwrap();
    assert!((dim_o2 - 6.0).abs() <= 0.15, "O_2 dimension {dim_o2}");
    let params_o5 = EnvelopeParams::for_group(o(5), 2.0).unwrap();
    let dim_o5 = dimension_estimate(|t| l1_linf_envelope(&params_o5, t), 1e-6, 1e-4, 9).unwrap();
    assert!((dim_o5 - 6.0).abs() <= 0.15, "O_5 dimension {dim_o5}");

    // dimension 3 for the O_2⁺ g-based L¹→L∞ envelope
    let dim_g = dimension_estimate(
        |t| {
            let tol = 1e-9 * (1.0 + (6.0 / t).powf(1.5));
            envelope_g_o2(1.0, 0.5 * t, tol)
        },
        1e-6,
        1e-4,
        9,
    )
    .unwrap();
    assert!((dim_g - 3.0).abs() <= 0.15, "g dimension {dim_g}");
    println!(
        "criterion 09 PASS: f·t^3 limit within 1%, dimensions {dim_o2:.3}/{dim_o5:.3} (~6) \
         and {dim_g:.3} (~3)"
    );
}

#[test]
fn criterion_10_gaussian_sandwich() {
    let i = u2_gauss_integral(1e-10);
    let mut failures = 0usize;
    for k in 0..20 {
        let t = 1e-4 * (10f64 / 1e-4).powf(k as f64 / 19.0);
        let tol = 1e-9 * (1.0 + (3.0 / t).powf(1.5));
        let sum = sum_s2_gaussian(t, tol).unwrap();
        let scaled_i = CertifiedValue::exact(3.0 / t)
            .pow(&CertifiedValue::exact(1.5))
            .mul(&i);
        let correction = CertifiedValue::exact(3.0)
            .div(&CertifiedValue::exact(t).scale(std::f64::consts::E));
        let middle = correction.add(&sum);
        let upper = correction.scale(2.0).add(&scaled_i);
        if !(scaled_i.hi <= middle.lo && middle.hi <= upper.lo) {
            failures += 1;
            eprintln!("sandwich fails at t = {t}");
        }
    }
    assert_eq!(failures, 0);
    println!("criterion 10 PASS: integral sandwich certified at 20 log-spaced t in [1e-4, 10]");
}

#[test]
fn criterion_11_property_suites() {
    let orthogonal = [o(2), o(3), o(5)];
    let permutation = [s(4), s(5), s(9)];
    let vectors = random_level_vectors(2024, 1000);

    for kind in orthogonal.iter().chain(&permutation) {
        // spectral gap
        for v in &vectors {
            assert!(check_spectral_gap(*kind, v).holds, "gap fails on {kind}");
        }
        // ultracontractivity chain at a spread of times
        for v in &vectors {
            for t in [0.1, 1.0, 10.0] {
                assert!(
                    check_ultra(*kind, v, t, 1.0).unwrap().holds,
                    "ultra fails on {kind} at t = {t}"
                );
            }
        }
        // hypercontractivity chain at the certified L²→L⁴ time
        let tau = tau_series(*kind, &HypParams::new(4.0, 1.0).unwrap(), 1e-9).unwrap();
        for v in &vectors {
            let report = check_hyper_chain_at(*kind, v, 4.0, tau.tau.hi, 1.0, tau.tau.hi).unwrap();
            assert!(report.holds, "hyper chain fails on {kind}");
        }
        // L² contraction and the semigroup law on the same samples
        for v in &vectors {
            let heated = heat_apply(*kind, v, 0.8).unwrap();
            assert!(l2_norm(&heated) <= l2_norm(v) * (1.0 + 1e-12));
            let twice = heat_apply(*kind, &heat_apply(*kind, v, 0.3).unwrap(), 0.5).unwrap();
            for (a, b) in twice.norms.iter().zip(&heated.norms) {
                assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-30));
            }
        }
    }
    println!("criterion 11 PASS: gap/ultra/hyper chains, L2 contraction and semigroup law on 1000 vectors x 6 kinds");
}

#[test]
fn criterion_12_dn_trend() {
    let mut previous = f64::INFINITY;
    let mut last = f64::NAN;
    for n in [10.0, 100.0, 1000.0, 10_000.0] {
        let log_bound = dn_log_upper_bound(n, 1e-14).unwrap();
        let scaled = n * log_bound.hi;
        assert!(scaled < previous, "N log D_N not decreasing at N = {n}");
        previous = scaled;
        last = scaled;
    }
    assert!(last < 0.05, "N log D_N = {last} at N = 1e4");
    println!("criterion 12 PASS: N log D_N decreasing over 10..1e4, {last:.2e} < 0.05 at N = 1e4");
}

#[test]
fn spectrum_consistency_spot_checks() {
    // eigenvalue table for the CLI examples: O_2⁺, s <= 5
    let lines = spectral_lines_up_to(o(2), 5);
    let expected = ["0", "-1/2", "-4/3", "-5/2", "-4", "-35/6"];
    for (line, want) in lines.iter().zip(expected) {
        assert_eq!(qgheat_core::rational::format_rational(&line.lambda), want);
    }
}
