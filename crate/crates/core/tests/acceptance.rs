//! Exit criteria. Run with `-- --nocapture --test-threads=1` to see one
//! PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::{all_pps, pointwise_inverse, random_pp};
use qpp_core::oracle::{
    brute_is_permutation, brute_quadratic_inverses, sweep, sweep_filtered, OracleConfig,
};
use qpp_core::qppinv::inverts_at_three_points;
use qpp_core::{
    exists_quadratic_inverse, is_inverse_pair, is_permutation_polynomial, partial_inverse,
    quadratic_inverse, quartic_vanishes, InverseOutcome, PolynomialModN, QuadraticCoeffs,
    QuadraticPP,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "[{}] AC{id:02} {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "AC{id:02} {name} failed: {detail}");
}

fn coeffs(pairs: &[(u64, u64)]) -> Vec<QuadraticCoeffs> {
    pairs
        .iter()
        .map(|&(g1, g2)| QuadraticCoeffs { g1, g2 })
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[test]
fn ac01_n15120_inverse() {
    let f = QuadraticPP::new(15120, 11, 210).unwrap();
    let (out, elapsed) = timed(|| quadratic_inverse(&f).unwrap());
    let exact = out.candidates() == coeffs(&[(14891, 210), (7331, 7770)]);

    // the brute-force set at full size agrees
    let big = OracleConfig {
        max_pairs: 15120 * 15120,
        ..OracleConfig::independent()
    };
    let brute = brute_quadratic_inverses(&f, &big).unwrap();
    let brute_ok = brute == coeffs(&[(7331, 7770), (14891, 210)]);

    let multiples_ok = (2..=10u64).all(|m| {
        let f = QuadraticPP::new(15120, 11, 210 * m).unwrap();
        let out = quadratic_inverse(&f).unwrap();
        exists_quadratic_inverse(&f).exists
            && out.count() == 2
            && out
                .candidates()
                .iter()
                .all(|c| pointwise_inverse(&f, c.g1, c.g2))
    });
    report(
        1,
        "worked inverse (N=15120, f1=11, f2=210*m)",
        exact && brute_ok && multiples_ok && elapsed < Duration::from_millis(100),
        format!(
            "inverses {:?}, brute agrees {brute_ok}, m=2..10 ok {multiples_ok}, {elapsed:?}",
            out.candidates()
        ),
    );
}

#[test]
fn ac02_n1024_inverse() {
    let cases = [
        (1u64, [(1u64, 496u64), (513, 1008)]),
        (15, [(751, 272), (239, 784)]),
    ];
    let mut ok = true;
    let mut worst = Duration::ZERO;
    for (f1, expect) in cases {
        let f = QuadraticPP::new(1024, f1, 16).unwrap();
        let (out, elapsed) = timed(|| quadratic_inverse(&f).unwrap());
        worst = worst.max(elapsed);
        ok &= out.candidates() == coeffs(&expect);
    }
    report(
        2,
        "power-of-two inverse (N=1024, f2=16)",
        ok && worst < Duration::from_millis(100),
        format!("exact {ok}, slowest {worst:?}"),
    );
}

#[test]
fn ac03_n125_census() {
    let mut ok = true;
    for f1 in [1u64, 2, 3, 4, 6] {
        for m in [1u64, 2, 3] {
            let none = quadratic_inverse(&QuadraticPP::new(125, f1, 5 * m).unwrap()).unwrap();
            ok &= none.is_none();
            let f = QuadraticPP::new(125, f1, 25 * m).unwrap();
            let one = quadratic_inverse(&f).unwrap();
            ok &= matches!(one, InverseOutcome::One { inverse } if pointwise_inverse(&f, inverse.g1, inverse.g2));
        }
    }
    report(
        3,
        "no-inverse census (N=125)",
        ok,
        "f2=5m -> none, f2=25m -> exactly one".into(),
    );
}

/// Criteria 4, 5 and 6 share one exhaustive sweep over N in [2, 64].
#[test]
fn ac04_05_06_oracle_sweep() {
    let cfg = OracleConfig::independent();
    let (r, elapsed) = timed(|| sweep(2, 64, &cfg).unwrap());
    let pps = r.quadratic_pps_tested + r.degenerate_pps_tested;

    // criterion 6 restated directly on the sweep's instances
    let mut count_ok = true;
    for n in 2..=64u64 {
        for f in all_pps(n) {
            let cands = partial_inverse(&f).unwrap().candidates();
            count_ok &= cands.len() == if n % 2 == 0 { 2 } else { 1 };
            if n % 2 == 0 {
                let a = pointwise_inverse(&f, cands[0].g1, cands[0].g2);
                let b = pointwise_inverse(&f, cands[1].g1, cands[1].g2);
                count_ok &= a == b;
            }
        }
    }

    let pass4 = r.existence_disagreements == 0
        && r.existence_agreements == pps
        && elapsed < Duration::from_secs(300);
    let pass5 = r.value_disagreements == 0 && r.inverse_verification_failures == 0;
    let pass6 = r.count_law_failures == 0 && count_ok;
    let errors = r.disagreements.len();
    let detail = format!(
        "{} quadratic + {} degenerate PPs, {} with inverse, {} without, {errors} flagged, {elapsed:?}",
        r.quadratic_pps_tested, r.degenerate_pps_tested, r.with_inverse, r.without_inverse
    );
    println!(
        "[{}] AC04 existence vs oracle: {detail}",
        if pass4 { "PASS" } else { "FAIL" }
    );
    println!(
        "[{}] AC05 inverse sets vs oracle: {} value mismatches, {} verification failures",
        if pass5 { "PASS" } else { "FAIL" },
        r.value_disagreements,
        r.inverse_verification_failures
    );
    println!(
        "[{}] AC06 count law and even-N coupling: {} failures",
        if pass6 { "PASS" } else { "FAIL" },
        r.count_law_failures
    );
    assert!(
        pass4 && pass5 && pass6 && errors == 0,
        "{:?}",
        r.disagreements
    );
}

/// Random `t1 x + .. + t4 x^4` with `T(0) = T(1) = T(2) = 0 (mod n)`, about
/// half of them drawn so that the degree-3/4 part is annihilated.
fn random_vanishing_quartic(rng: &mut StdRng, n: u64) -> PolynomialModN {
    let (t3, t4) = if rng.gen_bool(0.5) {
        let unit = n / qpp_core::gcd(24, n).unwrap();
        let t4 = unit * rng.gen_range(0..n / unit) % n;
        let t3s: Vec<u64> = (0..n).filter(|t3| (6 * t3 + 36 * t4) % n == 0).collect();
        (t3s[rng.gen_range(0..t3s.len())], t4)
    } else {
        (rng.gen_range(0..n), rng.gen_range(0..n))
    };
    // T(1) = 0 and T(2) = 0 leave 2*t2 ≡ -(6 t3 + 14 t4)
    let rhs = (n - (6 * t3 + 14 * t4) % n) % n;
    let t2s: Vec<u64> = (0..n).filter(|t2| 2 * t2 % n == rhs).collect();
    let t2 = t2s[rng.gen_range(0..t2s.len())];
    let t1 = (3 * n - (t2 + t3 + t4) % n) % n;
    PolynomialModN::new(n, &[0, t1, t2, t3, t4]).unwrap()
}

#[test]
fn ac07_quartic_verifier() {
    let mut rng = StdRng::seed_from_u64(0xac07);
    let (mut disagreements, mut vanishing) = (0, 0);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=4096);
        let t = random_vanishing_quartic(&mut rng, n);
        let sweep = (0..n).all(|x| t.evaluate(x).unwrap() == 0);
        vanishing += sweep as u32;
        if quartic_vanishes(&t).unwrap() != sweep {
            disagreements += 1;
        }
    }
    report(
        7,
        "degree-4 vanishing test vs pointwise sweep",
        disagreements == 0 && vanishing > 0,
        format!("10000 quartics, {vanishing} identically zero, {disagreements} disagreements"),
    );
}

#[test]
fn ac08_permutation_criterion() {
    let cfg = OracleConfig::default();
    let start = Instant::now();
    let mut checked = 0u64;
    let mut disagreements = 0u64;
    for n in 2..=512u64 {
        for h1 in 0..n {
            for h2 in 0..n {
                let p = PolynomialModN::quadratic(n, h1, h2).unwrap();
                let structural = is_permutation_polynomial(&p).is_permutation;
                if structural != brute_is_permutation(&p, &cfg).unwrap() {
                    disagreements += 1;
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        8,
        "structural permutation test vs bijection",
        disagreements == 0 && elapsed < Duration::from_secs(600),
        format!("{checked} quadratics, {disagreements} disagreements, {elapsed:?}"),
    );
}

#[test]
fn ac09_shift_round_trip() {
    let mut rng = StdRng::seed_from_u64(0xac09);
    let (mut tested, mut failures) = (0, 0);
    while tested < 1000 {
        let n = rng.gen_range(2..=512);
        let Some(f) = random_pp(&mut rng, n, true) else {
            continue;
        };
        let Some(c) = quadratic_inverse(&f).unwrap().candidates().first().copied() else {
            continue;
        };
        let h0 = rng.gen_range(0..n);
        let shifted = f
            .polynomial()
            .add(&PolynomialModN::new(n, &[h0]).unwrap())
            .unwrap();
        let (normalized, split) = shifted.normalize_shift();
        assert_eq!((normalized, split), (f.polynomial(), h0));
        let j = c.polynomial(n).shift_inverse(h0);
        if !(0..n).all(|x| j.evaluate(shifted.evaluate(x).unwrap()).unwrap() == x) {
            failures += 1;
        }
        tested += 1;
    }
    report(
        9,
        "constant-shift inverse round trip",
        failures == 0,
        format!("{tested} (PP, h0) pairs, {failures} failures"),
    );
}

#[test]
fn ac10_counterexample() {
    let cfg = OracleConfig {
        counterexample_dmax: 4,
        ..OracleConfig::independent()
    };
    let r = sweep(125, 125, &cfg).unwrap();
    let ce = r.counterexample.clone();
    let pass = match &ce {
        Some(ce) => {
            let f = QuadraticPP::new(ce.instance.n, ce.instance.f1, ce.instance.f2).unwrap();
            let no_quadratic = brute_quadratic_inverses(&f, &cfg).unwrap().is_empty();
            let inverse_ok = ce.min_degree_inverse.as_ref().is_none_or(|c| {
                let g = PolynomialModN::new(f.modulus(), c).unwrap();
                g.degree() > 2
                    && (0..f.modulus()).all(|x| g.evaluate(f.eval_reduced(x)).unwrap() == x)
            });
            no_quadratic && inverse_ok
        }
        None => false,
    };
    // 100 units f1; every f2 = 5m with 5 ∤ m has no inverse, every f2 = 25m
    // has one, and so does the linear f2 = 0
    let per_row = r.without_inverse == 100 * 20
        && r.with_inverse == 100 * 4 + r.degenerate_pps_tested
        && r.degenerate_pps_tested == 100
        && r.is_clean();
    report(
        10,
        "counterexample discovery",
        pass && per_row,
        format!(
            "recorded {:?}; {} of {} quadratic PPs mod 125 lack a quadratic inverse",
            ce, r.without_inverse, r.quadratic_pps_tested
        ),
    );
}

#[test]
fn ac01_n15120_sweep_form() {
    // sweep(15120, 15120) restricted to f1 = 11, f2 = 210m for m = 1..5
    let cfg = OracleConfig {
        max_pairs: 15120 * 15120,
        check_permutation: false,
        ..OracleConfig::default()
    };
    let r = sweep_filtered(15120, 15120, &cfg, |_, f1, f2| {
        f1 == 11 && f2 % 210 == 0 && (1..=5).contains(&(f2 / 210))
    })
    .unwrap();
    let f = QuadraticPP::new(15120, 11, 210).unwrap();
    let g = QuadraticCoeffs { g1: 14891, g2: 210 }.polynomial(15120);
    assert!(inverts_at_three_points(&f, &g) && is_inverse_pair(&f, &g).unwrap());
    report(
        1,
        "N=15120 inverse via restricted sweep",
        r.quadratic_pps_tested == 5 && r.with_inverse == 5 && r.is_clean(),
        format!(
            "{} instances, {} with two inverses",
            r.quadratic_pps_tested, r.with_inverse
        ),
    );
}
