//! Brute-force ground truth.
//!
//! Nothing here relies on the structural criteria it is used to check: tables
//! are built point by point and inverse candidates are enumerated over the
//! whole coefficient space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{add_mod, factorize, mul_mod, sub_mod};
use crate::par::fold_range;
use crate::polyring::{PolynomialModN, QuadraticPP};
use crate::qppinv::{
    exists_quadratic_inverse, exponent_profile, is_inverse_pair, partial_inverse,
    quadratic_inverse, quartic_vanishes, QuadraticCoeffs,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest modulus for which a full table is built.
    pub max_table_len: u64,
    /// Budget on `(g1, g2)` pairs enumerated by [`brute_quadratic_inverses`].
    pub max_pairs: u128,
    /// Budget on candidate polynomials enumerated by [`brute_min_degree_inverse`].
    pub max_min_degree_candidates: u128,
    /// Confirm three-point survivors by evaluating at every residue instead of
    /// the degree-4 vanishing test.
    pub pointwise: bool,
    pub parallel: bool,
    /// Cross-check the structural permutation test against a table in sweeps.
    pub check_permutation: bool,
    /// Cap on instances kept in a sweep report's example lists.
    pub record_limit: usize,
    /// When nonzero, sweeps search the smallest no-inverse instance for a
    /// polynomial inverse of degree at most this.
    pub counterexample_dmax: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_table_len: 1 << 20,
            max_pairs: 4096 * 4096,
            max_min_degree_candidates: 1 << 28,
            pointwise: false,
            parallel: true,
            check_permutation: true,
            record_limit: 32,
            counterexample_dmax: 0,
        }
    }
}

impl OracleConfig {
    /// Default budgets with pointwise confirmation, so results are independent
    /// of the vanishing criterion.
    pub fn independent() -> Self {
        OracleConfig {
            pointwise: true,
            ..Self::default()
        }
    }

    fn check_table(&self, n: u64) -> Result<()> {
        if n > self.max_table_len {
            return Err(Error::ResourceLimit {
                what: "table length",
                required: n as u128,
                budget: self.max_table_len as u128,
            });
        }
        Ok(())
    }
}

pub fn brute_is_permutation(p: &PolynomialModN, cfg: &OracleConfig) -> Result<bool> {
    let n = p.modulus();
    cfg.check_table(n)?;
    let mut seen = vec![false; n as usize];
    for x in 0..n {
        let y = p.eval_reduced(x) as usize;
        if seen[y] {
            return Ok(false);
        }
        seen[y] = true;
    }
    Ok(true)
}

/// Every `(g1, g2)` in `[0, N)^2` with `g1*y + g2*y^2 ≡ x` for `y = F(x)` and
/// all `x`, sorted.
pub fn brute_quadratic_inverses(
    f: &QuadraticPP,
    cfg: &OracleConfig,
) -> Result<Vec<QuadraticCoeffs>> {
    let n = f.modulus();
    let pairs = (n as u128) * (n as u128);
    if pairs > cfg.max_pairs {
        return Err(Error::ResourceLimit {
            what: "coefficient pairs",
            required: pairs,
            budget: cfg.max_pairs,
        });
    }
    cfg.check_table(n)?;
    let fpoly = f.polynomial();
    let ident = PolynomialModN::identity(n)?;
    let y1 = f.eval_reduced(1 % n);
    let y1_sq = mul_mod(y1, y1, n);
    let y2 = f.eval_reduced(2 % n);
    let y2_sq = mul_mod(y2, y2, n);
    let (one, two) = (1 % n, 2 % n);

    let confirm = |g1: u64, g2: u64| -> bool {
        if cfg.pointwise {
            (0..n).all(|x| {
                let y = f.eval_reduced(x);
                add_mod(mul_mod(g1, y, n), mul_mod(g2, mul_mod(y, y, n), n), n) == x
            })
        } else {
            let g = PolynomialModN::quadratic(n, g1, g2).expect("valid modulus");
            let t = g
                .compose(&fpoly)
                .and_then(|gf| gf.sub(&ident))
                .expect("same modulus");
            quartic_vanishes(&t).expect("vanishes at 0, 1, 2")
        }
    };

    let mut found = fold_range(
        0..n,
        cfg.parallel,
        Vec::new,
        |g2| {
            let mut hits = Vec::new();
            // acc tracks g1*y1 + g2*y1^2 as g1 steps through [0, N)
            let mut acc = mul_mod(g2, y1_sq, n);
            let base2 = mul_mod(g2, y2_sq, n);
            for g1 in 0..n {
                if acc == one && add_mod(mul_mod(g1, y2, n), base2, n) == two && confirm(g1, g2) {
                    hits.push(QuadraticCoeffs { g1, g2 });
                }
                acc = add_mod(acc, y1, n);
            }
            hits
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    found.sort_unstable();
    Ok(found)
}

/// Lowest-degree polynomial with zero constant term and degree at most `dmax`
/// whose table is the inverse table of `f`. Ties within a degree go to the
/// smallest `(cd, .., c2)` read as a base-N number.
pub fn brute_min_degree_inverse(
    f: &QuadraticPP,
    dmax: u32,
    cfg: &OracleConfig,
) -> Result<Option<PolynomialModN>> {
    if !(1..=4).contains(&dmax) {
        return Err(Error::invalid(format!("dmax must be in 1..=4, got {dmax}")));
    }
    let n = f.modulus();
    cfg.check_table(n)?;
    // c1 is pinned by the value at y = 1, so degree d costs N^(d-1) candidates.
    let required: u128 = (1..=dmax).map(|d| (n as u128).pow(d - 1)).sum();
    if required > cfg.max_min_degree_candidates {
        return Err(Error::ResourceLimit {
            what: "min-degree candidates",
            required,
            budget: cfg.max_min_degree_candidates,
        });
    }
    let target = f.table().inverse();
    let target = target.as_slice();
    let t1 = target[1 % n as usize] as u64;

    for d in 1..=dmax as usize {
        let space = n.pow(d as u32 - 1);
        let matches = |k: u64| -> Option<Vec<u64>> {
            // k encodes (c2, .., cd) little-endian in base N
            let mut coeffs = vec![0u64; d + 1];
            let mut rest = k;
            for c in coeffs.iter_mut().skip(2) {
                *c = rest % n;
                rest /= n;
            }
            if d >= 2 && coeffs[d] == 0 {
                return None;
            }
            let higher = coeffs[2..].iter().fold(0, |acc, &c| add_mod(acc, c, n));
            coeffs[1] = sub_mod(t1, higher, n);
            let ok = (0..n).all(|y| {
                let v = coeffs
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| add_mod(mul_mod(acc, y, n), c, n));
                v == target[y as usize] as u64
            });
            ok.then_some(coeffs)
        };
        let best = fold_range(
            0..space,
            cfg.parallel,
            || None,
            |k| matches(k).map(|_| k),
            |a: Option<u64>, b: Option<u64>| match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
        );
        if let Some(k) = best {
            let coeffs = matches(k).expect("re-evaluates to a match");
            return Ok(Some(PolynomialModN::new(n, &coeffs)?));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Instance {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DisagreementKind {
    /// Structural permutation test disagrees with the table.
    Permutation,
    /// Existence criterion disagrees with brute-force existence.
    Existence,
    /// Computed inverse set differs from the brute-force set.
    Values,
    /// A returned inverse fails at some point.
    Verification,
    /// Candidate count or even-N coupling broken.
    CountLaw,
    /// A valuation row of a candidate does not hold.
    ExponentProfile,
    /// An internal error surfaced while checking the instance.
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Disagreement {
    pub instance: Instance,
    pub kind: DisagreementKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: Instance,
    pub dmax: u32,
    /// Coefficients `c0..cd` of the lowest-degree polynomial inverse, if one
    /// exists within `dmax`.
    pub min_degree_inverse: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SweepReport {
    pub n_lo: u64,
    pub n_hi: u64,
    pub polynomials_checked: u64,
    pub permutation_disagreements: u64,
    /// Permutation polynomials with `f2 != 0`.
    pub quadratic_pps_tested: u64,
    /// Permutation polynomials with `f2 = 0`.
    pub degenerate_pps_tested: u64,
    pub existence_agreements: u64,
    pub existence_disagreements: u64,
    pub value_disagreements: u64,
    pub inverse_verification_failures: u64,
    pub count_law_failures: u64,
    pub exponent_profile_failures: u64,
    pub with_inverse: u64,
    pub without_inverse: u64,
    pub disagreements: Vec<Disagreement>,
    /// Smallest instances (by `(N, f1, f2)`) with no quadratic inverse.
    pub no_inverse_examples: Vec<Instance>,
    pub counterexample: Option<Counterexample>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.permutation_disagreements == 0
            && self.existence_disagreements == 0
            && self.value_disagreements == 0
            && self.inverse_verification_failures == 0
            && self.count_law_failures == 0
            && self.exponent_profile_failures == 0
            && self.disagreements.is_empty()
    }

    /// Associative, order-independent merge of two partial reports.
    pub fn merge(mut self, mut other: SweepReport, record_limit: usize) -> SweepReport {
        self.n_lo = self.n_lo.min(other.n_lo);
        self.n_hi = self.n_hi.max(other.n_hi);
        self.polynomials_checked += other.polynomials_checked;
        self.permutation_disagreements += other.permutation_disagreements;
        self.quadratic_pps_tested += other.quadratic_pps_tested;
        self.degenerate_pps_tested += other.degenerate_pps_tested;
        self.existence_agreements += other.existence_agreements;
        self.existence_disagreements += other.existence_disagreements;
        self.value_disagreements += other.value_disagreements;
        self.inverse_verification_failures += other.inverse_verification_failures;
        self.count_law_failures += other.count_law_failures;
        self.exponent_profile_failures += other.exponent_profile_failures;
        self.with_inverse += other.with_inverse;
        self.without_inverse += other.without_inverse;
        self.disagreements.append(&mut other.disagreements);
        self.disagreements.sort();
        self.no_inverse_examples
            .append(&mut other.no_inverse_examples);
        self.no_inverse_examples.sort();
        self.no_inverse_examples.truncate(record_limit);
        self.counterexample = match (self.counterexample, other.counterexample) {
            (Some(a), Some(b)) => Some(if a.instance <= b.instance { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    fn empty() -> SweepReport {
        SweepReport {
            n_lo: u64::MAX,
            n_hi: 0,
            ..Default::default()
        }
    }

    fn flag(&mut self, instance: Instance, kind: DisagreementKind) {
        self.disagreements.push(Disagreement { instance, kind });
    }
}

fn pointwise_inverse(f: &QuadraticPP, c: QuadraticCoeffs) -> bool {
    let n = f.modulus();
    (0..n).all(|x| {
        let y = f.eval_reduced(x);
        add_mod(mul_mod(c.g1, y, n), mul_mod(c.g2, mul_mod(y, y, n), n), n) == x
    })
}

/// Cross-check every computed quantity for one permutation polynomial.
pub fn check_instance(f: &QuadraticPP, cfg: &OracleConfig) -> Result<SweepReport> {
    let n = f.modulus();
    let inst = Instance {
        n,
        f1: f.f1(),
        f2: f.f2(),
    };
    let mut r = SweepReport {
        n_lo: n,
        n_hi: n,
        ..Default::default()
    };
    if f.is_degenerate() {
        r.degenerate_pps_tested = 1;
    } else {
        r.quadratic_pps_tested = 1;
    }

    let report = exists_quadratic_inverse(f);
    let outcome = quadratic_inverse(f)?;
    let partial = partial_inverse(f)?;
    let brute = brute_quadratic_inverses(f, cfg)?;

    if report.exists == !brute.is_empty() {
        r.existence_agreements = 1;
    } else {
        r.existence_disagreements = 1;
        r.flag(inst, DisagreementKind::Existence);
    }

    let mut computed = outcome.candidates();
    computed.sort_unstable();
    if computed != brute {
        r.value_disagreements = 1;
        r.flag(inst, DisagreementKind::Values);
    }

    if computed.iter().any(|&c| !pointwise_inverse(f, c)) {
        r.inverse_verification_failures = 1;
        r.flag(inst, DisagreementKind::Verification);
    }

    let candidates = partial.candidates();
    let expected_count = if n % 2 == 0 { 2 } else { 1 };
    let coupled = candidates
        .iter()
        .map(|&c| pointwise_inverse(f, c))
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] == w[1]);
    let three_point_ok = candidates.iter().all(|&c| {
        (0..3u64).all(|x| {
            let x = x % n;
            let y = f.eval_reduced(x);
            add_mod(mul_mod(c.g1, y, n), mul_mod(c.g2, mul_mod(y, y, n), n), n) == x
        })
    });
    if candidates.len() != expected_count || !coupled || !three_point_ok {
        r.count_law_failures = 1;
        r.flag(inst, DisagreementKind::CountLaw);
    }

    let profile_ok = candidates.iter().all(|c| {
        exponent_profile(f, &c.polynomial(n))
            .iter()
            .all(|row| row.holds)
    });
    if !profile_ok {
        r.exponent_profile_failures = 1;
        r.flag(inst, DisagreementKind::ExponentProfile);
    }

    // the fast verifier must agree with the pointwise one on every candidate
    for &c in &candidates {
        if is_inverse_pair(f, &c.polynomial(n))? != pointwise_inverse(f, c) {
            r.inverse_verification_failures += 1;
            r.flag(inst, DisagreementKind::Verification);
        }
    }

    if brute.is_empty() {
        r.without_inverse = 1;
        r.no_inverse_examples.push(inst);
    } else {
        r.with_inverse = 1;
    }
    Ok(r)
}

fn sweep_modulus<P>(n: u64, cfg: &OracleConfig, filter: &P) -> SweepReport
where
    P: Fn(u64, u64, u64) -> bool + Sync,
{
    let mut report = SweepReport {
        n_lo: n,
        n_hi: n,
        ..Default::default()
    };
    let fact = factorize(n).expect("n >= 2");
    for f1 in 0..n {
        for f2 in 0..n {
            if !filter(n, f1, f2) {
                continue;
            }
            let inst = Instance { n, f1, f2 };
            report.polynomials_checked += 1;
            let qpp = QuadraticPP::with_factorization(n, f1, f2, fact.clone());
            if cfg.check_permutation {
                let poly = PolynomialModN::quadratic(n, f1, f2).expect("valid modulus");
                match brute_is_permutation(&poly, cfg) {
                    Ok(brute) if brute == qpp.is_ok() => {}
                    Ok(_) => {
                        report.permutation_disagreements += 1;
                        report.flag(inst, DisagreementKind::Permutation);
                    }
                    Err(_) => report.flag(inst, DisagreementKind::Error),
                }
            }
            let Ok(qpp) = qpp else { continue };
            match check_instance(&qpp, cfg) {
                Ok(r) => report = report.merge(r, cfg.record_limit),
                Err(_) => report.flag(inst, DisagreementKind::Error),
            }
        }
    }
    report
}

/// Exhaustive sweep over every `(f1, f2)` in `[0, N)^2` for `N` in `[n_lo, n_hi]`.
pub fn sweep(n_lo: u64, n_hi: u64, cfg: &OracleConfig) -> Result<SweepReport> {
    sweep_filtered(n_lo, n_hi, cfg, |_, _, _| true)
}

/// Like [`sweep`], restricted to the `(N, f1, f2)` accepted by `filter`.
pub fn sweep_filtered<P>(n_lo: u64, n_hi: u64, cfg: &OracleConfig, filter: P) -> Result<SweepReport>
where
    P: Fn(u64, u64, u64) -> bool + Sync,
{
    if n_lo < 2 || n_lo > n_hi {
        return Err(Error::invalid(format!(
            "bad modulus range [{n_lo}, {n_hi}]"
        )));
    }
    crate::modmath::check_modulus(n_hi)?;
    let needed = (n_hi as u128) * (n_hi as u128);
    if needed > cfg.max_pairs {
        return Err(Error::ResourceLimit {
            what: "coefficient pairs",
            required: needed,
            budget: cfg.max_pairs,
        });
    }
    let limit = cfg.record_limit;
    let mut report = fold_range(
        n_lo..n_hi + 1,
        cfg.parallel,
        SweepReport::empty,
        |n| sweep_modulus(n, cfg, &filter),
        |a, b| a.merge(b, limit),
    );
    report.n_lo = n_lo;
    report.n_hi = n_hi;

    if cfg.counterexample_dmax > 0 {
        if let Some(&inst) = report.no_inverse_examples.first() {
            let f = QuadraticPP::new(inst.n, inst.f1, inst.f2)?;
            let found = brute_min_degree_inverse(&f, cfg.counterexample_dmax, cfg)?;
            report.counterexample = Some(Counterexample {
                instance: inst,
                dmax: cfg.counterexample_dmax,
                min_degree_inverse: found.map(|p| p.coeffs().to_vec()),
            });
        }
    }
    Ok(report)
}
