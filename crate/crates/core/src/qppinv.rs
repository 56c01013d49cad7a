//! Quadratic inverses of quadratic permutation polynomials.
//!
//! For `F(x) = f1*x + f2*x^2 (mod N)` a quadratic `G` that inverts `F` at
//! `x = 0, 1, 2` always exists (one for odd `N`, two for even `N`). Such a `G`
//! is a true inverse iff `12*f2*g2 ≡ 0 (mod N)`, and whether that happens is
//! decided up front by comparing the p-adic valuations of `f2` against
//! per-prime thresholds derived from the exponents of `N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{
    add_mod, arithmetic_inverse, ceil_half, mul_mod, solve_linear_congruence, sub_mod,
    valuation_unchecked, Valuation,
};
use crate::polyring::{PolynomialModN, QuadraticPP};

/// Coefficients of `g1*x + g2*x^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadraticCoeffs {
    pub g1: u64,
    pub g2: u64,
}

impl QuadraticCoeffs {
    pub fn polynomial(&self, modulus: u64) -> PolynomialModN {
        PolynomialModN::quadratic(modulus, self.g1, self.g2).expect("valid modulus")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InverseOutcome {
    None,
    One {
        inverse: QuadraticCoeffs,
    },
    /// Even `N`: `second = first + (N/2, N/2)`.
    Two {
        first: QuadraticCoeffs,
        second: QuadraticCoeffs,
    },
}

impl InverseOutcome {
    pub fn candidates(&self) -> Vec<QuadraticCoeffs> {
        match *self {
            InverseOutcome::None => vec![],
            InverseOutcome::One { inverse } => vec![inverse],
            InverseOutcome::Two { first, second } => vec![first, second],
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, InverseOutcome::None)
    }

    pub fn count(&self) -> usize {
        match self {
            InverseOutcome::None => 0,
            InverseOutcome::One { .. } => 1,
            InverseOutcome::Two { .. } => 2,
        }
    }
}

/// The quadratic polynomial(s) that invert `f` at `x = 0, 1, 2`.
pub fn partial_inverse(f: &QuadraticPP) -> Result<InverseOutcome> {
    let n = f.modulus();
    let (f1, f2) = (f.f1(), f.f2());
    let s1 = add_mod(f1, f2, n);
    let s2 = add_mod(s1, f2, n);
    let s3 = add_mod(s2, f2, n);
    let triple = mul_mod(mul_mod(s1, s2, n), s3, n);
    let s1_inv = arithmetic_inverse(s1, n)?;
    let s1_sq = mul_mod(s1, s1, n);
    // g1 ≡ (f1+f2)^* (1 - g2 (f1+f2)^2)
    let linear_from = |g2: u64| mul_mod(s1_inv, sub_mod(1 % n, mul_mod(g2, s1_sq, n), n), n);

    if n % 2 == 1 {
        let sol = solve_linear_congruence(triple as i64, -(f2 as i64), n)?;
        debug_assert_eq!(sol.count, 1);
        let g2 = sol.base;
        return Ok(InverseOutcome::One {
            inverse: QuadraticCoeffs {
                g1: linear_from(g2),
                g2,
            },
        });
    }

    let half = n / 2;
    let g12 = if half == 1 {
        0
    } else {
        let sol = solve_linear_congruence(triple as i64, -(f2 as i64), half)?;
        debug_assert_eq!(sol.count, 1);
        sol.base
    };
    let first = QuadraticCoeffs {
        g1: linear_from(g12),
        g2: g12,
    };
    let second = QuadraticCoeffs {
        g1: add_mod(first.g1, half, n),
        g2: add_mod(first.g2, half, n),
    };
    Ok(InverseOutcome::Two { first, second })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceRow {
    pub prime: u64,
    /// Exponent of `prime` in `N`.
    pub n_n: u32,
    /// Valuation of `f2` at `prime`.
    pub n_f: Valuation,
    pub threshold: u32,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceReport {
    pub exists: bool,
    pub rows: Vec<ExistenceRow>,
}

/// Minimum valuation of `f2` at `p` for a quadratic inverse to exist, given
/// that `p^exponent || N`.
pub fn valuation_threshold(p: u64, exponent: u32) -> u32 {
    match p {
        2 if exponent > 1 => ceil_half(exponent - 2).max(1),
        2 => 0,
        3 if exponent > 0 => ceil_half(exponent - 1).max(1),
        3 => 0,
        _ => ceil_half(exponent),
    }
}

pub fn exists_quadratic_inverse(f: &QuadraticPP) -> ExistenceReport {
    let rows: Vec<ExistenceRow> = f
        .modulus_factorization()
        .factors()
        .iter()
        .map(|&(p, e)| {
            let n_f = f.f2_valuation(p);
            let threshold = valuation_threshold(p, e);
            ExistenceRow {
                prime: p,
                n_n: e,
                n_f,
                threshold,
                satisfied: n_f.at_least(threshold),
            }
        })
        .collect();
    ExistenceReport {
        exists: rows.iter().all(|r| r.satisfied),
        rows,
    }
}

/// All quadratic inverses of `f`, or `None` when no quadratic inverse exists.
pub fn quadratic_inverse(f: &QuadraticPP) -> Result<InverseOutcome> {
    if !exists_quadratic_inverse(f).exists {
        return Ok(InverseOutcome::None);
    }
    partial_inverse(f)
}

/// [`quadratic_inverse`], re-checking each candidate with [`is_inverse_pair`].
pub fn quadratic_inverse_checked(f: &QuadraticPP) -> Result<InverseOutcome> {
    let outcome = quadratic_inverse(f)?;
    for c in outcome.candidates() {
        if !is_inverse_pair(f, &c.polynomial(f.modulus()))? {
            return Err(Error::VerificationFailed {
                modulus: f.modulus(),
                f1: f.f1(),
                f2: f.f2(),
            });
        }
    }
    Ok(outcome)
}

/// For `T` of degree <= 4 vanishing at `0, 1, 2`: whether `T` vanishes on all of `Z_N`.
pub fn quartic_vanishes(t: &PolynomialModN) -> Result<bool> {
    if t.degree() > 4 {
        return Err(Error::invalid(format!("{t} has degree above 4")));
    }
    let n = t.modulus();
    for point in 0..3 {
        let value = t.eval_reduced(point % n);
        if value != 0 {
            return Err(Error::NonVanishingPoint {
                point,
                value,
                modulus: n,
            });
        }
    }
    let (t3, t4) = (t.coeff(3), t.coeff(4));
    let c24 = mul_mod(24 % n, t4, n);
    let c6_36 = add_mod(mul_mod(6 % n, t3, n), mul_mod(36 % n, t4, n), n);
    Ok(c24 == 0 && c6_36 == 0)
}

/// Whether `g(f(x)) = x` at `x = 0, 1, 2` (reduced mod N).
pub fn inverts_at_three_points(f: &QuadraticPP, g: &PolynomialModN) -> bool {
    let n = f.modulus();
    (0..3u64).all(|x| {
        let x = x % n;
        g.eval_reduced(f.eval_reduced(x)) == x
    })
}

/// Whether the quadratic `g` inverts `f` on all of `Z_N`.
pub fn is_inverse_pair(f: &QuadraticPP, g: &PolynomialModN) -> Result<bool> {
    let n = f.modulus();
    if g.modulus() != n {
        return Err(Error::invalid(format!(
            "modulus mismatch: {n} vs {}",
            g.modulus()
        )));
    }
    if g.degree() > 2 {
        return Err(Error::invalid(format!("{g} is not quadratic")));
    }
    if !inverts_at_three_points(f, g) {
        return Ok(false);
    }
    let twelve_f2_g2 = mul_mod(mul_mod(12 % n, f.f2(), n), g.coeff(2), n);
    Ok(twelve_f2_g2 == 0)
}

pub fn is_self_inverse(f: &QuadraticPP) -> bool {
    is_inverse_pair(f, &f.polynomial()).expect("same modulus, quadratic")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "bound", rename_all = "snake_case")]
pub enum ExpectedValuation {
    Equal(u32),
    AtLeast(u32),
    Unconstrained,
}

impl ExpectedValuation {
    pub fn holds(self, v: Valuation) -> bool {
        match self {
            ExpectedValuation::Equal(e) => v == Valuation::Finite(e),
            ExpectedValuation::AtLeast(e) => v.at_least(e),
            ExpectedValuation::Unconstrained => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentRow {
    pub prime: u64,
    pub n_n: u32,
    pub n_f: Valuation,
    pub n_g: Valuation,
    pub expected: ExpectedValuation,
    pub holds: bool,
}

/// How the valuations of `g2` are pinned by those of `f2` for a partial-inverse
/// candidate `g`. The prime 2 is skipped when `2 || N`.
pub fn exponent_profile(f: &QuadraticPP, g: &PolynomialModN) -> Vec<ExponentRow> {
    let g2 = g.coeff(2);
    f.modulus_factorization()
        .factors()
        .iter()
        .filter(|&&(p, e)| !(p == 2 && e == 1))
        .map(|&(p, e)| {
            // with 4 | N the cut-off for p = 2 drops by one
            let cut = if p == 2 { e - 1 } else { e };
            let n_f = f.f2_valuation(p);
            let expected = match n_f {
                Valuation::Finite(v) if v >= 1 && v < cut => ExpectedValuation::Equal(v),
                v if v.at_least(cut) => ExpectedValuation::AtLeast(cut),
                _ => ExpectedValuation::Unconstrained,
            };
            let n_g = valuation_unchecked(g2, p);
            ExponentRow {
                prime: p,
                n_n: e,
                n_f,
                n_g,
                expected,
                holds: expected.holds(n_g),
            }
        })
        .collect()
}

/// The linear inverse `f1^* x` of a degenerate `f` (f2 = 0).
pub fn linear_inverse(f: &QuadraticPP) -> Result<QuadraticCoeffs> {
    if !f.is_degenerate() {
        return Err(Error::invalid("f2 is nonzero"));
    }
    Ok(QuadraticCoeffs {
        g1: arithmetic_inverse(f.f1(), f.modulus())?,
        g2: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpp(n: u64, f1: u64, f2: u64) -> QuadraticPP {
        QuadraticPP::new(n, f1, f2).unwrap()
    }

    fn two(a: (u64, u64), b: (u64, u64)) -> InverseOutcome {
        InverseOutcome::Two {
            first: QuadraticCoeffs { g1: a.0, g2: a.1 },
            second: QuadraticCoeffs { g1: b.0, g2: b.1 },
        }
    }

    fn pointwise_inverse(f: &QuadraticPP, g: &PolynomialModN) -> bool {
        (0..f.modulus()).all(|x| g.eval_reduced(f.eval_reduced(x)) == x)
    }

    #[test]
    fn partial_inverse_examples() {
        assert_eq!(
            partial_inverse(&qpp(15120, 11, 210)).unwrap(),
            two((14891, 210), (7331, 7770))
        );
        assert_eq!(
            partial_inverse(&qpp(1024, 1, 16)).unwrap(),
            two((1, 496), (513, 1008))
        );
        assert_eq!(
            partial_inverse(&qpp(45, 1, 0)).unwrap(),
            InverseOutcome::One {
                inverse: QuadraticCoeffs { g1: 1, g2: 0 }
            }
        );
    }

    #[test]
    fn modulus_two_yields_x_and_x_squared() {
        for (f1, f2) in [(1, 0), (0, 1)] {
            let out = partial_inverse(&qpp(2, f1, f2)).unwrap();
            assert_eq!(out, two((1, 0), (0, 1)));
        }
    }

    #[test]
    fn existence_examples() {
        let r = exists_quadratic_inverse(&qpp(15120, 11, 210));
        assert!(r.exists);
        assert_eq!(r.rows.len(), 4);
        assert!(r
            .rows
            .iter()
            .all(|row| row.threshold == 1 && row.n_f == Valuation::Finite(1)));

        let r = exists_quadratic_inverse(&qpp(125, 1, 5));
        assert!(!r.exists);
        assert_eq!(r.rows[0].threshold, 2);

        let r = exists_quadratic_inverse(&qpp(1024, 1, 16));
        assert!(r.exists);
        assert_eq!(
            (r.rows[0].threshold, r.rows[0].n_f),
            (4, Valuation::Finite(4))
        );
    }

    #[test]
    fn thresholds() {
        assert_eq!(valuation_threshold(2, 1), 0);
        assert_eq!(valuation_threshold(2, 2), 1);
        assert_eq!(valuation_threshold(2, 4), 1);
        assert_eq!(valuation_threshold(2, 5), 2);
        assert_eq!(valuation_threshold(2, 10), 4);
        assert_eq!(valuation_threshold(3, 1), 1);
        assert_eq!(valuation_threshold(3, 3), 1);
        assert_eq!(valuation_threshold(3, 4), 2);
        assert_eq!(valuation_threshold(5, 1), 1);
        assert_eq!(valuation_threshold(5, 3), 2);
        assert_eq!(valuation_threshold(7, 4), 2);
    }

    #[test]
    fn quadratic_inverse_examples() {
        assert_eq!(
            quadratic_inverse(&qpp(15120, 11, 210)).unwrap(),
            two((14891, 210), (7331, 7770))
        );
        assert_eq!(
            quadratic_inverse(&qpp(1024, 15, 16)).unwrap(),
            two((751, 272), (239, 784))
        );
        assert!(quadratic_inverse(&qpp(125, 1, 5)).unwrap().is_none());
        assert!(quadratic_inverse_checked(&qpp(15120, 11, 420)).is_ok());
    }

    #[test]
    fn degenerate_gets_linear_inverse() {
        let f = qpp(45, 7, 0);
        let out = quadratic_inverse(&f).unwrap();
        let c = out.candidates()[0];
        assert_eq!(c, linear_inverse(&f).unwrap());
        assert_eq!(7 * c.g1 % 45, 1);
    }

    #[test]
    fn quartic_examples() {
        for n in [2u64, 3, 10, 125] {
            assert!(quartic_vanishes(&PolynomialModN::zero(n).unwrap()).unwrap());
        }
        let t = PolynomialModN::new(12, &[0, 0, 12]).unwrap();
        assert!(quartic_vanishes(&t).unwrap());

        let n = 15120;
        let f = qpp(n, 11, 210);
        let g1 = PolynomialModN::quadratic(n, 14891, 210).unwrap();
        let t = g1
            .compose(&f.polynomial())
            .unwrap()
            .sub(&PolynomialModN::identity(n).unwrap())
            .unwrap();
        let sweep = (0..n).all(|x| t.evaluate(x).unwrap() == 0);
        assert!(sweep);
        assert_eq!(quartic_vanishes(&t).unwrap(), sweep);
    }

    #[test]
    fn quartic_precondition() {
        let t = PolynomialModN::new(10, &[0, 1]).unwrap();
        assert_eq!(
            quartic_vanishes(&t),
            Err(Error::NonVanishingPoint {
                point: 1,
                value: 1,
                modulus: 10
            })
        );
        let t = PolynomialModN::new(10, &[0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(quartic_vanishes(&t), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn inverse_pair_examples() {
        let f = qpp(15120, 11, 210);
        let g = PolynomialModN::quadratic(15120, 14891, 210).unwrap();
        assert!(is_inverse_pair(&f, &g).unwrap());
        let bad = PolynomialModN::quadratic(15120, 14891, 211).unwrap();
        assert!(!is_inverse_pair(&f, &bad).unwrap());

        let f = qpp(125, 1, 5);
        let c = partial_inverse(&f).unwrap().candidates()[0];
        assert!(!is_inverse_pair(&f, &c.polynomial(125)).unwrap());
        assert!(!pointwise_inverse(&f, &c.polynomial(125)));

        for n in [4u64, 6, 9, 15, 100] {
            let id = qpp(n, 1, 0);
            assert!(is_inverse_pair(&id, &PolynomialModN::identity(n).unwrap()).unwrap());
        }
        let other = PolynomialModN::identity(16).unwrap();
        assert!(is_inverse_pair(&qpp(8, 1, 2), &other).is_err());
    }

    #[test]
    fn inverse_pair_matches_pointwise() {
        for n in 2..=40u64 {
            for f1 in 0..n {
                for f2 in 0..n {
                    let Ok(f) = QuadraticPP::new(n, f1, f2) else {
                        continue;
                    };
                    for g1 in 0..n {
                        for g2 in 0..n {
                            let g = PolynomialModN::quadratic(n, g1, g2).unwrap();
                            let fast = is_inverse_pair(&f, &g).unwrap();
                            // cheap prefilter keeps the pointwise side affordable
                            if fast || inverts_at_three_points(&f, &g) {
                                assert_eq!(fast, pointwise_inverse(&f, &g), "{f} / {g}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exponent_profile_examples() {
        let f = qpp(15120, 11, 210);
        let g = PolynomialModN::quadratic(15120, 14891, 210).unwrap();
        let rows = exponent_profile(&f, &g);
        let r5 = rows.iter().find(|r| r.prime == 5).unwrap();
        assert_eq!(r5.expected, ExpectedValuation::AtLeast(1));
        assert_eq!(r5.n_g, Valuation::Finite(1));
        assert!(rows.iter().all(|r| r.holds));

        let f = qpp(125, 1, 25);
        let c = quadratic_inverse(&f).unwrap().candidates()[0];
        let rows = exponent_profile(&f, &c.polynomial(125));
        assert_eq!(rows[0].expected, ExpectedValuation::Equal(2));
        assert_eq!(rows[0].n_g, Valuation::Finite(2));

        // n_F >= n_N: g2 must be divisible by p^{n_N}
        let f = qpp(25, 2, 0);
        let c = partial_inverse(&f).unwrap().candidates()[0];
        let rows = exponent_profile(&f, &c.polynomial(25));
        assert_eq!(rows[0].expected, ExpectedValuation::AtLeast(2));
        assert!(rows[0].holds);

        // 2 || N: the prime 2 is skipped
        let f = qpp(30, 2, 15);
        assert!(exponent_profile(&f, &f.polynomial())
            .iter()
            .all(|r| r.prime != 2));
    }

    #[test]
    fn self_inverse_examples() {
        assert!(is_self_inverse(&qpp(35, 1, 0)));
        assert!(is_self_inverse(&qpp(4, 1, 2)));
        // 12*210*210 = 35*15120, so only the three-point check rejects it
        let f = qpp(15120, 11, 210);
        assert_eq!(12 * 210 * 210 % 15120, 0);
        assert!(!inverts_at_three_points(&f, &f.polynomial()));
        assert!(!is_self_inverse(&f));
    }
}
