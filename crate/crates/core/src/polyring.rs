//! Polynomials over `Z_N`, permutation-polynomial tests and permutation tables.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{
    add_mod, check_modulus, factorize, mul_mod, neg_mod, reduce_signed, sub_mod,
    valuation_unchecked, Factorization, Valuation,
};

/// A polynomial with coefficients in `[0, N)`, lowest degree first.
///
/// Trailing zero coefficients are trimmed; the zero polynomial is `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialModN {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl PolynomialModN {
    pub fn new(modulus: u64, coeffs: &[u64]) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self::from_reduced(
            modulus,
            coeffs.iter().map(|c| c % modulus).collect(),
        ))
    }

    pub fn from_signed(modulus: u64, coeffs: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self::from_reduced(
            modulus,
            coeffs.iter().map(|&c| reduce_signed(c, modulus)).collect(),
        ))
    }

    fn from_reduced(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        PolynomialModN { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(modulus, &[0])
    }

    /// The identity map `x`.
    pub fn identity(modulus: u64) -> Result<Self> {
        Self::new(modulus, &[0, 1])
    }

    /// `c1*x + c2*x^2`.
    pub fn quadratic(modulus: u64, c1: u64, c2: u64) -> Result<Self> {
        Self::new(modulus, &[0, c1, c2])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    pub fn evaluate(&self, x: u64) -> Result<u64> {
        if x >= self.modulus {
            return Err(Error::invalid(format!(
                "evaluation point {x} outside [0, {})",
                self.modulus
            )));
        }
        Ok(self.eval_reduced(x))
    }

    /// Horner evaluation; `x` must already be reduced.
    #[inline]
    pub(crate) fn eval_reduced(&self, x: u64) -> u64 {
        let n = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, n), c, n))
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::invalid(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let n = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), n))
            .collect();
        Ok(Self::from_reduced(n, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let n = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), n))
            .collect();
        Ok(Self::from_reduced(n, coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let n = self.modulus;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = add_mod(coeffs[i + j], mul_mod(a, b, n), n);
            }
        }
        Ok(Self::from_reduced(n, coeffs))
    }

    /// `self ∘ inner`, i.e. the coefficients of `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_modulus(inner)?;
        let n = self.modulus;
        let mut acc = Self::from_reduced(n, vec![0]);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = add_mod(acc.coeffs[0], c, n);
            acc = Self::from_reduced(n, acc.coeffs);
        }
        Ok(acc)
    }

    /// Split off the constant term: returns `(self - h0, h0)`.
    pub fn normalize_shift(&self) -> (Self, u64) {
        let h0 = self.coeffs[0];
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = 0;
        (Self::from_reduced(self.modulus, coeffs), h0)
    }

    /// Given the inverse `self` of a shift-normalized polynomial `H`, returns
    /// `self(x - h0)`, the inverse of `H + h0`.
    pub fn shift_inverse(&self, h0: u64) -> Self {
        let n = self.modulus;
        let shift = Self::from_reduced(n, vec![neg_mod(h0, n), 1 % n]);
        self.compose(&shift).expect("same modulus")
    }
}

impl fmt::Display for PolynomialModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " (mod {})", self.modulus)
    }
}

/// Which branch of the prime-power criterion a modulus falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralCase {
    /// `2 | N` but `4 ∤ N`.
    SingleFactorTwo,
    /// `2 ∤ N` or `4 | N`.
    General,
}

/// The per-prime condition that was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeRule {
    /// `h1 + h2` odd (the prime 2 with exponent 1).
    OddCoefficientSum,
    /// `p ∤ h1` and `p | h2`.
    UnitLinearDivisibleQuadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeCondition {
    pub prime: u64,
    pub exponent: u32,
    pub rule: PrimeRule,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum CertificateMethod {
    Structural {
        case: StructuralCase,
        rows: Vec<PrimeCondition>,
    },
    /// Degree >= 3: the full table was checked for bijectivity.
    TableCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationCertificate {
    pub modulus: u64,
    pub is_permutation: bool,
    /// Set when the quadratic coefficient is zero (the polynomial is linear).
    pub degenerate_linear: bool,
    #[serde(flatten)]
    pub method: CertificateMethod,
}

fn structural_certificate(
    modulus: u64,
    factorization: &Factorization,
    h1: u64,
    h2: u64,
) -> PermutationCertificate {
    let case = if factorization.exponent_of(2) == 1 {
        StructuralCase::SingleFactorTwo
    } else {
        StructuralCase::General
    };
    let rows: Vec<PrimeCondition> = factorization
        .factors()
        .iter()
        .map(|&(p, e)| {
            let (rule, satisfied) = if p == 2 && e == 1 {
                (PrimeRule::OddCoefficientSum, (h1 + h2) % 2 == 1)
            } else {
                (
                    PrimeRule::UnitLinearDivisibleQuadratic,
                    h1 % p != 0 && h2 % p == 0,
                )
            };
            PrimeCondition {
                prime: p,
                exponent: e,
                rule,
                satisfied,
            }
        })
        .collect();
    PermutationCertificate {
        modulus,
        is_permutation: rows.iter().all(|r| r.satisfied),
        degenerate_linear: h2 == 0,
        method: CertificateMethod::Structural { case, rows },
    }
}

/// Decide whether `p` permutes `Z_N`. The constant term is irrelevant and ignored.
///
/// Degree <= 2 uses the per-prime-power criteria; higher degrees fall back to
/// building the table.
pub fn is_permutation_polynomial(p: &PolynomialModN) -> PermutationCertificate {
    let n = p.modulus();
    if p.degree() <= 2 {
        let fact = factorize(n).expect("modulus >= 2");
        structural_certificate(n, &fact, p.coeff(1), p.coeff(2))
    } else {
        PermutationCertificate {
            modulus: n,
            is_permutation: permutation_table(p).is_ok(),
            degenerate_linear: false,
            method: CertificateMethod::TableCheck,
        }
    }
}

/// A bijection of `{0, .., N-1}`; `map[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationTable {
    map: Vec<u32>,
}

impl PermutationTable {
    pub fn from_map(map: Vec<u32>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::invalid("empty permutation table"));
        }
        let mut seen = vec![false; n];
        for &v in &map {
            let v = v as usize;
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation {
                    modulus: n as u64,
                    certificate: Box::new(PermutationCertificate {
                        modulus: n as u64,
                        is_permutation: false,
                        degenerate_linear: false,
                        method: CertificateMethod::TableCheck,
                    }),
                });
            }
        }
        Ok(PermutationTable { map })
    }

    pub fn identity(modulus: u64) -> Self {
        PermutationTable {
            map: (0..modulus as u32).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.map.len() as u64
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    pub fn get(&self, x: u64) -> u64 {
        self.map[x as usize] as u64
    }

    /// The deinterleaver: `inverse()[self[x]] = x`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        PermutationTable { map: inv }
    }

    /// `self ∘ inner`: `x -> self[inner[x]]`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.map.len() != inner.map.len() {
            return Err(Error::invalid("table length mismatch"));
        }
        Ok(PermutationTable {
            map: inner.map.iter().map(|&y| self.map[y as usize]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }
}

pub fn permutation_table(p: &PolynomialModN) -> Result<PermutationTable> {
    let map = (0..p.modulus()).map(|x| p.eval_reduced(x) as u32).collect();
    PermutationTable::from_map(map)
}

pub fn invert_table(t: &PermutationTable) -> PermutationTable {
    t.inverse()
}

/// A validated quadratic permutation polynomial `f1*x + f2*x^2 (mod N)`.
///
/// `f2 = 0` is accepted as a degenerate (linear) case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPP {
    modulus: u64,
    f1: u64,
    f2: u64,
    n_factors: Factorization,
    f2_valuations: Vec<(u64, Valuation)>,
    certificate: PermutationCertificate,
}

impl QuadraticPP {
    pub fn new(modulus: u64, f1: u64, f2: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let fact = factorize(modulus)?;
        Self::build(modulus, f1 % modulus, f2 % modulus, fact)
    }

    /// Same as [`QuadraticPP::new`] with a caller-supplied factorization of `N`.
    pub fn with_factorization(
        modulus: u64,
        f1: u64,
        f2: u64,
        factorization: Factorization,
    ) -> Result<Self> {
        check_modulus(modulus)?;
        if factorization.value() != modulus {
            return Err(Error::invalid(format!(
                "factorization {factorization} does not multiply to {modulus}"
            )));
        }
        Self::build(modulus, f1 % modulus, f2 % modulus, factorization)
    }

    pub fn from_polynomial(p: &PolynomialModN) -> Result<Self> {
        if p.degree() > 2 || p.coeff(0) != 0 {
            return Err(Error::invalid(format!(
                "{p} is not of the form f1*x + f2*x^2"
            )));
        }
        Self::new(p.modulus(), p.coeff(1), p.coeff(2))
    }

    fn build(modulus: u64, f1: u64, f2: u64, fact: Factorization) -> Result<Self> {
        let odd_prime = fact.is_prime_power() && fact.factors()[0].1 == 1 && modulus != 2;
        if odd_prime && f2 != 0 {
            return Err(Error::NoQuadraticPp { modulus });
        }
        let certificate = structural_certificate(modulus, &fact, f1, f2);
        if !certificate.is_permutation {
            return Err(Error::NotPermutation {
                modulus,
                certificate: Box::new(certificate),
            });
        }
        let f2_valuations = fact
            .primes()
            .map(|p| (p, valuation_unchecked(f2, p)))
            .collect();
        Ok(QuadraticPP {
            modulus,
            f1,
            f2,
            n_factors: fact,
            f2_valuations,
            certificate,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn f1(&self) -> u64 {
        self.f1
    }

    pub fn f2(&self) -> u64 {
        self.f2
    }

    pub fn is_degenerate(&self) -> bool {
        self.f2 == 0
    }

    pub fn modulus_factorization(&self) -> &Factorization {
        &self.n_factors
    }

    /// `(p, n_{F,p})` for each prime `p | N`.
    pub fn f2_valuations(&self) -> &[(u64, Valuation)] {
        &self.f2_valuations
    }

    pub fn f2_valuation(&self, p: u64) -> Valuation {
        self.f2_valuations
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or_else(|| valuation_unchecked(self.f2, p), |&(_, v)| v)
    }

    pub fn certificate(&self) -> &PermutationCertificate {
        &self.certificate
    }

    pub fn polynomial(&self) -> PolynomialModN {
        PolynomialModN::from_reduced(self.modulus, vec![0, self.f1, self.f2])
    }

    #[inline]
    pub fn eval_reduced(&self, x: u64) -> u64 {
        let n = self.modulus;
        mul_mod(add_mod(self.f1, mul_mod(self.f2, x, n), n), x, n)
    }

    pub fn table(&self) -> PermutationTable {
        PermutationTable {
            map: (0..self.modulus)
                .map(|x| self.eval_reduced(x) as u32)
                .collect(),
        }
    }
}

impl fmt::Display for QuadraticPP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}x^2 (mod {})", self.f1, self.f2, self.modulus)
    }
}
