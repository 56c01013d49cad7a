//! Exact modular arithmetic on word-sized moduli.
//!
//! Every modulus handled by this crate is below [`MAX_MODULUS`], so a product
//! of two reduced residues always fits in a `u64`. Longer products are reduced
//! after each multiplication.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MAX_MODULUS: u64 = 1 << 32;

/// `a * b mod n` for residues already reduced below `n < 2^32`.
#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    debug_assert!(a < n && b < n);
    a * b % n
}

#[inline]
pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    debug_assert!(a < n && b < n);
    let s = a + b;
    if s >= n {
        s - n
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    debug_assert!(a < n && b < n);
    if a >= b {
        a - b
    } else {
        a + n - b
    }
}

#[inline]
pub fn neg_mod(a: u64, n: u64) -> u64 {
    sub_mod(0, a % n, n)
}

/// Reduce a signed integer into `[0, n)`.
#[inline]
pub fn reduce_signed(a: i64, n: u64) -> u64 {
    (a as i128).rem_euclid(n as i128) as u64
}

pub(crate) fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    if n >= MAX_MODULUS {
        return Err(Error::invalid(format!(
            "modulus {n} exceeds the supported range (< 2^32)"
        )));
    }
    Ok(())
}

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::invalid("gcd(0, 0) is undefined"));
    }
    Ok(gcd_unchecked(a, b))
}

#[inline]
pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid in the two-register form: returns `(g, x)` with
/// `g = gcd(s, m)` and `s*x ≡ g (mod m)`. `x` is not reduced.
fn euclid_cofactor(s: u64, m: u64) -> (u64, i64) {
    let (mut s, mut m) = (s as i64, m as i64);
    let (mut s_star, mut r) = (1i64, 0i64);
    while m != 0 {
        let c = s % m;
        let quot = s / m;
        s = m;
        m = c;
        let r_next = s_star - quot * r;
        s_star = r;
        r = r_next;
    }
    (s as u64, s_star)
}

/// The arithmetic inverse `s*` with `s * s* ≡ 1 (mod m)`, in `[0, m)`.
pub fn arithmetic_inverse(s: u64, m: u64) -> Result<u64> {
    check_modulus(m)?;
    let s_red = s % m;
    let (g, x) = euclid_cofactor(s_red, m);
    if g != 1 {
        return Err(Error::NoInverse {
            value: s,
            modulus: m,
            gcd: g,
        });
    }
    Ok(reduce_signed(x, m))
}

/// Solution set `{ base + k*step : 0 <= k < count }` of `a*u ≡ b (mod N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceSolutions {
    pub base: u64,
    pub count: u64,
    pub step: u64,
}

impl CongruenceSolutions {
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.count).map(move |k| self.base + k * self.step)
    }

    pub fn contains(&self, u: u64) -> bool {
        u < self.count * self.step && u % self.step == self.base
    }

    pub fn modulus(&self) -> u64 {
        self.count * self.step
    }
}

/// Solve `a*u ≡ b (mod n)`. Inputs are reduced into `[0, n)` first.
pub fn solve_linear_congruence(a: i64, b: i64, n: u64) -> Result<CongruenceSolutions> {
    check_modulus(n)?;
    let a = reduce_signed(a, n);
    let b = reduce_signed(b, n);
    // gcd(0, n) = n, so a ≡ 0 is handled uniformly.
    let d = gcd_unchecked(a, n);
    if b % d != 0 {
        return Err(Error::NoSolution {
            a,
            b,
            modulus: n,
            d,
        });
    }
    let step = n / d;
    let base = if step == 1 {
        0
    } else {
        let inv = arithmetic_inverse(a / d, step)?;
        mul_mod((b / d) % step, inv, step)
    };
    Ok(CongruenceSolutions {
        base,
        count: d,
        step,
    })
}

/// A p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, bound: u32) -> bool {
        self >= Valuation::Finite(bound)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u32(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest `e` with `p^e | n`; `Infinite` for `n = 0`.
pub fn valuation(n: u64, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(valuation_unchecked(n, p))
}

pub(crate) fn valuation_unchecked(mut n: u64, p: u64) -> Valuation {
    if n == 0 {
        return Valuation::Infinite;
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Valuation::Finite(e)
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Accepts a pre-computed factorization after checking it is well formed.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::invalid("primes must be strictly increasing"));
            }
        }
        for &(p, e) in &factors {
            if e == 0 || !is_prime(p) {
                return Err(Error::invalid(format!("bad factor {p}^{e}")));
            }
        }
        let f = Factorization { factors };
        if f.checked_value().is_none() {
            return Err(Error::invalid("factorization overflows u64"));
        }
        Ok(f)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    fn checked_value(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> u64 {
        self.checked_value().expect("validated on construction")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut rest, 2);
    let mut d = 3u64;
    while d.saturating_mul(d) <= rest {
        push(&mut rest, d);
        d += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

pub(crate) fn ceil_half(n: u32) -> u32 {
    n.div_ceil(2)
}
