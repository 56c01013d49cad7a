#![allow(dead_code)]

use qpp_core::{Factorization, QuadraticPP};
use rand::Rng;

/// Product of the primes that must divide `f2` for `f1*x + f2*x^2` to permute `Z_N`.
pub fn required_f2_factor(fact: &Factorization) -> u64 {
    fact.factors()
        .iter()
        .filter(|&&(p, e)| !(p == 2 && e == 1))
        .map(|&(p, _)| p)
        .product()
}

/// A uniformly-ish random permutation polynomial modulo `n`; `None` for odd
/// primes when `allow_degenerate` is false.
pub fn random_pp<R: Rng>(rng: &mut R, n: u64, allow_degenerate: bool) -> Option<QuadraticPP> {
    let fact = qpp_core::factorize(n).unwrap();
    let step = required_f2_factor(&fact);
    if step == n && !allow_degenerate && n != 2 {
        return None;
    }
    for _ in 0..10_000 {
        let f2 = step * rng.gen_range(0..n / step) % n;
        if f2 == 0 && !allow_degenerate && step != n {
            continue;
        }
        let f1 = rng.gen_range(0..n);
        if let Ok(f) = QuadraticPP::with_factorization(n, f1, f2, fact.clone()) {
            return Some(f);
        }
    }
    None
}

pub fn pointwise_inverse(f: &QuadraticPP, g1: u64, g2: u64) -> bool {
    let n = f.modulus();
    (0..n).all(|x| {
        let y = f.eval_reduced(x);
        (g1 * y % n + g2 * (y * y % n) % n) % n == x
    })
}

/// Every `(f1, f2)` in `[0, N)^2` that forms a permutation polynomial.
pub fn all_pps(n: u64) -> Vec<QuadraticPP> {
    let fact = qpp_core::factorize(n).unwrap();
    let mut out = Vec::new();
    for f1 in 0..n {
        for f2 in 0..n {
            if let Ok(f) = QuadraticPP::with_factorization(n, f1, f2, fact.clone()) {
                out.push(f);
            }
        }
    }
    out
}
