//! Shared corpus and brute-force oracles for the integration suites.
#![allow(dead_code)]

use kroncf::PeriodicCF;

/// Minimal blocks with quotients `1..=max_quotient` and length `len`.
pub fn minimal_blocks(len: usize, max_quotient: u64) -> Vec<PeriodicCF> {
    let mut out = Vec::new();
    let mut digits = vec![1u64; len];
    loop {
        let cf = PeriodicCF::from_u64s(&digits).unwrap();
        if cf.len() == len {
            out.push(cf);
        }
        // odometer
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < max_quotient {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
        }
    }
}

/// Test corpus: every minimal block with quotients <= 5 and l <= 2, all
/// l = 3 blocks with quotients <= 3, a spread of l = 3 and l = 4 blocks with
/// larger quotients, and the three worked examples.
pub fn corpus() -> Vec<PeriodicCF> {
    let mut out = minimal_blocks(1, 5);
    out.extend(minimal_blocks(2, 5));
    out.extend(minimal_blocks(3, 3));
    out.extend(minimal_blocks(3, 5).into_iter().step_by(7));
    out.extend(minimal_blocks(4, 5).into_iter().step_by(41));
    for ex in [[1u64, 2, 3], [1, 2, 5], [1, 2, 2]] {
        let cf = PeriodicCF::from_u64s(&ex).unwrap();
        if !out.contains(&cf) {
            out.push(cf);
        }
    }
    out
}

/// Trial-division factorization.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

/// Legendre symbol by listing the squares mod p.
pub fn legendre_brute(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == a) {
        1
    } else {
        -1
    }
}

/// `(a/2)` from the residue of `a` mod 8.
pub fn two_symbol_brute(a: i64) -> i8 {
    match a.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Kronecker symbol via the prime factorization of `n`: a product of
/// brute-force Legendre symbols and `(a/2)` factors.
pub fn kronecker_brute(a: i64, n: u64) -> i8 {
    factor(n)
        .into_iter()
        .map(|(p, e)| {
            let base = if p == 2 {
                two_symbol_brute(a)
            } else {
                legendre_brute(a, p)
            };
            base.pow(e)
        })
        .product()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
