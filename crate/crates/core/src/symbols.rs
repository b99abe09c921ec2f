//! Jacobi and Kronecker symbols and the symbol sequences of a block.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cf::PeriodicCF;
use crate::error::{Error, Result};

/// A value of +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn flip_if(self, cond: bool) -> Sign {
        if cond {
            -self
        } else {
            self
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        self.flip_if(rhs == Sign::Minus)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Entry of a Jacobi-type sequence. `Star` marks an even lower argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    Plus,
    Minus,
    Star,
}

impl From<Sign> for SymbolValue {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => SymbolValue::Plus,
            Sign::Minus => SymbolValue::Minus,
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolValue::Plus => "+1",
            SymbolValue::Minus => "-1",
            SymbolValue::Star => "*",
        })
    }
}

impl std::str::FromStr for SymbolValue {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+1" | "1" => Ok(SymbolValue::Plus),
            "-1" => Ok(SymbolValue::Minus),
            "*" => Ok(SymbolValue::Star),
            other => Err(format!("not a symbol value: {other:?}")),
        }
    }
}

fn low_bits(n: &BigUint) -> u32 {
    n.iter_u32_digits().next().unwrap_or(0)
}

/// Jacobi symbol for nonnegative `a` and odd `n`; 0 when `gcd(a, n) > 1`.
fn jacobi_unsigned(a: &BigUint, n: &BigUint) -> i8 {
    let mut n = n.clone();
    let mut a = a % &n;
    let mut sign = Sign::Plus;
    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        if twos > 0 {
            a >>= twos;
            let n8 = low_bits(&n) & 7;
            sign = sign.flip_if(twos & 1 == 1 && (n8 == 3 || n8 == 5));
        }
        // both odd now
        sign = sign.flip_if(low_bits(&a) & 3 == 3 && low_bits(&n) & 3 == 3);
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        sign.as_i8()
    } else {
        0
    }
}

fn reduce_signed(a: &BigInt, n: &BigUint) -> BigUint {
    let n = BigInt::from(n.clone());
    a.mod_floor(&n)
        .to_biguint()
        .expect("floor remainder is nonnegative")
}

/// Jacobi symbol `(a/n)` for odd `n >= 1`: +1, -1, or 0 iff `gcd(a, n) > 1`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i8> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    Ok(jacobi_unsigned(&reduce_signed(a, n), n))
}

/// `(s/2)`: +1 for `s = ±1 mod 8`, -1 for `s = ±3 mod 8`.
fn two_symbol(s_mod8: u32) -> Sign {
    match s_mod8 {
        1 | 7 => Sign::Plus,
        _ => Sign::Minus,
    }
}

fn kronecker_unsigned(s: &BigUint, t: &BigUint) -> Result<Sign> {
    kronecker_parts(low_bits(s) & 7, s, t)
}

fn kronecker_parts(s_mod8: u32, s: &BigUint, t: &BigUint) -> Result<Sign> {
    if t.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let j = t.trailing_zeros().unwrap_or(0);
    if j > 0 && s_mod8 & 1 == 0 {
        return Err(Error::NotCoprime);
    }
    let odd = t >> j;
    let base = match jacobi_unsigned(s, &odd) {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => return Err(Error::NotCoprime),
    };
    Ok(base.flip_if(j & 1 == 1 && two_symbol(s_mod8) == Sign::Minus))
}

/// Kronecker symbol `(s/t)` for `t >= 1` and `gcd(s, t) = 1`.
pub fn kronecker(s: &BigInt, t: &BigUint) -> Result<Sign> {
    if t.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let modulus = (t.clone() << 3u32).max(BigUint::from(8u32));
    let s_red = reduce_signed(s, &modulus);
    kronecker_parts(low_bits(&s_red) & 7, &s_red, t)
}

/// The reciprocity sign: -1 iff both odd arguments are 3 mod 4.
pub fn epsilon(s_odd: &BigUint, t_odd: &BigUint) -> Result<Sign> {
    if s_odd.is_even() || t_odd.is_even() {
        return Err(Error::EvenArgument);
    }
    Ok(Sign::Plus.flip_if(low_bits(s_odd) & 3 == 3 && low_bits(t_odd) & 3 == 3))
}

fn sign_of(value: i8) -> SymbolValue {
    match value {
        1 => SymbolValue::Plus,
        -1 => SymbolValue::Minus,
        // convergents are coprime
        _ => unreachable!("Jacobi symbol of coprime convergent is nonzero"),
    }
}

/// `(s_k/t_k)` for `k < count`, `Star` where `t_k` is even.
pub fn jacobi_sequence(cf: &PeriodicCF, count: usize) -> Vec<SymbolValue> {
    cf.convergents()
        .take(count)
        .map(|c| {
            if c.t.is_even() {
                SymbolValue::Star
            } else {
                sign_of(jacobi_unsigned(&c.s, &c.t))
            }
        })
        .collect()
}

/// `(t_k/s_k)` for `k < count`, `Star` where `s_k` is even.
pub fn reciprocal_jacobi_sequence(cf: &PeriodicCF, count: usize) -> Vec<SymbolValue> {
    cf.convergents()
        .take(count)
        .map(|c| {
            if c.s.is_even() {
                SymbolValue::Star
            } else {
                sign_of(jacobi_unsigned(&c.t, &c.s))
            }
        })
        .collect()
}

/// Kronecker symbol of a single convergent pair.
pub fn convergent_kronecker(s: &BigUint, t: &BigUint) -> Sign {
    kronecker_unsigned(s, t).expect("convergents are coprime with t >= 1")
}

/// `(s_k/t_k)` as Kronecker symbols for `k < count`.
pub fn kronecker_sequence(cf: &PeriodicCF, count: usize) -> Vec<Sign> {
    cf.convergents()
        .take(count)
        .map(|c| convergent_kronecker(&c.s, &c.t))
        .collect()
}

/// All three sequences from one pass over the convergents.
pub fn all_sequences(
    cf: &PeriodicCF,
    count: usize,
) -> (Vec<SymbolValue>, Vec<SymbolValue>, Vec<Sign>) {
    let mut jac = Vec::with_capacity(count);
    let mut rec = Vec::with_capacity(count);
    let mut kro = Vec::with_capacity(count);
    for c in cf.convergents().take(count) {
        jac.push(if c.t.is_even() {
            SymbolValue::Star
        } else {
            sign_of(jacobi_unsigned(&c.s, &c.t))
        });
        rec.push(if c.s.is_even() {
            SymbolValue::Star
        } else {
            sign_of(jacobi_unsigned(&c.t, &c.s))
        });
        kro.push(convergent_kronecker(&c.s, &c.t));
    }
    (jac, rec, kro)
}
