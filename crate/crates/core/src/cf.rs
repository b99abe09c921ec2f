//! Purely periodic regular continued fractions and their convergents.
//!
//! Convergents follow the usual recursion
//! `s_k = a_k s_{k-1} + s_{k-2}`, `t_k = a_k t_{k-1} + t_{k-2}` seeded with
//! `s_{-1} = 1, t_{-1} = 0, s_0 = a_0, t_0 = 1`. The partial quotient at
//! index `k` is `a_{k mod l}`.

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The repeating block `a_0, ..., a_{l-1}` of a purely periodic continued
/// fraction. The block is always stored at its minimal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicCF {
    quotients: Vec<BigUint>,
}

/// Result of [`normalize_period`]: the minimal block plus the length of the
/// input when it had to be shortened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub cf: PeriodicCF,
    pub reduced_from: Option<usize>,
}

impl Normalized {
    pub fn was_reduced(&self) -> bool {
        self.reduced_from.is_some()
    }
}

/// Validates a quotient block and reduces it to its minimal period.
pub fn normalize_period(quotients: Vec<BigUint>) -> Result<Normalized> {
    if quotients.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(position) = quotients.iter().position(Zero::is_zero) {
        return Err(Error::NonPositiveQuotient { position });
    }
    let len = quotients.len();
    let period = (1..=len)
        .filter(|p| len.is_multiple_of(*p))
        .find(|&p| (p..len).all(|i| quotients[i] == quotients[i % p]))
        .unwrap_or(len);
    let mut quotients = quotients;
    let reduced_from = if period < len {
        quotients.truncate(period);
        Some(len)
    } else {
        None
    };
    Ok(Normalized {
        cf: PeriodicCF { quotients },
        reduced_from,
    })
}

impl PeriodicCF {
    /// Builds a block, silently reducing it to its minimal period.
    pub fn new(quotients: Vec<BigUint>) -> Result<Self> {
        normalize_period(quotients).map(|n| n.cf)
    }

    pub fn from_u64s(quotients: &[u64]) -> Result<Self> {
        Self::new(quotients.iter().copied().map(BigUint::from).collect())
    }

    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    /// Minimal block length `l`.
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Partial quotient `a_k`.
    pub fn quotient(&self, k: u64) -> &BigUint {
        &self.quotients[(k % self.quotients.len() as u64) as usize]
    }

    /// Iterator over convergents `k = 0, 1, 2, ...`.
    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            cf: self,
            next_index: 0,
            prev: (BigUint::zero(), BigUint::one()),
            cur: (BigUint::one(), BigUint::zero()),
        }
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, q) in self.quotients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

/// The convergent `s_k / t_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub k: i64,
    pub s: BigUint,
    pub t: BigUint,
}

impl Convergent {
    /// The seed `s_{-1}/t_{-1} = 1/0`.
    pub fn seed() -> Self {
        Convergent {
            k: -1,
            s: BigUint::one(),
            t: BigUint::zero(),
        }
    }
}

/// Infinite iterator produced by [`PeriodicCF::convergents`].
#[derive(Debug, Clone)]
pub struct Convergents<'a> {
    cf: &'a PeriodicCF,
    next_index: u64,
    // (s_{k-2}, t_{k-2}) and (s_{k-1}, t_{k-1}) relative to `next_index`
    prev: (BigUint, BigUint),
    cur: (BigUint, BigUint),
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let k = self.next_index;
        let a = self.cf.quotient(k);
        let s = a * &self.cur.0 + &self.prev.0;
        let t = a * &self.cur.1 + &self.prev.1;
        let older = std::mem::replace(&mut self.cur, (s.clone(), t.clone()));
        self.prev = older;
        self.next_index += 1;
        Some(Convergent { k: k as i64, s, t })
    }
}

/// The first `count` convergents `k = 0 .. count-1`.
pub fn convergents(cf: &PeriodicCF, count: usize) -> Vec<Convergent> {
    cf.convergents().take(count).collect()
}

/// `D_k = ((s_k, s_{k-1}), (t_k, t_{k-1}))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentMatrix {
    pub index: u64,
    pub entries: [[BigUint; 2]; 2],
}

impl ConvergentMatrix {
    pub fn determinant(&self) -> BigInt {
        let [[a, b], [c, d]] = &self.entries;
        BigInt::from(a * d) - BigInt::from(b * c)
    }

    /// Entry-wise congruence to the identity mod 4.
    pub fn is_identity_mod4(&self) -> bool {
        let low = |x: &BigUint| (x.iter_u32_digits().next().unwrap_or(0) & 3) as u8;
        let [[a, b], [c, d]] = &self.entries;
        low(a) == 1 && low(b) == 0 && low(c) == 0 && low(d) == 1
    }

    pub fn reduce_mod_pow2(&self, bits: u32) -> [[BigUint; 2]; 2] {
        let mask = (BigUint::one() << bits) - 1u32;
        self.entries.clone().map(|row| row.map(|x| x & &mask))
    }
}

/// Matrix product. With `self = D_{L-1}` for `L` a multiple of the block
/// length and `rhs = D_k`, the product is `D_{k+L}`.
impl Mul<&ConvergentMatrix> for &ConvergentMatrix {
    type Output = ConvergentMatrix;

    fn mul(self, rhs: &ConvergentMatrix) -> ConvergentMatrix {
        let [[a, b], [c, d]] = &self.entries;
        let [[e, f], [g, h]] = &rhs.entries;
        ConvergentMatrix {
            index: self.index + rhs.index + 1,
            entries: [
                [a * e + b * g, a * f + b * h],
                [c * e + d * g, c * f + d * h],
            ],
        }
    }
}

/// Exact `D_k` for `k >= 0`.
pub fn matrix_at(cf: &PeriodicCF, k: u64) -> ConvergentMatrix {
    let mut prev = Convergent::seed();
    let mut it = cf.convergents();
    let mut cur = it.next().expect("infinite iterator");
    for _ in 0..k {
        prev = std::mem::replace(&mut cur, it.next().expect("infinite iterator"));
    }
    ConvergentMatrix {
        index: k,
        entries: [[cur.s, prev.s], [cur.t, prev.t]],
    }
}

/// `z = (p + sqrt(d)) / q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    pub p: BigInt,
    pub d: BigUint,
    pub q: BigUint,
}

impl QuadIrrational {
    /// `true` when `q | d - p^2`.
    pub fn is_normalized(&self) -> bool {
        let q = BigInt::from(self.q.clone());
        !q.is_zero() && (BigInt::from(self.d.clone()) - &self.p * &self.p).is_multiple_of(&q)
    }

    pub fn is_square_free_root(&self) -> bool {
        let r = self.d.sqrt();
        &r * &r != self.d
    }

    /// `z > 1` and the conjugate lies in `(-1, 0)`, compared exactly.
    pub fn is_reduced(&self) -> bool {
        let d = BigInt::from(self.d.clone());
        let q = BigInt::from(self.q.clone());
        // sqrt(d) > q - p
        let above_one = {
            let diff = &q - &self.p;
            diff.is_negative() || d > &diff * &diff
        };
        // sqrt(d) > p
        let conj_negative = self.p.is_negative() || d > &self.p * &self.p;
        // sqrt(d) < p + q
        let conj_above_minus_one = {
            let sum = &self.p + &q;
            sum.is_positive() && &sum * &sum > d
        };
        above_one && conj_negative && conj_above_minus_one
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + sqrt({}))/{}", self.p, self.d, self.q)
    }
}

/// Closed form of the purely periodic value, the positive fixed point of
/// `z = (s_{l-1} z + s_{l-2}) / (t_{l-1} z + t_{l-2})`.
pub fn quad_irrational_of(cf: &PeriodicCF) -> QuadIrrational {
    let dm = matrix_at(cf, cf.len() as u64 - 1);
    let [[s, s_prev], [t, t_prev]] = dm.entries.map(|row| row.map(BigInt::from));
    // t z^2 + (t' - s) z - s' = 0
    let p = &s - &t_prev;
    let d = &p * &p + BigInt::from(4u32) * &t * &s_prev;
    let q = BigInt::from(2u32) * &t;
    // q | d - p^2 holds already (d - p^2 = 4 t s'); strip any common factor c
    // with c | p, c | q and c | (d - p^2)/q, which forces c^2 | d.
    let n0 = (&d - &p * &p) / &q;
    let c = p.gcd(&q).gcd(&n0);
    let c2 = &c * &c;
    QuadIrrational {
        p: p / &c,
        d: (d / c2).to_biguint().expect("discriminant is positive"),
        q: (q / &c).to_biguint().expect("denominator is positive"),
    }
}

/// Regular continued fraction of `s/t` by the Euclidean algorithm. The last
/// quotient is at least 2 whenever the expansion has more than one term.
pub fn cf_of_rational(s: &BigUint, t: &BigUint) -> Result<Vec<BigUint>> {
    if t.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if !s.gcd(t).is_one() {
        return Err(Error::NotCoprime);
    }
    let mut out = Vec::new();
    let (mut num, mut den) = (s.clone(), t.clone());
    while !den.is_zero() {
        let (q, r) = num.div_rem(&den);
        out.push(q);
        num = den;
        den = r;
    }
    Ok(out)
}
