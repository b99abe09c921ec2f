//! Convergent matrices reduced mod `2^B`.
//!
//! Deep indices (the cascade reaches `k` in the millions) are out of reach
//! for exact convergents, but every quantity the classification needs is a
//! residue mod a power of two. `D_{nl-1}` is the `n`-th power of the block
//! product, so `D_k` mod `2^B` costs `O(log k)` reduced multiplications.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cf::PeriodicCF;

/// `v_2(n)`, or `None` for zero.
pub fn valuation(n: &BigUint) -> Option<u64> {
    n.trailing_zeros()
}

/// Low two bits of `n`.
pub fn mod4(n: &BigUint) -> u8 {
    (n.iter_u32_digits().next().unwrap_or(0) & 3) as u8
}

/// A 2x2 matrix with entries in `Z / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2kMatrix {
    bits: u32,
    entries: [[BigUint; 2]; 2],
}

impl Mod2kMatrix {
    pub fn new(bits: u32, entries: [[BigUint; 2]; 2]) -> Self {
        let mask = Self::mask(bits);
        Mod2kMatrix {
            bits,
            entries: entries.map(|row| row.map(|x| x & &mask)),
        }
    }

    pub fn identity(bits: u32) -> Self {
        Self::new(
            bits,
            [
                [BigUint::one(), BigUint::zero()],
                [BigUint::zero(), BigUint::one()],
            ],
        )
    }

    /// `((a, 1), (1, 0))`, the step matrix for one partial quotient.
    fn step(bits: u32, a: &BigUint) -> Self {
        Self::new(
            bits,
            [
                [a.clone(), BigUint::one()],
                [BigUint::one(), BigUint::zero()],
            ],
        )
    }

    fn mask(bits: u32) -> BigUint {
        (BigUint::one() << bits) - 1u32
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn entries(&self) -> &[[BigUint; 2]; 2] {
        &self.entries
    }

    /// Lower-left entry (`t_k` for a convergent matrix).
    pub fn lower_left(&self) -> &BigUint {
        &self.entries[1][0]
    }

    /// Upper-left entry (`s_k` for a convergent matrix).
    pub fn upper_left(&self) -> &BigUint {
        &self.entries[0][0]
    }

    pub fn mul(&self, rhs: &Mod2kMatrix) -> Mod2kMatrix {
        debug_assert_eq!(self.bits, rhs.bits);
        let [[a, b], [c, d]] = &self.entries;
        let [[e, f], [g, h]] = &rhs.entries;
        Self::new(
            self.bits,
            [
                [a * e + b * g, a * f + b * h],
                [c * e + d * g, c * f + d * h],
            ],
        )
    }

    pub fn square(&self) -> Mod2kMatrix {
        self.mul(self)
    }

    pub fn pow(&self, mut exp: u64) -> Mod2kMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.bits);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `self - I`, entry-wise mod `2^bits`.
    pub fn minus_identity(&self) -> [[BigUint; 2]; 2] {
        let modulus = BigUint::one() << self.bits;
        let dec = |x: &BigUint| {
            if x.is_zero() {
                &modulus - 1u32
            } else {
                x - 1u32
            }
        };
        let [[a, b], [c, d]] = &self.entries;
        [[dec(a), b.clone()], [c.clone(), dec(d)]]
    }
}

/// Reusable `D_k mod 2^B` evaluator for one block and one precision.
#[derive(Debug, Clone)]
pub struct TwoAdicWalker<'a> {
    cf: &'a PeriodicCF,
    bits: u32,
    block: Mod2kMatrix,
}

impl<'a> TwoAdicWalker<'a> {
    pub fn new(cf: &'a PeriodicCF, bits: u32) -> Self {
        let block = cf
            .quotients()
            .iter()
            .fold(Mod2kMatrix::identity(bits), |acc, a| {
                acc.mul(&Mod2kMatrix::step(bits, a))
            });
        TwoAdicWalker { cf, bits, block }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `D_{l-1}` mod `2^B`.
    pub fn block(&self) -> &Mod2kMatrix {
        &self.block
    }

    /// `D_k` mod `2^B`.
    pub fn matrix_at(&self, k: u64) -> Mod2kMatrix {
        let l = self.cf.len() as u64;
        // D_k = A^{(k+1) div l} * M_{a_0} ... M_{a_{r-1}},  r = (k+1) mod l
        let full = (k + 1) / l;
        let rest = ((k + 1) % l) as usize;
        self.cf.quotients()[..rest]
            .iter()
            .fold(self.block.pow(full), |acc, a| {
                acc.mul(&Mod2kMatrix::step(self.bits, a))
            })
    }
}

/// `D_k` reduced mod `2^bits`.
pub fn matrix_at_mod2(cf: &PeriodicCF, k: u64, bits: u32) -> Mod2kMatrix {
    TwoAdicWalker::new(cf, bits).matrix_at(k)
}
