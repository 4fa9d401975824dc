//! Arithmetic modulo powers of two by bit masking.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Residues modulo `2^bits`, reduced by masking off the high bits.
#[derive(Clone, Debug)]
pub struct Pow2Modulus {
    bits: u64,
    mask: BigUint,
}

impl Pow2Modulus {
    pub fn new(bits: u64) -> Self {
        let mask = (BigUint::one() << bits as usize) - 1u32;
        Self { bits, mask }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn reduce(&self, x: &BigUint) -> BigUint {
        x & &self.mask
    }

    /// Reduction of a signed value into `[0, 2^bits)`.
    pub fn reduce_signed(&self, x: &BigInt) -> BigUint {
        let mag = self.reduce(x.magnitude());
        if x.sign() == num_bigint::Sign::Minus && !mag.is_zero() {
            (&self.mask + 1u32) - mag
        } else {
            mag
        }
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        self.reduce(&(a * b))
    }

    pub fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            (&self.mask + 1u32) - (b - a)
        }
    }

    /// `base^exp mod 2^bits` by square-and-multiply.
    pub fn pow(&self, base: &BigUint, mut exp: u64) -> BigUint {
        let mut acc = self.reduce(&BigUint::one());
        let mut b = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn is_zero(&self, x: &BigUint) -> bool {
        self.reduce(x).is_zero()
    }
}
