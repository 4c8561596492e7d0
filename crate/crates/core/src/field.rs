//! Arithmetic in the prime field F_p.
//!
//! [`Prime`] is a validated modulus and also serves as the arithmetic context
//! for raw `u32` residues, which is what the series and linear-algebra code
//! use internally. [`Fp`] is the checked, self-describing element type used at
//! API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = 1 << 16;

/// A prime modulus `p` with `2 <= p <= 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    /// Validates `p` by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME as u64 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Reduces an arbitrary signed integer.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// `a + b * c`.
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse as `a^(p-2)`.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0 as u64 - 2))
    }

    /// Wraps a residue that is already reduced.
    #[inline]
    pub fn element(self, value: u32) -> Fp {
        debug_assert!(value < self.0);
        Fp { value, p: self }
    }

    pub fn zero(self) -> Fp {
        self.element(0)
    }

    pub fn one(self) -> Fp {
        self.element(1)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The four field operations, for callers that pick one at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of F_p. The residue is always fully reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: Prime,
}

impl Fp {
    pub fn new(value: i64, p: Prime) -> Self {
        Fp {
            value: p.reduce(value),
            p,
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Fp) -> Result<Prime> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(self.p)
    }

    pub fn checked_add(self, other: Fp) -> Result<Fp> {
        let p = self.check(other)?;
        Ok(p.element(p.add(self.value, other.value)))
    }

    pub fn checked_sub(self, other: Fp) -> Result<Fp> {
        let p = self.check(other)?;
        Ok(p.element(p.sub(self.value, other.value)))
    }

    pub fn checked_mul(self, other: Fp) -> Result<Fp> {
        let p = self.check(other)?;
        Ok(p.element(p.mul(self.value, other.value)))
    }

    /// `self * other^(p-2)`.
    pub fn checked_div(self, other: Fp) -> Result<Fp> {
        let p = self.check(other)?;
        let inv = p.inv(other.value)?;
        Ok(p.element(p.mul(self.value, inv)))
    }

    pub fn apply(self, op: FieldOp, other: Fp) -> Result<Fp> {
        match op {
            FieldOp::Add => self.checked_add(other),
            FieldOp::Sub => self.checked_sub(other),
            FieldOp::Mul => self.checked_mul(other),
            FieldOp::Div => self.checked_div(other),
        }
    }

    pub fn inverse(self) -> Result<Fp> {
        Ok(self.p.element(self.p.inv(self.value)?))
    }

    pub fn pow(self, exp: u64) -> Fp {
        self.p.element(self.p.pow(self.value, exp))
    }

    /// The unique `b` with `b^p = self`. Frobenius is the identity on F_p, so
    /// this is `self`.
    pub fn pth_root(self) -> Fp {
        self
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on mismatched moduli; use the `checked_*` methods
// when operands come from untrusted input.
impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        self.p.element(self.p.neg(self.value))
    }
}
