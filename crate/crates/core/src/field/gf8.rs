//! The field of order 8, built as GF(2)[u] / (u³ + u + 1).
//!
//! An element is a 3-bit vector over GF(2) in the basis {1, u, u²}: bit 0 is
//! the constant term, bit 2 the coefficient of u².

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::FieldError;

const MODULUS: u8 = 0b1011;

/// `POWERS[k]` is u^k for k in 0..7.
const POWERS: [u8; 7] = {
    let mut t = [0u8; 7];
    let mut x = 1u8;
    let mut k = 0;
    while k < 7 {
        t[k] = x;
        x <<= 1;
        if x & 0b1000 != 0 {
            x ^= MODULUS;
        }
        k += 1;
    }
    t
};

/// Discrete logarithm base u; entry 0 is unused.
const LOGS: [u8; 8] = {
    let mut t = [0u8; 8];
    let mut k = 0;
    while k < 7 {
        t[POWERS[k] as usize] = k as u8;
        k += 1;
    }
    t
};

const fn clmul_reduce(a: u8, b: u8) -> u8 {
    let mut r = 0u8;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 0b1000 != 0 {
            a ^= MODULUS;
        }
    }
    r
}

const MUL_TABLE: [[u8; 8]; 8] = {
    let mut t = [[0u8; 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            t[i][j] = clmul_reduce(i as u8, j as u8);
            j += 1;
        }
        i += 1;
    }
    t
};

/// An element of GF(8).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F8(u8);

impl F8 {
    pub const ZERO: F8 = F8(0);
    pub const ONE: F8 = F8(1);
    /// The adjoined root of X³ + X + 1.
    pub const U: F8 = F8(0b010);

    /// Builds an element from its bit pattern (only the low three bits are used).
    pub const fn from_bits(bits: u8) -> F8 {
        F8(bits & 0b111)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    /// u^k, with k reduced modulo 7.
    pub fn from_power(k: i64) -> F8 {
        F8(POWERS[k.rem_euclid(7) as usize])
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The exponent k in 0..7 with self = u^k, or `None` for zero.
    pub fn log(self) -> Option<u8> {
        (self.0 != 0).then(|| LOGS[self.0 as usize])
    }

    pub fn inv(self) -> Result<F8, FieldError> {
        match self.log() {
            None => Err(FieldError::ZeroInverse),
            Some(k) => Ok(F8(POWERS[((7 - k) % 7) as usize])),
        }
    }

    /// Raises to an integer power. Negative exponents of zero are a domain error.
    pub fn pow(self, e: i64) -> Result<F8, FieldError> {
        match self.log() {
            None if e < 0 => Err(FieldError::ZeroInverse),
            None if e == 0 => Ok(F8::ONE),
            None => Ok(F8::ZERO),
            Some(k) => Ok(F8::from_power(k as i64 * e)),
        }
    }

    /// The Frobenius-squared map x ↦ x⁴ (the generator of Aut(GF(8)) used for δ).
    pub fn pow4(self) -> F8 {
        let sq = MUL_TABLE[self.0 as usize][self.0 as usize];
        F8(MUL_TABLE[sq as usize][sq as usize])
    }

    /// All eight elements, ordered by bit pattern.
    pub fn all() -> impl Iterator<Item = F8> {
        (0u8..8).map(F8)
    }
}

impl Add for F8 {
    type Output = F8;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2
    fn add(self, rhs: F8) -> F8 {
        F8(self.0 ^ rhs.0)
    }
}

impl Sub for F8 {
    type Output = F8;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2
    fn sub(self, rhs: F8) -> F8 {
        F8(self.0 ^ rhs.0)
    }
}

impl Neg for F8 {
    type Output = F8;
    fn neg(self) -> F8 {
        self
    }
}

impl Mul for F8 {
    type Output = F8;
    fn mul(self, rhs: F8) -> F8 {
        F8(MUL_TABLE[self.0 as usize][rhs.0 as usize])
    }
}

impl fmt::Display for F8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => f.write_str("0"),
            Some(0) => f.write_str("1"),
            Some(1) => f.write_str("u"),
            Some(k) => write!(f, "u^{k}"),
        }
    }
}

impl fmt::Debug for F8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for F8 {
    type Err = FieldError;

    /// Accepts `0`, `1`, `u` and `u^k`.
    fn from_str(s: &str) -> Result<F8, FieldError> {
        let s = s.trim();
        match s {
            "0" => return Ok(F8::ZERO),
            "1" => return Ok(F8::ONE),
            "u" => return Ok(F8::U),
            _ => {}
        }
        let exp =
            s.strip_prefix("u^").and_then(|e| e.parse::<i64>().ok()).ok_or_else(|| FieldError::Parse(s.to_string()))?;
        Ok(F8::from_power(exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: i64) -> F8 {
        F8::from_power(k)
    }

    #[test]
    fn power_table() {
        assert_eq!(u(0), F8::ONE);
        assert_eq!(u(3), F8::U + F8::ONE);
        assert_eq!(u(4), u(2) + u(1));
        assert_eq!(u(5), u(2) + u(1) + F8::ONE);
        assert_eq!(u(6), u(2) + F8::ONE);
        assert_eq!(u(7), F8::ONE);
        assert_eq!(F8::U * u(2), F8::U + F8::ONE);
    }

    #[test]
    fn characteristic_two() {
        for x in F8::all() {
            assert_eq!(x + x, F8::ZERO);
        }
    }

    #[test]
    fn nonzero_elements_have_order_dividing_seven() {
        for x in F8::all().filter(|x| !x.is_zero()) {
            assert_eq!(x.pow(7).unwrap(), F8::ONE);
            assert_eq!(x * x.inv().unwrap(), F8::ONE);
        }
        assert_eq!(F8::ZERO.inv(), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn roots_of_defining_polynomial() {
        let roots: Vec<F8> = F8::all().filter(|&x| x * x * x + x + F8::ONE == F8::ZERO).collect();
        let mut expected = vec![u(1), u(2), u(4)];
        expected.sort();
        assert_eq!(roots, expected);
    }

    #[test]
    fn pow4_is_field_automorphism_of_order_three() {
        for x in F8::all() {
            assert_eq!(x.pow4(), x * x * x * x);
            assert_eq!(x.pow4().pow4().pow4(), x);
            for y in F8::all() {
                assert_eq!((x * y).pow4(), x.pow4() * y.pow4());
                assert_eq!((x + y).pow4(), x.pow4() + y.pow4());
            }
        }
    }

    #[test]
    fn text_form_round_trips() {
        for x in F8::all() {
            assert_eq!(x.to_string().parse::<F8>().unwrap(), x);
        }
        assert_eq!(F8::ONE.to_string(), "1");
        assert!("v^2".parse::<F8>().is_err());
    }
}
