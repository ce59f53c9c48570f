//! GF(3ⁿ) for odd n ≤ 9 in a polynomial basis.
//!
//! Elements are bit-sliced: one mask holds the coefficients equal to 1, the
//! other the coefficients equal to 2 (= −1). Addition works directly on the
//! masks; multiplication goes through discrete log / antilog tables, which
//! have q entries (plus a 4ⁿ-entry key index), so even GF(3⁹) stays small.
//!
//! Each degree uses one fixed modulus, the first primitive trinomial found in
//! lexicographic order of its lower coefficients:
//!
//! | n | modulus            |
//! |---|--------------------|
//! | 1 | x + 1              |
//! | 3 | x³ + 2x + 1        |
//! | 5 | x⁵ + 2x + 1        |
//! | 7 | x⁷ + 2x² + 1       |
//! | 9 | x⁹ + 2x⁴ + 1       |
//!
//! Since every modulus is primitive, the class of x generates the
//! multiplicative group and is the base of the logarithm tables.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::FieldError;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 9;

/// Little-endian coefficients of the fixed monic modulus for each odd degree.
fn modulus_for(n: u32) -> Vec<u8> {
    let (low, mid_deg, mid) = match n {
        1 => return vec![1, 1],
        3 => (1, 1, 2),
        5 => (1, 1, 2),
        7 => (1, 2, 2),
        9 => (1, 4, 2),
        _ => unreachable!("degree validated by caller"),
    };
    let mut m = vec![0u8; n as usize + 1];
    m[0] = low;
    m[mid_deg] = mid;
    m[n as usize] = 1;
    m
}

/// An element of some GF(3ⁿ). Arithmetic beyond addition needs the owning [`Gf3n`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F3n {
    plus: u16,
    minus: u16,
    deg: u8,
}

impl F3n {
    pub fn is_zero(self) -> bool {
        (self.plus | self.minus) == 0
    }

    /// Extension degree n of the field this element belongs to.
    pub fn degree(self) -> u32 {
        self.deg as u32
    }

    /// Coefficient of xⁱ as 0, 1 or 2.
    pub fn coeff(self, i: u32) -> u8 {
        ((self.plus >> i) & 1) as u8 | (((self.minus >> i) & 1) as u8) << 1
    }

    #[inline]
    fn key(self) -> usize {
        self.plus as usize | (self.minus as usize) << self.deg
    }

    #[inline]
    fn mask(self) -> u16 {
        ((1u32 << self.deg) - 1) as u16
    }
}

impl Add for F3n {
    type Output = F3n;
    #[inline]
    fn add(self, y: F3n) -> F3n {
        debug_assert_eq!(self.deg, y.deg, "mixed field degrees");
        let mask = self.mask();
        let zx = !(self.plus | self.minus);
        let zy = !(y.plus | y.minus);
        let plus = (self.plus & zy) | (zx & y.plus) | (self.minus & y.minus);
        let minus = (self.minus & zy) | (zx & y.minus) | (self.plus & y.plus);
        F3n { plus: plus & mask, minus: minus & mask, deg: self.deg }
    }
}

impl Neg for F3n {
    type Output = F3n;
    #[inline]
    fn neg(self) -> F3n {
        F3n { plus: self.minus, minus: self.plus, deg: self.deg }
    }
}

impl Sub for F3n {
    type Output = F3n;
    #[inline]
    fn sub(self, y: F3n) -> F3n {
        self + (-y)
    }
}

impl fmt::Display for F3n {
    /// Little-endian coefficient string c₀c₁…cₙ₋₁.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.deg as u32 {
            write!(f, "{}", self.coeff(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for F3n {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F3n({self})")
    }
}

/// Immutable context for GF(3ⁿ): the modulus, the Tits exponent and lookup tables.
pub struct Gf3n {
    n: u32,
    q: u32,
    modulus: Vec<u8>,
    theta_power: u64,
    /// `exp[k]` = xᵏ, stored twice over so that log sums need no reduction.
    exp: Vec<F3n>,
    /// Indexed by element key; zero maps to `u32::MAX`.
    log: Vec<u32>,
    rank: Vec<u32>,
    by_rank: Vec<F3n>,
}

impl fmt::Debug for Gf3n {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf3n({})", self.header())
    }
}

impl Gf3n {
    /// Builds GF(3ⁿ); n must be odd and at most [`MAX_DEGREE`].
    pub fn new(n: i64) -> Result<Gf3n, FieldError> {
        if n < 1 || n % 2 == 0 || n > MAX_DEGREE as i64 {
            return Err(FieldError::UnsupportedDegree { n, max: MAX_DEGREE });
        }
        let n = n as u32;
        let q = 3u32.pow(n);
        let modulus = modulus_for(n);
        let deg = n as u8;
        let keys = 1usize << (2 * n);

        let pack = |digits: &[u8]| {
            let (mut plus, mut minus) = (0u16, 0u16);
            for (i, &d) in digits.iter().enumerate() {
                match d {
                    1 => plus |= 1 << i,
                    2 => minus |= 1 << i,
                    _ => {}
                }
            }
            F3n { plus, minus, deg }
        };

        let mut rank = vec![u32::MAX; keys];
        let mut by_rank = Vec::with_capacity(q as usize);
        let mut digits = vec![0u8; n as usize];
        for r in 0..q {
            let mut t = r;
            for d in digits.iter_mut() {
                *d = (t % 3) as u8;
                t /= 3;
            }
            let e = pack(&digits);
            rank[e.key()] = r;
            by_rank.push(e);
        }

        // Powers of the class of x: multiply by x and reduce with x^n = -(lower terms).
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![u32::MAX; keys];
        let mut cur = vec![0u8; n as usize];
        cur[0] = 1;
        for k in 0..q - 1 {
            let e = pack(&cur);
            if log[e.key()] != u32::MAX {
                unreachable!("modulus for n={n} is not primitive");
            }
            log[e.key()] = k;
            exp.push(e);
            let top = if n == 1 { cur[0] } else { cur[n as usize - 1] };
            let mut next = vec![0u8; n as usize];
            if n == 1 {
                // x ≡ -m0
                next[0] = ((3 - modulus[0]) % 3 * top) % 3;
            } else {
                for i in (1..n as usize).rev() {
                    next[i] = cur[i - 1];
                }
                for (i, slot) in next.iter_mut().enumerate() {
                    *slot = (*slot + 3 * 3 - top * modulus[i] % 3) % 3;
                }
            }
            cur = next;
        }
        assert_eq!(cur.iter().map(|&d| d as u32).sum::<u32>(), 1);
        assert_eq!(cur[0], 1, "x^(q-1) must be 1");
        let first = exp.clone();
        exp.extend(first);

        let theta_power = 3u64.pow(n.div_ceil(2));
        Ok(Gf3n { n, q, modulus, theta_power, exp, log, rank, by_rank })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Field order q = 3ⁿ.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Exponent (n+1)/2 with θ = φ^((n+1)/2).
    pub fn theta_exponent(&self) -> u32 {
        self.n.div_ceil(2)
    }

    /// Little-endian coefficients of the modulus, monic of length n + 1.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// The modulus written like `x^3+2x+1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let term = match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    /// Context header such as `GF(3^3) mod x^3+2x+1`.
    pub fn header(&self) -> String {
        format!("GF(3^{}) mod {}", self.n, self.modulus_string())
    }

    pub fn zero(&self) -> F3n {
        F3n { plus: 0, minus: 0, deg: self.n as u8 }
    }

    pub fn one(&self) -> F3n {
        F3n { plus: 1, minus: 0, deg: self.n as u8 }
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> F3n {
        match k.rem_euclid(3) {
            0 => self.zero(),
            1 => self.one(),
            _ => -self.one(),
        }
    }

    /// The class of x in the polynomial basis (for n = 1 this is −m₀).
    pub fn generator(&self) -> F3n {
        self.exp[1]
    }

    pub fn contains(&self, x: F3n) -> bool {
        x.deg as u32 == self.n
    }

    pub fn check(&self, x: F3n) -> Result<F3n, FieldError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(FieldError::ContextMismatch { left: self.n, right: x.degree() })
        }
    }

    /// Radix-3 value of the coefficient vector, in 0..q.
    #[inline]
    pub fn rank(&self, x: F3n) -> u32 {
        self.rank[x.key()]
    }

    pub fn from_rank(&self, r: u32) -> F3n {
        self.by_rank[r as usize]
    }

    /// All q elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = F3n> + '_ {
        self.by_rank.iter().copied()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = F3n> + '_ {
        self.by_rank.iter().copied().skip(1)
    }

    pub fn coeffs(&self, x: F3n) -> Vec<u8> {
        (0..self.n).map(|i| x.coeff(i)).collect()
    }

    pub fn from_coeffs(&self, digits: &[u8]) -> Result<F3n, FieldError> {
        if digits.len() != self.n as usize || digits.iter().any(|&d| d > 2) {
            return Err(FieldError::Parse(format!("{digits:?}")));
        }
        let r = digits.iter().rev().fold(0u32, |acc, &d| acc * 3 + d as u32);
        Ok(self.from_rank(r))
    }

    /// Parses the little-endian coefficient string produced by `Display`.
    pub fn parse(&self, s: &str) -> Result<F3n, FieldError> {
        let digits: Option<Vec<u8>> = s.trim().chars().map(|c| c.to_digit(3).map(|d| d as u8)).collect();
        digits
            .ok_or_else(|| FieldError::Parse(s.to_string()))
            .and_then(|d| self.from_coeffs(&d))
            .map_err(|_| FieldError::Parse(s.to_string()))
    }

    /// Discrete log to the base [`Gf3n::generator`]; `None` for zero.
    #[inline]
    pub fn log(&self, x: F3n) -> Option<u32> {
        let l = self.log[x.key()];
        (l != u32::MAX).then_some(l)
    }

    #[inline]
    pub fn mul(&self, x: F3n, y: F3n) -> F3n {
        let (lx, ly) = (self.log[x.key()], self.log[y.key()]);
        if lx == u32::MAX || ly == u32::MAX {
            return self.zero();
        }
        self.exp[(lx + ly) as usize]
    }

    #[inline]
    pub fn square(&self, x: F3n) -> F3n {
        self.mul(x, x)
    }

    pub fn inv(&self, x: F3n) -> Result<F3n, FieldError> {
        match self.log(x) {
            None => Err(FieldError::ZeroInverse),
            Some(l) => Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]),
        }
    }

    pub fn div(&self, x: F3n, y: F3n) -> Result<F3n, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// xᵉ for a signed exponent; 0 raised to a negative power is a domain error.
    pub fn pow(&self, x: F3n, e: i64) -> Result<F3n, FieldError> {
        match self.log(x) {
            None if e < 0 => Err(FieldError::ZeroInverse),
            None if e == 0 => Ok(self.one()),
            None => Ok(self.zero()),
            Some(l) => {
                let m = (self.q - 1) as i64;
                let k = ((l as i64 % m) * (e.rem_euclid(m))) % m;
                Ok(self.exp[k as usize])
            }
        }
    }

    /// xᵉ for a non-negative exponent.
    #[inline]
    pub fn pow_u(&self, x: F3n, e: u64) -> F3n {
        match self.log(x) {
            None if e == 0 => self.one(),
            None => self.zero(),
            Some(l) => {
                let m = (self.q - 1) as u64;
                self.exp[((l as u64 * (e % m)) % m) as usize]
            }
        }
    }

    /// The Frobenius map φ: x ↦ x³.
    #[inline]
    pub fn frobenius(&self, x: F3n) -> F3n {
        self.pow_u(x, 3)
    }

    /// The Tits endomorphism θ = φ^((n+1)/2), so that θ(θ(x)) = x³.
    #[inline]
    pub fn theta(&self, x: F3n) -> F3n {
        self.pow_u(x, self.theta_power)
    }

    pub fn try_add(&self, x: F3n, y: F3n) -> Result<F3n, FieldError> {
        Ok(self.check(x)? + self.check(y)?)
    }

    pub fn try_sub(&self, x: F3n, y: F3n) -> Result<F3n, FieldError> {
        Ok(self.check(x)? - self.check(y)?)
    }

    pub fn try_mul(&self, x: F3n, y: F3n) -> Result<F3n, FieldError> {
        Ok(self.mul(self.check(x)?, self.check(y)?))
    }

    pub fn try_inv(&self, x: F3n) -> Result<F3n, FieldError> {
        self.inv(self.check(x)?)
    }
}
