use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest field size accepted by default.
pub const DEFAULT_MAX_Q: u32 = 13;

pub fn is_odd_prime(q: u32) -> bool {
    q >= 3 && q % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Validates `q` as an odd prime no larger than `max_q`.
pub fn check_modulus(q: u32, max_q: u32) -> Result<()> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    if q > max_q {
        return Err(Error::FieldTooLarge { q, max: max_q });
    }
    Ok(())
}

/// An element of the prime field `F_q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    q: u32,
    v: u32,
}

impl Fq {
    pub fn new(q: u32, v: i64) -> Fq {
        Fq {
            q,
            v: v.rem_euclid(q as i64) as u32,
        }
    }

    pub fn zero(q: u32) -> Fq {
        Fq { q, v: 0 }
    }

    pub fn one(q: u32) -> Fq {
        Fq { q, v: 1 }
    }

    /// All field elements in order `0, 1, …, q-1`.
    pub fn all(q: u32) -> impl Iterator<Item = Fq> {
        (0..q).map(move |v| Fq { q, v })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.v
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn pow(self, mut e: u64) -> Fq {
        let mut base = self;
        let mut acc = Fq::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse (Fermat); `None` for zero.
    pub fn inv(self) -> Option<Fq> {
        (!self.is_zero()).then(|| self.pow(self.q as u64 - 2))
    }

    /// `self / 2`, via the inverse of 2 (exists since `q` is odd).
    pub fn half(self) -> Fq {
        self * Fq::new(self.q, 2).inv().expect("q is odd")
    }

    fn same(self, other: Fq) {
        assert_eq!(self.q, other.q, "field modulus mismatch");
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, o: Fq) -> Fq {
        self.same(o);
        Fq {
            q: self.q,
            v: (self.v + o.v) % self.q,
        }
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, o: Fq) -> Fq {
        self.same(o);
        Fq {
            q: self.q,
            v: (self.v + self.q - o.v) % self.q,
        }
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, o: Fq) -> Fq {
        self.same(o);
        Fq {
            q: self.q,
            v: ((self.v as u64 * o.v as u64) % self.q as u64) as u32,
        }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq {
            q: self.q,
            v: (self.q - self.v) % self.q,
        }
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// A sign `±1`, the diagonal entry `a` of the bracket forms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(bit: usize) -> Sign {
        if bit == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn to_fq(self, q: u32) -> Fq {
        match self {
            Sign::Plus => Fq::one(q),
            Sign::Minus => Fq::new(q, -1),
        }
    }

    pub fn from_fq(x: Fq) -> Option<Sign> {
        if x == Fq::one(x.modulus()) {
            Some(Sign::Plus)
        } else if x == Fq::new(x.modulus(), -1) {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&q| is_odd_prime(q)).collect();
        assert_eq!(primes, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(check_modulus(9, 13), Err(Error::NotOddPrime(9)));
        assert_eq!(check_modulus(2, 13), Err(Error::NotOddPrime(2)));
        assert!(matches!(check_modulus(17, 13), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn arithmetic_mod_q() {
        let q = 7;
        let a = Fq::new(q, 5);
        let b = Fq::new(q, 4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 1);
        assert_eq!((b - a).value(), 6);
        assert_eq!((a * b).value(), 6);
        assert_eq!((-a).value(), 2);
        assert_eq!(Fq::new(q, -1).value(), 6);
        for x in Fq::all(q).skip(1) {
            assert_eq!(x * x.inv().unwrap(), Fq::one(q));
        }
        assert_eq!(Fq::zero(q).inv(), None);
    }

    #[test]
    fn halving_uses_the_inverse_of_two() {
        for q in [3, 5, 7, 11, 13] {
            for x in Fq::all(q) {
                assert_eq!(x.half() + x.half(), x);
            }
        }
        // 1/2 mod 7 = 4, not integer halving
        assert_eq!(Fq::new(7, 1).half().value(), 4);
    }
}
