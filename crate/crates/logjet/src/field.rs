//! Ground-field scalars: exact rationals or a prime field F_p, p < 2^31.
//!
//! Every scalar knows its characteristic, so values from different ground
//! fields can never combine silently. Mixing characteristics in arithmetic
//! is a programming error and panics; division by zero is an ordinary
//! runtime error and returns `Err`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Field characteristic: `Zero` for the rationals, `P(p)` for F_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Char {
    Zero,
    P(u32),
}

impl Char {
    /// Validated constructor for a prime characteristic.
    pub fn prime(p: u32) -> Result<Char> {
        if is_prime(p) {
            Ok(Char::P(p))
        } else {
            Err(Error::Validation(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Char::Zero => write!(f, "0"),
            Char::P(p) => write!(f, "{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar in Q or F_p. The `Mod` value is always reduced to 0..p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldElem {
    Rat(BigRational),
    Mod { p: u32, val: u64 },
}

impl FieldElem {
    pub fn characteristic(&self) -> Char {
        match self {
            FieldElem::Rat(_) => Char::Zero,
            FieldElem::Mod { p, .. } => Char::P(*p),
        }
    }

    pub fn zero(ch: Char) -> FieldElem {
        FieldElem::from_int(ch, 0)
    }

    pub fn one(ch: Char) -> FieldElem {
        FieldElem::from_int(ch, 1)
    }

    pub fn from_int(ch: Char, n: i64) -> FieldElem {
        match ch {
            Char::Zero => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            Char::P(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                FieldElem::Mod { p, val: m }
            }
        }
    }

    pub fn from_bigint(ch: Char, n: &BigInt) -> FieldElem {
        match ch {
            Char::Zero => FieldElem::Rat(BigRational::from(n.clone())),
            Char::P(p) => {
                let m = n.mod_floor_u64(p);
                FieldElem::Mod { p, val: m }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Mod { val, .. } => *val == 1,
        }
    }

    /// Multiplicative inverse; division by zero is rejected.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(match self {
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
            FieldElem::Mod { p, val } => FieldElem::Mod {
                p: *p,
                val: mod_inv(*val, *p as u64),
            },
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.clone() * other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = FieldElem::one(self.characteristic());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn assert_same_char(&self, other: &FieldElem) {
        assert_eq!(
            self.characteristic(),
            other.characteristic(),
            "scalars from different ground fields"
        );
    }
}

/// Extension trait used only here: reduce a BigInt into 0..p.
trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u32) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u32) -> u64 {
        let p = BigInt::from(p);
        let mut r = self % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

/// Inverse mod a prime via extended Euclid. `a` must be nonzero mod p.
fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self.assert_same_char(&rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Mod { p, val: a }, FieldElem::Mod { val: b, .. }) => FieldElem::Mod {
                p,
                val: (a + b) % p as u64,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        let n = -rhs;
        self + n
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Mod { p, val } => FieldElem::Mod {
                p,
                val: if val == 0 { 0 } else { p as u64 - val },
            },
        }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self.assert_same_char(&rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Mod { p, val: a }, FieldElem::Mod { val: b, .. }) => FieldElem::Mod {
                p,
                // p < 2^31, so the product fits comfortably in u64.
                val: (a * b) % p as u64,
            },
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let ch = Char::Zero;
        let a = FieldElem::from_int(ch, 2).div(&FieldElem::from_int(ch, 3)).unwrap();
        let b = FieldElem::from_int(ch, 1).div(&FieldElem::from_int(ch, 6)).unwrap();
        let s = a + b;
        assert_eq!(s, FieldElem::from_int(ch, 5).div(&FieldElem::from_int(ch, 6)).unwrap());
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn prime_field_inverse() {
        let ch = Char::prime(5).unwrap();
        let a = FieldElem::from_int(ch, 3);
        let inv = a.inv().unwrap();
        assert_eq!(a * inv, FieldElem::one(ch));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        let z = FieldElem::zero(Char::Zero);
        assert!(z.inv().is_err());
    }

    #[test]
    fn nonprime_characteristic_is_rejected() {
        assert!(Char::prime(6).is_err());
        assert!(Char::prime(1).is_err());
        assert!(Char::prime(2).is_ok());
        assert!(Char::prime(2147483647).is_ok()); // 2^31 - 1
    }

    #[test]
    fn negative_ints_reduce_into_range() {
        let ch = Char::prime(7).unwrap();
        assert_eq!(FieldElem::from_int(ch, -1), FieldElem::from_int(ch, 6));
    }

    #[test]
    #[should_panic(expected = "different ground fields")]
    fn mixed_characteristics_panic() {
        let _ = FieldElem::from_int(Char::Zero, 1) + FieldElem::from_int(Char::P(5), 1);
    }
}
