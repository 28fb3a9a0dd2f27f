//! Exact arithmetic in the quadratic field Q(√2).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element `rat + sqrt2 * √2` of Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldValue {
    pub rat: BigRational,
    pub sqrt2: BigRational,
}

impl FieldValue {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        FieldValue { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        FieldValue::default()
    }

    pub fn one() -> Self {
        FieldValue::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        FieldValue {
            rat: BigRational::from_integer(BigInt::from(n)),
            sqrt2: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        FieldValue {
            rat: ratio(num, den),
            sqrt2: BigRational::zero(),
        }
    }

    /// `a + b√2` from small integer ratios.
    pub fn from_parts(a: (i64, i64), b: (i64, i64)) -> Self {
        FieldValue {
            rat: ratio(a.0, a.1),
            sqrt2: ratio(b.0, b.1),
        }
    }

    pub fn sqrt2() -> Self {
        FieldValue::from_parts((0, 1), (1, 1))
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        FieldValue::from_parts((0, 1), (1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.sqrt2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat
            - BigRational::from_integer(BigInt::from(2)) * &self.sqrt2 * &self.sqrt2
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        FieldValue {
            rat: self.rat.clone(),
            sqrt2: -self.sqrt2.clone(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(FieldValue {
            rat: c.rat / &n,
            sqrt2: c.sqrt2 / n,
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FieldValue {
            rat: &self.rat * r,
            sqrt2: &self.sqrt2 * r,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldValue::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `(-1)^parity`.
    pub fn signed(self, negative: bool) -> Self {
        if negative {
            -self
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rat) + std::f64::consts::SQRT_2 * to_f64(&self.sqrt2)
    }

    /// Parse the JSON pair of rational strings.
    pub fn parse_parts(rat: &str, sqrt2: &str) -> Result<Self, Error> {
        Ok(FieldValue {
            rat: parse_rational(rat)?,
            sqrt2: parse_rational(sqrt2)?,
        })
    }
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Canonical `"num/den"` text; always carries the denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.sqrt2.is_zero()) {
            (_, true) => write_rational(f, &self.rat),
            (true, false) => {
                write_rational(f, &self.sqrt2)?;
                write!(f, "√2")
            }
            (false, false) => {
                write!(f, "(")?;
                write_rational(f, &self.rat)?;
                if self.sqrt2.is_negative() {
                    write!(f, " - ")?;
                    write_rational(f, &-self.sqrt2.clone())?;
                } else {
                    write!(f, " + ")?;
                    write_rational(f, &self.sqrt2)?;
                }
                write!(f, "√2)")
            }
        }
    }
}

impl fmt::Debug for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    fn add(self, o: &FieldValue) -> FieldValue {
        FieldValue {
            rat: &self.rat + &o.rat,
            sqrt2: &self.sqrt2 + &o.sqrt2,
        }
    }
}

impl Add for FieldValue {
    type Output = FieldValue;
    fn add(self, o: FieldValue) -> FieldValue {
        &self + &o
    }
}

impl AddAssign<&FieldValue> for FieldValue {
    fn add_assign(&mut self, o: &FieldValue) {
        self.rat += &o.rat;
        self.sqrt2 += &o.sqrt2;
    }
}

impl<'a> Sub<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    fn sub(self, o: &FieldValue) -> FieldValue {
        FieldValue {
            rat: &self.rat - &o.rat,
            sqrt2: &self.sqrt2 - &o.sqrt2,
        }
    }
}

impl Sub for FieldValue {
    type Output = FieldValue;
    fn sub(self, o: FieldValue) -> FieldValue {
        &self - &o
    }
}

impl SubAssign<&FieldValue> for FieldValue {
    fn sub_assign(&mut self, o: &FieldValue) {
        self.rat -= &o.rat;
        self.sqrt2 -= &o.sqrt2;
    }
}

impl<'a> Mul<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;
    fn mul(self, o: &FieldValue) -> FieldValue {
        let two = BigRational::from_integer(BigInt::from(2));
        FieldValue {
            rat: &self.rat * &o.rat + two * &self.sqrt2 * &o.sqrt2,
            sqrt2: &self.rat * &o.sqrt2 + &self.sqrt2 * &o.rat,
        }
    }
}

impl Mul for FieldValue {
    type Output = FieldValue;
    fn mul(self, o: FieldValue) -> FieldValue {
        &self * &o
    }
}

impl MulAssign<&FieldValue> for FieldValue {
    fn mul_assign(&mut self, o: &FieldValue) {
        *self = &*self * o;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for FieldValue {
    type Output = FieldValue;
    /// Panics on division by zero.
    fn div(self, o: FieldValue) -> FieldValue {
        &self * &o.inverse().expect("division by zero in Q(√2)")
    }
}

impl Neg for FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        FieldValue {
            rat: -self.rat,
            sqrt2: -self.sqrt2,
        }
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        -self.clone()
    }
}
