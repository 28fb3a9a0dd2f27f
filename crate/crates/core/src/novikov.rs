//! Truncated Novikov scalars `Σ a_i T^{λ_i}` with `0 ≤ λ_i ≤ E_max`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, ratio, FieldValue};

/// A nonnegative exact energy level (exponent of `T`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Energy(pub BigRational);

impl Energy {
    pub fn zero() -> Self {
        Energy(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Energy(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Energy(ratio(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Energy(parse_rational(s)?))
    }
}

impl Add for &Energy {
    type Output = Energy;
    fn add(self, o: &Energy) -> Energy {
        Energy(&self.0 + &o.0)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &BigInt::from(1) {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Energy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Energy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Energy::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Element of `Λ_{0,nov}` truncated at `cap`: ascending exponents, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NovikovScalar {
    terms: Vec<(Energy, FieldValue)>,
    cap: Energy,
}

impl NovikovScalar {
    pub fn zero(cap: &Energy) -> Self {
        NovikovScalar {
            terms: Vec::new(),
            cap: cap.clone(),
        }
    }

    pub fn one(cap: &Energy) -> Self {
        NovikovScalar::monomial(FieldValue::one(), Energy::zero(), cap)
    }

    /// `coeff · T^energy`, truncated to zero if `energy > cap`.
    pub fn monomial(coeff: FieldValue, energy: Energy, cap: &Energy) -> Self {
        assert!(!energy.is_negative(), "negative Novikov exponent");
        let mut s = NovikovScalar::zero(cap);
        if !coeff.is_zero() && energy <= *cap {
            s.terms.push((energy, coeff));
        }
        s
    }

    pub fn constant(coeff: FieldValue, cap: &Energy) -> Self {
        NovikovScalar::monomial(coeff, Energy::zero(), cap)
    }

    /// Build from arbitrary terms; merges equal exponents and truncates.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Energy, FieldValue)>,
        cap: &Energy,
    ) -> Result<Self> {
        let mut s = NovikovScalar::zero(cap);
        for (e, c) in terms {
            if e.is_negative() {
                return Err(Error::Input(format!("negative exponent {e}")));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn cap(&self) -> &Energy {
        &self.cap
    }

    pub fn terms(&self) -> &[(Energy, FieldValue)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<&Energy> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn coefficient(&self, energy: &Energy) -> FieldValue {
        self.terms
            .iter()
            .find(|(e, _)| e == energy)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    fn add_term(&mut self, energy: Energy, coeff: FieldValue) {
        if coeff.is_zero() || energy > self.cap {
            return;
        }
        match self.terms.binary_search_by(|(e, _)| e.cmp(&energy)) {
            Ok(i) => {
                self.terms[i].1 += &coeff;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (energy, coeff)),
        }
    }

    fn check_cap(&self, o: &NovikovScalar) -> Result<()> {
        if self.cap != o.cap {
            return Err(Error::Config(format!(
                "mismatched truncation levels {} and {}",
                self.cap, o.cap
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &NovikovScalar) -> Result<NovikovScalar> {
        self.check_cap(o)?;
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn try_mul(&self, o: &NovikovScalar) -> Result<NovikovScalar> {
        self.check_cap(o)?;
        let mut s = NovikovScalar::zero(&self.cap);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                s.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(s)
    }

    pub fn scale(&self, c: &FieldValue) -> NovikovScalar {
        let mut s = NovikovScalar::zero(&self.cap);
        for (e, x) in &self.terms {
            s.add_term(e.clone(), x * c);
        }
        s
    }

    /// Multiply by `T^energy`.
    pub fn shift(&self, energy: &Energy) -> NovikovScalar {
        let mut s = NovikovScalar::zero(&self.cap);
        for (e, x) in &self.terms {
            s.add_term(e + energy, x.clone());
        }
        s
    }

    /// Re-truncate at a (possibly different) cap.
    pub fn truncate(&self, cap: &Energy) -> NovikovScalar {
        let mut s = NovikovScalar::zero(cap);
        for (e, x) in &self.terms {
            s.add_term(e.clone(), x.clone());
        }
        s
    }

    pub fn signed(self, negative: bool) -> NovikovScalar {
        if negative {
            -self
        } else {
            self
        }
    }
}

impl Add for &NovikovScalar {
    type Output = NovikovScalar;
    /// Panics on mismatched caps; use [`NovikovScalar::try_add`] for the checked form.
    fn add(self, o: &NovikovScalar) -> NovikovScalar {
        self.try_add(o).expect("Novikov truncation mismatch")
    }
}

impl Sub for &NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, o: &NovikovScalar) -> NovikovScalar {
        self.try_add(&-o.clone())
            .expect("Novikov truncation mismatch")
    }
}

impl Mul for &NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, o: &NovikovScalar) -> NovikovScalar {
        self.try_mul(o).expect("Novikov truncation mismatch")
    }
}

impl Neg for NovikovScalar {
    type Output = NovikovScalar;
    fn neg(mut self) -> NovikovScalar {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·T^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
