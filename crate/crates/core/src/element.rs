//! Sparse vectors over the base field and over the Novikov ring.

use std::collections::BTreeMap;

use crate::basis::{GradedBasis, Letter};
use crate::field::FieldValue;
use crate::novikov::{Energy, NovikovScalar};

/// A vector of the underlying `k`-vector space: basis letter → field coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    coeffs: BTreeMap<Letter, FieldValue>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(l: Letter) -> Self {
        Vector::term(l, FieldValue::one())
    }

    pub fn term(l: Letter, c: FieldValue) -> Self {
        let mut v = Vector::zero();
        v.add_term(l, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Letter, FieldValue)>) -> Self {
        let mut v = Vector::zero();
        for (l, c) in terms {
            v.add_term(l, c);
        }
        v
    }

    pub fn add_term(&mut self, l: Letter, c: FieldValue) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(l).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &FieldValue) {
        for (&l, x) in &other.coeffs {
            self.add_term(l, x * c);
        }
    }

    pub fn scaled(&self, c: &FieldValue) -> Vector {
        let mut v = Vector::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, l: Letter) -> FieldValue {
        self.coeffs.get(&l).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &FieldValue)> {
        self.coeffs.iter().map(|(&l, c)| (l, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree if every letter shares one; `None` for zero or inhomogeneous vectors.
    pub fn homogeneous_degree(&self, basis: &GradedBasis) -> Option<i32> {
        let mut it = self.coeffs.keys().map(|&l| basis.degree(l));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn format(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(&l, c)| format!("{c}·{}", basis.name(l)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An element of `A = Ā ⊗ Λ_{0,nov}`: basis letter → Novikov coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    coeffs: BTreeMap<Letter, NovikovScalar>,
    cap: Energy,
}

impl GradedElement {
    pub fn zero(cap: &Energy) -> Self {
        GradedElement {
            coeffs: BTreeMap::new(),
            cap: cap.clone(),
        }
    }

    pub fn basis(l: Letter, cap: &Energy) -> Self {
        let mut g = GradedElement::zero(cap);
        g.add_term(l, NovikovScalar::one(cap));
        g
    }

    /// `T^energy · v`.
    pub fn from_vector(v: &Vector, energy: &Energy, cap: &Energy) -> Self {
        let mut g = GradedElement::zero(cap);
        for (l, c) in v.iter() {
            g.add_term(l, NovikovScalar::monomial(c.clone(), energy.clone(), cap));
        }
        g
    }

    pub fn cap(&self) -> &Energy {
        &self.cap
    }

    pub fn add_term(&mut self, l: Letter, c: NovikovScalar) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.get(&l) {
            Some(x) => x + &c,
            None => c,
        };
        if next.is_zero() {
            self.coeffs.remove(&l);
        } else {
            self.coeffs.insert(l, next);
        }
    }

    pub fn add(&mut self, other: &GradedElement) {
        for (&l, c) in &other.coeffs {
            self.add_term(l, c.clone());
        }
    }

    pub fn scaled(&self, s: &NovikovScalar) -> GradedElement {
        let mut g = GradedElement::zero(&self.cap);
        for (&l, c) in &self.coeffs {
            g.add_term(l, c * s);
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, l: Letter) -> NovikovScalar {
        self.coeffs
            .get(&l)
            .cloned()
            .unwrap_or_else(|| NovikovScalar::zero(&self.cap))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &NovikovScalar)> {
        self.coeffs.iter().map(|(&l, c)| (l, c))
    }

    pub fn is_homogeneous(&self, basis: &GradedBasis) -> bool {
        let mut it = self.coeffs.keys().map(|&l| basis.degree(l));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn format(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(&l, c)| format!("({c})·{}", basis.name(l)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
