//! Exact sparse linear algebra over `Q(√2)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::FieldValue;

pub type Var = usize;

/// Affine form `constant + Σ coeff·x_var`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinForm {
    pub constant: FieldValue,
    pub coeffs: BTreeMap<Var, FieldValue>,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    pub fn constant(c: FieldValue) -> Self {
        LinForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn var(v: Var) -> Self {
        let mut f = LinForm::zero();
        f.coeffs.insert(v, FieldValue::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, v: Var) -> FieldValue {
        self.coeffs.get(&v).cloned().unwrap_or_default()
    }

    fn add_var(&mut self, v: Var, c: FieldValue) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(v).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &LinForm, c: &FieldValue) {
        if c.is_zero() {
            return;
        }
        self.constant += &(&other.constant * c);
        for (&v, x) in &other.coeffs {
            self.add_var(v, x * c);
        }
    }

    pub fn scaled(&self, c: &FieldValue) -> LinForm {
        let mut f = LinForm::zero();
        f.add_scaled(self, c);
        f
    }

    /// Product of two forms, at least one of which must be constant.
    pub fn mul(&self, other: &LinForm) -> Result<LinForm> {
        if other.is_constant() {
            Ok(self.scaled(&other.constant))
        } else if self.is_constant() {
            Ok(other.scaled(&self.constant))
        } else {
            Err(Error::Input(
                "product of two undetermined quantities is not linear".into(),
            ))
        }
    }

    /// Substitute known values for some variables.
    pub fn substitute(&self, values: &BTreeMap<Var, FieldValue>) -> LinForm {
        let mut f = LinForm::constant(self.constant.clone());
        for (&v, c) in &self.coeffs {
            match values.get(&v) {
                Some(x) => f.constant += &(c * x),
                None => f.add_var(v, c.clone()),
            }
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pivot(Var),
    Redundant,
    Inconsistent(FieldValue),
}

/// Incrementally maintained reduced row echelon form of `form = 0` equations.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    /// pivot → row with unit pivot coefficient; rows mention no other pivot.
    rows: BTreeMap<Var, LinForm>,
    equations: usize,
}

impl LinearSystem {
    pub fn new() -> Self {
        LinearSystem::default()
    }

    pub fn equations(&self) -> usize {
        self.equations
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, form: &LinForm) -> LinForm {
        let mut f = form.clone();
        let hits: Vec<Var> = f
            .coeffs
            .keys()
            .filter(|v| self.rows.contains_key(v))
            .copied()
            .collect();
        for v in hits {
            let c = f.coeff(v);
            if !c.is_zero() {
                f.add_scaled(&self.rows[&v], &-c);
            }
        }
        f
    }

    /// Add the equation `form = 0`.
    pub fn add(&mut self, form: &LinForm) -> Outcome {
        self.equations += 1;
        let f = self.reduce(form);
        let Some((&pivot, c)) = f.coeffs.iter().next() else {
            return if f.constant.is_zero() {
                Outcome::Redundant
            } else {
                Outcome::Inconsistent(f.constant)
            };
        };
        let inv = c.inverse().expect("nonzero coefficient");
        let row = f.scaled(&inv);
        for other in self.rows.values_mut() {
            let c = other.coeff(pivot);
            if !c.is_zero() {
                other.add_scaled(&row, &-c);
            }
        }
        self.rows.insert(pivot, row);
        Outcome::Pivot(pivot)
    }

    /// Values of `vars` with every free variable set to zero.
    pub fn solve(&self, vars: impl IntoIterator<Item = Var>) -> Solution {
        let mut values = BTreeMap::new();
        let mut free = BTreeSet::new();
        let mut unique = BTreeSet::new();
        for v in vars {
            match self.rows.get(&v) {
                Some(row) => {
                    if row.coeffs.len() == 1 {
                        unique.insert(v);
                    }
                    values.insert(v, -row.constant.clone());
                }
                None => {
                    free.insert(v);
                    values.insert(v, FieldValue::zero());
                }
            }
        }
        Solution {
            values,
            free,
            unique,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub values: BTreeMap<Var, FieldValue>,
    /// Unconstrained variables (assigned zero).
    pub free: BTreeSet<Var>,
    /// Variables whose value does not depend on any free choice.
    pub unique: BTreeSet<Var>,
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn dense_rank(mut m: Vec<Vec<FieldValue>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inverse().expect("nonzero pivot");
        let pivot_row: Vec<FieldValue> = m[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &(p * &c);
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}
