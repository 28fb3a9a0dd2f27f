//! Gapped filtered A∞ structures stored as exact structure constants.
//!
//! An operation `m_k = Σ_β T^{λ(β)} m_{k,β}` is stored as a table indexed by
//! arity, class and input word. A slot that is populated but absent from the
//! table is zero; a slot beyond the populated arity (or explicitly marked) is
//! undetermined and surfaces as [`Error::Undetermined`] instead of a silent zero.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{GradedBasis, Letter};
use crate::chain::{ChainElement, TensorWord};
use crate::element::{GradedElement, Vector};
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::novikov::{Energy, NovikovScalar};
use crate::report::Report;
use crate::sign::Sign;

/// `β = (λ(β), μ(β))`: energy and Maslov index of a disc class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassIndex {
    pub energy: Energy,
    pub maslov: i32,
}

impl ClassIndex {
    pub fn new(energy: Energy, maslov: i32) -> Self {
        ClassIndex { energy, maslov }
    }

    pub fn zero() -> Self {
        ClassIndex::new(Energy::zero(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.energy.is_zero() && self.maslov == 0
    }

    pub fn plus(&self, o: &ClassIndex) -> ClassIndex {
        ClassIndex::new(&self.energy + &o.energy, self.maslov + o.maslov)
    }
}

impl fmt::Display for ClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.energy, self.maslov)
    }
}

impl fmt::Debug for ClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of classes; the monoid it generates is taken up to a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationMonoid {
    pub classes: BTreeSet<ClassIndex>,
}

/// Default bound on the number of classes enumerated below the energy cap.
pub const DEFAULT_CLASS_LIMIT: usize = 4096;

impl FiltrationMonoid {
    pub fn new(classes: impl IntoIterator<Item = ClassIndex>) -> Self {
        FiltrationMonoid {
            classes: classes.into_iter().collect(),
        }
    }

    /// Additive closure truncated at `cap`; `None` once more than `limit` classes appear.
    pub fn closure(&self, cap: &Energy, limit: usize) -> Option<BTreeSet<ClassIndex>> {
        let mut out: BTreeSet<ClassIndex> = self
            .classes
            .iter()
            .filter(|c| c.energy <= *cap)
            .cloned()
            .collect();
        out.insert(ClassIndex::zero());
        let gens: Vec<ClassIndex> = out.iter().filter(|c| !c.is_zero()).cloned().collect();
        let mut frontier: Vec<ClassIndex> = out.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for g in &gens {
                    let s = a.plus(g);
                    if s.energy <= *cap && out.insert(s.clone()) {
                        if out.len() > limit {
                            return None;
                        }
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
        Some(out)
    }
}

/// The three gapped conditions on the closure of `monoid` below `cap`.
pub fn verify_gapped(monoid: &FiltrationMonoid, cap: &Energy, limit: usize) -> Report {
    let mut r = Report::new("gapped");
    for c in &monoid.classes {
        r.record_ok();
        if c.energy.is_negative() {
            r.fail_with(format!("class {c}"), "negative energy");
        }
        if c.maslov.rem_euclid(2) != 0 {
            r.fail_with(format!("class {c}"), "odd Maslov index");
        }
        if c.energy.is_zero() && c.maslov != 0 {
            r.fail_with(
                format!("class {c}"),
                "condition 2: nonzero Maslov index at zero energy",
            );
        }
    }
    match monoid.closure(cap, limit) {
        None => {
            r.fail_with(
                "closure",
                format!(
                    "condition 1: more than {limit} classes below energy {cap}; energies accumulate"
                ),
            );
        }
        Some(closure) => {
            let mut per_level: BTreeMap<&Energy, usize> = BTreeMap::new();
            for c in &closure {
                *per_level.entry(&c.energy).or_default() += 1;
            }
            r.note(format!(
                "closure below {cap}: {}",
                closure
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            r.note(format!(
                "classes per energy level: {}",
                per_level
                    .iter()
                    .map(|(e, n)| format!("{e}:{n}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
    }
    r
}

pub type SlotKey = (usize, ClassIndex);

#[derive(Clone, Debug)]
pub struct AInfinityStructure {
    basis: GradedBasis,
    unit: Option<Letter>,
    cap: Energy,
    max_arity: usize,
    classes: BTreeSet<ClassIndex>,
    constants: BTreeMap<SlotKey, HashMap<Vec<Letter>, Vector>>,
    undetermined: BTreeSet<(usize, ClassIndex, Vec<Letter>)>,
}

impl AInfinityStructure {
    /// An all-zero structure, populated up to `max_arity`.
    pub fn new(basis: GradedBasis, unit: Option<Letter>, cap: Energy, max_arity: usize) -> Self {
        let mut classes = BTreeSet::new();
        classes.insert(ClassIndex::zero());
        AInfinityStructure {
            basis,
            unit,
            cap,
            max_arity,
            classes,
            constants: BTreeMap::new(),
            undetermined: BTreeSet::new(),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn unit(&self) -> Option<Letter> {
        self.unit
    }

    pub fn cap(&self) -> &Energy {
        &self.cap
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn classes(&self) -> &BTreeSet<ClassIndex> {
        &self.classes
    }

    pub fn declare_class(&mut self, class: ClassIndex) -> Result<()> {
        if class.energy > self.cap {
            return Err(Error::Config(format!(
                "class {class} lies above the energy cap {}",
                self.cap
            )));
        }
        self.classes.insert(class);
        Ok(())
    }

    pub fn monoid(&self) -> FiltrationMonoid {
        FiltrationMonoid::new(self.classes.iter().cloned())
    }

    /// Degree of `m_{k,β}` applied to `word`: `Σ deg + 2 − k − μ(β)`.
    pub fn output_degree(&self, class: &ClassIndex, word: &[Letter]) -> i32 {
        self.basis.degree_sum(word) + 2 - word.len() as i32 - class.maslov
    }

    /// Store `m_{k,β}(word) = value`; enforces the degree rule and the energy cap.
    pub fn set(&mut self, class: &ClassIndex, word: &[Letter], value: Vector) -> Result<()> {
        let k = word.len();
        if k > self.max_arity {
            return Err(Error::Input(format!(
                "arity {k} exceeds the populated arity {}",
                self.max_arity
            )));
        }
        if !value.is_zero() {
            let want = self.output_degree(class, word);
            match value.homogeneous_degree(&self.basis) {
                Some(d) if d == want => {}
                _ => {
                    return Err(Error::Input(format!(
                    "m_{{{k},{class}}}({}) = {} violates the degree rule (expected degree {want})",
                    self.basis.format_word(word),
                    value.format(&self.basis)
                )))
                }
            }
        }
        self.declare_class(class.clone())?;
        self.undetermined.remove(&(k, class.clone(), word.to_vec()));
        let slot = self.constants.entry((k, class.clone())).or_default();
        if value.is_zero() {
            slot.remove(word);
        } else {
            slot.insert(word.to_vec(), value);
        }
        Ok(())
    }

    pub fn mark_undetermined(&mut self, class: &ClassIndex, word: &[Letter]) {
        self.undetermined
            .insert((word.len(), class.clone(), word.to_vec()));
    }

    pub fn undetermined_slots(&self) -> impl Iterator<Item = &(usize, ClassIndex, Vec<Letter>)> {
        self.undetermined.iter()
    }

    fn undetermined_error(&self, class: &ClassIndex, word: &[Letter]) -> Error {
        Error::Undetermined {
            k: word.len(),
            class: class.to_string(),
            word: self.basis.format_word(word),
        }
    }

    /// `m_{k,β}(word)` as a base-field vector.
    pub fn op(&self, class: &ClassIndex, word: &[Letter]) -> Result<Option<&Vector>> {
        let k = word.len();
        if k > self.max_arity
            || self
                .undetermined
                .contains(&(k, class.clone(), word.to_vec()))
        {
            return Err(self.undetermined_error(class, word));
        }
        Ok(self
            .constants
            .get(&(k, class.clone()))
            .and_then(|m| m.get(word)))
    }

    /// Like [`op`](Self::op) but returns an owned zero for absent entries.
    pub fn op_vector(&self, class: &ClassIndex, word: &[Letter]) -> Result<Vector> {
        Ok(self.op(class, word)?.cloned().unwrap_or_default())
    }

    /// Iterate over every stored nonzero constant.
    pub fn constants(&self) -> impl Iterator<Item = (&ClassIndex, &Vec<Letter>, &Vector)> {
        self.constants
            .iter()
            .flat_map(|((_, c), m)| m.iter().map(move |(w, v)| (c, w, v)))
    }

    /// Sorted copy of all stored constants, for deterministic output.
    pub fn sorted_constants(&self) -> Vec<(ClassIndex, Vec<Letter>, Vector)> {
        let mut v: Vec<_> = self
            .constants()
            .map(|(c, w, x)| (c.clone(), w.clone(), x.clone()))
            .collect();
        v.sort_by(|a, b| (a.1.len(), &a.0, &a.1).cmp(&(b.1.len(), &b.0, &b.1)));
        v
    }

    /// Copy with `m_0` replaced by zero.
    pub fn reduced(&self) -> AInfinityStructure {
        let mut s = self.clone();
        s.constants.retain(|(k, _), _| *k != 0);
        s.undetermined.retain(|(k, _, _)| *k != 0);
        s
    }

    pub fn has_curvature(&self) -> bool {
        self.constants
            .iter()
            .any(|((k, _), m)| *k == 0 && !m.is_empty())
    }

    /// `m_k(word) = Σ_β T^{λ(β)} m_{k,β}(word)` on a basis word.
    pub fn apply_word(&self, word: &[Letter]) -> Result<GradedElement> {
        let mut out = GradedElement::zero(&self.cap);
        if word.len() > self.max_arity {
            return Err(self.undetermined_error(&ClassIndex::zero(), word));
        }
        for class in &self.classes {
            if let Some(v) = self.op(class, word)? {
                out.add(&GradedElement::from_vector(v, &class.energy, &self.cap));
            }
        }
        Ok(out)
    }

    /// Multilinear extension of `m_k` to Novikov-valued inputs.
    pub fn apply_m(&self, k: usize, inputs: &[GradedElement]) -> Result<GradedElement> {
        if inputs.len() != k {
            return Err(Error::Input(format!(
                "m_{k} expects {k} inputs, got {}",
                inputs.len()
            )));
        }
        let mut partial: Vec<(Vec<Letter>, NovikovScalar)> =
            vec![(Vec::new(), NovikovScalar::one(&self.cap))];
        for x in inputs {
            let mut next = Vec::new();
            for (w, c) in &partial {
                for (l, s) in x.iter() {
                    let coeff = c.try_mul(&s.truncate(&self.cap))?;
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push((w2, coeff));
                }
            }
            partial = next;
        }
        let mut out = GradedElement::zero(&self.cap);
        for (w, c) in partial {
            out.add(&self.apply_word(&w)?.scaled(&c));
        }
        Ok(out)
    }

    /// The coderivation `d̂ = Σ_k m̂_k` on one tensor word.
    pub fn hat_d(&self, word: &TensorWord) -> Result<ChainElement> {
        let mut out = ChainElement::zero(&self.cap);
        for k in 0..=word.letters.len() {
            if k == 0 && !self.has_curvature() {
                continue;
            }
            out.add(&self.hat_m(k, word)?);
        }
        Ok(out)
    }

    /// The single-arity component `m̂_k` of the coderivation.
    pub fn hat_m(&self, k: usize, word: &TensorWord) -> Result<ChainElement> {
        let n = word.letters.len();
        let mut out = ChainElement::zero(&self.cap);
        if k > n {
            return Ok(out);
        }
        let mut prefix_sum: i64 = 0;
        for i in 0..=(n - k) {
            let sign = Sign::pow(prefix_sum);
            let value = self.apply_word(&word.letters[i..i + k])?;
            for (y, s) in value.iter() {
                let mut letters = Vec::with_capacity(n - k + 1);
                letters.extend_from_slice(&word.letters[..i]);
                letters.push(y);
                letters.extend_from_slice(&word.letters[i + k..]);
                let c = word.coeff.try_mul(s)?.signed(sign.is_negative());
                out.add_word(letters, c);
            }
            if i < n {
                prefix_sum += self.basis.shifted(word.letters[i]) as i64;
            }
        }
        Ok(out)
    }

    pub fn hat_m_chain(&self, k: usize, chain: &ChainElement) -> Result<ChainElement> {
        chain.try_map_words(|w| self.hat_m(k, w))
    }

    pub fn hat_d_chain(&self, chain: &ChainElement) -> Result<ChainElement> {
        chain.try_map_words(|w| self.hat_d(w))
    }

    /// `m(d̂(w))`: the length-one projection of `d̂∘d̂`, i.e. the A∞ relation at `w`.
    pub fn relation(&self, word: &[Letter]) -> Result<GradedElement> {
        let d = self.hat_d(&TensorWord::unit(word.to_vec(), &self.cap)?)?;
        let mut out = GradedElement::zero(&self.cap);
        for (w, c) in d.iter() {
            out.add(&self.apply_word(w)?.scaled(c));
        }
        Ok(out)
    }

    /// Checks `d̂∘d̂ = 0` on every basis word of length `1..=max_len`.
    pub fn verify_ainfty(&self, max_len: usize) -> Report {
        let mut r = Report::new("ainfty");
        let words: Vec<Vec<Letter>> = (1..=max_len).flat_map(|n| self.basis.words(n)).collect();
        let results: Vec<(Vec<Letter>, Result<ChainElement>)> = words
            .into_par_iter()
            .map(|w| {
                let res = TensorWord::unit(w.clone(), &self.cap)
                    .and_then(|tw| self.hat_d(&tw))
                    .and_then(|d| self.hat_d_chain(&d));
                (w, res)
            })
            .collect();
        for (w, res) in results {
            let loc = self.basis.format_word(&w);
            match res {
                Ok(c) if c.is_zero() => r.record_ok(),
                Ok(c) => r.record_failure(loc, c.format(&self.basis)),
                Err(e) => r.record_failure(loc, e.to_string()),
            }
        }
        r.note(format!("word length <= {max_len}, energy cap {}", self.cap));
        r
    }

    /// Strict unitality: `m_{2,0}(e,x) = x`, `m_{2,0}(x,e) = (−1)^{deg x} x`,
    /// and every other operation vanishes when an input is the unit.
    pub fn verify_unit(&self) -> Report {
        let mut r = Report::new("unit");
        let Some(e) = self.unit else {
            r.fail_with("unit", "no unit designated");
            return r;
        };
        let zero = ClassIndex::zero();
        for x in self.basis.letters() {
            let name = self.basis.name(x);
            let checks = [
                (vec![e, x], Vector::basis(x)),
                (
                    vec![x, e],
                    Vector::basis(x)
                        .scaled(&FieldValue::one().signed(self.basis.degree(x) % 2 != 0)),
                ),
            ];
            for (word, want) in checks {
                match self.op_vector(&zero, &word) {
                    Ok(got) if got == want => r.record_ok(),
                    Ok(got) => r.record_failure(
                        format!("m_2({})", self.basis.format_word(&word).replace('⊗', ",")),
                        format!(
                            "{} != {}",
                            got.format(&self.basis),
                            want.format(&self.basis)
                        ),
                    ),
                    Err(err) => r.record_failure(name.to_string(), err.to_string()),
                }
            }
        }
        for k in 1..=self.max_arity {
            for word in self.basis.words(k) {
                if !word.contains(&e) {
                    continue;
                }
                for class in &self.classes {
                    if k == 2 && class.is_zero() {
                        continue;
                    }
                    match self.op_vector(class, &word) {
                        Ok(v) if v.is_zero() => r.record_ok(),
                        Ok(v) => r.record_failure(
                            format!("m_{{{k},{class}}}({})", self.basis.format_word(&word)),
                            v.format(&self.basis),
                        ),
                        Err(err) => {
                            r.record_failure(self.basis.format_word(&word), err.to_string())
                        }
                    }
                }
            }
        }
        r
    }

    /// Load-time degree bookkeeping over all stored constants.
    pub fn verify_degrees(&self) -> Report {
        let mut r = Report::new("degrees");
        for (class, word, v) in self.constants() {
            let want = self.output_degree(class, word);
            if v.homogeneous_degree(&self.basis) == Some(want) {
                r.record_ok();
            } else {
                r.record_failure(
                    format!(
                        "m_{{{},{class}}}({})",
                        word.len(),
                        self.basis.format_word(word)
                    ),
                    format!("expected degree {want}"),
                );
            }
        }
        r
    }
}
