//! Tensor words, formal chains of words, the cyclic operator `t` and its norm `N`.

use std::collections::BTreeMap;

use crate::basis::{GradedBasis, Letter};
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::novikov::{Energy, NovikovScalar};
use crate::sign::{koszul_sign, Sign};

/// Longest word accepted by [`ce_symmetrize`] unless overridden.
pub const DEFAULT_SYMMETRIZE_CAP: usize = 8;

/// A coefficient times `x_0 ⊗ x_1 ⊗ ... ⊗ x_n`; position 0 is the module slot
/// when the word is read as a Hochschild chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWord {
    pub letters: Vec<Letter>,
    pub coeff: NovikovScalar,
}

impl TensorWord {
    pub fn new(letters: Vec<Letter>, coeff: NovikovScalar) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Input("tensor words have length at least one".into()));
        }
        Ok(TensorWord { letters, coeff })
    }

    pub fn unit(letters: Vec<Letter>, cap: &Energy) -> Result<Self> {
        TensorWord::new(letters, NovikovScalar::one(cap))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Sign of `t` on a bare letter sequence: `(-1)^{|x_n|'(|x_0|'+...+|x_{n-1}|')}`.
pub fn rotation_sign(basis: &GradedBasis, letters: &[Letter]) -> Sign {
    match letters.split_last() {
        None => Sign::Plus,
        Some((&last, rest)) => {
            Sign::pow(basis.shifted(last) as i64 * basis.shifted_sum(rest) as i64)
        }
    }
}

/// Moves the last letter to the front, folding the Koszul sign into the coefficient.
pub fn t_rotate(basis: &GradedBasis, word: &TensorWord) -> TensorWord {
    let n = word.letters.len();
    if n <= 1 {
        return word.clone();
    }
    let sign = rotation_sign(basis, &word.letters);
    let mut letters = Vec::with_capacity(n);
    letters.push(word.letters[n - 1]);
    letters.extend_from_slice(&word.letters[..n - 1]);
    TensorWord {
        letters,
        coeff: word.coeff.clone().signed(sign.is_negative()),
    }
}

/// A finite formal sum of tensor words with merged, nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainElement {
    terms: BTreeMap<Vec<Letter>, NovikovScalar>,
    cap: Energy,
}

impl ChainElement {
    pub fn zero(cap: &Energy) -> Self {
        ChainElement {
            terms: BTreeMap::new(),
            cap: cap.clone(),
        }
    }

    pub fn from_word(w: TensorWord) -> Self {
        let mut c = ChainElement::zero(w.coeff.cap());
        c.add_word(w.letters, w.coeff);
        c
    }

    /// A single word with coefficient one.
    pub fn basis_word(letters: Vec<Letter>, cap: &Energy) -> Self {
        let mut c = ChainElement::zero(cap);
        c.add_word(letters, NovikovScalar::one(cap));
        c
    }

    pub fn cap(&self) -> &Energy {
        &self.cap
    }

    pub fn add_word(&mut self, letters: Vec<Letter>, coeff: NovikovScalar) {
        debug_assert!(!letters.is_empty());
        if coeff.is_zero() {
            return;
        }
        let coeff = if coeff.cap() == &self.cap {
            coeff
        } else {
            coeff.truncate(&self.cap)
        };
        let next = match self.terms.get(&letters) {
            Some(x) => x + &coeff,
            None => coeff,
        };
        if next.is_zero() {
            self.terms.remove(&letters);
        } else {
            self.terms.insert(letters, next);
        }
    }

    pub fn add(&mut self, other: &ChainElement) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &ChainElement) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), -c.clone());
        }
    }

    pub fn plus(&self, other: &ChainElement) -> ChainElement {
        let mut c = self.clone();
        c.add(other);
        c
    }

    pub fn minus(&self, other: &ChainElement) -> ChainElement {
        let mut c = self.clone();
        c.sub(other);
        c
    }

    pub fn scaled(&self, s: &NovikovScalar) -> ChainElement {
        let mut c = ChainElement::zero(&self.cap);
        for (w, x) in &self.terms {
            c.add_word(w.clone(), x * s);
        }
        c
    }

    pub fn scaled_field(&self, s: &FieldValue) -> ChainElement {
        let mut c = ChainElement::zero(&self.cap);
        for (w, x) in &self.terms {
            c.add_word(w.clone(), x.scale(s));
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, letters: &[Letter]) -> NovikovScalar {
        self.terms
            .get(letters)
            .cloned()
            .unwrap_or_else(|| NovikovScalar::zero(&self.cap))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Letter], &NovikovScalar)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn words(&self) -> impl Iterator<Item = TensorWord> + '_ {
        self.terms.iter().map(|(w, c)| TensorWord {
            letters: w.clone(),
            coeff: c.clone(),
        })
    }

    /// Apply a word-level linear map and collect the results.
    pub fn map_words(&self, mut f: impl FnMut(&TensorWord) -> ChainElement) -> ChainElement {
        let mut out = ChainElement::zero(&self.cap);
        for w in self.words() {
            out.add(&f(&w));
        }
        out
    }

    pub fn try_map_words(
        &self,
        mut f: impl FnMut(&TensorWord) -> Result<ChainElement>,
    ) -> Result<ChainElement> {
        let mut out = ChainElement::zero(&self.cap);
        for w in self.words() {
            out.add(&f(&w)?);
        }
        Ok(out)
    }

    pub fn format(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({c})·{}", basis.format_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl std::fmt::Debug for ChainElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

pub fn t_chain(basis: &GradedBasis, chain: &ChainElement) -> ChainElement {
    chain.map_words(|w| ChainElement::from_word(t_rotate(basis, w)))
}

/// `N_{n+1} = 1 + t + ... + t^n`, applied word by word.
pub fn symmetrize_n(basis: &GradedBasis, chain: &ChainElement) -> ChainElement {
    chain.map_words(|w| {
        let mut out = ChainElement::zero(chain.cap());
        let mut cur = w.clone();
        for _ in 0..w.len() {
            out.add_word(cur.letters.clone(), cur.coeff.clone());
            cur = t_rotate(basis, &cur);
        }
        out
    })
}

pub fn one_minus_t(basis: &GradedBasis, chain: &ChainElement) -> ChainElement {
    chain.minus(&t_chain(basis, chain))
}

/// Koszul-signed sum over all permutations of the letters.
pub fn ce_symmetrize(
    basis: &GradedBasis,
    letters: &[Letter],
    cap: &Energy,
    max_len: usize,
) -> Result<ChainElement> {
    if letters.is_empty() {
        return Err(Error::Input("cannot symmetrize an empty word".into()));
    }
    if letters.len() > max_len {
        return Err(Error::Resource(format!(
            "symmetrization of {} letters exceeds the cap {max_len}",
            letters.len()
        )));
    }
    let positions: Vec<usize> = (0..letters.len()).collect();
    let degree = |i: &usize| basis.shifted(letters[*i]);
    let mut out = ChainElement::zero(cap);
    for perm in permutations(letters.len()) {
        let sign = koszul_sign(&positions, &perm, degree)?;
        let word: Vec<Letter> = perm.iter().map(|&i| letters[i]).collect();
        out.add_word(
            word,
            NovikovScalar::constant(FieldValue::one(), cap).signed(sign.is_negative()),
        );
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> GradedBasis {
        GradedBasis::from_pairs(&[("e", 0), ("f_1", 1), ("f_2", 1), ("f_12", 2)]).unwrap()
    }

    fn cap() -> Energy {
        Energy::from_int(2)
    }

    fn w(b: &GradedBasis, names: &[&str]) -> Vec<Letter> {
        b.parse_word(names).unwrap()
    }

    #[test]
    fn rotate_even_letter_to_front() {
        let b = basis();
        let word = TensorWord::unit(w(&b, &["f_1", "f_12"]), &cap()).unwrap();
        let r = t_rotate(&b, &word);
        assert_eq!(r.letters, w(&b, &["f_12", "f_1"]));
        assert_eq!(r.coeff, NovikovScalar::one(&cap()));
    }

    #[test]
    fn rotate_odd_past_odd() {
        // |e|' = -1, |f_12|' = 1: sign (-1)^{(1)(-1)} = -1.
        let b = basis();
        let word = TensorWord::unit(w(&b, &["f_12", "e"]), &cap()).unwrap();
        let r = t_rotate(&b, &word);
        assert_eq!(r.letters, w(&b, &["e", "f_12"]));
        assert_eq!(r.coeff, -NovikovScalar::one(&cap()));
    }

    #[test]
    fn full_cycle_of_even_letters_is_identity() {
        let b = basis();
        let word = TensorWord::unit(w(&b, &["f_1", "f_2", "f_1", "f_2"]), &cap()).unwrap();
        let mut cur = word.clone();
        for _ in 0..4 {
            cur = t_rotate(&b, &cur);
        }
        assert_eq!(cur, word);
    }

    #[test]
    fn n3_of_f1_f1_f12() {
        let b = basis();
        let c = ChainElement::basis_word(w(&b, &["f_1", "f_1", "f_12"]), &cap());
        let n = symmetrize_n(&b, &c);
        let mut expected = ChainElement::zero(&cap());
        for names in [
            ["f_1", "f_1", "f_12"],
            ["f_12", "f_1", "f_1"],
            ["f_1", "f_12", "f_1"],
        ] {
            expected.add(&ChainElement::basis_word(w(&b, &names), &cap()));
        }
        assert_eq!(n, expected);
    }

    #[test]
    fn one_minus_t_kills_length_one() {
        let b = basis();
        let c = ChainElement::basis_word(w(&b, &["f_12"]), &cap());
        assert!(one_minus_t(&b, &c).is_zero());
    }

    #[test]
    fn n_scales_invariant_chain() {
        let b = basis();
        let c = symmetrize_n(
            &b,
            &ChainElement::basis_word(w(&b, &["e", "f_1", "f_2"]), &cap()),
        );
        let three = NovikovScalar::constant(FieldValue::from_int(3), &cap());
        assert_eq!(symmetrize_n(&b, &c), c.scaled(&three));
    }

    #[test]
    fn ce_symmetrize_examples() {
        let b = basis();
        let single = ce_symmetrize(&b, &w(&b, &["f_1"]), &cap(), 8).unwrap();
        assert_eq!(single, ChainElement::basis_word(w(&b, &["f_1"]), &cap()));

        let even = ce_symmetrize(&b, &w(&b, &["f_1", "f_2"]), &cap(), 8).unwrap();
        let mut expected = ChainElement::basis_word(w(&b, &["f_1", "f_2"]), &cap());
        expected.add(&ChainElement::basis_word(w(&b, &["f_2", "f_1"]), &cap()));
        assert_eq!(even, expected);

        // [e, f_12] = e⊗f_12 + (-1)^{(-1)(1)} f_12⊗e
        let odd = ce_symmetrize(&b, &w(&b, &["e", "f_12"]), &cap(), 8).unwrap();
        let mut expected = ChainElement::basis_word(w(&b, &["e", "f_12"]), &cap());
        expected.sub(&ChainElement::basis_word(w(&b, &["f_12", "e"]), &cap()));
        assert_eq!(odd, expected);

        assert!(matches!(
            ce_symmetrize(&b, &w(&b, &["e", "e", "e"]), &cap(), 2),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn empty_word_rejected() {
        assert!(TensorWord::unit(vec![], &cap()).is_err());
    }
}
