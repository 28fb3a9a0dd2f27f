//! Cyclic inner products and the functional `m⁺`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::ainfty::AInfinityStructure;
use crate::basis::{GradedBasis, Letter};
use crate::chain::{t_rotate, ChainElement, TensorWord};
use crate::element::{GradedElement, Vector};
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::linsolve::dense_rank;
use crate::novikov::NovikovScalar;
use crate::report::Report;
use crate::sign::{koszul_sign, Sign};

/// A graded skew-symmetric nondegenerate form `⟨,⟩ : A[1] ⊗ A[1] → k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPairing {
    basis: GradedBasis,
    matrix: BTreeMap<(Letter, Letter), FieldValue>,
    degree: i32,
}

impl CyclicPairing {
    /// Validates skew-symmetry `⟨a,b⟩ = −(−1)^{|a|'|b|'}⟨b,a⟩`, a single
    /// pairing degree, and nondegeneracy.
    pub fn new(
        basis: GradedBasis,
        entries: impl IntoIterator<Item = ((Letter, Letter), FieldValue)>,
    ) -> Result<Self> {
        let mut matrix = BTreeMap::new();
        for ((a, b), v) in entries {
            if a.index() >= basis.len() || b.index() >= basis.len() {
                return Err(Error::Input("pairing entry outside the basis".into()));
            }
            if !v.is_zero() {
                matrix.insert((a, b), v);
            }
        }
        let mut degree = None;
        for (&(a, b), v) in &matrix {
            let d = basis.shifted(a) + basis.shifted(b);
            if *degree.get_or_insert(d) != d {
                return Err(Error::Input(format!(
                    "pairing ⟨{},{}⟩ has shifted degree {d}, expected {}",
                    basis.name(a),
                    basis.name(b),
                    degree.unwrap()
                )));
            }
            let back = matrix.get(&(b, a)).cloned().unwrap_or_default();
            let sign = Sign::pow((basis.shifted(a) * basis.shifted(b)) as i64);
            let want = v.clone().signed(!sign.is_negative());
            if back != want {
                return Err(Error::Input(format!(
                    "pairing is not graded skew-symmetric at ⟨{},{}⟩",
                    basis.name(a),
                    basis.name(b)
                )));
            }
        }
        let n = basis.len();
        let dense: Vec<Vec<FieldValue>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        matrix
                            .get(&(Letter(i as u16), Letter(j as u16)))
                            .cloned()
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        if dense_rank(dense) != n {
            return Err(Error::Input("pairing is degenerate".into()));
        }
        Ok(CyclicPairing {
            basis,
            matrix,
            degree: degree.unwrap_or(0),
        })
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    /// Shifted degree `|a|' + |b|'` of every nonzero entry.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Letter, Letter), &FieldValue)> {
        self.matrix.iter()
    }

    pub fn entry(&self, a: Letter, b: Letter) -> FieldValue {
        self.matrix.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn pair_vectors(&self, x: &Vector, y: &Vector) -> FieldValue {
        let mut out = FieldValue::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if let Some(p) = self.matrix.get(&(a, b)) {
                    out += &(&(ca * cb) * p);
                }
            }
        }
        out
    }

    pub fn pair(&self, x: &GradedElement, y: &GradedElement) -> Result<NovikovScalar> {
        let mut out = NovikovScalar::zero(x.cap());
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if let Some(p) = self.matrix.get(&(a, b)) {
                    out = out.try_add(&ca.try_mul(cb)?.scale(p))?;
                }
            }
        }
        Ok(out)
    }
}

/// `⟨m_{k,β}(x_1..x_k),x_{k+1}⟩ = (−1)^{|x_1|'(|x_2|'+..+|x_{k+1}|')}⟨m_{k,β}(x_2..x_{k+1}),x_1⟩`
/// for every stored class and every basis word of length `2..=max_len`.
pub fn verify_cyclic_symmetry(s: &AInfinityStructure, p: &CyclicPairing, max_len: usize) -> Report {
    let mut r = Report::new("cyclic");
    let b = s.basis();
    let words: Vec<Vec<Letter>> = (2..=max_len.min(s.max_arity() + 1))
        .flat_map(|n| b.words(n))
        .collect();
    let classes: Vec<_> = s.classes().iter().cloned().collect();
    let results: Vec<Vec<(String, Option<String>)>> = words
        .par_iter()
        .map(|w| {
            let k = w.len() - 1;
            classes
                .iter()
                .map(|class| {
                    let loc = format!("{} @ {class}", b.format_word(w));
                    let lhs = s.op_vector(class, &w[..k]);
                    let rhs = s.op_vector(class, &w[1..]);
                    let (lhs, rhs) = match (lhs, rhs) {
                        (Ok(l), Ok(r)) => (l, r),
                        (Err(e), _) | (_, Err(e)) => return (loc, Some(e.to_string())),
                    };
                    let left = p.pair_vectors(&lhs, &Vector::basis(w[k]));
                    let sign = Sign::pow(b.shifted(w[0]) as i64 * b.shifted_sum(&w[1..]) as i64);
                    let right = p
                        .pair_vectors(&rhs, &Vector::basis(w[0]))
                        .signed(sign.is_negative());
                    if left == right {
                        (loc, None)
                    } else {
                        (loc, Some(format!("{left} != {right}")))
                    }
                })
                .collect()
        })
        .collect();
    for (loc, res) in results.into_iter().flatten() {
        match res {
            None => r.record_ok(),
            Some(msg) => r.record_failure(loc, msg),
        }
    }
    r.note(format!("words of length 2..={max_len}, per class"));
    r
}

/// `⟨m_1(x),y⟩ = (−1)^{|x|}⟨x,m_1(y)⟩` on all basis pairs.
pub fn verify_stokes(s: &AInfinityStructure, p: &CyclicPairing) -> Report {
    let mut r = Report::new("stokes");
    let b = s.basis();
    for x in b.letters() {
        for y in b.letters() {
            let res = (|| -> Result<(NovikovScalar, NovikovScalar)> {
                let mx = s.apply_word(&[x])?;
                let my = s.apply_word(&[y])?;
                let left = p.pair(&mx, &GradedElement::basis(y, s.cap()))?;
                let right = p
                    .pair(&GradedElement::basis(x, s.cap()), &my)?
                    .signed(b.degree(x).rem_euclid(2) == 1);
                Ok((left, right))
            })();
            let loc = format!("({},{})", b.name(x), b.name(y));
            match res {
                Ok((l, rr)) if l == rr => r.record_ok(),
                Ok((l, rr)) => r.record_failure(loc, format!("{l} != {rr}")),
                Err(e) => r.record_failure(loc, e.to_string()),
            }
        }
    }
    r
}

/// The boundary sum `Σ ±⟨m_{k_1}(x_σ(1..k_1)), m_{k_2}(x_σ(k_1+1..k+1))⟩` over cyclic
/// shifts `σ`. With `restricted`, only shifts placing `x_1` in the first factor count.
pub fn eval_prop34(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    word: &[Letter],
    restricted: bool,
) -> Result<NovikovScalar> {
    let b = s.basis();
    let n = word.len();
    let mut out = NovikovScalar::zero(s.cap());
    if n < 2 {
        return Ok(out);
    }
    // Labels: 0 and 1 are the operation letters, 2.. are the inputs.
    let before: Vec<usize> = (0..n + 2).collect();
    let degree = |l: &usize| match *l {
        0 | 1 => 1,
        i => b.shifted(word[i - 2]),
    };
    for shift in 0..n {
        let order: Vec<usize> = (0..n).map(|i| (shift + i) % n).collect();
        for k1 in 1..n {
            if restricted && !order[..k1].contains(&0) {
                continue;
            }
            let mut after = vec![0];
            after.extend(order[..k1].iter().map(|i| i + 2));
            after.push(1);
            after.extend(order[k1..].iter().map(|i| i + 2));
            let sign = koszul_sign(&before, &after, degree)?;
            let w1: Vec<Letter> = order[..k1].iter().map(|&i| word[i]).collect();
            let w2: Vec<Letter> = order[k1..].iter().map(|&i| word[i]).collect();
            let a = s.apply_word(&w1)?;
            if a.is_zero() {
                continue;
            }
            let c = s.apply_word(&w2)?;
            out = out.try_add(&p.pair(&a, &c)?.signed(sign.is_negative()))?;
        }
    }
    Ok(out)
}

/// `eval_prop34` on every basis word of length `2..=max_len`; also checks the
/// unrestricted sum is twice the restricted one.
type Sums = Result<(NovikovScalar, NovikovScalar)>;

pub fn verify_prop34(s: &AInfinityStructure, p: &CyclicPairing, max_len: usize) -> Report {
    let mut r = Report::new("prop34");
    let b = s.basis();
    let words: Vec<Vec<Letter>> = (1..=max_len).flat_map(|n| b.words(n)).collect();
    let results: Vec<(Vec<Letter>, Sums)> = words
        .into_par_iter()
        .map(|w| {
            let res = eval_prop34(s, p, &w, true)
                .and_then(|a| eval_prop34(s, p, &w, false).map(|b| (a, b)));
            (w, res)
        })
        .collect();
    for (w, res) in results {
        let loc = b.format_word(&w);
        match res {
            Ok((a, u)) => {
                if !a.is_zero() {
                    r.record_failure(loc.clone(), format!("restricted sum {a}"));
                } else if u != &a + &a {
                    r.record_failure(loc, format!("unrestricted {u} != 2 × {a}"));
                } else {
                    r.record_ok();
                }
            }
            Err(e) => r.record_failure(loc, e.to_string()),
        }
    }
    r
}

/// `m⁺(x_1..x_k) = ⟨m_{k−1}(x_1..x_{k−1}), x_k⟩`, scaled by the word's coefficient.
pub fn m_plus(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    word: &TensorWord,
) -> Result<NovikovScalar> {
    let n = word.letters.len();
    if n == 0 {
        return Err(Error::Input("m⁺ needs a nonempty word".into()));
    }
    let value = s.apply_word(&word.letters[..n - 1])?;
    let last = GradedElement::basis(word.letters[n - 1], s.cap());
    p.pair(&value, &last)?.try_mul(&word.coeff)
}

pub fn m_plus_chain(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    chain: &ChainElement,
) -> Result<NovikovScalar> {
    let mut out = NovikovScalar::zero(s.cap());
    for w in chain.words() {
        out = out.try_add(&m_plus(s, p, &w)?)?;
    }
    Ok(out)
}

/// `m⁺∘t = m⁺` on basis words up to `max_len` and on the supplied chains, which
/// also covers `m⁺∘(1−t) = 0`.
pub fn verify_mplus_rotation(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    max_len: usize,
    chains: &[ChainElement],
) -> Report {
    let mut r = Report::new("mplus_rotation");
    let b = s.basis();
    let cap = s.cap();
    let words: Vec<Vec<Letter>> = (1..=max_len).flat_map(|n| b.words(n)).collect();
    let mut samples: Vec<(String, ChainElement)> = words
        .into_iter()
        .map(|w| (b.format_word(&w), ChainElement::basis_word(w, cap)))
        .collect();
    samples.extend(
        chains
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("chain #{i}"), c.clone())),
    );
    let results: Vec<(String, Result<(NovikovScalar, NovikovScalar)>)> = samples
        .into_par_iter()
        .map(|(loc, c)| {
            let rotated = c.map_words(|w| ChainElement::from_word(t_rotate(b, w)));
            let res =
                m_plus_chain(s, p, &c).and_then(|a| m_plus_chain(s, p, &rotated).map(|x| (a, x)));
            (loc, res)
        })
        .collect();
    for (loc, res) in results {
        match res {
            Ok((a, x)) if a == x => r.record_ok(),
            Ok((a, x)) => r.record_failure(loc, format!("m⁺(c) = {a}, m⁺(t c) = {x}")),
            Err(e) => r.record_failure(loc, e.to_string()),
        }
    }
    r
}

/// `m⁺(d̂(x_1..x_k) ⊗ x_{k+1}) = 0` on basis words of length `1..=max_len`, plus a
/// search over length-4 words for `m⁺(d̂(x_1..x_4)) ≠ 0`.
pub fn verify_lemma44(s: &AInfinityStructure, p: &CyclicPairing, max_len: usize) -> Report {
    let mut r = Report::new("lemma44");
    let b = s.basis();
    let cap = s.cap();
    let words: Vec<Vec<Letter>> = (2..=max_len).flat_map(|n| b.words(n)).collect();
    let results: Vec<(Vec<Letter>, Result<NovikovScalar>)> = words
        .into_par_iter()
        .map(|w| {
            let k = w.len() - 1;
            let res = (|| {
                let d = s.hat_d(&TensorWord::unit(w[..k].to_vec(), cap)?)?;
                let mut appended = ChainElement::zero(cap);
                for (letters, c) in d.iter() {
                    let mut l = letters.to_vec();
                    l.push(w[k]);
                    appended.add_word(l, c.clone());
                }
                m_plus_chain(s, p, &appended)
            })();
            (w, res)
        })
        .collect();
    for (w, res) in results {
        let loc = b.format_word(&w);
        match res {
            Ok(v) if v.is_zero() => r.record_ok(),
            Ok(v) => r.record_failure(loc, v.to_string()),
            Err(e) => r.record_failure(loc, e.to_string()),
        }
    }
    match nonvanishing_witness(s, p, 4) {
        Ok(Some((w, v))) => r.note(format!(
            "m⁺(d̂({})) = {v}: the identity fails without the extra letter",
            b.format_word(&w)
        )),
        Ok(None) => r.note("no length-4 word with m⁺(d̂(w)) ≠ 0 in this model"),
        Err(e) => r.note(format!("witness search stopped: {e}")),
    }
    r
}

/// First basis word of length `len` with `m⁺(d̂(w)) ≠ 0`.
pub fn nonvanishing_witness(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    len: usize,
) -> Result<Option<(Vec<Letter>, NovikovScalar)>> {
    for w in s.basis().words(len) {
        let d = s.hat_d(&TensorWord::unit(w.clone(), s.cap())?)?;
        let v = m_plus_chain(s, p, &d)?;
        if !v.is_zero() {
            return Ok(Some((w, v)));
        }
    }
    Ok(None)
}
