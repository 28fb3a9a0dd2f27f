//! Hochschild chains, the cyclic operators, and well-definedness of `m⁺`.
//!
//! A chain word `v ⊗ x_1 ⊗ … ⊗ x_k` keeps its module element `v` in position 0.

use rayon::prelude::*;

use crate::ainfty::AInfinityStructure;
use crate::basis::{GradedBasis, Letter};
use crate::chain::{
    ce_symmetrize, one_minus_t, t_rotate, ChainElement, TensorWord, DEFAULT_SYMMETRIZE_CAP,
};
use crate::error::Result;
use crate::novikov::NovikovScalar;
use crate::pairing::{m_plus_chain, CyclicPairing};
use crate::report::Report;
use crate::sign::Sign;

/// Sign convention for the wrap-around terms of the Hochschild differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WrapSign {
    /// Koszul sign of moving the last `i` letters past everything else:
    /// `(Σ moved)(|v|' + |x_1|' + … + |x_{k−i}|')`.
    #[default]
    Rotation,
    /// The moved block is only crossed with `v, x_1, …, x_j`.
    Truncated,
}

/// Total shifted degree `Σ |x|'` of a word.
pub fn word_degree(basis: &GradedBasis, letters: &[Letter]) -> i32 {
    basis.shifted_sum(letters)
}

/// `d^{Hoch}` on one word, with the default wrap sign.
pub fn d_hoch(s: &AInfinityStructure, word: &TensorWord) -> Result<ChainElement> {
    d_hoch_with(s, word, WrapSign::default())
}

pub fn d_hoch_with(
    s: &AInfinityStructure,
    word: &TensorWord,
    rule: WrapSign,
) -> Result<ChainElement> {
    let b = s.basis();
    let cap = s.cap();
    let curved = s.has_curvature();
    let v = word.letters[0];
    let x = &word.letters[1..];
    let k = x.len();
    let mut out = ChainElement::zero(cap);

    // Interior insertions m_j(x_i, …, x_{i+j−1}), 1 ≤ i.
    let mut eps1 = b.shifted(v) as i64;
    for i in 1..=k {
        for j in 0..=(k + 1 - i) {
            if j == 0 && !curved {
                continue;
            }
            let block = &x[i - 1..i - 1 + j];
            let value = s.apply_word(block)?;
            for (y, c) in value.iter() {
                let mut letters = Vec::with_capacity(k + 2 - j);
                letters.push(v);
                letters.extend_from_slice(&x[..i - 1]);
                letters.push(y);
                letters.extend_from_slice(&x[i - 1 + j..]);
                out.add_word(
                    letters,
                    word.coeff.try_mul(c)?.signed(Sign::pow(eps1).is_negative()),
                );
            }
        }
        eps1 += b.shifted(x[i - 1]) as i64;
    }

    // Wrap-around terms m_{i+j+1}(x_{k−i+1}, …, x_k, v, x_1, …, x_j).
    for i in 0..=k {
        for j in 0..=(k - i) {
            let mut block: Vec<Letter> = x[k - i..].to_vec();
            block.push(v);
            block.extend_from_slice(&x[..j]);
            let moved = b.shifted_sum(&x[k - i..]) as i64;
            let crossed = match rule {
                WrapSign::Rotation => b.shifted(v) + b.shifted_sum(&x[..k - i]),
                WrapSign::Truncated => b.shifted(v) + b.shifted_sum(&x[..j]),
            } as i64;
            let sign = Sign::pow(moved * crossed);
            let value = s.apply_word(&block)?;
            for (y, c) in value.iter() {
                let mut letters = Vec::with_capacity(k - i - j + 1);
                letters.push(y);
                letters.extend_from_slice(&x[j..k - i]);
                out.add_word(letters, word.coeff.try_mul(c)?.signed(sign.is_negative()));
            }
        }
    }
    Ok(out)
}

pub fn d_hoch_chain(s: &AInfinityStructure, chain: &ChainElement) -> Result<ChainElement> {
    chain.try_map_words(|w| d_hoch(s, w))
}

pub fn d_hoch_chain_with(
    s: &AInfinityStructure,
    chain: &ChainElement,
    rule: WrapSign,
) -> Result<ChainElement> {
    chain.try_map_words(|w| d_hoch_with(s, w, rule))
}

/// `(1 − t)(chain) = 0`.
pub fn is_cyclic_invariant(basis: &GradedBasis, chain: &ChainElement) -> bool {
    one_minus_t(basis, chain).is_zero()
}

/// Invariance, then `d̂(chain) = 0`, each `m̂_k(chain)` reported and checked.
pub fn cyclic_cycle_check(s: &AInfinityStructure, chain: &ChainElement) -> Report {
    let b = s.basis();
    let mut r = Report::new("cyclic_cycle");
    let defect = one_minus_t(b, chain);
    if !defect.is_zero() {
        r.record_failure(
            "(1-t)(c)",
            format!("not cyclic-invariant: {}", defect.format(b)),
        );
        return r;
    }
    r.record_ok();
    let longest = chain.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
    let mut total = ChainElement::zero(s.cap());
    for k in 0..=longest {
        if k == 0 && !s.has_curvature() {
            continue;
        }
        match s.hat_m_chain(k, chain) {
            Ok(stage) => {
                r.note(format!("m̂_{k}(c) = {}", stage.format(b)));
                // Stages land in different word lengths, so each must vanish.
                if stage.is_zero() {
                    r.record_ok();
                } else {
                    r.record_failure(format!("m̂_{k}(c)"), stage.format(b));
                }
                total.add(&stage);
            }
            Err(e) => {
                r.record_failure(format!("m̂_{k}"), e.to_string());
                return r;
            }
        }
    }
    if total.is_zero() {
        r.record_ok();
    } else {
        r.record_failure("d̂(c)", total.format(b));
    }
    r
}

/// Canonical representative modulo `Im(1 − t)`: each word is replaced by its
/// minimal rotation (basis order) with the rotation sign folded in. Words equal
/// to minus one of their own rotations represent zero.
pub fn connes_representative(basis: &GradedBasis, chain: &ChainElement) -> ChainElement {
    let mut out = ChainElement::zero(chain.cap());
    for w in chain.words() {
        let n = w.letters.len();
        let mut rotations = Vec::with_capacity(n);
        let mut cur = TensorWord {
            letters: w.letters.clone(),
            coeff: NovikovScalar::one(chain.cap()),
        };
        for _ in 0..n {
            rotations.push(cur.clone());
            cur = t_rotate(basis, &cur);
        }
        let min = rotations.iter().map(|r| &r.letters).min().unwrap().clone();
        let hits: Vec<&TensorWord> = rotations.iter().filter(|r| r.letters == min).collect();
        if hits.iter().any(|h| h.coeff != hits[0].coeff) {
            continue;
        }
        out.add_word(min, w.coeff.try_mul(&hits[0].coeff).expect("shared cap"));
    }
    out
}

fn basis_words(b: &GradedBasis, max_len: usize) -> Vec<Vec<Letter>> {
    (1..=max_len).flat_map(|n| b.words(n)).collect()
}

/// `m⁺(d^{Hoch}(c)) = 0` on basis words up to `max_len`, on `chains`, and on
/// `x_0 ⊗ [x_1, …, x_k]` for symmetrized tails up to the same length.
pub fn verify_thm42(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    max_len: usize,
    chains: &[ChainElement],
) -> Report {
    let b = s.basis();
    let cap = s.cap();
    let mut r = Report::new("thm42");
    let mut samples: Vec<(String, Result<ChainElement>)> = basis_words(b, max_len)
        .into_iter()
        .map(|w| (b.format_word(&w), Ok(ChainElement::basis_word(w, cap))))
        .collect();
    samples.extend(
        chains
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("chain #{i}"), Ok(c.clone()))),
    );
    for w in basis_words(b, max_len.saturating_sub(1)) {
        for x0 in b.letters() {
            let tail = ce_symmetrize(b, &w, cap, DEFAULT_SYMMETRIZE_CAP);
            let chain = tail.map(|t| {
                let mut c = ChainElement::zero(cap);
                for (letters, coeff) in t.iter() {
                    let mut l = vec![x0];
                    l.extend_from_slice(letters);
                    c.add_word(l, coeff.clone());
                }
                c
            });
            samples.push((format!("{} ⊗ [{}]", b.name(x0), b.format_word(&w)), chain));
        }
    }
    let results: Vec<(String, Result<NovikovScalar>)> = samples
        .into_par_iter()
        .map(|(loc, c)| {
            (
                loc,
                c.and_then(|c| d_hoch_chain(s, &c))
                    .and_then(|d| m_plus_chain(s, p, &d)),
            )
        })
        .collect();
    for (loc, res) in results {
        match res {
            Ok(v) if v.is_zero() => r.record_ok(),
            Ok(v) => r.record_failure(loc, format!("m⁺(d c) = {v}")),
            Err(e) => r.record_failure(loc, e.to_string()),
        }
    }
    r
}

/// `m⁺(d^{Hoch} c) = 0` plus `m⁺((1 − t)c) = 0` on the same samples.
pub fn verify_thm43(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    max_len: usize,
    chains: &[ChainElement],
) -> Report {
    let b = s.basis();
    let cap = s.cap();
    let mut r = Report::new("thm43");
    r.absorb(verify_thm42(s, p, max_len, chains));
    let mut samples: Vec<(String, ChainElement)> = basis_words(b, max_len)
        .into_iter()
        .map(|w| (b.format_word(&w), ChainElement::basis_word(w, cap)))
        .collect();
    samples.extend(
        chains
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("chain #{i}"), c.clone())),
    );
    let results: Vec<(String, Result<NovikovScalar>)> = samples
        .into_par_iter()
        .map(|(loc, c)| (loc, m_plus_chain(s, p, &one_minus_t(b, &c))))
        .collect();
    for (loc, res) in results {
        match res {
            Ok(v) if v.is_zero() => r.record_ok(),
            Ok(v) => r.record_failure(loc, format!("m⁺((1-t)c) = {v}")),
            Err(e) => r.record_failure(loc, e.to_string()),
        }
    }
    r
}
