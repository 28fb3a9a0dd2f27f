//! A∞ homomorphisms `{h_k}` and the maps they induce on bar and Hochschild chains.
//!
//! Every `h_k` has degree zero on shifted degrees, so splitting a word into
//! blocks never produces a Koszul sign; only the cyclic rotation that brings the
//! module block to the front does.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::ainfty::{AInfinityStructure, ClassIndex};
use crate::basis::{GradedBasis, Letter};
use crate::chain::ChainElement;
use crate::element::{GradedElement, Vector};
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::novikov::{Energy, NovikovScalar};
use crate::pairing::{m_plus_chain, CyclicPairing};
use crate::report::Report;
use crate::sign::Sign;

#[derive(Clone, Debug)]
pub struct MorphismData {
    source: GradedBasis,
    target: GradedBasis,
    cap: Energy,
    max_arity: usize,
    classes: Vec<ClassIndex>,
    components: BTreeMap<(ClassIndex, Vec<Letter>), Vector>,
}

impl MorphismData {
    pub fn new(source: GradedBasis, target: GradedBasis, cap: Energy, max_arity: usize) -> Self {
        MorphismData {
            source,
            target,
            cap,
            max_arity,
            classes: vec![ClassIndex::zero()],
            components: BTreeMap::new(),
        }
    }

    /// A strict morphism: only `h_{1,0}` is nonzero.
    pub fn strict(
        source: GradedBasis,
        target: GradedBasis,
        cap: Energy,
        images: impl IntoIterator<Item = (Letter, Vector)>,
    ) -> Result<Self> {
        let mut h = MorphismData::new(source, target, cap, 1);
        for (l, v) in images {
            h.set(&ClassIndex::zero(), &[l], v)?;
        }
        Ok(h)
    }

    pub fn identity(basis: &GradedBasis, cap: &Energy) -> Self {
        MorphismData::strict(
            basis.clone(),
            basis.clone(),
            cap.clone(),
            basis.letters().map(|l| (l, Vector::basis(l))),
        )
        .expect("identity is degree preserving")
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Shifted degree is preserved up to the Maslov shift: `Σ|x|' − μ(β)`.
    pub fn set(&mut self, class: &ClassIndex, word: &[Letter], value: Vector) -> Result<()> {
        if word.is_empty() {
            return Err(Error::Input("h_0 is not part of a morphism".into()));
        }
        if !value.is_zero() {
            let want = self.source.shifted_sum(word) - class.maslov;
            let ok = value.iter().all(|(l, _)| self.target.shifted(l) == want);
            if !ok {
                return Err(Error::Input(format!(
                    "h_{{{},{class}}}({}) has the wrong degree",
                    word.len(),
                    self.source.format_word(word)
                )));
            }
        }
        if class.energy > self.cap {
            return Err(Error::Config(format!("class {class} above the energy cap")));
        }
        self.max_arity = self.max_arity.max(word.len());
        if !self.classes.contains(class) {
            self.classes.push(class.clone());
            self.classes.sort();
        }
        if value.is_zero() {
            self.components.remove(&(class.clone(), word.to_vec()));
        } else {
            self.components
                .insert((class.clone(), word.to_vec()), value);
        }
        Ok(())
    }

    pub fn components(&self) -> impl Iterator<Item = (&(ClassIndex, Vec<Letter>), &Vector)> {
        self.components.iter()
    }

    /// `h_k(word) = Σ_β T^{λ(β)} h_{k,β}(word)`; zero beyond the stored arity.
    pub fn apply_word(&self, word: &[Letter]) -> GradedElement {
        let mut out = GradedElement::zero(&self.cap);
        for class in &self.classes {
            if let Some(v) = self.components.get(&(class.clone(), word.to_vec())) {
                out.add(&GradedElement::from_vector(v, &class.energy, &self.cap));
            }
        }
        out
    }

    /// All ways of writing `letters` as consecutive blocks, each replaced by `h`.
    fn blocks(&self, letters: &[Letter]) -> Vec<(Vec<Letter>, NovikovScalar)> {
        let mut partial: Vec<(usize, Vec<Letter>, NovikovScalar)> =
            vec![(0, Vec::new(), NovikovScalar::one(&self.cap))];
        let mut done = Vec::new();
        while let Some((pos, out, c)) = partial.pop() {
            if pos == letters.len() {
                done.push((out, c));
                continue;
            }
            for len in 1..=self.max_arity.min(letters.len() - pos) {
                let image = self.apply_word(&letters[pos..pos + len]);
                for (y, s) in image.iter() {
                    let mut o = out.clone();
                    o.push(y);
                    partial.push((pos + len, o, &c * s));
                }
            }
        }
        done
    }

    /// The cohomomorphism `ĥ` on the bar coalgebra.
    pub fn apply_hat_h_bar(&self, chain: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero(&self.cap);
        for (letters, c) in chain.iter() {
            for (w, s) in self.blocks(letters) {
                out.add_word(w, c * &s);
            }
        }
        out
    }

    /// `ĥ` on Hochschild chains: blocks are taken cyclically and the block
    /// containing the module slot is rotated to the front.
    pub fn apply_hat_h(&self, chain: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero(&self.cap);
        for (letters, c) in chain.iter() {
            let n = letters.len();
            // The module block is x_{n−a}, …, x_{n−1}, v, x_1, …, x_{b−1}.
            for a in 0..n {
                for b in 1..=(n - a) {
                    let len = a + b;
                    if len > self.max_arity {
                        continue;
                    }
                    let mut block: Vec<Letter> = letters[n - a..].to_vec();
                    block.extend_from_slice(&letters[..b]);
                    let head = self.apply_word(&block);
                    if head.is_zero() {
                        continue;
                    }
                    let moved = self.source.shifted_sum(&letters[n - a..]) as i64;
                    let rest = self.source.shifted_sum(&letters[..n - a]) as i64;
                    let sign = Sign::pow(moved * rest);
                    let middle = &letters[b..n - a];
                    let tails = if middle.is_empty() {
                        vec![(Vec::new(), NovikovScalar::one(&self.cap))]
                    } else {
                        self.blocks(middle)
                    };
                    for (y, s) in head.iter() {
                        for (t, s2) in &tails {
                            let mut w = vec![y];
                            w.extend_from_slice(t);
                            out.add_word(w, (&(c * s) * s2).signed(sign.is_negative()));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `ĥ∘d̂_source = d̂_target∘ĥ` on every basis word of length `1..=max_len`.
pub fn verify_homomorphism(
    h: &MorphismData,
    source: &AInfinityStructure,
    target: &AInfinityStructure,
    max_len: usize,
) -> Report {
    let mut r = Report::new("homomorphism");
    let b = source.basis();
    let cap = source.cap();
    let words: Vec<Vec<Letter>> = (1..=max_len).flat_map(|n| b.words(n)).collect();
    let results: Vec<(Vec<Letter>, Result<ChainElement>)> = words
        .into_par_iter()
        .map(|w| {
            let res = (|| {
                let c = ChainElement::basis_word(w.clone(), cap);
                let left = h.apply_hat_h_bar(&source.hat_d_chain(&c)?);
                let right = target.hat_d_chain(&h.apply_hat_h_bar(&c))?;
                Ok(left.minus(&right))
            })();
            (w, res)
        })
        .collect();
    for (w, res) in results {
        let loc = b.format_word(&w);
        match res {
            Ok(d) if d.is_zero() => r.record_ok(),
            Ok(d) => r.record_failure(loc, d.format(target.basis())),
            Err(e) => r.record_failure(loc, e.to_string()),
        }
    }
    r
}

/// Condition (1) `⟨a,b⟩ = ⟨h_1 a, h_1 b⟩` on basis pairs, and condition (2)
/// `Σ_{i+j=k} ⟨h_i(x_1..x_i), h_j(x_{i+1}..x_k)⟩ = 0` for `k` from 3 (or 2 with
/// `strict`) to `max_len`.
pub fn verify_cyclic_homomorphism(
    h: &MorphismData,
    source: &CyclicPairing,
    target: &CyclicPairing,
    max_len: usize,
    strict: bool,
) -> Report {
    let mut r = Report::new("cyclic_homomorphism");
    let b = source.basis();
    for x in b.letters() {
        for y in b.letters() {
            let want = NovikovScalar::constant(source.entry(x, y), &h.cap);
            let got = target.pair(&h.apply_word(&[x]), &h.apply_word(&[y]));
            match got {
                Ok(g) if g == want => r.record_ok(),
                Ok(g) => r.record_failure(
                    format!("(1) ⟨{},{}⟩", b.name(x), b.name(y)),
                    format!("{g} != {want}"),
                ),
                Err(e) => {
                    r.record_failure(format!("(1) ⟨{},{}⟩", b.name(x), b.name(y)), e.to_string())
                }
            }
        }
    }
    let lo = if strict { 2 } else { 3 };
    for k in lo..=max_len {
        for w in b.words(k) {
            let mut sum = NovikovScalar::zero(&h.cap);
            for i in 1..k {
                let a = h.apply_word(&w[..i]);
                let c = h.apply_word(&w[i..]);
                match target.pair(&a, &c).and_then(|v| sum.try_add(&v)) {
                    Ok(v) => sum = v,
                    Err(e) => {
                        r.record_failure(format!("(2) {}", b.format_word(&w)), e.to_string());
                        continue;
                    }
                }
            }
            if sum.is_zero() {
                r.record_ok();
            } else {
                r.record_failure(format!("(2) {}", b.format_word(&w)), sum.to_string());
            }
        }
    }
    r.note(format!("condition (2) checked for k in {lo}..={max_len}"));
    r
}

/// `m⁺_A(c) = m⁺_B(ĥ(c))` on every supplied chain.
pub fn verify_prop45(
    h: &MorphismData,
    source: (&AInfinityStructure, &CyclicPairing),
    target: (&AInfinityStructure, &CyclicPairing),
    chains: &[ChainElement],
) -> Report {
    let mut r = Report::new("prop45");
    let results: Vec<Result<(NovikovScalar, NovikovScalar)>> = chains
        .par_iter()
        .map(|c| {
            let a = m_plus_chain(source.0, source.1, c)?;
            let b = m_plus_chain(target.0, target.1, &h.apply_hat_h(c))?;
            Ok((a, b))
        })
        .collect();
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok((a, b)) if a == b => r.record_ok(),
            Ok((a, b)) => r.record_failure(format!("chain #{i}"), format!("{a} != {b}")),
            Err(e) => r.record_failure(format!("chain #{i}"), e.to_string()),
        }
    }
    r
}

/// Transport a structure and pairing along a strict isomorphism.
///
/// `to_old(l)` expresses a new basis letter in the old basis; `to_new(l)` the reverse.
pub fn transport(
    s: &AInfinityStructure,
    p: &CyclicPairing,
    new_basis: GradedBasis,
    new_unit: Option<Letter>,
    to_old: &dyn Fn(Letter) -> Vector,
    to_new: &dyn Fn(Letter) -> Vector,
) -> Result<(AInfinityStructure, CyclicPairing)> {
    let mut t =
        AInfinityStructure::new(new_basis.clone(), new_unit, s.cap().clone(), s.max_arity());
    for class in s.classes() {
        t.declare_class(class.clone())?;
    }
    let map_out = |v: &Vector| {
        let mut out = Vector::zero();
        for (l, c) in v.iter() {
            out.add_scaled(&to_new(l), c);
        }
        out
    };
    for k in 0..=s.max_arity() {
        for w in new_basis.words(k) {
            // Expand each new letter in the old basis.
            let mut partial: Vec<(Vec<Letter>, FieldValue)> = vec![(Vec::new(), FieldValue::one())];
            for &l in &w {
                let image = to_old(l);
                let mut next = Vec::new();
                for (pw, pc) in &partial {
                    for (y, c) in image.iter() {
                        let mut nw = pw.clone();
                        nw.push(y);
                        next.push((nw, pc * c));
                    }
                }
                partial = next;
            }
            for class in s.classes() {
                let mut acc = Vector::zero();
                for (ow, c) in &partial {
                    if let Some(v) = s.op(class, ow)? {
                        acc.add_scaled(v, c);
                    }
                }
                let out = map_out(&acc);
                if !out.is_zero() {
                    t.set(class, &w, out)?;
                }
            }
        }
    }
    let mut entries = Vec::new();
    for a in new_basis.letters() {
        for b in new_basis.letters() {
            let v = p.pair_vectors(&to_old(a), &to_old(b));
            if !v.is_zero() {
                entries.push(((a, b), v));
            }
        }
    }
    let q = CyclicPairing::new(new_basis, entries)?;
    Ok((t, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_hat_h_is_identity() {
        let b = GradedBasis::from_pairs(&[("e", 0), ("f_1", 1), ("f_2", 1), ("f_12", 2)]).unwrap();
        let cap = Energy::from_int(2);
        let h = MorphismData::identity(&b, &cap);
        let mut c = ChainElement::zero(&cap);
        c.add_word(vec![Letter(3), Letter(0)], NovikovScalar::one(&cap));
        c.add_word(
            vec![Letter(1), Letter(2), Letter(3)],
            NovikovScalar::one(&cap),
        );
        assert_eq!(h.apply_hat_h(&c), c);
        assert_eq!(h.apply_hat_h_bar(&c), c);
    }

    #[test]
    fn degree_checked() {
        let b = GradedBasis::from_pairs(&[("e", 0), ("f", 1)]).unwrap();
        let cap = Energy::from_int(1);
        let r = MorphismData::strict(
            b.clone(),
            b.clone(),
            cap,
            [(Letter(0), Vector::basis(Letter(1)))],
        );
        assert!(r.is_err());
    }

    #[test]
    fn two_block_split_on_hochschild_words() {
        // h_2(a,b) = a on a one-letter-degree-0 toy basis; check the cyclic block count.
        let b = GradedBasis::from_pairs(&[("a", 1)]).unwrap();
        let cap = Energy::from_int(1);
        let a = Letter(0);
        let mut h = MorphismData::identity(&b, &cap);
        h.set(&ClassIndex::zero(), &[a, a], Vector::basis(a))
            .unwrap();
        let c = ChainElement::basis_word(vec![a, a, a], &cap);
        let out = h.apply_hat_h(&c);
        // Partitions of a 3-cycle with a marked point: all singletons (1), one pair
        // containing the mark (2) and one pair avoiding it (1).
        assert_eq!(out.coeff(&[a, a, a]), NovikovScalar::one(&cap));
        assert_eq!(
            out.coeff(&[a, a]),
            NovikovScalar::constant(FieldValue::from_int(3), &cap)
        );
    }
}
