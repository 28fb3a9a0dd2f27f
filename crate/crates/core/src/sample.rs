//! Seeded random chains for property sweeps.

use rand::Rng;

use crate::basis::GradedBasis;
use crate::census::sample_rng;
use crate::chain::ChainElement;
use crate::field::FieldValue;
use crate::novikov::{Energy, NovikovScalar};

#[derive(Clone, Debug)]
pub struct ChainSampler {
    pub seed: u64,
    pub max_terms: usize,
    pub max_len: usize,
    /// Energies are drawn from `0..=max_energy` (integers).
    pub max_energy: i64,
}

impl ChainSampler {
    pub fn new(seed: u64) -> Self {
        ChainSampler {
            seed,
            max_terms: 5,
            max_len: 3,
            max_energy: 1,
        }
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len;
        self
    }

    fn coeff(rng: &mut impl Rng) -> FieldValue {
        let num = rng.gen_range(-6..=6);
        let den = rng.gen_range(1..=4);
        let rat = FieldValue::from_ratio(num, den);
        if rng.gen_bool(0.3) {
            &rat + &(&FieldValue::sqrt2()
                * &FieldValue::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
        } else {
            rat
        }
    }

    /// Chain number `index`; the same `(seed, index)` always gives the same chain.
    pub fn chain(&self, basis: &GradedBasis, cap: &Energy, index: u64) -> ChainElement {
        let mut rng = sample_rng(self.seed, index);
        let mut c = ChainElement::zero(cap);
        let n = basis.len();
        for _ in 0..rng.gen_range(1..=self.max_terms) {
            let len = rng.gen_range(1..=self.max_len);
            let letters = basis.parse_word(
                &(0..len)
                    .map(|_| basis.entries()[rng.gen_range(0..n)].name.clone())
                    .collect::<Vec<_>>(),
            );
            let letters = letters.expect("names come from the basis");
            let e = Energy::from_int(rng.gen_range(0..=self.max_energy));
            c.add_word(
                letters,
                NovikovScalar::monomial(Self::coeff(&mut rng), e, cap),
            );
        }
        c
    }

    pub fn chains(&self, basis: &GradedBasis, cap: &Energy, count: usize) -> Vec<ChainElement> {
        (0..count as u64)
            .map(|i| self.chain(basis, cap, i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let b = GradedBasis::from_pairs(&[("e", 0), ("x", 1)]).unwrap();
        let cap = Energy::from_int(2);
        let s = ChainSampler::new(5);
        let a = s.chains(&b, &cap, 20);
        assert_eq!(a, s.chains(&b, &cap, 20));
        assert!(a
            .iter()
            .all(|c| c.iter().all(|(w, _)| (1..=3).contains(&w.len()))));
        assert_ne!(a, ChainSampler::new(6).chains(&b, &cap, 20));
    }
}
