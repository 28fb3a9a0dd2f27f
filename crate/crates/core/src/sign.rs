//! Koszul signs of rearrangements of graded letters.

use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(-1)^n`.
    pub fn pow(n: i64) -> Sign {
        Sign::from_parity(n.rem_euclid(2) == 1)
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        Sign::from_parity(self.is_negative() != o.is_negative())
    }
}

/// Koszul sign of rearranging `before` into `after`.
///
/// Repeated labels are matched in order of occurrence. Every crossing of two
/// letters with odd degree contributes a factor of −1.
pub fn koszul_sign<T: PartialEq + std::fmt::Debug>(
    before: &[T],
    after: &[T],
    degree: impl Fn(&T) -> i32,
) -> Result<Sign> {
    if before.len() != after.len() {
        return Err(Error::Input(format!(
            "rearrangement changes length {} -> {}",
            before.len(),
            after.len()
        )));
    }
    let mut used = vec![false; before.len()];
    let mut origin = Vec::with_capacity(after.len());
    for a in after {
        let pos = before
            .iter()
            .enumerate()
            .position(|(i, b)| !used[i] && b == a)
            .ok_or_else(|| Error::Input(format!("{a:?} is not a rearranged letter")))?;
        used[pos] = true;
        origin.push(pos);
    }
    let odd: Vec<bool> = before
        .iter()
        .map(|b| degree(b).rem_euclid(2) == 1)
        .collect();
    let mut negative = false;
    for i in 0..origin.len() {
        for j in i + 1..origin.len() {
            if origin[i] > origin[j] && odd[origin[i]] && odd[origin[j]] {
                negative = !negative;
            }
        }
    }
    Ok(Sign::from_parity(negative))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adjacent-transposition oracle: bubble `before` into `after`.
    fn bubble_oracle(before: &[(&str, i32)], after: &[(&str, i32)]) -> i32 {
        let mut cur: Vec<(&str, i32)> = before.to_vec();
        let mut sign = 1;
        for (target_pos, want) in after.iter().enumerate() {
            let mut j = (target_pos..cur.len()).find(|&j| cur[j] == *want).unwrap();
            while j > target_pos {
                if cur[j].1 % 2 != 0 && cur[j - 1].1 % 2 != 0 {
                    sign = -sign;
                }
                cur.swap(j, j - 1);
                j -= 1;
            }
        }
        sign
    }

    fn deg(x: &(&str, i32)) -> i32 {
        x.1
    }

    #[test]
    fn even_letters_commute() {
        let b = [("x1", 0), ("x2", 0), ("x3", 2)];
        let a = [("x3", 2), ("x1", 0), ("x2", 0)];
        assert_eq!(koszul_sign(&b, &a, deg).unwrap(), Sign::Plus);
    }

    #[test]
    fn odd_swap() {
        let b = [("m", 1), ("n", 1)];
        let a = [("n", 1), ("m", 1)];
        assert_eq!(koszul_sign(&b, &a, deg).unwrap(), Sign::Minus);
    }

    #[test]
    fn two_operation_letters_with_even_inputs() {
        // m m x1 x2 x3 -> m x2 x3 m x1: the operation letters keep their order.
        let b = [("m_a", 1), ("m_b", 1), ("x1", 0), ("x2", 0), ("x3", 0)];
        let a = [("m_a", 1), ("x2", 0), ("x3", 0), ("m_b", 1), ("x1", 0)];
        assert_eq!(bubble_oracle(&b, &a), 1);
        assert_eq!(koszul_sign(&b, &a, deg).unwrap(), Sign::Plus);
        // When the second operation letter lands first, the two cross.
        let a2 = [("m_b", 1), ("x2", 0), ("x3", 0), ("m_a", 1), ("x1", 0)];
        assert_eq!(bubble_oracle(&b, &a2), -1);
        assert_eq!(koszul_sign(&b, &a2, deg).unwrap(), Sign::Minus);
    }

    #[test]
    fn not_a_permutation() {
        let b = [("x", 0)];
        let a = [("y", 0)];
        assert!(matches!(koszul_sign(&b, &a, deg), Err(Error::Input(_))));
        assert!(koszul_sign(&b, &[], deg).is_err());
    }

    use proptest::prelude::*;

    fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn matches_bubble_oracle(degs in prop::collection::vec(-2i32..3, 1..7), seed in any::<u64>()) {
            let names = ["a", "b", "c", "d", "e", "f", "g"];
            let before: Vec<(&str, i32)> = degs.iter().enumerate().map(|(i, &d)| (names[i], d)).collect();
            let mut idx: Vec<usize> = (0..before.len()).collect();
            let mut s = seed;
            for i in (1..idx.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                idx.swap(i, (s >> 33) as usize % (i + 1));
            }
            let after: Vec<(&str, i32)> = idx.iter().map(|&i| before[i]).collect();
            prop_assert_eq!(koszul_sign(&before, &after, deg).unwrap().as_i32(), bubble_oracle(&before, &after));
        }

        #[test]
        fn multiplicative_under_composition(
            degs in prop::collection::vec(-2i32..3, 5),
            p in perm_strategy(5),
            q in perm_strategy(5),
        ) {
            let labels: Vec<(usize, i32)> = degs.iter().copied().enumerate().collect();
            let mid: Vec<(usize, i32)> = p.iter().map(|&i| labels[i]).collect();
            let end: Vec<(usize, i32)> = q.iter().map(|&i| mid[i]).collect();
            let d = |x: &(usize, i32)| x.1;
            let s1 = koszul_sign(&labels, &mid, d).unwrap();
            let s2 = koszul_sign(&mid, &end, d).unwrap();
            let s = koszul_sign(&labels, &end, d).unwrap();
            prop_assert_eq!(s1 * s2, s);
        }
    }
}
