//! Named graded bases and the letters that index them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a basis element inside its [`GradedBasis`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    entries: Vec<BasisEntry>,
    by_name: HashMap<String, Letter>,
}

impl GradedBasis {
    pub fn new(entries: Vec<BasisEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Input("empty basis".into()));
        }
        if entries.len() > u16::MAX as usize {
            return Err(Error::Resource("basis too large".into()));
        }
        let mut by_name = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            if e.name.is_empty() {
                return Err(Error::Input("empty basis name".into()));
            }
            if by_name.insert(e.name.clone(), Letter(i as u16)).is_some() {
                return Err(Error::Input(format!("duplicate basis name {:?}", e.name)));
            }
        }
        Ok(GradedBasis { entries, by_name })
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, i32)]) -> Result<Self> {
        GradedBasis::new(
            pairs
                .iter()
                .map(|(n, d)| BasisEntry {
                    name: n.to_string(),
                    degree: *d,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone + '_ {
        (0..self.entries.len()).map(|i| Letter(i as u16))
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown basis name {name:?}")))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.entries[l.index()].name
    }

    pub fn degree(&self, l: Letter) -> i32 {
        self.entries[l.index()].degree
    }

    /// `|x|' = |x| − 1`.
    pub fn shifted(&self, l: Letter) -> i32 {
        self.entries[l.index()].degree - 1
    }

    pub fn shifted_odd(&self, l: Letter) -> bool {
        self.shifted(l).rem_euclid(2) == 1
    }

    pub fn shifted_sum(&self, word: &[Letter]) -> i32 {
        word.iter().map(|&l| self.shifted(l)).sum()
    }

    pub fn degree_sum(&self, word: &[Letter]) -> i32 {
        word.iter().map(|&l| self.degree(l)).sum()
    }

    pub fn letters_of_degree(&self, degree: i32) -> Vec<Letter> {
        self.letters()
            .filter(|&l| self.degree(l) == degree)
            .collect()
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "()".into();
        }
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Letter>> {
        names.iter().map(|n| self.letter(n.as_ref())).collect()
    }

    /// All words of the given length, in lexicographic letter order.
    pub fn words(&self, len: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * self.len());
            for w in &out {
                for l in self.letters() {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }
}

/// `(-1)^n` as a boolean "is negative".
pub fn parity(n: i64) -> bool {
    n.rem_euclid(2) == 1
}
