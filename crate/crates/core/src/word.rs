//! Words over the generators and subsets of the generating set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CoxeterError;

/// A finite sequence of generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn check(&self, rank: usize) -> Result<(), CoxeterError> {
        match self.0.iter().find(|&&l| l >= rank) {
            Some(&letter) => Err(CoxeterError::LetterOutOfRange { letter, rank }),
            None => Ok(()),
        }
    }

    /// ShortLex order: length first, then lexicographic by index.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `0,2,1`; the empty string is the empty word.
impl FromStr for Word {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_indices(s).map(Word)
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>, CoxeterError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| CoxeterError::Parse(format!("bad generator index `{p}`"))))
        .collect()
}

/// A subset `T ⊆ S`, as a bit mask over generator indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSubset(u64);

impl GeneratorSubset {
    pub const EMPTY: GeneratorSubset = GeneratorSubset(0);

    pub fn from_mask(mask: u64) -> Self {
        GeneratorSubset(mask)
    }

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            GeneratorSubset(u64::MAX)
        } else {
            GeneratorSubset((1u64 << rank) - 1)
        }
    }

    pub fn singleton(s: usize) -> Self {
        GeneratorSubset(1 << s)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        GeneratorSubset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: usize) -> bool {
        s < 64 && self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        GeneratorSubset(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        GeneratorSubset(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        GeneratorSubset(self.0 & !o.0)
    }

    /// `S ∖ T` within a rank-`rank` system.
    pub fn complement(self, rank: usize) -> Self {
        GeneratorSubset::full(rank).difference(self)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn check(self, rank: usize) -> Result<(), CoxeterError> {
        match self.iter().find(|&l| l >= rank) {
            Some(letter) => Err(CoxeterError::LetterOutOfRange { letter, rank }),
            None => Ok(()),
        }
    }

    /// All subsets of a rank-`rank` generating set, by increasing mask.
    pub fn all(rank: usize) -> impl Iterator<Item = GeneratorSubset> {
        assert!(rank < 32, "subset enumeration is for small ranks");
        (0u64..(1 << rank)).map(GeneratorSubset)
    }
}

impl fmt::Display for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for GeneratorSubset {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let idx = parse_indices(s)?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= 64) {
            return Err(CoxeterError::LetterOutOfRange { letter: bad, rank: 64 });
        }
        Ok(GeneratorSubset::from_indices(idx))
    }
}

impl Serialize for GeneratorSubset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneratorSubset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Ok(GeneratorSubset::from_indices(v))
    }
}
