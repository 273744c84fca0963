//! Group elements and the word problem.
//!
//! An element is stored as its ShortLex-least reduced word. Normal forms are
//! computed in the contragredient of the geometric representation: `W` acts on
//! the functional `f₀` with `f₀(α_s) = 1` for every simple root, and for an
//! element `w` the vector `key(w)_t = f₀(w⁻¹α_t)` has a negative entry exactly
//! at the left descents of `w`. Each entry is the coordinate sum of a root, so
//! its magnitude is at least 1 and its sign is never ambiguous. Stripping the
//! smallest left descent repeatedly spells out the ShortLex normal form.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::braid;
use crate::error::CoxeterError;
use crate::ring::{Arith, Cyc, Scalar};
use crate::system::CoxeterSystem;
use crate::word::{GeneratorSubset, Word};

/// Which side a generator multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Result of [`Element::order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementOrder {
    Finite(usize),
    /// No power up to the cap is the identity.
    InfiniteBeyondCap(usize),
}

#[derive(Clone)]
pub struct Element {
    system: Arc<CoxeterSystem>,
    nf: Word,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.nf == other.nf && (Arc::ptr_eq(&self.system, &other.system) || *self.system == *other.system)
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nf.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// ShortLex on normal forms.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nf.shortlex_cmp(&other.nf)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]", self.nf)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nf.is_empty() {
            write!(f, "1")
        } else {
            let s: Vec<String> = self.nf.letters().iter().map(|l| format!("s{l}")).collect();
            write!(f, "{}", s.join(""))
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Element", 2)?;
        st.serialize_field("nf", &self.nf)?;
        st.serialize_field("len", &self.nf.len())?;
        st.end()
    }
}

/// Reduces an arbitrary word to the ShortLex normal form of its element.
pub fn normal_form(system: &Arc<CoxeterSystem>, word: &Word) -> Result<Element, CoxeterError> {
    word.check(system.rank())?;
    let nf = nf_of_letters(system, word.letters())?;
    Ok(Element { system: system.clone(), nf: Word(nf) })
}

impl Element {
    pub fn identity(system: &Arc<CoxeterSystem>) -> Self {
        Element { system: system.clone(), nf: Word::empty() }
    }

    pub fn generator(system: &Arc<CoxeterSystem>, s: usize) -> Result<Self, CoxeterError> {
        if s >= system.rank() {
            return Err(CoxeterError::LetterOutOfRange { letter: s, rank: system.rank() });
        }
        Ok(Element { system: system.clone(), nf: Word(vec![s]) })
    }

    pub fn from_word(system: &Arc<CoxeterSystem>, word: &Word) -> Result<Self, CoxeterError> {
        normal_form(system, word)
    }

    pub fn from_letters(system: &Arc<CoxeterSystem>, letters: &[usize]) -> Result<Self, CoxeterError> {
        normal_form(system, &Word(letters.to_vec()))
    }

    /// Wraps a word already known to be the normal form.
    pub(crate) fn from_nf_unchecked(system: &Arc<CoxeterSystem>, nf: Vec<usize>) -> Self {
        Element { system: system.clone(), nf: Word(nf) }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn nf(&self) -> &Word {
        &self.nf
    }

    pub fn letters(&self) -> &[usize] {
        self.nf.letters()
    }

    pub fn length(&self) -> usize {
        self.nf.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn multiply(&self, other: &Element) -> Result<Element, CoxeterError> {
        self.system.ensure_same(&other.system)?;
        let letters: Vec<usize> = self.letters().iter().chain(other.letters()).copied().collect();
        Ok(Element { system: self.system.clone(), nf: Word(nf_of_letters(&self.system, &letters)?) })
    }

    /// `self · s`
    pub fn mul_generator(&self, s: usize) -> Result<Element, CoxeterError> {
        let mut letters = self.letters().to_vec();
        letters.push(s);
        normal_form(&self.system, &Word(letters))
    }

    /// `s · self`
    pub fn generator_mul(&self, s: usize) -> Result<Element, CoxeterError> {
        let mut letters = vec![s];
        letters.extend_from_slice(self.letters());
        normal_form(&self.system, &Word(letters))
    }

    pub fn inverse(&self) -> Result<Element, CoxeterError> {
        normal_form(&self.system, &self.nf.reversed())
    }

    /// `self · s · self⁻¹`
    pub fn conjugate_generator(&self, s: usize) -> Result<Element, CoxeterError> {
        let mut letters = self.letters().to_vec();
        letters.push(s);
        letters.extend(self.letters().iter().rev());
        normal_form(&self.system, &Word(letters))
    }

    pub fn pow(&self, k: usize) -> Result<Element, CoxeterError> {
        let letters: Vec<usize> = std::iter::repeat_n(self.letters(), k).flatten().copied().collect();
        normal_form(&self.system, &Word(letters))
    }

    /// Left descents `{s : ℓ(sw) < ℓ(w)}` or right descents `{s : ℓ(ws) < ℓ(w)}`.
    pub fn descents(&self, side: Side) -> Result<GeneratorSubset, CoxeterError> {
        match side {
            Side::Left => descent_set(&self.system, self.letters()),
            Side::Right => {
                let rev: Vec<usize> = self.letters().iter().rev().copied().collect();
                descent_set(&self.system, &rev)
            }
        }
    }

    /// Generators occurring in the normal form (the same for every reduced word).
    pub fn support(&self) -> GeneratorSubset {
        GeneratorSubset::from_indices(self.letters().iter().copied())
    }

    /// Every reduced word of the element, sorted ShortLex.
    pub fn all_reduced_words(&self) -> Vec<Word> {
        braid::braid_closure(&self.system, &self.nf).into_iter().collect()
    }

    /// Least `k ≤ cap` with `self^k = 1`.
    pub fn order(&self, cap: usize) -> Result<ElementOrder, CoxeterError> {
        let cap = cap.max(1);
        if self.is_identity() {
            return Ok(ElementOrder::Finite(1));
        }
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Ok(ElementOrder::Finite(k));
            }
            if k < cap {
                p = p.multiply(self)?;
            }
        }
        Ok(ElementOrder::InfiniteBeyondCap(cap))
    }
}

// ---------------------------------------------------------------------------
// Generic key arithmetic.

pub(crate) fn apply_left<S: Scalar>(
    lams: &[S::Lambda],
    rank: usize,
    key: &mut [S],
    t: usize,
) -> Result<(), CoxeterError> {
    let kt = key[t].clone();
    for u in 0..rank {
        if u != t {
            key[u].add_scaled(lams[t * rank + u], &kt)?;
        }
    }
    key[t].negate()
}

/// `key(w)` for `w = letters[0] ⋯ letters[k−1]`.
pub(crate) fn key_of<S: Scalar>(lams: &[S::Lambda], rank: usize, letters: &[usize]) -> Result<Vec<S>, CoxeterError> {
    let mut key = vec![S::one(); rank];
    for &s in letters.iter().rev() {
        apply_left(lams, rank, &mut key, s)?;
    }
    Ok(key)
}

pub(crate) fn first_negative<S: Scalar>(
    key: &[S],
    within: Option<GeneratorSubset>,
) -> Result<Option<usize>, CoxeterError> {
    for (t, v) in key.iter().enumerate() {
        if within.is_some_and(|w| !w.contains(t)) {
            continue;
        }
        if v.is_negative()? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Consumes `key(w)` and spells the ShortLex normal form of `w`.
pub(crate) fn spell<S: Scalar>(lams: &[S::Lambda], rank: usize, mut key: Vec<S>) -> Result<Vec<usize>, CoxeterError> {
    let mut nf = Vec::new();
    while let Some(t) = first_negative(&key, None)? {
        nf.push(t);
        apply_left(lams, rank, &mut key, t)?;
    }
    Ok(nf)
}

fn nf_generic<S: Scalar>(lams: &[S::Lambda], rank: usize, letters: &[usize]) -> Result<Vec<usize>, CoxeterError> {
    let key = key_of::<S>(lams, rank, letters)?;
    spell(lams, rank, key)
}

fn descents_generic<S: Scalar>(
    lams: &[S::Lambda],
    rank: usize,
    letters: &[usize],
) -> Result<GeneratorSubset, CoxeterError> {
    let key = key_of::<S>(lams, rank, letters)?;
    let mut d = GeneratorSubset::EMPTY;
    for (t, v) in key.iter().enumerate() {
        if v.is_negative()? {
            d.insert(t);
        }
    }
    Ok(d)
}

pub(crate) fn nf_of_letters(system: &CoxeterSystem, letters: &[usize]) -> Result<Vec<usize>, CoxeterError> {
    let rank = system.rank();
    match &system.coeffs.arith {
        Arith::Exact(l) => nf_generic::<Cyc>(l, rank, letters),
        Arith::Float(l) => nf_generic::<f64>(l, rank, letters),
    }
}

fn descent_set(system: &CoxeterSystem, letters: &[usize]) -> Result<GeneratorSubset, CoxeterError> {
    let rank = system.rank();
    match &system.coeffs.arith {
        Arith::Exact(l) => descents_generic::<Cyc>(l, rank, letters),
        Arith::Float(l) => descents_generic::<f64>(l, rank, letters),
    }
}

fn strip_generic<S: Scalar>(
    lams: &[S::Lambda],
    rank: usize,
    letters: &[usize],
    within: GeneratorSubset,
) -> Result<(Vec<usize>, Vec<usize>), CoxeterError> {
    let mut key = key_of::<S>(lams, rank, letters)?;
    let mut stripped = Vec::new();
    while let Some(t) = first_negative(&key, Some(within))? {
        stripped.push(t);
        apply_left(lams, rank, &mut key, t)?;
    }
    Ok((stripped, spell(lams, rank, key)?))
}

/// Repeatedly removes the smallest left descent lying in `within`.
/// Returns the stripped letters `t₁, t₂, …` and the normal form of the rest,
/// so that `w = t₁ t₂ ⋯ · rest`.
pub(crate) fn strip_left_descents(
    system: &CoxeterSystem,
    letters: &[usize],
    within: GeneratorSubset,
) -> Result<(Vec<usize>, Vec<usize>), CoxeterError> {
    let rank = system.rank();
    match &system.coeffs.arith {
        Arith::Exact(l) => strip_generic::<Cyc>(l, rank, letters, within),
        Arith::Float(l) => strip_generic::<f64>(l, rank, letters, within),
    }
}
