//! Braid moves and Tits' solution of the word problem.
//!
//! A word is reduced iff no word reachable from it by braid moves contains two
//! equal adjacent letters; reduced words of one element form one braid class.
//! This is exponential in general and serves as a second, independent route to
//! normal forms for short words, and to enumerate all reduced words.

use std::collections::{BTreeSet, VecDeque};

use crate::error::CoxeterError;
use crate::system::{CoxeterSystem, Order};
use crate::word::Word;

/// Words obtained from `word` by one braid move `stst⋯ ↔ tsts⋯` (length `m(s,t)`).
pub fn braid_neighbors(system: &CoxeterSystem, word: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = word.len();
    for i in 0..n.saturating_sub(1) {
        let (s, t) = (word[i], word[i + 1]);
        if s == t {
            continue;
        }
        let m = match system.order(s, t) {
            Order::Finite(m) => m as usize,
            Order::Infinite => continue,
        };
        if i + m > n {
            continue;
        }
        let alternating = (0..m).all(|k| word[i + k] == if k % 2 == 0 { s } else { t });
        if alternating {
            let mut w = word.to_vec();
            for k in 0..m {
                w[i + k] = if k % 2 == 0 { t } else { s };
            }
            out.push(w);
        }
    }
    out
}

/// The braid class of `word` (all words reachable by braid moves).
pub fn braid_closure(system: &CoxeterSystem, word: &Word) -> BTreeSet<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.clone());
    queue.push_back(word.0.clone());
    while let Some(w) = queue.pop_front() {
        for n in braid_neighbors(system, &w) {
            let nw = Word(n);
            if !seen.contains(&nw) {
                seen.insert(nw.clone());
                queue.push_back(nw.0);
            }
        }
    }
    seen
}

/// Tits' algorithm: delete `ss` from some word in the braid class until no
/// class member has a repeated adjacent letter, then take the ShortLex least
/// member of the final class.
pub fn tits_normal_form(system: &CoxeterSystem, word: &Word) -> Result<Word, CoxeterError> {
    word.check(system.rank())?;
    let mut current = word.clone();
    'outer: loop {
        let class = braid_closure(system, &current);
        for w in &class {
            if let Some(i) = w.0.windows(2).position(|p| p[0] == p[1]) {
                let mut shorter = w.0.clone();
                shorter.drain(i..i + 2);
                current = Word(shorter);
                continue 'outer;
            }
        }
        return Ok(class.into_iter().next().expect("braid class contains the word itself"));
    }
}

/// Whether `word` is reduced, decided by Tits' criterion.
pub fn is_reduced_tits(system: &CoxeterSystem, word: &Word) -> bool {
    braid_closure(system, word).iter().all(|w| w.0.windows(2).all(|p| p[0] != p[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::named;

    #[test]
    fn a2_braid_class() {
        let w = named::a2();
        let c = braid_closure(&w, &Word(vec![0, 1, 0]));
        assert_eq!(c.len(), 2);
        assert!(c.contains(&Word(vec![1, 0, 1])));
    }

    #[test]
    fn tits_reduces_words() {
        let w = named::a2_tilde();
        assert_eq!(tits_normal_form(&w, &Word(vec![0, 1, 0, 0])).unwrap(), Word(vec![0, 1]));
        assert_eq!(tits_normal_form(&w, &Word(vec![1, 0, 1])).unwrap(), Word(vec![0, 1, 0]));
        assert_eq!(tits_normal_form(&w, &Word(vec![0, 1, 0, 1, 0, 1])).unwrap(), Word::empty());
        assert!(is_reduced_tits(&w, &Word(vec![0, 1, 2, 0])));
        assert!(!is_reduced_tits(&w, &Word(vec![0, 1, 0, 1])));
    }

    #[test]
    fn infinite_order_has_no_moves() {
        let w = named::infinite_dihedral();
        assert!(braid_neighbors(&w, &[0, 1, 0, 1]).is_empty());
    }
}
