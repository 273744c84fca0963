//! ShortLex enumeration of balls in the Cayley graph.
//!
//! Layer `n+1` is produced from layer `n` in ShortLex order: for each `u` and
//! each generator `s` that is not a right descent of `u`, the word `nf(u)·s` is
//! the normal form of `us` the first time `us` is met. Duplicates inside a layer
//! are detected on the exact right key `f₀∘w`, or, for systems without exact
//! arithmetic, by recomputing the normal form of the candidate.

use rustc_hash::FxHashSet;
use std::sync::Arc;

use crate::element::{apply_left, key_of, nf_of_letters, Element};
use crate::error::CoxeterError;
use crate::ring::{Arith, Cyc, Scalar};
use crate::system::{CoxeterSystem, DEFAULT_BALL_CAP};
use crate::word::GeneratorSubset;

/// All elements of length at most `radius`, in (length, ShortLex) order.
pub fn ball(system: &Arc<CoxeterSystem>, radius: usize) -> Result<Vec<Element>, CoxeterError> {
    ball_with_cap(system, radius, DEFAULT_BALL_CAP)
}

pub fn ball_with_cap(system: &Arc<CoxeterSystem>, radius: usize, cap: usize) -> Result<Vec<Element>, CoxeterError> {
    subgroup_ball(system, system.all_generators(), radius, cap)
}

/// Elements of the parabolic subgroup `W_T` of length at most `radius`.
pub fn subgroup_ball(
    system: &Arc<CoxeterSystem>,
    subset: GeneratorSubset,
    radius: usize,
    cap: usize,
) -> Result<Vec<Element>, CoxeterError> {
    subset.check(system.rank())?;
    let mut out = Vec::new();
    let mut walker = Layers::new(system, subset);
    out.push(Element::identity(system));
    for _ in 0..radius {
        let layer = walker.next_layer()?;
        if layer.is_empty() {
            break;
        }
        if out.len() + layer.len() > cap {
            return Err(CoxeterError::ResourceCap { cap });
        }
        out.extend(layer.into_iter().map(|nf| Element::from_nf_unchecked(system, nf)));
    }
    Ok(out)
}

/// Number of elements of each length `0..=radius`.
pub fn growth_series(system: &Arc<CoxeterSystem>, radius: usize) -> Result<Vec<usize>, CoxeterError> {
    let mut walker = Layers::new(system, system.all_generators());
    let mut sizes = vec![1];
    let mut total = 1usize;
    for _ in 0..radius {
        let n = walker.next_layer()?.len();
        total += n;
        if total > DEFAULT_BALL_CAP {
            return Err(CoxeterError::ResourceCap { cap: DEFAULT_BALL_CAP });
        }
        sizes.push(n);
    }
    Ok(sizes)
}

/// Outcome of enumerating a parabolic subgroup without a length bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupSize {
    /// The subgroup is finite: its order and the length of its longest element.
    Finite { order: usize, longest: usize },
    /// More than `cap` elements exist.
    ExceedsCap { cap: usize },
}

/// Breadth-first enumeration of `W_T`, halting once more than `cap` elements are found.
pub fn subgroup_size(
    system: &Arc<CoxeterSystem>,
    subset: GeneratorSubset,
    cap: usize,
) -> Result<SubgroupSize, CoxeterError> {
    subset.check(system.rank())?;
    let mut walker = Layers::counting(system, subset);
    let mut order = 1usize;
    let mut longest = 0usize;
    loop {
        let n = walker.next_layer()?.len();
        if n == 0 {
            return Ok(SubgroupSize::Finite { order, longest });
        }
        order += n;
        longest += 1;
        if order > cap {
            return Ok(SubgroupSize::ExceedsCap { cap });
        }
    }
}

/// Layer-by-layer ShortLex walker.
pub struct Layers {
    system: Arc<CoxeterSystem>,
    subset: GeneratorSubset,
    state: LayerState,
    words: bool,
}

enum LayerState {
    Exact(Vec<(Vec<usize>, Vec<Cyc>)>),
    Float(Vec<Vec<usize>>),
}

impl Layers {
    pub fn new(system: &Arc<CoxeterSystem>, subset: GeneratorSubset) -> Self {
        let rank = system.rank();
        let state = match &system.coeffs.arith {
            Arith::Exact(_) => LayerState::Exact(vec![(Vec::new(), vec![Cyc::one(); rank])]),
            Arith::Float(_) => LayerState::Float(vec![Vec::new()]),
        };
        Layers { system: system.clone(), subset, state, words: true }
    }

    /// A walker that only counts: exact layers carry keys but no words, and
    /// [`Layers::next_layer`] returns empty words of the right number.
    pub fn counting(system: &Arc<CoxeterSystem>, subset: GeneratorSubset) -> Self {
        Layers { words: false, ..Layers::new(system, subset) }
    }

    /// Normal forms of the next layer, in ShortLex order.
    pub fn next_layer(&mut self) -> Result<Vec<Vec<usize>>, CoxeterError> {
        let rank = self.system.rank();
        match (&mut self.state, &self.system.coeffs.arith) {
            (LayerState::Exact(layer), Arith::Exact(lams)) => {
                let mut next = Vec::new();
                let mut seen: FxHashSet<Vec<Cyc>> = FxHashSet::default();
                for (nf, key) in layer.iter() {
                    for s in self.subset.iter() {
                        // key is f₀∘u; a negative entry at s means s is a right descent.
                        if key[s].is_negative()? {
                            continue;
                        }
                        let mut k = key.clone();
                        apply_left(lams, rank, &mut k, s)?;
                        if seen.insert(k.clone()) {
                            let mut w = if self.words { nf.clone() } else { Vec::new() };
                            if self.words {
                                w.push(s);
                            }
                            next.push((w, k));
                        }
                    }
                }
                let out = if self.words {
                    next.iter().map(|(w, _)| w.clone()).collect()
                } else {
                    vec![Vec::new(); next.len()]
                };
                *layer = next;
                Ok(out)
            }
            (LayerState::Float(layer), Arith::Float(lams)) => {
                let mut next = Vec::new();
                for nf in layer.iter() {
                    let right = key_of::<f64>(lams, rank, &nf.iter().rev().copied().collect::<Vec<_>>())?;
                    for s in self.subset.iter() {
                        if right[s].is_negative()? {
                            continue;
                        }
                        let mut w = nf.clone();
                        w.push(s);
                        if nf_of_letters(&self.system, &w)? == w {
                            next.push(w);
                        }
                    }
                }
                *layer = next.clone();
                Ok(next)
            }
            _ => unreachable!("layer state follows the system's arithmetic"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::named;

    #[test]
    fn small_balls() {
        let w = named::a2_tilde();
        assert_eq!(ball(&w, 0).unwrap().len(), 1);
        assert_eq!(ball(&w, 1).unwrap().len(), 4);
        let b = ball(&w, 3).unwrap();
        for pair in b.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn finite_groups_exhaust() {
        assert_eq!(
            subgroup_size(&named::a2(), GeneratorSubset::full(2), 100).unwrap(),
            SubgroupSize::Finite { order: 6, longest: 3 }
        );
        assert_eq!(
            subgroup_size(&named::dihedral(7), GeneratorSubset::full(2), 100).unwrap(),
            SubgroupSize::Finite { order: 14, longest: 7 }
        );
        assert_eq!(
            subgroup_size(&named::infinite_dihedral(), GeneratorSubset::full(2), 50).unwrap(),
            SubgroupSize::ExceedsCap { cap: 50 }
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(ball_with_cap(&named::a2_tilde(), 10, 20).unwrap_err(), CoxeterError::ResourceCap { cap: 20 });
    }

    #[test]
    fn float_and_exact_walkers_agree() {
        // I₂(5) is exact; I₂(7) is not. Both produce 2 elements per layer until the top.
        let g = growth_series(&named::dihedral(7), 8).unwrap();
        assert_eq!(g, vec![1, 2, 2, 2, 2, 2, 2, 1, 0]);
        let g = growth_series(&named::dihedral(5), 6).unwrap();
        assert_eq!(g, vec![1, 2, 2, 2, 2, 1, 0]);
    }
}
