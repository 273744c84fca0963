//! Parabolic subgroups `W_T`: coset representatives, sphericity, essential
//! subsets and the diagram criteria for finite index and direct products.

use std::sync::Arc;

use serde::Serialize;

use crate::element::{normal_form, strip_left_descents, Element, Side};
use crate::enumerate::{ball, subgroup_size, SubgroupSize};
use crate::error::CoxeterError;
use crate::ring::{cyc_determinant, Arith, Cyc};
use crate::system::{CoxeterSystem, Order};
use crate::word::{GeneratorSubset, Word};

/// Default element cap for the breadth-first sphericity test.
pub const SPHERICITY_BFS_CAP: usize = 100_000;

/// Tolerance on leading principal minors when the cosine matrix is not exact.
pub const MINOR_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParabolicError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("sphericity of {subset} undecided: BFS hit the cap of {cap} and the smallest leading minor {minor} is within tolerance of zero")]
    Undecided { subset: GeneratorSubset, cap: usize, minor: f64 },
    #[error("sphericity tests disagree on {subset}: BFS says finite = {bfs_finite}, minors say {definite}")]
    Disagreement { subset: GeneratorSubset, bfs_finite: bool, definite: bool },
    #[error("quasi-density target set is empty")]
    EmptyTarget,
    #[error("generator {s} is not in a rank-{rank} system")]
    BadGenerator { s: usize, rank: usize },
}

/// `w = v · x` with `v ∈ W_T` and `x` the shortest element of `W_T w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetDecomposition {
    pub v: Element,
    pub x: Element,
    pub subset: GeneratorSubset,
}

/// Strips left descents in `T` (smallest index first) until none remain.
pub fn min_coset_rep(w: &Element, subset: GeneratorSubset) -> Result<CosetDecomposition, CoxeterError> {
    let system = w.system();
    subset.check(system.rank())?;
    let (stripped, rest) = strip_left_descents(system, w.letters(), subset)?;
    let v = normal_form(system, &Word(stripped))?;
    let x = Element::from_nf_unchecked(system, rest);
    Ok(CosetDecomposition { v, x, subset })
}

/// Minimal representative of the left coset `w W_T` (strips right descents).
pub fn min_left_coset_rep(w: &Element, subset: GeneratorSubset) -> Result<Element, CoxeterError> {
    min_coset_rep(&w.inverse()?, subset)?.x.inverse()
}

/// `w ∈ W_T`
pub fn is_member(w: &Element, subset: GeneratorSubset) -> Result<bool, CoxeterError> {
    Ok(min_coset_rep(w, subset)?.x.is_identity())
}

/// Both sphericity computations for one subset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphericityReport {
    pub subset: GeneratorSubset,
    /// `|W_T|` when the enumeration finished under the cap.
    pub order: Option<usize>,
    /// Leading principal minors of twice the cosine matrix restricted to `T`,
    /// as floats.
    pub minors: Vec<f64>,
    /// Whether the minors were evaluated exactly.
    pub exact_minors: bool,
    pub positive_definite: bool,
}

impl SphericityReport {
    pub fn agree(&self) -> bool {
        self.order.is_some() == self.positive_definite
    }
}

/// Runs the BFS and the positive-definiteness test without reconciling them.
pub fn sphericity_report(
    system: &Arc<CoxeterSystem>,
    subset: GeneratorSubset,
    cap: usize,
) -> Result<SphericityReport, CoxeterError> {
    subset.check(system.rank())?;
    let order = match subgroup_size(system, subset, cap)? {
        SubgroupSize::Finite { order, .. } => Some(order),
        SubgroupSize::ExceedsCap { .. } => None,
    };
    let (minors, exact_minors, positive_definite) = leading_minors(system, subset);
    Ok(SphericityReport { subset, order, minors, exact_minors, positive_definite })
}

/// Whether `W_T` is finite. The BFS enumeration and the positive-definiteness
/// test must agree, else an error describes the conflict.
pub fn is_spherical(system: &Arc<CoxeterSystem>, subset: GeneratorSubset) -> Result<bool, ParabolicError> {
    is_spherical_with_cap(system, subset, SPHERICITY_BFS_CAP)
}

pub fn is_spherical_with_cap(
    system: &Arc<CoxeterSystem>,
    subset: GeneratorSubset,
    cap: usize,
) -> Result<bool, ParabolicError> {
    let r = sphericity_report(system, subset, cap)?;
    if r.agree() {
        return Ok(r.positive_definite);
    }
    let smallest = r.minors.iter().copied().fold(f64::INFINITY, f64::min);
    if r.order.is_none() && !r.exact_minors && smallest.abs() <= MINOR_TOLERANCE {
        return Err(ParabolicError::Undecided { subset, cap, minor: smallest });
    }
    Err(ParabolicError::Disagreement { subset, bfs_finite: r.order.is_some(), definite: r.positive_definite })
}

/// Sphericity from the diagram alone (the minor test), without enumeration.
pub fn is_spherical_by_minors(system: &CoxeterSystem, subset: GeneratorSubset) -> bool {
    leading_minors(system, subset).2
}

// Leading principal minors of 2B restricted to T; positive definite iff all > 0.
fn leading_minors(system: &CoxeterSystem, subset: GeneratorSubset) -> (Vec<f64>, bool, bool) {
    let idx = subset.to_vec();
    let k = idx.len();
    if let Arith::Exact(lams) = &system.coeffs.arith {
        let rank = system.rank();
        let entry = |i: usize, j: usize| -> Cyc {
            if i == j {
                Cyc::from_int(2)
            } else {
                lams[idx[i] * rank + idx[j]].to_cyc().checked_neg().expect("small constant")
            }
        };
        if k <= 16 {
            let mut minors = Vec::with_capacity(k);
            let mut definite = true;
            for n in 1..=k {
                let m: Vec<Vec<Cyc>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
                match cyc_determinant(&m) {
                    Some(d) => {
                        minors.push(d.to_f64());
                        if d.signum() != std::cmp::Ordering::Greater {
                            definite = false;
                        }
                    }
                    None => return float_minors(system, &idx),
                }
            }
            return (minors, true, definite);
        }
    }
    float_minors(system, &idx)
}

fn float_minors(system: &CoxeterSystem, idx: &[usize]) -> (Vec<f64>, bool, bool) {
    let k = idx.len();
    let b = system.cosine_matrix();
    let mut minors = Vec::with_capacity(k);
    for n in 1..=k {
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| 2.0 * b[idx[i]][idx[j]]);
        minors.push(m.determinant());
    }
    let definite = minors.iter().all(|&d| d > MINOR_TOLERANCE);
    (minors, false, definite)
}

/// Connected components of the Coxeter diagram restricted to `T`
/// (edges where `m ≥ 3`), each listed by its smallest generator first.
pub fn components(system: &CoxeterSystem, subset: GeneratorSubset) -> Vec<GeneratorSubset> {
    let mut remaining = subset;
    let mut out = Vec::new();
    while let Some(start) = remaining.iter().next() {
        let mut comp = GeneratorSubset::singleton(start);
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in subset.iter() {
                if !comp.contains(t) && system.order(s, t) != Order::Finite(2) && s != t {
                    comp.insert(t);
                    stack.push(t);
                }
            }
        }
        remaining = remaining.difference(comp);
        out.push(comp);
    }
    out
}

/// `T̃`: the union of the non-spherical components of `T`.
pub fn essential_subset(system: &CoxeterSystem, subset: GeneratorSubset) -> GeneratorSubset {
    components(system, subset)
        .into_iter()
        .filter(|c| !is_spherical_by_minors(system, *c))
        .fold(GeneratorSubset::EMPTY, GeneratorSubset::union)
}

/// `W = W_{T̃} × W_{S∖T̃}`: every order between `T̃` and its complement is 2.
pub fn splits_as_product(system: &CoxeterSystem, subset: GeneratorSubset) -> bool {
    let ess = essential_subset(system, subset);
    let rest = ess.complement(system.rank());
    ess.iter().all(|s| rest.iter().all(|t| system.order(s, t) == Order::Finite(2)))
}

/// `[W : W_T] < ∞` iff `S̃ ⊆ T`.
pub fn has_finite_index(system: &CoxeterSystem, subset: GeneratorSubset) -> bool {
    essential_subset(system, system.all_generators()).is_subset(subset)
}

/// Number of minimal representatives of cosets `W_T w` among elements of
/// length at most `r`, for each `r ≤ radius`.
pub fn coset_rep_counts(
    system: &Arc<CoxeterSystem>,
    subset: GeneratorSubset,
    radius: usize,
) -> Result<Vec<usize>, CoxeterError> {
    let b = ball(system, radius)?;
    let mut counts = vec![0usize; radius + 1];
    for w in &b {
        if w.descents(Side::Left)?.intersection(subset).is_empty() {
            for c in counts.iter_mut().skip(w.length()) {
                *c += 1;
            }
        }
    }
    Ok(counts)
}

/// `W^{s₀} ∩ ball(radius)`: nontrivial `w` whose right descents lie in `{s₀}`.
pub fn w_singleton_set(system: &Arc<CoxeterSystem>, s0: usize, radius: usize) -> Result<Vec<Element>, ParabolicError> {
    if s0 >= system.rank() {
        return Err(ParabolicError::BadGenerator { s: s0, rank: system.rank() });
    }
    let allowed = GeneratorSubset::singleton(s0);
    let mut out = Vec::new();
    for w in ball(system, radius)? {
        if !w.is_identity() && w.descents(Side::Right)?.is_subset(allowed) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Word-metric covering radius of a target set inside a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiDensityProfile {
    pub radius: usize,
    pub worst_distance: usize,
    pub witness: Element,
}

/// `N = max_{w ∈ ball} min_{a ∈ target} ℓ(w⁻¹a)`.
pub fn quasi_density_profile(
    system: &Arc<CoxeterSystem>,
    target: &[Element],
    radius: usize,
) -> Result<QuasiDensityProfile, ParabolicError> {
    if target.is_empty() {
        return Err(ParabolicError::EmptyTarget);
    }
    let b = ball(system, radius)?;
    let mut worst: Option<(usize, Element)> = None;
    for w in &b {
        let winv = w.inverse()?;
        let mut best = usize::MAX;
        for a in target {
            best = best.min(winv.multiply(a)?.length());
            if best == 0 {
                break;
            }
        }
        if worst.as_ref().is_none_or(|(d, _)| best > *d) {
            worst = Some((best, w.clone()));
        }
    }
    let (worst_distance, witness) = worst.expect("ball contains the identity");
    Ok(QuasiDensityProfile { radius, worst_distance, witness })
}

/// Spherical subsets with no spherical strict superset, by increasing mask.
pub fn maximal_spherical_subsets(system: &CoxeterSystem) -> Vec<GeneratorSubset> {
    let rank = system.rank();
    let spherical: Vec<GeneratorSubset> =
        GeneratorSubset::all(rank).filter(|&t| is_spherical_by_minors(system, t)).collect();
    spherical.iter().copied().filter(|&t| !spherical.iter().any(|&u| u != t && t.is_subset(u))).collect()
}

/// Witness for the hypothesis on a maximal spherical subset `T` and `s₀ ∉ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cor17Witness {
    pub subset: GeneratorSubset,
    pub s0: usize,
    pub t0: usize,
}

/// First maximal spherical `T` (mask order) and `s₀ ∉ T` (index order) with
/// `o(s₀t) ≥ 3` for all `t ∈ T` and `o(s₀t₀) = ∞` for some `t₀ ∈ T`.
pub fn cor17_hypothesis(system: &CoxeterSystem) -> Option<Cor17Witness> {
    let rank = system.rank();
    for t in maximal_spherical_subsets(system) {
        for s0 in t.complement(rank).iter() {
            if !t.iter().all(|u| system.order(s0, u).at_least(3)) {
                continue;
            }
            if let Some(t0) = t.iter().find(|&u| system.order(s0, u).is_infinite()) {
                return Some(Cor17Witness { subset: t, s0, t0 });
            }
        }
    }
    None
}
