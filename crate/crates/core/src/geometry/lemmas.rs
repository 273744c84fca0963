//! Chamber and wall statements checked against the combinatorics: the side
//! of `wC` relative to a simple wall, images of half-spaces, intersections
//! `C̄ ∩ wC̄`, and convexity and half-space descriptions of `W_T C̄`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::polytope::{HalfSpace, Polytope, PolytopeSummary, VERTEX_DEDUP_TOL};
use super::realization::EuclideanRealization;
use super::{GeometryError, Point, SIDE_TOL};
use crate::element::Element;
use crate::enumerate::subgroup_ball;
use crate::parabolic::{is_member, is_spherical};
use crate::word::GeneratorSubset;

/// Points this close to a wall count as lying on it when deciding
/// membership in a union of chambers.
pub const BOUNDARY_TOL: f64 = 1e-8;

const ENUMERATION_CAP: usize = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct Lemma0Outcome {
    pub w: Element,
    pub s: usize,
    /// `ℓ(w) < ℓ(sw)`
    pub length_increases: bool,
    /// `wC ⊂ X_s^+`
    pub positive_side: bool,
    pub pass: bool,
}

/// `ℓ(w) < ℓ(sw)` iff `wC ⊂ X_s^+`, with `wC` represented by `w x₀` and by
/// points halfway from `w x₀` to each vertex of `wC̄`.
pub fn check_lemma0(real: &EuclideanRealization, w: &Element, s: usize) -> Result<Lemma0Outcome, GeometryError> {
    let x0 = real.basepoint();
    let mut samples = vec![x0.clone()];
    samples.extend(real.chamber().vertices.iter().map(|v| x0 + (v - x0) * 0.5));
    let mut positive = 0usize;
    for p in &samples {
        let slack = real.slack(s, &real.apply(w, p));
        if slack.abs() <= SIDE_TOL {
            return Err(GeometryError::DegenerateSample { s });
        }
        if slack > 0.0 {
            positive += 1;
        }
    }
    let one_side = positive == 0 || positive == samples.len();
    let positive_side = positive == samples.len();
    let length_increases = w.length() < w.generator_mul(s)?.length();
    Ok(Lemma0Outcome {
        w: w.clone(),
        s,
        length_increases,
        positive_side,
        pass: one_side && positive_side == length_increases,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Outcome {
    pub w: Element,
    pub s: usize,
    pub reflection: Element,
    pub involution: bool,
    pub same_hyperplane: bool,
    pub same_side: bool,
    pub pass: bool,
}

/// `w X_s^+ = X^+_{wsw⁻¹}` for `w ∈ W_T` and `s ∉ T`. The right side is read
/// off the affine map of `wsw⁻¹` alone: its wall bisects `x₀` and its image.
pub fn check_lemma1(
    real: &EuclideanRealization,
    w: &Element,
    s: usize,
    subset: GeneratorSubset,
) -> Result<Lemma1Outcome, GeometryError> {
    if subset.contains(s) {
        return Err(GeometryError::Precondition(format!("generator {s} lies in {subset}")));
    }
    if !is_member(w, subset)? {
        return Err(GeometryError::Precondition(format!("{w} is not in the parabolic subgroup on {subset}")));
    }
    let image = real.affine_map(w).map_halfspace(&real.chamber().halfspaces[s]);
    let r = w.conjugate_generator(s)?;
    let involution = r.multiply(&r)?.is_identity();

    let x0 = real.basepoint();
    let rx0 = real.apply(&r, x0);
    let d = x0 - &rx0;
    let normal = &d / d.norm();
    let offset = normal.dot(&((x0 + &rx0) * 0.5));

    let parallel = image.normal.dot(&normal);
    let same_hyperplane =
        (parallel.abs() - 1.0).abs() <= SIDE_TOL && (image.offset - parallel.signum() * offset).abs() <= SIDE_TOL;
    let same_side = parallel > 0.0;
    Ok(Lemma1Outcome {
        w: w.clone(),
        s,
        reflection: r,
        involution,
        same_hyperplane,
        same_side,
        pass: involution && same_hyperplane && same_side,
    })
}

/// `C̄ ∩ wC̄` together with the three descriptions it must agree with.
#[derive(Clone, Debug, Serialize)]
pub struct ChamberIntersection {
    pub w: Element,
    pub support: GeneratorSubset,
    pub intersection: PolytopeSummary,
    /// `⋂_{t ∈ supp w} (F_t ∩ C̄)`
    pub faces_agree: bool,
    /// `⋂_{t ∈ supp w} (tC̄ ∩ C̄)`
    pub pairs_agree: bool,
    /// `⋂ vC̄` over `v ∈ W_T` of length at most `ℓ(w) + 2`
    pub orbit_agree: bool,
    pub orbit_elements: usize,
    pub pass: bool,
}

fn clipped(start: &Polytope, extra: impl IntoIterator<Item = HalfSpace>) -> Polytope {
    let mut p = start.clone();
    for h in extra {
        p.clip(h);
    }
    p
}

/// Computes `C̄ ∩ wC̄` by half-space intersection and compares its vertex
/// set with the face, pairwise and orbit descriptions.
pub fn chamber_intersection(real: &EuclideanRealization, w: &Element) -> Result<ChamberIntersection, GeometryError> {
    let chamber = real.chamber();
    let support = w.support();
    let direct = clipped(chamber, real.chamber_halfspaces(w));
    let faces = clipped(chamber, support.iter().map(|t| chamber.halfspaces[t].flipped()));
    let mut pairs = chamber.clone();
    for t in support.iter() {
        let g = Element::generator(real.system(), t)?;
        for h in real.chamber_halfspaces(&g) {
            pairs.clip(h);
        }
    }
    let orbit_set = subgroup_ball(real.system(), support, w.length() + 2, ENUMERATION_CAP)?;
    let mut orbit = chamber.clone();
    for v in &orbit_set {
        for h in real.chamber_halfspaces(v) {
            orbit.clip(h);
        }
    }
    let faces_agree = direct.same_vertices(&faces, VERTEX_DEDUP_TOL);
    let pairs_agree = direct.same_vertices(&pairs, VERTEX_DEDUP_TOL);
    let orbit_agree = direct.same_vertices(&orbit, VERTEX_DEDUP_TOL);
    Ok(ChamberIntersection {
        w: w.clone(),
        support,
        intersection: PolytopeSummary::from(&direct),
        faces_agree,
        pairs_agree,
        orbit_agree,
        orbit_elements: orbit_set.len(),
        pass: faces_agree && pairs_agree && orbit_agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma32Outcome {
    pub w: Element,
    pub support: GeneratorSubset,
    pub nonempty: bool,
    pub spherical: bool,
    pub pass: bool,
}

/// `C̄ ∩ wC̄ ≠ ∅` iff `W_{supp w}` is finite.
pub fn check_lemma32(real: &EuclideanRealization, w: &Element) -> Result<Lemma32Outcome, GeometryError> {
    let spherical = is_spherical(real.system(), w.support())?;
    Ok(lemma32_with_sphericity(real, w, spherical))
}

/// The same check with the sphericity of `supp w` already known.
pub(crate) fn lemma32_with_sphericity(real: &EuclideanRealization, w: &Element, spherical: bool) -> Lemma32Outcome {
    let support = w.support();
    let direct = clipped(real.chamber(), real.chamber_halfspaces(w));
    let nonempty = !direct.is_empty();
    Lemma32Outcome { w: w.clone(), support, nonempty, spherical, pass: nonempty == spherical }
}

/// Whether `p ∈ W_T C̄`. Points on chamber boundaries belong to every chamber
/// through them, so all chambers `u v C̄` with `v` in the stabilizer of the
/// face containing the folded point are tried.
pub fn in_parabolic_region(
    real: &EuclideanRealization,
    p: &Point,
    subset: GeneratorSubset,
) -> Result<bool, GeometryError> {
    let (u, q) = real.fold_to_chamber(p)?;
    if is_member(&u, subset)? {
        return Ok(true);
    }
    let tight = GeneratorSubset::from_indices((0..real.rank()).filter(|&s| real.slack(s, &q).abs() <= BOUNDARY_TOL));
    if tight.is_empty() {
        return Ok(false);
    }
    for v in subgroup_ball(real.system(), tight, usize::MAX, ENUMERATION_CAP)? {
        if is_member(&u.multiply(&v)?, subset)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Uniform-ish random point of `w C̄`: exponential weights on its vertices.
pub(crate) fn random_point_in(real: &EuclideanRealization, w: &Element, rng: &mut ChaCha8Rng) -> Point {
    let verts = &real.chamber().vertices;
    let weights: Vec<f64> = verts.iter().map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = weights.iter().sum();
    let local = verts.iter().zip(&weights).fold(Point::zeros(real.dim()), |acc, (v, &c)| acc + v * (c / total));
    real.apply(w, &local)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub subset: GeneratorSubset,
    pub trials: usize,
    pub chambers: usize,
    pub failures: usize,
    /// `(p, q)` of the first failing midpoint.
    pub first_failure: Option<(Vec<f64>, Vec<f64>)>,
    pub pass: bool,
}

/// Midpoints of random pairs of points from chambers `vC̄`, `v ∈ W_T` of
/// length at most `radius`, must lie in `W_T C̄`.
pub fn check_convexity(
    real: &EuclideanRealization,
    subset: GeneratorSubset,
    trials: usize,
    radius: usize,
    seed: u64,
) -> Result<ConvexityReport, GeometryError> {
    let chambers = subgroup_ball(real.system(), subset, radius, ENUMERATION_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let a = &chambers[rng.gen_range(0..chambers.len())];
        let b = &chambers[rng.gen_range(0..chambers.len())];
        let p = random_point_in(real, a, &mut rng);
        let q = random_point_in(real, b, &mut rng);
        let mid = (&p + &q) * 0.5;
        if !in_parabolic_region(real, &mid, subset)? {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some((p.iter().copied().collect(), q.iter().copied().collect()));
            }
        }
    }
    Ok(ConvexityReport { subset, trials, chambers: chambers.len(), failures, first_failure, pass: failures == 0 })
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfspaceReport {
    pub subset: GeneratorSubset,
    pub radius: usize,
    pub box_radius: f64,
    pub samples: usize,
    /// Distinct walls meeting the box.
    pub walls: usize,
    /// No wall meeting the box first appears at the maximal length.
    pub truncation_stable: bool,
    pub disagreements: usize,
    pub first_disagreement: Option<Vec<f64>>,
    pub pass: bool,
}

/// Compares `p ∈ W_T C̄` with `p ∈ ⋂ X̄^+_{wsw⁻¹}` over `w ∈ W_T` of length at
/// most `radius` and `s ∉ T`, for `p = x₀` and random points of the box of
/// half-width `box_radius` about `x₀`.
pub fn check_halfspace_rep(
    real: &EuclideanRealization,
    subset: GeneratorSubset,
    radius: usize,
    samples: usize,
    seed: u64,
    box_radius: f64,
) -> Result<HalfspaceReport, GeometryError> {
    let x0 = real.basepoint();
    let outside = subset.complement(real.rank());
    let mut walls: Vec<(HalfSpace, usize)> = Vec::new();
    for w in subgroup_ball(real.system(), subset, radius, ENUMERATION_CAP)? {
        for s in outside.iter() {
            let wall = real.wall(&w, s)?;
            let reach = box_radius * wall.normal.iter().map(|c| c.abs()).sum::<f64>();
            if wall.slack(x0).abs() > reach {
                continue;
            }
            if !walls.iter().any(|(h, _)| wall.same_as(h, SIDE_TOL)) {
                walls.push((wall.positive_side(), w.length()));
            }
        }
    }
    let truncation_stable = radius == 0 || walls.iter().all(|&(_, len)| len < radius);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = 0;
    let mut first_disagreement = None;
    for i in 0..samples {
        let p = if i == 0 {
            x0.clone()
        } else {
            Point::from_fn(real.dim(), |k, _| x0[k] + rng.gen_range(-box_radius..=box_radius))
        };
        let lhs = in_parabolic_region(real, &p, subset)?;
        let rhs = walls.iter().all(|(h, _)| h.contains(&p, BOUNDARY_TOL));
        if lhs != rhs {
            disagreements += 1;
            if first_disagreement.is_none() {
                first_disagreement = Some(p.iter().copied().collect());
            }
        }
    }
    Ok(HalfspaceReport {
        subset,
        radius,
        box_radius,
        samples,
        walls: walls.len(),
        truncation_stable,
        disagreements,
        first_disagreement,
        pass: disagreements == 0 && truncation_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_realization;
    use crate::system::named;

    fn el(real: &EuclideanRealization, w: &[usize]) -> Element {
        Element::from_letters(real.system(), w).unwrap()
    }

    fn set(v: &[usize]) -> GeneratorSubset {
        GeneratorSubset::from_indices(v.iter().copied())
    }

    #[test]
    fn lemma0_identity_and_generator() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        let id = Element::identity(r.system());
        let o = check_lemma0(&r, &id, 0).unwrap();
        assert!(o.pass && o.positive_side && o.length_increases);
        let o = check_lemma0(&r, &el(&r, &[0]), 0).unwrap();
        assert!(o.pass && !o.positive_side && !o.length_increases);
    }

    #[test]
    fn lemma1_commuting_factor() {
        let r = build_realization(&named::a1_tilde_squared()).unwrap();
        let o = check_lemma1(&r, &el(&r, &[0]), 2, set(&[0, 1])).unwrap();
        assert!(o.pass);
        assert_eq!(o.reflection, el(&r, &[2]));
        let o = check_lemma1(&r, &Element::identity(r.system()), 3, set(&[0, 1])).unwrap();
        assert!(o.pass);
    }

    #[test]
    fn lemma1_preconditions() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        assert!(matches!(check_lemma1(&r, &el(&r, &[2]), 0, set(&[0, 1])), Err(GeometryError::Precondition(_))));
        assert!(matches!(check_lemma1(&r, &el(&r, &[0]), 0, set(&[0, 1])), Err(GeometryError::Precondition(_))));
    }

    #[test]
    fn intersections_in_a2_tilde() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        let c = chamber_intersection(&r, &Element::identity(r.system())).unwrap();
        assert!(c.pass);
        assert_eq!(c.intersection.vertices.len(), 3);
        let c = chamber_intersection(&r, &el(&r, &[1])).unwrap();
        assert!(c.pass);
        assert_eq!(c.intersection.vertices.len(), 2);
        let c = chamber_intersection(&r, &el(&r, &[0, 1, 0])).unwrap();
        assert!(c.pass);
        assert_eq!(c.intersection.vertices.len(), 1);
        let c = chamber_intersection(&r, &el(&r, &[0, 1, 2])).unwrap();
        assert!(c.pass);
        assert!(c.intersection.empty);
    }

    #[test]
    fn lemma32_cases() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        let o = check_lemma32(&r, &Element::identity(r.system())).unwrap();
        assert!(o.pass && o.nonempty && o.spherical);
        let o = check_lemma32(&r, &el(&r, &[0, 2])).unwrap();
        assert!(o.pass && o.nonempty);
        let o = check_lemma32(&r, &el(&r, &[0, 1, 2])).unwrap();
        assert!(o.pass && !o.nonempty && !o.spherical);
    }

    #[test]
    fn region_membership_on_boundary() {
        let r = build_realization(&named::a1_tilde_squared()).unwrap();
        // The strip 0 ≤ y ≤ 1 is the region of {a, b}; y = 1 is its boundary.
        let t = set(&[0, 1]);
        assert!(in_parabolic_region(&r, &Point::from_row_slice(&[7.3, 1.0]), t).unwrap());
        assert!(in_parabolic_region(&r, &Point::from_row_slice(&[-3.3, 0.5]), t).unwrap());
        assert!(!in_parabolic_region(&r, &Point::from_row_slice(&[0.5, 1.5]), t).unwrap());
    }

    #[test]
    fn convexity_trivial_cases() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        assert!(check_convexity(&r, GeneratorSubset::EMPTY, 200, 3, 0).unwrap().pass);
        assert!(check_convexity(&r, r.system().all_generators(), 200, 3, 0).unwrap().pass);
        assert!(check_convexity(&r, set(&[0, 1]), 500, 3, 1).unwrap().pass);
    }

    #[test]
    fn halfspace_trivial_cases() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        let full = check_halfspace_rep(&r, r.system().all_generators(), 3, 200, 0, 5.0).unwrap();
        assert!(full.pass);
        assert_eq!(full.walls, 0);
        let hex = check_halfspace_rep(&r, set(&[0, 1]), 4, 500, 0, 5.0).unwrap();
        assert!(hex.pass, "{hex:?}");
        assert_eq!(hex.walls, 6);
    }
}
