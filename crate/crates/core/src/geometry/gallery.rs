//! Galleries along the straight segment `[x₀, w x₀]` and their Hausdorff
//! distance to it.
//!
//! The segment is walked chamber by chamber in the frame of the current
//! chamber: both endpoints are pulled back by the element reached so far, so
//! the current chamber is always `C̄` and each crossing is a simple wall.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::realization::EuclideanRealization;
use super::{GeometryError, Point};
use crate::element::{normal_form, Element};
use crate::word::Word;

/// Exit points closer than this to a second wall count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Basepoint perturbations tried before giving up.
pub const CROSSING_RETRIES: usize = 20;

/// Slack on the bound `d_H ≤ diam C̄`.
pub const GEODESIC_TOL: f64 = 1e-6;

/// Polyline through `x₀, s₁x₀, s₁s₂x₀, …`.
#[derive(Clone, Debug, Serialize)]
pub struct Gallery {
    pub word: Word,
    pub vertices: Vec<Vec<f64>>,
}

impl Gallery {
    pub fn new(real: &EuclideanRealization, word: &Word, basepoint: &Point) -> Self {
        let mut map = super::Affine::identity(real.dim());
        let mut vertices = vec![basepoint.iter().copied().collect()];
        for &s in word.letters() {
            map = map.compose(&real.reflection_map(s));
            vertices.push(map.apply(basepoint).iter().copied().collect());
        }
        Gallery { word: word.clone(), vertices }
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| Point::from_column_slice(v)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingResult {
    pub word: Word,
    /// The basepoint the segment actually starts from.
    pub basepoint: Vec<f64>,
    pub perturbations: usize,
    /// Codimension-two faces the segment was walked through.
    pub strata_crossed: usize,
}

enum Walk {
    Done { letters: Vec<usize>, strata: usize },
    Degenerate,
}

/// Distance past a codimension-two stratum at which the next chamber is read off.
const STRATUM_STEP: f64 = 1e-6;

fn walk(
    real: &EuclideanRealization,
    start: &Point,
    end: &Point,
    max_steps: usize,
    resolve: bool,
) -> Result<Walk, GeometryError> {
    let rank = real.rank();
    let mut a = start.clone();
    let mut b = end.clone();
    let mut t_cur = 0.0f64;
    let mut letters = Vec::new();
    let mut strata = 0usize;
    let length = (end - start).norm();
    loop {
        let dir = &b - &a;
        let mut exits: Vec<(f64, usize)> = Vec::new();
        for s in 0..rank {
            let slope = real.normal(s).dot(&dir);
            if slope < 0.0 {
                let t = -real.slack(s, &a) / slope;
                if t > t_cur && t < 1.0 {
                    exits.push((t, s));
                }
            }
        }
        let Some(&(t, s)) = exits.iter().min_by(|x, y| x.0.total_cmp(&y.0)) else {
            return Ok(Walk::Done { letters, strata });
        };
        if letters.len() >= max_steps {
            return Err(GeometryError::NonConvergence { iterations: max_steps });
        }
        let exit = &a + &dir * t;
        let crowded = (0..rank).any(|u| u != s && real.slack(u, &exit) <= DEGENERACY_TOL);
        let near_tie = exits.iter().any(|&(t2, u)| u != s && (t2 - t) * length <= DEGENERACY_TOL);
        if crowded || near_tie {
            if !resolve {
                return Ok(Walk::Degenerate);
            }
            // Every wall through the stratum is crossed at once: the chamber
            // just beyond it is u C̄ with u in the stratum's stabilizer.
            let t_next = t + STRATUM_STEP / length;
            let (u, _) = real.fold_to_chamber(&(&a + &dir * t_next))?;
            if u.is_identity() {
                return Ok(Walk::Degenerate);
            }
            for &l in u.letters() {
                a = real.reflect(l, &a);
                b = real.reflect(l, &b);
                letters.push(l);
            }
            strata += 1;
            t_cur = t_next;
            continue;
        }
        a = real.reflect(s, &a);
        b = real.reflect(s, &b);
        t_cur = t;
        letters.push(s);
    }
}

/// The word read off the simple walls crossed by `[x₀, w x₀]`, in order. A
/// segment passing near a codimension-two face is retried from a seeded
/// random basepoint within `min(10⁻³, clearance/10)` of `x₀`. Some segments
/// meet such a face for every basepoint (point reflections through a vertex);
/// when the retries run out the walk goes through the face from `x₀`, crossing
/// its walls together.
pub fn crossing_word(real: &EuclideanRealization, w: &Element, seed: u64) -> Result<CrossingResult, GeometryError> {
    if w.is_identity() {
        return Err(GeometryError::Precondition("crossing word of the identity".into()));
    }
    let x0 = real.basepoint();
    let radius = (real.basepoint_clearance() / 10.0).min(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_steps = 4 * w.length() + 16;
    for attempt in 0..=CROSSING_RETRIES + 1 {
        let resolve = attempt > CROSSING_RETRIES;
        let base = if attempt == 0 || resolve { x0.clone() } else { x0 + random_in_ball(real.dim(), radius, &mut rng) };
        let end = real.apply(w, &base);
        if let Walk::Done { letters, strata } = walk(real, &base, &end, max_steps, resolve)? {
            return Ok(CrossingResult {
                word: Word(letters),
                basepoint: base.iter().copied().collect(),
                perturbations: attempt.min(CROSSING_RETRIES),
                strata_crossed: strata,
            });
        }
    }
    Err(GeometryError::DegenerateCrossing { attempts: CROSSING_RETRIES })
}

fn random_in_ball(dim: usize, radius: f64, rng: &mut ChaCha8Rng) -> Point {
    loop {
        let v = Point::from_fn(dim, |_, _| rng.gen_range(-1.0..=1.0));
        let n = v.norm();
        if n <= 1.0 && n > 0.0 {
            return v * radius;
        }
    }
}

fn point_segment_distance(p: &Point, a: &Point, b: &Point) -> f64 {
    let d = b - a;
    let len2 = d.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&d) / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

fn point_polyline_distance(p: &Point, poly: &[Point]) -> f64 {
    if poly.len() == 1 {
        return (p - &poly[0]).norm();
    }
    poly.windows(2).map(|e| point_segment_distance(p, &e[0], &e[1])).fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct HausdorffValue {
    pub value: f64,
    /// The sampled direction may underestimate the true value by at most this.
    pub error_bound: f64,
}

/// Symmetric Hausdorff distance between `[a, b]` and the gallery polyline.
/// Polyline to segment is exact at the polyline vertices; segment to polyline
/// is sampled every `step`.
pub fn hausdorff(a: &Point, b: &Point, gallery: &Gallery, step: f64) -> HausdorffValue {
    assert!(step > 0.0, "sampling step must be positive");
    let poly = gallery.points();
    let to_segment = poly.iter().map(|v| point_segment_distance(v, a, b)).fold(0.0, f64::max);
    let n = ((b - a).norm() / step).ceil().max(1.0) as usize;
    let mut to_poly: f64 = 0.0;
    for i in 0..=n {
        let p = a + (b - a) * (i as f64 / n as f64);
        to_poly = to_poly.max(point_polyline_distance(&p, &poly));
    }
    HausdorffValue { value: to_segment.max(to_poly), error_bound: step }
}

#[derive(Clone, Debug, Serialize)]
pub struct HausdorffReport {
    pub w: Element,
    pub word: Word,
    pub d_h: f64,
    pub bound: f64,
    pub pass: bool,
    pub sampling_step: f64,
    pub reduces_to_w: bool,
    pub perturbations: usize,
    pub strata_crossed: usize,
}

/// Builds the crossing word of `w` and its gallery and checks
/// `d_H([x₀, w x₀], gallery) ≤ diam C̄`.
pub fn check_geodesic_theorem(
    real: &EuclideanRealization,
    w: &Element,
    seed: u64,
) -> Result<HausdorffReport, GeometryError> {
    check_geodesic_theorem_with_tol(real, w, seed, GEODESIC_TOL)
}

/// [`check_geodesic_theorem`] with slack `tol` on the bound.
pub fn check_geodesic_theorem_with_tol(
    real: &EuclideanRealization,
    w: &Element,
    seed: u64,
    tol: f64,
) -> Result<HausdorffReport, GeometryError> {
    let step = real.diam() / 1000.0;
    let bound = real.diam();
    if w.is_identity() {
        return Ok(HausdorffReport {
            w: w.clone(),
            word: Word::empty(),
            d_h: 0.0,
            bound,
            pass: true,
            sampling_step: step,
            reduces_to_w: true,
            perturbations: 0,
            strata_crossed: 0,
        });
    }
    let c = crossing_word(real, w, seed)?;
    let reduces_to_w = c.word.len() == w.length() && normal_form(real.system(), &c.word)? == *w;
    let base = Point::from_column_slice(&c.basepoint);
    let end = real.apply(w, &base);
    let gallery = Gallery::new(real, &c.word, &base);
    let d = hausdorff(&base, &end, &gallery, step);
    Ok(HausdorffReport {
        w: w.clone(),
        word: c.word,
        d_h: d.value,
        bound,
        pass: reduces_to_w && d.value <= bound + tol,
        sampling_step: step,
        reduces_to_w,
        perturbations: c.perturbations,
        strata_crossed: c.strata_crossed,
    })
}
