//! Directions at infinity of orbits: far points of `W_T x₀` and of `W_T C̄`,
//! and the limit direction of the powers of one element.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::realization::EuclideanRealization;
use super::{GeometryError, Point};
use crate::element::Element;
use crate::parabolic::min_coset_rep;
use crate::word::GeneratorSubset;

/// Directions closer than this (radians) are reported once.
pub const DIRECTION_CLUSTER_TOL: f64 = 1e-2;

const DEFAULT_PROBES: usize = 720;

#[derive(Clone, Debug, Serialize)]
pub struct LimitDirections {
    pub subset: GeneratorSubset,
    pub radius: f64,
    pub probes: usize,
    /// Far orbit directions, one representative per cluster.
    pub directions: Vec<Vec<f64>>,
    /// Number of orbit points found beyond the radius.
    pub far_points: usize,
    /// Largest angle from a far orbit direction to the nearest far chamber
    /// vertex direction, or the other way round.
    pub max_mismatch: f64,
    /// Largest angular gap between far orbit directions, in degrees (plane only).
    pub max_gap_degrees: Option<f64>,
    /// Largest distance from a point on a ray `x₀ + t d`, `t ≤ radius`, to the
    /// nearest vertex of the `W_T` chamber it projects to.
    pub ray_excursion: f64,
    pub consistent: bool,
}

fn angle(a: &Point, b: &Point) -> f64 {
    a.dot(b).clamp(-1.0, 1.0).acos()
}

fn probe_directions(dim: usize, probes: usize) -> Vec<Point> {
    match dim {
        1 => vec![Point::from_element(1, 1.0), Point::from_element(1, -1.0)],
        2 => (0..probes)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / probes as f64;
                Point::from_row_slice(&[th.cos(), th.sin()])
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut out = Vec::with_capacity(probes);
            while out.len() < probes {
                let v = Point::from_fn(dim, |_, _| rng.gen_range(-1.0..=1.0));
                let n = v.norm();
                if n > 1e-3 && n <= 1.0 {
                    out.push(v / n);
                }
            }
            out
        }
    }
}

/// Largest gap, in degrees, between consecutive angles of planar unit vectors.
pub fn max_angular_gap(dirs: &[Point]) -> Option<f64> {
    if dirs.is_empty() || dirs[0].len() != 2 {
        return None;
    }
    let mut th: Vec<f64> = dirs.iter().map(|d| d[1].atan2(d[0])).collect();
    th.sort_by(f64::total_cmp);
    let mut gap = th[0] + 2.0 * PI - th[th.len() - 1];
    for w in th.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    Some(gap.to_degrees())
}

pub fn limit_directions(
    real: &EuclideanRealization,
    subset: GeneratorSubset,
    radius: f64,
) -> Result<LimitDirections, GeometryError> {
    limit_directions_with_probes(real, subset, radius, DEFAULT_PROBES)
}

/// Probes points at distance `2·radius` in evenly spread directions. Each is
/// located in a chamber `u C̄`, and `u = v·x` with `v ∈ W_T` and `x` minimal
/// picks the orbit point `v x₀`; those of norm at least `radius` give the
/// orbit directions, and the far vertices of `v C̄` the chamber directions.
pub fn limit_directions_with_probes(
    real: &EuclideanRealization,
    subset: GeneratorSubset,
    radius: f64,
    probes: usize,
) -> Result<LimitDirections, GeometryError> {
    if radius <= 0.0 {
        return Err(GeometryError::Precondition("radius must be positive".into()));
    }
    let x0 = real.basepoint();
    let mut orbit_dirs: Vec<Point> = Vec::new();
    let mut vertex_dirs: Vec<Point> = Vec::new();
    let probe_dirs = probe_directions(real.dim(), probes);
    for d in &probe_dirs {
        let p = x0 + d * (2.0 * radius);
        let (u, _) = real.fold_to_chamber(&p)?;
        let v = min_coset_rep(&u, subset)?.v;
        let y = real.apply(&v, x0);
        if y.norm() >= radius {
            orbit_dirs.push(&y / y.norm());
            for z in real.chamber_vertices(&v) {
                if z.norm() >= radius {
                    vertex_dirs.push(&z / z.norm());
                }
            }
        }
    }

    let nearest = |p: &Point, set: &[Point]| set.iter().map(|q| angle(p, q)).fold(f64::INFINITY, f64::min);
    let mut max_mismatch: f64 = 0.0;
    if orbit_dirs.is_empty() != vertex_dirs.is_empty() {
        max_mismatch = PI;
    } else {
        for p in &orbit_dirs {
            max_mismatch = max_mismatch.max(nearest(p, &vertex_dirs));
        }
        for p in &vertex_dirs {
            max_mismatch = max_mismatch.max(nearest(p, &orbit_dirs));
        }
    }

    let mut reps: Vec<Point> = Vec::new();
    for d in &orbit_dirs {
        if !reps.iter().any(|r| angle(r, d) <= DIRECTION_CLUSTER_TOL) {
            reps.push(d.clone());
        }
    }

    let mut ray_excursion: f64 = 0.0;
    for d in &reps {
        for k in 1..=20 {
            let p = x0 + d * (radius * k as f64 / 20.0);
            let (u, _) = real.fold_to_chamber(&p)?;
            let v = min_coset_rep(&u, subset)?.v;
            let dist = real.chamber_vertices(&v).iter().map(|z| (z - &p).norm()).fold(f64::INFINITY, f64::min);
            ray_excursion = ray_excursion.max(dist);
        }
    }

    Ok(LimitDirections {
        subset,
        radius,
        probes: probe_dirs.len(),
        directions: reps.iter().map(|r| r.iter().copied().collect()).collect(),
        far_points: orbit_dirs.len(),
        max_mismatch,
        max_gap_degrees: max_angular_gap(&orbit_dirs),
        ray_excursion,
        consistent: max_mismatch <= DIRECTION_CLUSTER_TOL,
    })
}

/// Limit of the unit vectors along `w^k x₀ − x₀`. The linear part of `w` has
/// finite order `N`; `w^N` is a translation, and the limit exists exactly when
/// that translation is nonzero. Returns `None` when no such `N ≤ k_max`
/// exists or the translation vanishes.
pub fn power_direction(real: &EuclideanRealization, w: &Element, k_max: usize) -> Option<Point> {
    let m = real.affine_map(w);
    let dim = real.dim();
    let id = nalgebra::DMatrix::<f64>::identity(dim, dim);
    let x0 = real.basepoint();
    let mut power = m.clone();
    let mut k = 1;
    while k <= k_max {
        if (&power.linear - &id).norm() < 1e-9 {
            break;
        }
        power = power.compose(&m);
        k += 1;
    }
    if k > k_max {
        return None;
    }
    let tau = power.apply(x0) - x0;
    if tau.norm() < 1e-9 {
        return None;
    }
    // Successive directions of (w^N)^j x₀ − x₀ must agree.
    let mut y = x0.clone();
    let mut prev: Option<Point> = None;
    for _ in 0..(k_max / k).max(2) {
        y = power.apply(&y);
        let d = (&y - x0).normalize();
        if let Some(p) = &prev {
            if (&d - p).norm() <= 1e-6 {
                return Some(d);
            }
        }
        prev = Some(d);
    }
    None
}
