//! Exhaustive sweeps of the geometric checks over balls, run in parallel with
//! results collected in ball order.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::gallery::{check_geodesic_theorem_with_tol, GEODESIC_TOL};
use std::collections::{BTreeSet, HashMap};

use super::lemmas::{
    chamber_intersection, check_convexity, check_halfspace_rep, check_lemma0, check_lemma1, lemma32_with_sphericity,
};
use super::realization::EuclideanRealization;
use super::GeometryError;
use crate::element::Element;
use crate::enumerate::ball;
use crate::parabolic::is_spherical;
use crate::word::GeneratorSubset;

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub check: String,
    pub checked: usize,
    pub failures: usize,
    /// The first few failing outcomes.
    pub witnesses: Vec<Value>,
    /// Check-specific aggregates.
    pub summary: Value,
    pub pass: bool,
}

impl SweepReport {
    fn from_outcomes(check: &str, outcomes: Vec<(bool, Value)>, summary: Value) -> Self {
        let checked = outcomes.len();
        let failed: Vec<Value> = outcomes.into_iter().filter(|(ok, _)| !ok).map(|(_, v)| v).collect();
        let failures = failed.len();
        SweepReport {
            check: check.to_string(),
            checked,
            failures,
            witnesses: failed.into_iter().take(MAX_WITNESSES).collect(),
            summary,
            pass: checked > 0 && failures == 0,
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).unwrap_or(Value::Null)
}

fn error_value(context: Value, e: &GeometryError) -> Value {
    json!({ "input": context, "error": e.to_string() })
}

fn par_map<T, F>(items: &[T], f: F) -> Vec<(bool, Value)>
where
    T: Sync,
    F: Fn(&T) -> Vec<(bool, Value)> + Sync + Send,
{
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

/// Side of `wC` against every simple wall, `w` in the ball.
pub fn sweep_lemma0(real: &EuclideanRealization, radius: usize) -> Result<SweepReport, GeometryError> {
    let elems = ball(real.system(), radius)?;
    let outcomes = par_map(&elems, |w| {
        (0..real.rank())
            .map(|s| match check_lemma0(real, w, s) {
                Ok(o) => (o.pass, to_value(&o)),
                Err(e) => (false, error_value(json!({ "w": w, "s": s }), &e)),
            })
            .collect()
    });
    Ok(SweepReport::from_outcomes("lemma0", outcomes, json!({ "radius": radius, "elements": elems.len() })))
}

/// Half-space images for every `w` in the ball and `s` outside its support,
/// with `T` the support of `w`.
pub fn sweep_lemma1(real: &EuclideanRealization, radius: usize) -> Result<SweepReport, GeometryError> {
    let elems = ball(real.system(), radius)?;
    let outcomes = par_map(&elems, |w| {
        let t = w.support();
        t.complement(real.rank())
            .iter()
            .map(|s| match check_lemma1(real, w, s, t) {
                Ok(o) => (o.pass, to_value(&o)),
                Err(e) => (false, error_value(json!({ "w": w, "s": s }), &e)),
            })
            .collect()
    });
    Ok(SweepReport::from_outcomes("lemma1", outcomes, json!({ "radius": radius, "elements": elems.len() })))
}

fn per_element<F>(check: &str, real: &EuclideanRealization, radius: usize, f: F) -> Result<SweepReport, GeometryError>
where
    F: Fn(&Element) -> Result<(bool, Value), GeometryError> + Sync + Send,
{
    let elems = ball(real.system(), radius)?;
    let outcomes = par_map(&elems, |w| vec![f(w).unwrap_or_else(|e| (false, error_value(to_value(w), &e)))]);
    Ok(SweepReport::from_outcomes(check, outcomes, json!({ "radius": radius, "elements": elems.len() })))
}

/// `C̄ ∩ wC̄` against its three descriptions.
pub fn sweep_lemma31(real: &EuclideanRealization, radius: usize) -> Result<SweepReport, GeometryError> {
    per_element("lemma31", real, radius, |w| {
        let o = chamber_intersection(real, w)?;
        Ok((o.pass, to_value(&o)))
    })
}

/// Nonempty intersection against sphericity of the support.
/// Sphericity is decided once per support.
pub fn sweep_lemma32(real: &EuclideanRealization, radius: usize) -> Result<SweepReport, GeometryError> {
    let supports: BTreeSet<u64> = ball(real.system(), radius)?.iter().map(|w| w.support().mask()).collect();
    let mut spherical = HashMap::new();
    for m in supports {
        spherical.insert(m, is_spherical(real.system(), GeneratorSubset::from_mask(m))?);
    }
    per_element("lemma32", real, radius, |w| {
        let o = lemma32_with_sphericity(real, w, spherical[&w.support().mask()]);
        Ok((o.pass, to_value(&o)))
    })
}

/// Gallery bound for every `w` in the ball. Element `i` of the ball uses
/// seed `seed + i` for any basepoint perturbation.
pub fn sweep_geodesic(real: &EuclideanRealization, radius: usize, seed: u64) -> Result<SweepReport, GeometryError> {
    sweep_geodesic_with_tol(real, radius, seed, GEODESIC_TOL)
}

/// [`sweep_geodesic`] with slack `tol` on the bound.
pub fn sweep_geodesic_with_tol(
    real: &EuclideanRealization,
    radius: usize,
    seed: u64,
    tol: f64,
) -> Result<SweepReport, GeometryError> {
    let elems = ball(real.system(), radius)?;
    let reports: Vec<_> = elems
        .par_iter()
        .enumerate()
        .map(|(i, w)| check_geodesic_theorem_with_tol(real, w, seed.wrapping_add(i as u64), tol))
        .collect();
    let mut max_dh: f64 = 0.0;
    let mut perturbed = 0usize;
    let mut outcomes = Vec::with_capacity(reports.len());
    for (w, r) in elems.iter().zip(reports) {
        match r {
            Ok(r) => {
                max_dh = max_dh.max(r.d_h);
                if r.perturbations > 0 {
                    perturbed += 1;
                }
                outcomes.push((r.pass, to_value(&r)));
            }
            Err(e) => outcomes.push((false, error_value(to_value(w), &e))),
        }
    }
    let summary = json!({
        "radius": radius,
        "elements": elems.len(),
        "max_d_h": max_dh,
        "diam": real.diam(),
        "perturbed": perturbed,
        "tol": tol,
    });
    Ok(SweepReport::from_outcomes("geodesic", outcomes, summary))
}

/// Midpoint convexity for each subset; subset `i` uses seed `seed + i`.
pub fn sweep_convexity(
    real: &EuclideanRealization,
    subsets: &[GeneratorSubset],
    trials: usize,
    radius: usize,
    seed: u64,
) -> Result<SweepReport, GeometryError> {
    let outcomes: Vec<(bool, Value)> = subsets
        .par_iter()
        .enumerate()
        .map(|(i, &t)| match check_convexity(real, t, trials, radius, seed.wrapping_add(i as u64)) {
            Ok(r) => (r.pass, to_value(&r)),
            Err(e) => (false, error_value(to_value(&t), &e)),
        })
        .collect();
    let summary = json!({ "subsets": subsets.len(), "trials_per_subset": trials, "radius": radius });
    Ok(SweepReport::from_outcomes("convexity", outcomes, summary))
}

/// Half-space description for each subset; subset `i` uses seed `seed + i`.
pub fn sweep_halfspace(
    real: &EuclideanRealization,
    subsets: &[GeneratorSubset],
    radius: usize,
    samples: usize,
    seed: u64,
    box_radius: f64,
) -> Result<SweepReport, GeometryError> {
    let outcomes: Vec<(bool, Value)> = subsets
        .par_iter()
        .enumerate()
        .map(|(i, &t)| match check_halfspace_rep(real, t, radius, samples, seed.wrapping_add(i as u64), box_radius) {
            Ok(r) => (r.pass, to_value(&r)),
            Err(e) => (false, error_value(to_value(&t), &e)),
        })
        .collect();
    let summary =
        json!({ "subsets": subsets.len(), "samples_per_subset": samples, "radius": radius, "box_radius": box_radius });
    Ok(SweepReport::from_outcomes("halfspace", outcomes, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_realization;
    use crate::system::named;

    #[test]
    fn small_sweeps_pass() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        for rep in [sweep_lemma0(&r, 2).unwrap(), sweep_lemma1(&r, 2).unwrap(), sweep_lemma32(&r, 2).unwrap()] {
            assert!(rep.pass, "{rep:?}");
            assert!(rep.checked > 0);
        }
        let g = sweep_geodesic(&r, 3, 0).unwrap();
        assert!(g.pass);
        assert_eq!(g.checked, 19);
    }
}
