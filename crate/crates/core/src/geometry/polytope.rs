//! Bounded convex polytopes in half-space and vertex form.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// Vertices closer than this are identified.
pub const VERTEX_DEDUP_TOL: f64 = 1e-7;

/// Slack allowed when testing a point against a half-space.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// `{x : ⟨normal, x⟩ ≥ offset}`
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace {
    pub normal: DVector<f64>,
    pub offset: f64,
}

impl HalfSpace {
    pub fn new(normal: DVector<f64>, offset: f64) -> Self {
        HalfSpace { normal, offset }
    }

    /// Signed slack `⟨n, x⟩ − b`.
    pub fn slack(&self, x: &DVector<f64>) -> f64 {
        self.normal.dot(x) - self.offset
    }

    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        self.slack(x) >= -tol
    }

    pub fn flipped(&self) -> Self {
        HalfSpace { normal: -&self.normal, offset: -self.offset }
    }
}

/// A bounded polytope; empty when it has no vertices.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
    pub vertices: Vec<DVector<f64>>,
}

impl Polytope {
    /// Intersection of half-spaces known to bound a compact region.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<HalfSpace>) -> Self {
        let vertices = enumerate_vertices(dim, &halfspaces);
        Polytope { dim, halfspaces, vertices }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Intersects with one more half-space. Half-spaces satisfied by every
    /// current vertex are redundant for a bounded polytope and are skipped.
    pub fn clip(&mut self, h: HalfSpace) {
        if self.is_empty() || self.vertices.iter().all(|v| h.contains(v, FEASIBILITY_TOL)) {
            return;
        }
        self.halfspaces.push(h);
        self.vertices = enumerate_vertices(self.dim, &self.halfspaces);
    }

    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x, tol))
    }

    pub fn centroid(&self) -> Option<DVector<f64>> {
        if self.vertices.is_empty() {
            return None;
        }
        let sum = self.vertices.iter().fold(DVector::zeros(self.dim), |acc, v| acc + v);
        Some(sum / self.vertices.len() as f64)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Equal vertex sets up to `tol`.
    pub fn same_vertices(&self, other: &Polytope, tol: f64) -> bool {
        let covered =
            |a: &[DVector<f64>], b: &[DVector<f64>]| a.iter().all(|p| b.iter().any(|q| (p - q).norm() <= tol));
        covered(&self.vertices, &other.vertices) && covered(&other.vertices, &self.vertices)
    }

    pub fn vertex_rows(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| v.iter().copied().collect()).collect()
    }
}

/// Serializable summary.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PolytopeSummary {
    pub empty: bool,
    pub vertices: Vec<Vec<f64>>,
}

impl From<&Polytope> for PolytopeSummary {
    fn from(p: &Polytope) -> Self {
        PolytopeSummary { empty: p.is_empty(), vertices: p.vertex_rows() }
    }
}

/// Brute-force vertex enumeration: every choice of `dim` half-spaces with
/// independent normals is solved, kept if feasible, and deduplicated.
pub fn enumerate_vertices(dim: usize, halfspaces: &[HalfSpace]) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    if dim == 0 {
        return out;
    }
    let m = halfspaces.len();
    let mut idx: Vec<usize> = (0..dim).collect();
    if m < dim {
        return out;
    }
    loop {
        let a = DMatrix::from_fn(dim, dim, |i, j| halfspaces[idx[i]].normal[j]);
        let b = DVector::from_fn(dim, |i, _| halfspaces[idx[i]].offset);
        let lu = a.lu();
        if lu.determinant().abs() > 1e-12 {
            if let Some(x) = lu.solve(&b) {
                if halfspaces.iter().all(|h| h.contains(&x, FEASIBILITY_TOL))
                    && !out.iter().any(|v| (v - &x).norm() <= VERTEX_DEDUP_TOL)
                {
                    out.push(x);
                }
            }
        }
        let mut i = dim;
        while i > 0 && idx[i - 1] == i - 1 + m - dim {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..dim {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
