//! Affine-type systems as reflection groups of Euclidean space.
//!
//! Each diagram component with `k` generators is affine when its cosine matrix
//! is positive semi-definite of corank one. The first `k−1` unit normals are
//! read off a Cholesky factor of their Gram block and the last is fixed by the
//! positive null vector `z`, so that `Σ z_s n_s = 0`. With offsets `b = 0`
//! except `b = −1` on the last generator, the chamber is a compact simplex.
//! Components occupy orthogonal coordinate blocks and the chamber is the
//! product of their simplices.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::polytope::{HalfSpace, Polytope};
use super::{GeometryError, Point, SIDE_TOL};
use crate::element::Element;
use crate::parabolic::components;
use crate::system::CoxeterSystem;
use crate::word::GeneratorSubset;

/// Eigenvalues within this of zero count toward the corank.
const EIGEN_TOL: f64 = 1e-9;

/// Default iteration cap for [`EuclideanRealization::fold_to_chamber`].
pub const FOLD_ITERATION_CAP: usize = 1_000_000;

/// An isometry `x ↦ A x + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub linear: DMatrix<f64>,
    pub translation: DVector<f64>,
}

impl Affine {
    pub fn identity(dim: usize) -> Self {
        Affine { linear: DMatrix::identity(dim, dim), translation: DVector::zeros(dim) }
    }

    pub fn apply(&self, p: &Point) -> Point {
        &self.linear * p + &self.translation
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Affine) -> Affine {
        Affine {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    pub fn inverse(&self) -> Affine {
        let lt = self.linear.transpose();
        let translation = -(&lt * &self.translation);
        Affine { linear: lt, translation }
    }

    /// Image of `{⟨n,x⟩ ≥ b}`.
    pub fn map_halfspace(&self, h: &HalfSpace) -> HalfSpace {
        let normal = &self.linear * &h.normal;
        let offset = h.offset + normal.dot(&self.translation);
        HalfSpace { normal, offset }
    }
}

/// A reflecting hyperplane `{⟨normal, x⟩ = offset}` with the chamber `C` on the
/// side where `⟨normal, x⟩ > offset`.
#[derive(Clone, Debug)]
pub struct Wall {
    pub reflection: Element,
    pub normal: DVector<f64>,
    pub offset: f64,
}

impl Wall {
    pub fn positive_side(&self) -> HalfSpace {
        HalfSpace::new(self.normal.clone(), self.offset)
    }

    pub fn slack(&self, p: &Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Same hyperplane and same positive side, up to `tol`.
    pub fn same_as(&self, other: &HalfSpace, tol: f64) -> bool {
        (&self.normal - &other.normal).norm() <= tol && (self.offset - other.offset).abs() <= tol
    }
}

#[derive(Clone, Debug)]
pub struct EuclideanRealization {
    system: Arc<CoxeterSystem>,
    dim: usize,
    normals: Vec<DVector<f64>>,
    offsets: Vec<f64>,
    chamber: Polytope,
    basepoint: Point,
    diam: f64,
    components: Vec<GeneratorSubset>,
}

/// Realizes an affine-type system; each component must be positive
/// semi-definite of corank one.
pub fn build_realization(system: &Arc<CoxeterSystem>) -> Result<EuclideanRealization, GeometryError> {
    let rank = system.rank();
    let cos = system.cosine_matrix();
    let comps = components(system, system.all_generators());

    let dim = rank - comps.len();
    let mut normals = vec![DVector::zeros(dim); rank];
    let mut offsets = vec![0.0; rank];
    let mut block = 0usize;
    let mut simplices: Vec<Vec<Point>> = Vec::new();

    for comp in &comps {
        let idx = comp.to_vec();
        let k = idx.len();
        let b = DMatrix::from_fn(k, k, |i, j| cos[idx[i]][idx[j]]);
        let eig = SymmetricEigen::new(b.clone());
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let corank = eig.eigenvalues.iter().filter(|v| v.abs() <= EIGEN_TOL).count();
        if min < -EIGEN_TOL {
            return Err(GeometryError::NotAffineType {
                component: *comp,
                reason: format!("indefinite, smallest eigenvalue {min:.3e}"),
            });
        }
        if corank != 1 {
            return Err(GeometryError::NotAffineType {
                component: *comp,
                reason: format!("corank {corank}, expected 1"),
            });
        }
        let zi = eig.eigenvalues.iter().position(|v| v.abs() <= EIGEN_TOL).expect("corank one");
        let mut z: DVector<f64> = eig.eigenvectors.column(zi).into_owned();
        if z.sum() < 0.0 {
            z = -z;
        }
        if z.iter().any(|&v| v <= EIGEN_TOL) {
            return Err(GeometryError::NotAffineType {
                component: *comp,
                reason: "null vector is not positive".into(),
            });
        }

        let d = k - 1;
        let gram = b.view((0, 0), (d, d)).into_owned();
        let chol = nalgebra::Cholesky::new(gram).ok_or_else(|| GeometryError::NotAffineType {
            component: *comp,
            reason: "proper sub-block is not positive definite".into(),
        })?;
        let l = chol.l();
        let mut local: Vec<DVector<f64>> = (0..d).map(|i| l.row(i).transpose()).collect();
        let mut last = DVector::zeros(d);
        for (i, n) in local.iter().enumerate() {
            last -= n * (z[i] / z[d]);
        }
        local.push(last);

        for (i, &s) in idx.iter().enumerate() {
            let mut n = DVector::zeros(dim);
            n.rows_mut(block, d).copy_from(&local[i]);
            normals[s] = n;
        }
        offsets[idx[d]] = -1.0;

        // Vertex opposite facet j: tight on every other facet of the simplex.
        let mut verts = Vec::with_capacity(k);
        for j in 0..k {
            let rows: Vec<usize> = (0..k).filter(|&i| i != j).collect();
            let a = DMatrix::from_fn(d, d, |r, c| local[rows[r]][c]);
            let rhs = DVector::from_fn(d, |r, _| if rows[r] == d { -1.0 } else { 0.0 });
            let v = a.lu().solve(&rhs).ok_or_else(|| GeometryError::NotAffineType {
                component: *comp,
                reason: "degenerate simplex".into(),
            })?;
            verts.push(v);
        }
        simplices.push(verts);
        block += d;
    }

    // Product of simplices, components in order.
    let mut vertices: Vec<Point> = vec![DVector::zeros(dim)];
    let mut offset = 0usize;
    for verts in &simplices {
        let d = verts[0].len();
        let mut next = Vec::with_capacity(vertices.len() * verts.len());
        for p in &vertices {
            for v in verts {
                let mut q = p.clone();
                q.rows_mut(offset, d).copy_from(v);
                next.push(q);
            }
        }
        vertices = next;
        offset += d;
    }

    let halfspaces = (0..rank).map(|s| HalfSpace::new(normals[s].clone(), offsets[s])).collect();
    let chamber = Polytope { dim, halfspaces, vertices };
    let basepoint = chamber.centroid().unwrap_or_else(|| DVector::zeros(dim));
    let diam = chamber.diameter();
    Ok(EuclideanRealization {
        system: system.clone(),
        dim,
        normals,
        offsets,
        chamber,
        basepoint,
        diam,
        components: comps,
    })
}

impl EuclideanRealization {
    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.normals.len()
    }

    pub fn normal(&self, s: usize) -> &DVector<f64> {
        &self.normals[s]
    }

    pub fn offset(&self, s: usize) -> f64 {
        self.offsets[s]
    }

    pub fn chamber(&self) -> &Polytope {
        &self.chamber
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    pub fn diam(&self) -> f64 {
        self.diam
    }

    pub fn components(&self) -> &[GeneratorSubset] {
        &self.components
    }

    /// `⟨n_s, p⟩ − b_s`
    pub fn slack(&self, s: usize, p: &Point) -> f64 {
        self.normals[s].dot(p) - self.offsets[s]
    }

    /// Smallest slack of `p` over all chamber walls.
    pub fn min_slack(&self, p: &Point) -> f64 {
        (0..self.rank()).map(|s| self.slack(s, p)).fold(f64::INFINITY, f64::min)
    }

    pub fn in_chamber(&self, p: &Point, tol: f64) -> bool {
        self.min_slack(p) >= -tol
    }

    /// Reflection in the wall of generator `s`.
    pub fn reflect(&self, s: usize, p: &Point) -> Point {
        p - &self.normals[s] * (2.0 * self.slack(s, p))
    }

    pub fn reflection_map(&self, s: usize) -> Affine {
        let n = &self.normals[s];
        let linear = DMatrix::identity(self.dim, self.dim) - n * n.transpose() * 2.0;
        let translation = n * (2.0 * self.offsets[s]);
        Affine { linear, translation }
    }

    /// The action of `w` on a point.
    pub fn apply(&self, w: &Element, p: &Point) -> Point {
        self.apply_letters(w.letters(), p)
    }

    /// `s₁ ⋯ s_k · p` for the given letters.
    pub fn apply_letters(&self, letters: &[usize], p: &Point) -> Point {
        letters.iter().rev().fold(p.clone(), |q, &s| self.reflect(s, &q))
    }

    pub fn affine_map(&self, w: &Element) -> Affine {
        self.affine_map_letters(w.letters())
    }

    pub fn affine_map_letters(&self, letters: &[usize]) -> Affine {
        letters.iter().fold(Affine::identity(self.dim), |acc, &s| acc.compose(&self.reflection_map(s)))
    }

    /// The wall `w F_s` of the reflection `w s w⁻¹`, oriented with `C` on the
    /// positive side.
    pub fn wall(&self, w: &Element, s: usize) -> Result<Wall, GeometryError> {
        let reflection = w.conjugate_generator(s)?;
        let h = self.affine_map(w).map_halfspace(&self.chamber.halfspaces[s]);
        let h = if h.slack(&self.basepoint) < 0.0 { h.flipped() } else { h };
        Ok(Wall { reflection, normal: h.normal, offset: h.offset })
    }

    /// Chamber halfspaces of `w C̄`.
    pub fn chamber_halfspaces(&self, w: &Element) -> Vec<HalfSpace> {
        let m = self.affine_map(w);
        self.chamber.halfspaces.iter().map(|h| m.map_halfspace(h)).collect()
    }

    /// Vertices of `w C̄`.
    pub fn chamber_vertices(&self, w: &Element) -> Vec<Point> {
        let m = self.affine_map(w);
        self.chamber.vertices.iter().map(|v| m.apply(v)).collect()
    }

    /// Locates `p`: returns `(w, q)` with `q ∈ C̄` and `w q = p`. Walls are
    /// crossed in index order whenever `p` violates one by more than the side
    /// tolerance.
    pub fn fold_to_chamber(&self, p: &Point) -> Result<(Element, Point), GeometryError> {
        self.fold_with_cap(p, FOLD_ITERATION_CAP)
    }

    pub fn fold_with_cap(&self, p: &Point, cap: usize) -> Result<(Element, Point), GeometryError> {
        let mut q = p.clone();
        let mut letters = Vec::new();
        loop {
            match (0..self.rank()).find(|&s| self.slack(s, &q) < -SIDE_TOL) {
                None => break,
                Some(s) => {
                    if letters.len() >= cap {
                        return Err(GeometryError::NonConvergence { iterations: cap });
                    }
                    q = self.reflect(s, &q);
                    letters.push(s);
                }
            }
        }
        let w = Element::from_letters(&self.system, &letters)?;
        Ok((w, q))
    }

    /// Distance from the basepoint to the nearest chamber wall.
    pub fn basepoint_clearance(&self) -> f64 {
        self.min_slack(&self.basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::named;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    fn gram_ok(r: &EuclideanRealization) -> bool {
        let cos = r.system().cosine_matrix();
        (0..r.rank()).all(|s| (0..r.rank()).all(|t| close(r.normal(s).dot(r.normal(t)), cos[s][t])))
    }

    #[test]
    fn a2_tilde_is_a_triangle() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.chamber().vertices.len(), 3);
        assert!(gram_ok(&r));
        assert!(r.basepoint_clearance() > 0.0);
    }

    #[test]
    fn infinite_dihedral_is_unit_interval() {
        let r = build_realization(&named::infinite_dihedral()).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(close(r.diam(), 1.0));
        assert!(close(r.basepoint()[0], 0.5));
        assert!(gram_ok(&r));
    }

    #[test]
    fn product_chamber_is_a_square() {
        let r = build_realization(&named::a1_tilde_squared()).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.chamber().vertices.len(), 4);
        assert!(close(r.diam(), 2f64.sqrt()));
        assert!(gram_ok(&r));
    }

    #[test]
    fn c2_and_g2_tilde_realize() {
        for sys in [named::c2_tilde(), named::g2_tilde()] {
            let r = build_realization(&sys).unwrap();
            assert_eq!(r.dim(), 2);
            assert!(gram_ok(&r));
            assert_eq!(r.chamber().vertices.len(), 3);
        }
    }

    #[test]
    fn finite_and_indefinite_are_rejected() {
        assert!(matches!(build_realization(&named::a2()), Err(GeometryError::NotAffineType { .. })));
        let chain = CoxeterSystem::from_codes(&[vec![1, 7, 2], vec![7, 1, 3], vec![2, 3, 1]]).unwrap();
        assert!(matches!(build_realization(&chain), Err(GeometryError::NotAffineType { .. })));
        let hyp = CoxeterSystem::from_codes(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(build_realization(&hyp), Err(GeometryError::NotAffineType { .. })));
    }

    #[test]
    fn generators_fix_their_walls() {
        let r = build_realization(&named::a2_tilde()).unwrap();
        for s in 0..3 {
            for v in &r.chamber().vertices {
                if r.slack(s, v).abs() < 1e-12 {
                    assert!((r.reflect(s, v) - v).norm() < 1e-12);
                }
            }
            let p = r.basepoint();
            assert!((r.reflect(s, &r.reflect(s, p)) - p).norm() < 1e-12);
        }
    }

    #[test]
    fn affine_map_matches_pointwise_action() {
        let sys = named::a2_tilde();
        let r = build_realization(&sys).unwrap();
        let w = Element::from_letters(&sys, &[0, 1, 2, 0]).unwrap();
        let p = DVector::from_row_slice(&[0.3, -1.7]);
        let m = r.affine_map(&w);
        assert!((m.apply(&p) - r.apply(&w, &p)).norm() < 1e-12);
        assert!((m.inverse().apply(&m.apply(&p)) - &p).norm() < 1e-12);
    }

    #[test]
    fn fold_basics() {
        let sys = named::a2_tilde();
        let r = build_realization(&sys).unwrap();
        let (w, q) = r.fold_to_chamber(r.basepoint()).unwrap();
        assert!(w.is_identity());
        assert!((q - r.basepoint()).norm() < 1e-12);
        let s = Element::generator(&sys, 2).unwrap();
        let (w, q) = r.fold_to_chamber(&r.apply(&s, r.basepoint())).unwrap();
        assert_eq!(w, s);
        assert!((q - r.basepoint()).norm() < 1e-12);
        let far = DVector::from_row_slice(&[40.0, 0.0]);
        assert!(matches!(r.fold_with_cap(&far, 3), Err(GeometryError::NonConvergence { iterations: 3 })));
    }

    #[test]
    fn walls_contain_chamber_on_positive_side() {
        let sys = named::a2_tilde();
        let r = build_realization(&sys).unwrap();
        let w = Element::from_letters(&sys, &[1, 0]).unwrap();
        let wall = r.wall(&w, 2).unwrap();
        assert!(wall.slack(r.basepoint()) > 0.0);
        assert!((wall.normal.norm() - 1.0).abs() < 1e-12);
    }
}
