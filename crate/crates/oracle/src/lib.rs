//! Exact matrix oracle for Coxeter groups whose orders lie in {2, 3, 4, 6, ∞}.
//!
//! Elements are mapped into the geometric representation
//! `σ(s)v = v − 2B(α_s, v)α_s`, `B(α_s, α_t) = −cos(π/m(s,t))`. Every matrix entry
//! lies in `Z[√2, √3]` and is stored as an integer 4-tuple `a + b√2 + c√3 + d√6`,
//! so equality of group elements is decided without floating point.
//!
//! This crate deliberately shares no code with `coxwalls`: it is the independent
//! side of the word-problem cross-checks.

use std::collections::{HashMap, HashSet};
use std::ops::{Add, Mul, Neg};

/// `a + b√2 + c√3 + d√6`
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Zq([i128; 4]);

impl Zq {
    pub const ZERO: Zq = Zq([0, 0, 0, 0]);
    pub const ONE: Zq = Zq([1, 0, 0, 0]);

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Zq([a, b, c, d])
    }

    pub fn to_f64(self) -> f64 {
        let [a, b, c, d] = self.0;
        a as f64 + b as f64 * 2f64.sqrt() + c as f64 * 3f64.sqrt() + d as f64 * 6f64.sqrt()
    }
}

impl Add for Zq {
    type Output = Zq;
    fn add(self, o: Zq) -> Zq {
        let mut r = [0; 4];
        for i in 0..4 {
            r[i] = self.0[i] + o.0[i];
        }
        Zq(r)
    }
}

impl Neg for Zq {
    type Output = Zq;
    fn neg(self) -> Zq {
        Zq(self.0.map(|x| -x))
    }
}

impl Mul for Zq {
    type Output = Zq;
    fn mul(self, o: Zq) -> Zq {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Zq([
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * (c * h + d * g),
            a * g + c * e + 2 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        ])
    }
}

/// `−2B(α_s, α_t) = 2cos(π/m)`; `m = 0` encodes ∞.
pub fn two_cos(m: u32) -> Option<Zq> {
    match m {
        0 => Some(Zq::new(2, 0, 0, 0)),
        2 => Some(Zq::ZERO),
        3 => Some(Zq::ONE),
        4 => Some(Zq::new(0, 1, 0, 0)),
        6 => Some(Zq::new(0, 0, 1, 0)),
        _ => None,
    }
}

/// Square matrix with entries in `Z[√2, √3]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    entries: Vec<Zq>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Zq::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Zq::ONE;
        }
        Mat { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> Zq {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut entries = vec![Zq::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Zq::ZERO {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = entries[i * n + j] + a * o.entries[k * n + j];
                }
            }
        }
        Mat { n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }
}

/// The geometric representation of a Coxeter system given by an order matrix
/// (0 meaning ∞).
pub struct GeometricRep {
    rank: usize,
    gens: Vec<Mat>,
}

impl GeometricRep {
    /// Returns `None` if some order is outside {2, 3, 4, 6, ∞}.
    pub fn new(orders: &[Vec<u32>]) -> Option<Self> {
        let rank = orders.len();
        let mut gens = Vec::with_capacity(rank);
        for s in 0..rank {
            // column t of σ(s): α_t + 2cos(π/m(s,t)) α_s, and −α_s for t = s.
            let mut m = Mat::identity(rank);
            for t in 0..rank {
                let coef = if s == t { -(Zq::ONE + Zq::ONE) } else { two_cos(orders[s][t])? };
                m.entries[s * rank + t] = m.entries[s * rank + t] + coef;
            }
            gens.push(m);
        }
        Some(GeometricRep { rank, gens })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator(&self, s: usize) -> &Mat {
        &self.gens[s]
    }

    /// Matrix of the product `w[0] w[1] ⋯ w[k−1]`.
    pub fn matrix_of(&self, word: &[usize]) -> Mat {
        word.iter().fold(Mat::identity(self.rank), |acc, &s| acc.mul(&self.gens[s]))
    }

    /// Length of every element of the radius-`radius` ball, keyed by matrix,
    /// computed by breadth-first search on matrices.
    pub fn lengths(&self, radius: usize) -> HashMap<Mat, usize> {
        let mut seen: HashMap<Mat, usize> = HashMap::new();
        let id = Mat::identity(self.rank);
        seen.insert(id.clone(), 0);
        let mut frontier = vec![id];
        for len in 1..=radius {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &self.gens {
                    let p = m.mul(g);
                    if !seen.contains_key(&p) {
                        seen.insert(p.clone(), len);
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Number of elements of each length `0..=radius`.
    pub fn sphere_sizes(&self, radius: usize) -> Vec<usize> {
        let mut sizes = vec![0; radius + 1];
        for len in self.lengths(radius).values() {
            sizes[*len] += 1;
        }
        sizes
    }

    /// Enumerates the subgroup generated by `subset`, stopping once `cap`
    /// elements have been found. Returns the count, or `None` at the cap.
    pub fn subgroup_order(&self, subset: &[usize], cap: usize) -> Option<usize> {
        let mut seen: HashSet<Mat> = HashSet::new();
        let id = Mat::identity(self.rank);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                for &s in subset {
                    let p = m.mul(&self.gens[s]);
                    if seen.insert(p.clone()) {
                        if seen.len() > cap {
                            return None;
                        }
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Some(seen.len())
    }
}

/// Brute-force order of the element given by `word`, up to `cap`.
pub fn element_order(rep: &GeometricRep, word: &[usize], cap: usize) -> Option<usize> {
    let g = rep.matrix_of(word);
    let mut p = g.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(&g);
    }
    None
}
