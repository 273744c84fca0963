//! Coxeter matrices, validation and the on-disk matrix formats.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::CoxeterError;
use crate::ring::{Arith, CoeffTable};
use crate::word::GeneratorSubset;

/// Largest supported rank; subsets are stored as 64-bit masks.
pub const MAX_RANK: usize = 64;

/// Default element cap for ball enumeration.
pub const DEFAULT_BALL_CAP: usize = 200_000;

/// An entry `m(s,t)` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// File encoding: `0` is ∞.
    pub fn from_code(code: u32) -> Self {
        if code == 0 {
            Order::Infinite
        } else {
            Order::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Order::Finite(m) => m,
            Order::Infinite => 0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    /// `o(st) ≥ k`
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Order::Finite(m) => m >= k,
            Order::Infinite => true,
        }
    }

    /// `cos(π/m)`, with `cos(π/∞) = 1`.
    pub fn cos_pi_over(self) -> f64 {
        match self {
            Order::Finite(m) => (std::f64::consts::PI / m as f64).cos(),
            Order::Infinite => 1.0,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "∞"),
        }
    }
}

/// A validated Coxeter system `(W, S)` with `S = {0, …, rank−1}`.
///
/// Construction precomputes the coefficient table used by the word problem,
/// so systems are normally shared behind an [`Arc`].
#[derive(Clone)]
pub struct CoxeterSystem {
    rank: usize,
    orders: Vec<Order>,
    pub(crate) coeffs: CoeffTable,
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.orders == other.orders
    }
}

impl Eq for CoxeterSystem {}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem").field("rank", &self.rank).field("orders", &self.order_codes()).finish()
    }
}

impl CoxeterSystem {
    /// Validates a square order matrix.
    pub fn new(orders: Vec<Vec<Order>>) -> Result<Arc<Self>, CoxeterError> {
        let rank = orders.len();
        if rank == 0 {
            return Err(CoxeterError::EmptySystem);
        }
        if rank > MAX_RANK {
            return Err(CoxeterError::RankTooLarge { rank });
        }
        for (s, row) in orders.iter().enumerate() {
            if row.len() != rank {
                return Err(CoxeterError::NotSquare { row: s, len: row.len(), rank });
            }
        }
        for s in 0..rank {
            if orders[s][s] != Order::Finite(1) {
                return Err(CoxeterError::DiagonalNotOne { s, found: orders[s][s] });
            }
        }
        for s in 0..rank {
            for t in (s + 1)..rank {
                if orders[s][t] != orders[t][s] {
                    return Err(CoxeterError::NotSymmetric { s, t });
                }
                if !orders[s][t].at_least(2) {
                    return Err(CoxeterError::OffDiagonalBelowTwo { s, t, found: orders[s][t] });
                }
            }
        }
        let flat: Vec<Order> = orders.into_iter().flatten().collect();
        let coeffs = CoeffTable::new(rank, &flat);
        Ok(Arc::new(CoxeterSystem { rank, orders: flat, coeffs }))
    }

    /// Builds a system from integer codes (`0` = ∞).
    pub fn from_codes(codes: &[Vec<u32>]) -> Result<Arc<Self>, CoxeterError> {
        Self::new(codes.iter().map(|row| row.iter().map(|&c| Order::from_code(c)).collect()).collect())
    }

    /// Rank-`n` system with every off-diagonal order equal to `m`.
    pub fn uniform(n: usize, m: Order) -> Arc<Self> {
        let orders = (0..n).map(|s| (0..n).map(|t| if s == t { Order::Finite(1) } else { m }).collect()).collect();
        Self::new(orders).expect("uniform matrix with m >= 2 is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.orders[s * self.rank + t]
    }

    pub fn order_codes(&self) -> Vec<Vec<u32>> {
        (0..self.rank).map(|s| (0..self.rank).map(|t| self.order(s, t).code()).collect()).collect()
    }

    /// `S` as a subset.
    pub fn all_generators(&self) -> GeneratorSubset {
        GeneratorSubset::full(self.rank)
    }

    /// Whether words over this system are decided in exact arithmetic.
    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs.arith, Arith::Exact(_))
    }

    /// The cosine (Gram) matrix `B(α_s, α_t) = −cos(π/m(s,t))`.
    pub fn cosine_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.rank)
            .map(|s| (0..self.rank).map(|t| if s == t { 1.0 } else { -self.order(s, t).cos_pi_over() }).collect())
            .collect()
    }

    /// Parses either the text format (`rank N` then `N` rows) or the JSON
    /// document `{"rank": N, "m": [[…]]}`.
    pub fn parse(input: &str) -> Result<Arc<Self>, CoxeterError> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') {
            let doc: MatrixDocument = serde_json::from_str(trimmed).map_err(|e| CoxeterError::Parse(e.to_string()))?;
            if doc.m.len() != doc.rank {
                return Err(CoxeterError::Parse(format!("rank {} but {} matrix rows", doc.rank, doc.m.len())));
            }
            return Self::from_codes(&doc.m);
        }
        let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| CoxeterError::Parse("empty input".into()))?;
        let rank: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["rank", n] => n.parse().map_err(|_| CoxeterError::Parse(format!("bad rank `{n}`")))?,
            _ => return Err(CoxeterError::Parse(format!("expected `rank N`, found `{header}`"))),
        };
        let mut rows = Vec::with_capacity(rank);
        for (i, line) in lines.enumerate() {
            let row: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| CoxeterError::Parse(format!("bad integer in row {i}")))?;
            rows.push(row);
        }
        if rows.len() != rank {
            return Err(CoxeterError::Parse(format!("rank {rank} but {} matrix rows", rows.len())));
        }
        Self::from_codes(&rows)
    }

    /// Text format, the canonical serialization.
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        for row in self.order_codes() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixDocument { rank: self.rank, m: self.order_codes() })
            .expect("matrix document serializes")
    }

    /// Verifies that `other` is the same system.
    pub fn ensure_same(self: &Arc<Self>, other: &Arc<Self>) -> Result<(), CoxeterError> {
        if Arc::ptr_eq(self, other) || **self == **other {
            Ok(())
        } else {
            Err(CoxeterError::SystemMismatch)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDocument {
    rank: usize,
    m: Vec<Vec<u32>>,
}

/// Named systems used throughout the tests and examples.
pub mod named {
    use super::*;

    /// Finite dihedral group `I₂(m)`; `A₂` for `m = 3`.
    pub fn dihedral(m: u32) -> Arc<CoxeterSystem> {
        CoxeterSystem::from_codes(&[vec![1, m], vec![m, 1]]).unwrap()
    }

    pub fn a2() -> Arc<CoxeterSystem> {
        dihedral(3)
    }

    /// Infinite dihedral group `Ã₁`.
    pub fn infinite_dihedral() -> Arc<CoxeterSystem> {
        dihedral(0)
    }

    /// `Ã₂`: rank 3, all off-diagonal orders 3.
    pub fn a2_tilde() -> Arc<CoxeterSystem> {
        CoxeterSystem::uniform(3, Order::Finite(3))
    }

    /// `C̃₂`: `m(0,1) = 4`, `m(1,2) = 4`, `m(0,2) = 2`.
    pub fn c2_tilde() -> Arc<CoxeterSystem> {
        CoxeterSystem::from_codes(&[vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]]).unwrap()
    }

    /// `Ã₁ × Ã₁` on generators `a=0, b=1, c=2, d=3` with `m(a,b) = m(c,d) = ∞`.
    pub fn a1_tilde_squared() -> Arc<CoxeterSystem> {
        CoxeterSystem::from_codes(&[vec![1, 0, 2, 2], vec![0, 1, 2, 2], vec![2, 2, 1, 0], vec![2, 2, 0, 1]]).unwrap()
    }

    /// `G̃₂`: orders 6, 3, 2 along a chain.
    pub fn g2_tilde() -> Arc<CoxeterSystem> {
        CoxeterSystem::from_codes(&[vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]]).unwrap()
    }
}
