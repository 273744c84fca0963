//! Coefficient arithmetic for the word problem.
//!
//! Orders in {2, 3, 4, 5, 6, ∞} give `2cos(π/m) ∈ {0, 1, √2, φ, √3, 2}`, all in the
//! ring `Z[√2, √3, φ]`. [`Cyc`] stores an element of that ring exactly as eight
//! integers over the basis `{1, √2, √3, √6} ⊗ {1, φ}`. Systems with any other
//! finite order use `f64`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::CoxeterError;
use crate::system::Order;

const SQRT2: f64 = std::f64::consts::SQRT_2;
const PHI: f64 = 1.618_033_988_749_895;

fn sqrt3() -> f64 {
    3f64.sqrt()
}

fn sqrt6() -> f64 {
    6f64.sqrt()
}

/// `2cos(π/m)` for the orders handled exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoCos {
    Zero,
    One,
    Sqrt2,
    Phi,
    Sqrt3,
    Two,
}

impl TwoCos {
    pub fn of(order: Order) -> Option<Self> {
        match order {
            Order::Finite(2) => Some(TwoCos::Zero),
            Order::Finite(3) => Some(TwoCos::One),
            Order::Finite(4) => Some(TwoCos::Sqrt2),
            Order::Finite(5) => Some(TwoCos::Phi),
            Order::Finite(6) => Some(TwoCos::Sqrt3),
            Order::Infinite => Some(TwoCos::Two),
            Order::Finite(_) => None,
        }
    }

    pub fn to_cyc(self) -> Cyc {
        match self {
            TwoCos::Zero => Cyc::ZERO,
            TwoCos::One => Cyc::from_int(1),
            TwoCos::Sqrt2 => Cyc([0, 1, 0, 0, 0, 0, 0, 0]),
            TwoCos::Phi => Cyc([0, 0, 0, 0, 1, 0, 0, 0]),
            TwoCos::Sqrt3 => Cyc([0, 0, 1, 0, 0, 0, 0, 0]),
            TwoCos::Two => Cyc::from_int(2),
        }
    }
}

/// Element `X + φY` of `Z[√2, √3, φ]` with `X, Y ∈ Z[√2, √3]`.
///
/// Layout: `[x₁, x√2, x√3, x√6, y₁, y√2, y√3, y√6]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cyc(pub [i128; 8]);

type Q4 = [i128; 4];

fn q4_add(a: &Q4, b: &Q4) -> Option<Q4> {
    Some([a[0].checked_add(b[0])?, a[1].checked_add(b[1])?, a[2].checked_add(b[2])?, a[3].checked_add(b[3])?])
}

fn q4_mul(x: &Q4, y: &Q4) -> Option<Q4> {
    let m = |p: i128, q: i128| p.checked_mul(q);
    let [a, b, c, d] = *x;
    let [e, f, g, h] = *y;
    let r0 = m(a, e)?.checked_add(m(2, m(b, f)?)?)?.checked_add(m(3, m(c, g)?)?)?.checked_add(m(6, m(d, h)?)?)?;
    let r1 = m(a, f)?.checked_add(m(b, e)?)?.checked_add(m(3, m(c, h)?.checked_add(m(d, g)?)?)?)?;
    let r2 = m(a, g)?.checked_add(m(c, e)?)?.checked_add(m(2, m(b, h)?.checked_add(m(d, f)?)?)?)?;
    let r3 = m(a, h)?.checked_add(m(d, e)?)?.checked_add(m(b, g)?)?.checked_add(m(c, f)?)?;
    Some([r0, r1, r2, r3])
}

fn q4_f64(x: &Q4) -> (f64, f64) {
    let s3 = sqrt3();
    let s6 = sqrt6();
    let v = x[0] as f64 + x[1] as f64 * SQRT2 + x[2] as f64 * s3 + x[3] as f64 * s6;
    let mag = (x[0] as f64).abs() + (x[1] as f64).abs() * SQRT2 + (x[2] as f64).abs() * s3 + (x[3] as f64).abs() * s6;
    (v, mag)
}

impl Cyc {
    pub const ZERO: Cyc = Cyc([0; 8]);

    pub fn from_int(n: i128) -> Self {
        Cyc([n, 0, 0, 0, 0, 0, 0, 0])
    }

    fn parts(&self) -> (Q4, Q4) {
        let a = &self.0;
        ([a[0], a[1], a[2], a[3]], [a[4], a[5], a[6], a[7]])
    }

    fn from_parts(x: Q4, y: Q4) -> Self {
        Cyc([x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, o: &Cyc) -> Option<Cyc> {
        let mut r = [0i128; 8];
        for (i, slot) in r.iter_mut().enumerate() {
            *slot = self.0[i].checked_add(o.0[i])?;
        }
        Some(Cyc(r))
    }

    pub fn checked_neg(&self) -> Option<Cyc> {
        let mut r = [0i128; 8];
        for (i, slot) in r.iter_mut().enumerate() {
            *slot = self.0[i].checked_neg()?;
        }
        Some(Cyc(r))
    }

    pub fn checked_sub(&self, o: &Cyc) -> Option<Cyc> {
        self.checked_add(&o.checked_neg()?)
    }

    pub fn checked_mul(&self, o: &Cyc) -> Option<Cyc> {
        // (X + φY)(X' + φY') = (XX' + YY') + φ(XY' + YX' + YY'), using φ² = φ + 1.
        let (x, y) = self.parts();
        let (xp, yp) = o.parts();
        let yy = q4_mul(&y, &yp)?;
        let re = q4_add(&q4_mul(&x, &xp)?, &yy)?;
        let ph = q4_add(&q4_add(&q4_mul(&x, &yp)?, &q4_mul(&y, &xp)?)?, &yy)?;
        Some(Cyc::from_parts(re, ph))
    }

    /// Multiplies by `2cos(π/m)` without a general product.
    pub fn checked_mul_two_cos(&self, lam: TwoCos) -> Option<Cyc> {
        let (x, y) = self.parts();
        let sqrt2 = |q: Q4| -> Option<Q4> { Some([q[1].checked_mul(2)?, q[0], q[3].checked_mul(2)?, q[2]]) };
        let sqrt3 = |q: Q4| -> Option<Q4> { Some([q[2].checked_mul(3)?, q[3].checked_mul(3)?, q[0], q[1]]) };
        match lam {
            TwoCos::Zero => Some(Cyc::ZERO),
            TwoCos::One => Some(*self),
            TwoCos::Two => self.checked_add(self),
            TwoCos::Sqrt2 => Some(Cyc::from_parts(sqrt2(x)?, sqrt2(y)?)),
            TwoCos::Sqrt3 => Some(Cyc::from_parts(sqrt3(x)?, sqrt3(y)?)),
            // (X + φY)φ = Y + φ(X + Y)
            TwoCos::Phi => Some(Cyc::from_parts(y, q4_add(&x, &y)?)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (x, y) = self.parts();
        q4_f64(&x).0 + PHI * q4_f64(&y).0
    }

    /// Exact sign. A floating-point evaluation decides unless it is within its
    /// own error bound of zero, in which case the sign is computed exactly in
    /// big-integer arithmetic.
    pub fn signum(&self) -> Ordering {
        let (x, y) = self.parts();
        let (xv, xm) = q4_f64(&x);
        let (yv, ym) = q4_f64(&y);
        let v = xv + PHI * yv;
        let err = (xm + PHI * ym) * 1e-14 + 1e-300;
        if v > err {
            Ordering::Greater
        } else if v < -err {
            Ordering::Less
        } else {
            exact_sign(&x, &y)
        }
    }
}

// Exact sign of X + φY: 2(X + φY) = (2X + Y) + Y√5.
fn exact_sign(x: &Q4, y: &Q4) -> Ordering {
    let big = |q: &Q4| -> [BigInt; 4] { [q[0].into(), q[1].into(), q[2].into(), q[3].into()] };
    let x = big(x);
    let y = big(y);
    let p: [BigInt; 4] = std::array::from_fn(|i| BigInt::from(2) * &x[i] + &y[i]);
    let sp = big_q4_sign(&p);
    let sq = big_q4_sign(&y);
    combine_sign(sp, sq, || {
        // p² − 5q²
        let pp = big_q4_mul(&p, &p);
        let qq = big_q4_mul(&y, &y);
        let d: [BigInt; 4] = std::array::from_fn(|i| &pp[i] - BigInt::from(5) * &qq[i]);
        big_q4_sign(&d)
    })
}

// sign(P + Q√k) given sign(P), sign(Q) and a thunk for sign(P² − kQ²).
fn combine_sign(sp: Ordering, sq: Ordering, norm: impl FnOnce() -> Ordering) -> Ordering {
    match (sp, sq) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        (a, _) => match norm() {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => a,
            Ordering::Less => a.reverse(),
        },
    }
}

fn big_sign(v: &BigInt) -> Ordering {
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn big_z2_sign(a: &BigInt, b: &BigInt) -> Ordering {
    combine_sign(big_sign(a), big_sign(b), || big_sign(&(a * a - BigInt::from(2) * b * b)))
}

fn big_q4_sign(q: &[BigInt; 4]) -> Ordering {
    // (a + b√2) + (c + d√2)√3
    let sp = big_z2_sign(&q[0], &q[1]);
    let sq = big_z2_sign(&q[2], &q[3]);
    combine_sign(sp, sq, || {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        let re = &q[0] * &q[0] + &two * &q[1] * &q[1] - &three * (&q[2] * &q[2] + &two * &q[3] * &q[3]);
        let ir = &two * &q[0] * &q[1] - &three * &two * &q[2] * &q[3];
        big_z2_sign(&re, &ir)
    })
}

fn big_q4_mul(x: &[BigInt; 4], y: &[BigInt; 4]) -> [BigInt; 4] {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let six = BigInt::from(6);
    [
        a * e + &two * b * f + &three * c * g + &six * d * h,
        a * f + b * e + &three * (c * h + d * g),
        a * g + c * e + &two * (b * h + d * f),
        a * h + d * e + b * g + c * f,
    ]
}

/// Scalars that can carry the contragredient action used by the word problem.
pub(crate) trait Scalar: Clone {
    type Lambda: Copy;

    fn one() -> Self;
    fn negate(&mut self) -> Result<(), CoxeterError>;
    /// `self += lam · x`
    fn add_scaled(&mut self, lam: Self::Lambda, x: &Self) -> Result<(), CoxeterError>;
    /// Sign of a value known to satisfy `|v| ≥ 1`.
    fn is_negative(&self) -> Result<bool, CoxeterError>;
}

impl Scalar for Cyc {
    type Lambda = TwoCos;

    fn one() -> Self {
        Cyc::from_int(1)
    }

    fn negate(&mut self) -> Result<(), CoxeterError> {
        *self = self.checked_neg().ok_or(CoxeterError::CoefficientOverflow)?;
        Ok(())
    }

    fn add_scaled(&mut self, lam: TwoCos, x: &Self) -> Result<(), CoxeterError> {
        if lam == TwoCos::Zero {
            return Ok(());
        }
        let t = x.checked_mul_two_cos(lam).ok_or(CoxeterError::CoefficientOverflow)?;
        *self = self.checked_add(&t).ok_or(CoxeterError::CoefficientOverflow)?;
        Ok(())
    }

    fn is_negative(&self) -> Result<bool, CoxeterError> {
        Ok(self.signum() == Ordering::Less)
    }
}

impl Scalar for f64 {
    type Lambda = f64;

    fn one() -> Self {
        1.0
    }

    fn negate(&mut self) -> Result<(), CoxeterError> {
        *self = -*self;
        Ok(())
    }

    fn add_scaled(&mut self, lam: f64, x: &Self) -> Result<(), CoxeterError> {
        *self += lam * x;
        Ok(())
    }

    fn is_negative(&self) -> Result<bool, CoxeterError> {
        // Every entry is a coordinate sum of a root, hence at least 1 in magnitude.
        if !self.is_finite() || self.abs() < 0.5 {
            return Err(CoxeterError::NumericalBreakdown { value: *self });
        }
        Ok(*self < 0.0)
    }
}

/// `2cos(π/m(s,t))` for all pairs, exact when possible.
#[derive(Clone, Debug)]
pub(crate) enum Arith {
    Exact(Vec<TwoCos>),
    Float(Vec<f64>),
}

#[derive(Clone, Debug)]
pub(crate) struct CoeffTable {
    pub arith: Arith,
}

impl CoeffTable {
    pub fn new(rank: usize, orders: &[Order]) -> Self {
        let exact: Option<Vec<TwoCos>> = orders
            .iter()
            .enumerate()
            .map(|(i, &o)| if i / rank == i % rank { Some(TwoCos::Zero) } else { TwoCos::of(o) })
            .collect();
        let arith = match exact {
            Some(table) => Arith::Exact(table),
            None => Arith::Float(
                orders
                    .iter()
                    .enumerate()
                    .map(|(i, &o)| if i / rank == i % rank { 0.0 } else { 2.0 * o.cos_pi_over() })
                    .collect(),
            ),
        };
        CoeffTable { arith }
    }
}

/// Determinant of a small square matrix over `Cyc`, by dynamic programming
/// over column subsets (`O(2ⁿ n)` products).
pub fn cyc_determinant(m: &[Vec<Cyc>]) -> Option<Cyc> {
    let n = m.len();
    if n == 0 {
        return Some(Cyc::from_int(1));
    }
    assert!(n <= 20, "cyc_determinant is for small matrices");
    let mut f = vec![Cyc::ZERO; 1 << n];
    f[0] = Cyc::from_int(1);
    for mask in 0usize..(1 << n) {
        if f[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut term = f[mask].checked_mul(&m[row][j])?;
            if above % 2 == 1 {
                term = term.checked_neg()?;
            }
            let idx = mask | (1 << j);
            f[idx] = f[idx].checked_add(&term)?;
        }
    }
    Some(f[(1 << n) - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> Cyc {
        TwoCos::Phi.to_cyc()
    }

    #[test]
    fn golden_ratio_identity() {
        let p = phi();
        let lhs = p.checked_mul(&p).unwrap();
        let rhs = p.checked_add(&Cyc::from_int(1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_two_cos_matches_general_product() {
        let x = Cyc([3, -1, 2, 5, -4, 1, 0, 2]);
        for lam in [TwoCos::Zero, TwoCos::One, TwoCos::Sqrt2, TwoCos::Phi, TwoCos::Sqrt3, TwoCos::Two] {
            assert_eq!(x.checked_mul_two_cos(lam), x.checked_mul(&lam.to_cyc()), "{lam:?}");
        }
    }

    #[test]
    fn float_value_agrees() {
        let x = Cyc([3, -1, 2, 5, -4, 1, 0, 2]);
        let y = Cyc([1, 1, -1, 0, 2, 0, 1, -1]);
        let p = x.checked_mul(&y).unwrap();
        assert!((p.to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn exact_sign_of_near_cancellations() {
        // (1+√2)^20 (√2−1)^20 = 1 exactly; build a value very close to zero.
        let a = Cyc([1, 1, 0, 0, 0, 0, 0, 0]);
        let b = Cyc([-1, 1, 0, 0, 0, 0, 0, 0]);
        let mut pa = Cyc::from_int(1);
        for _ in 0..30 {
            pa = pa.checked_mul(&a).unwrap();
        }
        // pa = P + Q√2 with P² − 2Q² = 1; P − Q√2 = (√2−1)^30 > 0 is tiny.
        let tiny = Cyc([pa.0[0], -pa.0[1], 0, 0, 0, 0, 0, 0]);
        assert_eq!(tiny.signum(), Ordering::Greater);
        assert_eq!(tiny.checked_neg().unwrap().signum(), Ordering::Less);
        let mut pb = Cyc::from_int(1);
        for _ in 0..30 {
            pb = pb.checked_mul(&b).unwrap();
        }
        assert_eq!(pb, tiny);
        // φ² − φ − 1 = 0
        let z = phi().checked_mul(&phi()).unwrap().checked_sub(&phi()).unwrap().checked_sub(&Cyc::from_int(1)).unwrap();
        assert_eq!(z.signum(), Ordering::Equal);
        // √5 − 2φ + 1 = 0, written as 2φ − 1 vs √5: sign(2φ − 1 − √(5)) via φ only.
        let c = Cyc([-3, 0, 0, 0, 2, 0, 0, 0]); // 2φ − 3 ≈ 0.236
        assert_eq!(exact_sign(&[-3, 0, 0, 0], &[2, 0, 0, 0]), Ordering::Greater);
        assert_eq!(c.signum(), Ordering::Greater);
        // √6 − √2·√3 expressed with mixed basis is zero.
        assert_eq!(exact_sign(&[0, 0, 0, 0], &[0, 0, 0, 0]), Ordering::Equal);
        // 5√2 − 7 > 0, 7√3 − 12 > 0, 12 − 5√6 < 0
        assert_eq!(exact_sign(&[-7, 5, 0, 0], &[0; 4]), Ordering::Greater);
        assert_eq!(exact_sign(&[-12, 0, 7, 0], &[0; 4]), Ordering::Greater);
        assert_eq!(exact_sign(&[12, 0, 0, -5], &[0; 4]), Ordering::Less);
    }

    #[test]
    fn determinant_of_cartan_like_matrices() {
        let two = Cyc::from_int(2);
        let m1 = Cyc::from_int(-1);
        let z = Cyc::ZERO;
        // 2·B for A₂ (det 3) and for Ã₂ (det 0).
        let a2 = vec![vec![two, m1], vec![m1, two]];
        assert_eq!(cyc_determinant(&a2), Some(Cyc::from_int(3)));
        let a2t = vec![vec![two, m1, m1], vec![m1, two, m1], vec![m1, m1, two]];
        assert_eq!(cyc_determinant(&a2t), Some(Cyc::ZERO));
        let diag = vec![vec![two, z], vec![z, two]];
        assert_eq!(cyc_determinant(&diag), Some(Cyc::from_int(4)));
    }

    #[test]
    fn float_scalar_rejects_small_values() {
        assert!(Scalar::is_negative(&0.2f64).is_err());
        assert_eq!(Scalar::is_negative(&-3.0f64), Ok(true));
    }
}
