//! Exact geometry of the rank-2 lattice.
//!
//! Coordinates are `i64`; every product, norm and cross product is taken in
//! `i128`, which is exact for coordinates up to 2^62 in absolute value.
//! Vector addition and subtraction are checked and panic on overflow instead
//! of wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of Z².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        LatticeVector { a, b }
    }

    pub fn norm_sq(self) -> i128 {
        norm_sq(self)
    }

    pub fn is_primitive(self) -> bool {
        is_primitive(self)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(LatticeVector::new(self.a.checked_add(o.a)?, self.b.checked_add(o.b)?))
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(LatticeVector::new(self.a.checked_sub(o.a)?, self.b.checked_sub(o.b)?))
    }

    pub fn checked_scale(self, k: i64) -> Option<Self> {
        Some(LatticeVector::new(self.a.checked_mul(k)?, self.b.checked_mul(k)?))
    }

    /// gcd of the absolute values of the coordinates.
    pub fn content(self) -> i64 {
        self.a.gcd(&self.b)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((a, b): (i64, i64)) -> Self {
        LatticeVector::new(a, b)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("lattice vector addition overflowed i64")
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("lattice vector subtraction overflowed i64")
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector::new(
            self.a.checked_neg().expect("lattice vector negation overflowed i64"),
            self.b.checked_neg().expect("lattice vector negation overflowed i64"),
        )
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        v.checked_scale(self).expect("lattice vector scaling overflowed i64")
    }
}

/// `u.a·v.b − u.b·v.a`.
pub fn cross(u: LatticeVector, v: LatticeVector) -> i128 {
    u.a as i128 * v.b as i128 - u.b as i128 * v.a as i128
}

pub fn dot(u: LatticeVector, v: LatticeVector) -> i128 {
    u.a as i128 * v.a as i128 + u.b as i128 * v.b as i128
}

pub fn norm_sq(v: LatticeVector) -> i128 {
    dot(v, v)
}

pub fn is_primitive(v: LatticeVector) -> bool {
    !v.is_zero() && v.content() == 1
}

/// Integer 2×2 matrix acting on column vectors. `m[i][j]` is row i, column j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub m: [[i64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { m: [[1, 0], [0, 1]] };

    pub const fn new(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Mat2 { m: [[m11, m12], [m21, m22]] }
    }

    /// Matrix whose columns are `c1` and `c2`.
    pub fn from_columns(c1: LatticeVector, c2: LatticeVector) -> Self {
        Mat2::new(c1.a, c2.a, c1.b, c2.b)
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new(self.m[0][j], self.m[1][j])
    }

    pub fn det(&self) -> i128 {
        self.m[0][0] as i128 * self.m[1][1] as i128 - self.m[0][1] as i128 * self.m[1][0] as i128
    }

    pub fn trace(&self) -> i128 {
        self.m[0][0] as i128 + self.m[1][1] as i128
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        self.checked_apply(v).expect("matrix application overflowed i64")
    }

    pub fn checked_apply(&self, v: LatticeVector) -> Option<LatticeVector> {
        let x = self.m[0][0] as i128 * v.a as i128 + self.m[0][1] as i128 * v.b as i128;
        let y = self.m[1][0] as i128 * v.a as i128 + self.m[1][1] as i128 * v.b as i128;
        Some(LatticeVector::new(i64::try_from(x).ok()?, i64::try_from(y).ok()?))
    }

    pub fn checked_mul(&self, o: &Mat2) -> Option<Mat2> {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s = self.m[i][0] as i128 * o.m[0][j] as i128 + self.m[i][1] as i128 * o.m[1][j] as i128;
                *cell = i64::try_from(s).ok()?;
            }
        }
        Some(Mat2 { m: out })
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        self.checked_mul(o).expect("matrix product overflowed i64")
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-self.m[0][0], -self.m[0][1], -self.m[1][0], -self.m[1][1])
    }

    pub fn pow(&self, k: u32) -> Mat2 {
        (0..k).fold(Mat2::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Option<Mat2> {
        let d = self.det();
        if d != 1 && d != -1 {
            return None;
        }
        let d = d as i64;
        Some(Mat2::new(d * self.m[1][1], -d * self.m[0][1], -d * self.m[1][0], d * self.m[0][0]))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

fn check_pick_input(v: LatticeVector) -> Result<()> {
    if !is_primitive(v) {
        if v.is_zero() {
            return Err(Error::UnitVector(v));
        }
        return Err(Error::NotPrimitive(v));
    }
    if norm_sq(v) <= 1 {
        return Err(Error::UnitVector(v));
    }
    Ok(())
}

/// The unique pair `(v₋, v₊)` with `v₋×v = v×v₊ = v₋×v₊ = 1`, both shorter
/// than `v`, and `v = v₋ + v₊`.
pub fn pick_decompose(v: LatticeVector) -> Result<(LatticeVector, LatticeVector)> {
    check_pick_input(v)?;
    if v.b < 0 {
        let (m, p) = pick_upper(-v);
        return Ok((-m, -p));
    }
    Ok(pick_upper(v))
}

// v primitive, |v| > 1, v.b >= 0. A primitive vector with b = 0 is a unit,
// so b >= 1 here.
fn pick_upper(v: LatticeVector) -> (LatticeVector, LatticeVector) {
    let (n, m) = (v.a, v.b);
    debug_assert!(m >= 1);
    if m == 1 {
        return if n > 0 {
            (LatticeVector::new(1, 0), LatticeVector::new(n - 1, 1))
        } else {
            (LatticeVector::new(n + 1, 1), LatticeVector::new(-1, 0))
        };
    }
    let v1 = penultimate_convergent(n, m);
    if cross(v1, v) == 1 {
        (v1, v - v1)
    } else {
        (v - v1, v1)
    }
}

/// `(n₁, m₁)` with `n₁/m₁ = [a₀; …, a_{i−1}]` where `n/m = [a₀; …, a_i]`,
/// for `m ≥ 2` and `gcd(n, m) = 1`. The Euclidean expansion always ends with
/// `a_i ≥ 2`.
fn penultimate_convergent(n: i64, m: i64) -> LatticeVector {
    let (mut x, mut y) = (n as i128, m as i128);
    // (h_{k-1}, k_{k-1}) and (h_{k-2}, k_{k-2})
    let (mut h1, mut k1) = (1i128, 0i128);
    let (mut h2, mut k2) = (0i128, 1i128);
    loop {
        let a = x.div_euclid(y);
        let r = x - a * y;
        let (h, k) = (a * h1 + h2, a * k1 + k2);
        if r == 0 {
            // (h, k) == (n, m); the previous convergent is (h1, k1).
            return LatticeVector::new(h1 as i64, k1 as i64);
        }
        h2 = h1;
        k2 = k1;
        h1 = h;
        k1 = k;
        x = y;
        y = r;
    }
}

/// Brute-force Pick pair: scans every lattice point strictly inside the disc
/// of radius |v| for candidates on the two lines `u×v = 1` and `v×w = 1`,
/// then keeps the pairs with `u×w = 1` and `u + w = v`.
pub fn pick_oracle(v: LatticeVector) -> Result<(LatticeVector, LatticeVector)> {
    check_pick_input(v)?;
    let r2 = norm_sq(v);
    let radius = isqrt(r2) as i64 + 1;
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for x in -radius..=radius {
        let rest = r2 - (x as i128) * (x as i128);
        if rest <= 0 {
            continue;
        }
        let ymax = isqrt(rest - 1) as i64;
        for y in -ymax..=ymax {
            let u = LatticeVector::new(x, y);
            if norm_sq(u) >= r2 {
                continue;
            }
            if cross(u, v) == 1 {
                minus.push(u);
            }
            if cross(v, u) == 1 {
                plus.push(u);
            }
        }
    }
    let mut found = Vec::new();
    for &u in &minus {
        for &w in &plus {
            if cross(u, w) == 1 && u.checked_add(w) == Some(v) {
                found.push((u, w));
            }
        }
    }
    if found.len() != 1 {
        return Err(Error::OracleContradiction { v, found: found.len() });
    }
    Ok(found[0])
}

/// `sin²(π·δ(v)) = 1/(|v₊|²·|v₋|²)`.
pub fn delta_sin_sq(v: LatticeVector) -> Result<Ratio<i128>> {
    let (m, p) = pick_decompose(v)?;
    Ok(Ratio::new(1, norm_sq(m) * norm_sq(p)))
}

/// All lattice points of the closed triangle with vertices 0, v, w, in
/// lexicographic order.
pub fn triangle_points(v: LatticeVector, w: LatticeVector) -> Result<Vec<LatticeVector>> {
    let area = cross(v, w);
    if area <= 0 {
        return Err(Error::NonPositiveOrientation(area));
    }
    let (amin, amax) = (0.min(v.a).min(w.a), 0.max(v.a).max(w.a));
    let (bmin, bmax) = (0.min(v.b).min(w.b), 0.max(v.b).max(w.b));
    let mut out = Vec::new();
    for a in amin..=amax {
        for b in bmin..=bmax {
            let u = LatticeVector::new(a, b);
            let s = cross(u, w);
            let t = cross(v, u);
            if s >= 0 && t >= 0 && s + t <= area {
                out.push(u);
            }
        }
    }
    Ok(out)
}

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Every primitive vector with `norm_sq ≤ bound`, sorted.
pub fn primitive_vectors(bound: i128) -> Vec<LatticeVector> {
    let r = isqrt(bound.max(0)) as i64;
    let mut out = Vec::new();
    for a in -r..=r {
        let rest = bound - (a as i128) * (a as i128);
        let bmax = isqrt(rest) as i64;
        for b in -bmax..=bmax {
            let v = LatticeVector::new(a, b);
            if is_primitive(v) {
                out.push(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(a: i64, b: i64) -> LatticeVector {
        LatticeVector::new(a, b)
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(lv(1, 0), lv(0, 1)), 1);
        assert_eq!(cross(lv(2, 1), lv(1, 1)), 1);
        assert_eq!(cross(lv(3, 2), lv(3, 2)), 0);
    }

    #[test]
    fn norm_and_primitivity() {
        assert_eq!(norm_sq(lv(0, 0)), 0);
        assert_eq!(norm_sq(lv(1, 0)), 1);
        assert_eq!(norm_sq(lv(3, 2)), 13);
        assert!(!is_primitive(lv(2, 4)));
        assert!(is_primitive(lv(0, 1)));
        assert!(is_primitive(lv(5, 3)));
        assert!(!is_primitive(lv(0, 0)));
    }

    #[test]
    fn pick_examples() {
        assert_eq!(pick_decompose(lv(1, 1)).unwrap(), (lv(1, 0), lv(0, 1)));
        assert_eq!(pick_decompose(lv(2, 1)).unwrap(), (lv(1, 0), lv(1, 1)));
        assert_eq!(pick_decompose(lv(3, 2)).unwrap(), (lv(2, 1), lv(1, 1)));
        assert_eq!(pick_decompose(lv(-3, 1)).unwrap(), (lv(-2, 1), lv(-1, 0)));
        assert_eq!(pick_decompose(lv(1, 0)), Err(Error::UnitVector(lv(1, 0))));
        assert_eq!(pick_decompose(lv(2, 4)), Err(Error::NotPrimitive(lv(2, 4))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(pick_oracle(lv(2, 1)).unwrap(), (lv(1, 0), lv(1, 1)));
        assert_eq!(pick_oracle(lv(5, 3)).unwrap(), pick_decompose(lv(5, 3)).unwrap());
        assert_eq!(pick_oracle(lv(1, 0)), Err(Error::UnitVector(lv(1, 0))));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_sin_sq(lv(1, 1)).unwrap(), Ratio::new(1, 1));
        assert_eq!(delta_sin_sq(lv(2, 1)).unwrap(), Ratio::new(1, 2));
        assert_eq!(delta_sin_sq(lv(3, 2)).unwrap(), Ratio::new(1, 10));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_points(lv(1, 0), lv(0, 1)).unwrap(), vec![lv(0, 0), lv(0, 1), lv(1, 0)]);
        assert_eq!(
            triangle_points(lv(2, 0), lv(0, 1)).unwrap(),
            vec![lv(0, 0), lv(0, 1), lv(1, 0), lv(2, 0)]
        );
        assert!(triangle_points(lv(1, 0), lv(-1, 2)).unwrap().contains(&lv(0, 1)));
        assert!(triangle_points(lv(0, 1), lv(1, 0)).is_err());
    }

    #[test]
    fn large_coordinates_stay_exact() {
        let big = 1i64 << 62;
        let v = lv(big, big - 1);
        let (m, p) = pick_decompose(v).unwrap();
        assert_eq!(m + p, v);
        assert_eq!(cross(m, p), 1);
        assert_eq!(cross(m, v), 1);
    }

    #[test]
    fn mat2_inverse() {
        let d = Mat2::new(1, 1, -1, 0);
        let r = d.inverse_unimodular().unwrap();
        assert_eq!(d.mul(&r), Mat2::IDENTITY);
        assert_eq!(r, Mat2::new(0, -1, 1, 1));
    }
}
