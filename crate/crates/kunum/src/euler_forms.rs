//! Rank-2 Euler forms with a compatible Serre isometry.
//!
//! The stored matrix `M` has `M[i][j] = Q(e_i, e_j)`, so `Q(u, v) = uᵀ·M·v`.
//! Compatibility `Q(x, y) = Q(y, Dx)` is checked on basis vectors; in matrix
//! form it reads `M = Dᵀ·Mᵀ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{cross, is_primitive, isqrt, pick_decompose, LatticeVector, Mat2};

/// Integer bilinear form on Z².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerForm {
    pub q11: i64,
    pub q12: i64,
    pub q21: i64,
    pub q22: i64,
}

impl EulerForm {
    pub const fn new(q11: i64, q12: i64, q21: i64, q22: i64) -> Self {
        EulerForm { q11, q12, q21, q22 }
    }

    pub fn from_matrix(m: Mat2) -> Self {
        EulerForm::new(m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1])
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.q11, self.q12, self.q21, self.q22)
    }

    pub fn pair(&self, u: LatticeVector, v: LatticeVector) -> i128 {
        let (ua, ub, va, vb) = (u.a as i128, u.b as i128, v.a as i128, v.b as i128);
        ua * (self.q11 as i128 * va + self.q12 as i128 * vb)
            + ub * (self.q21 as i128 * va + self.q22 as i128 * vb)
    }

    pub fn det(&self) -> i128 {
        self.matrix().det()
    }

    /// `Bᵀ·M·B`: the matrix of the form in the basis given by the columns of `b`.
    pub fn change_basis(&self, b: &Mat2) -> EulerForm {
        let (c1, c2) = (b.column(0), b.column(1));
        let entry = |x, y| i64::try_from(self.pair(x, y)).expect("form entry overflowed i64");
        EulerForm::new(entry(c1, c1), entry(c1, c2), entry(c2, c1), entry(c2, c2))
    }

    /// `q11 ≤ 0`, `q22 ≤ 0` and `(q12+q21)² ≤ 4·q11·q22`.
    pub fn is_negative_semidefinite(&self) -> bool {
        let s = self.q12 as i128 + self.q21 as i128;
        self.q11 <= 0 && self.q22 <= 0 && s * s <= 4 * self.q11 as i128 * self.q22 as i128
    }

    fn definiteness_discriminant(&self) -> i128 {
        let s = self.q12 as i128 + self.q21 as i128;
        4 * self.q11 as i128 * self.q22 as i128 - s * s
    }
}

impl fmt::Display for EulerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix().fmt(f)
    }
}

/// Action of the Serre functor on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SerreIsometry {
    d: Mat2,
}

impl SerreIsometry {
    /// Requires `det D = 1`.
    pub fn new(d: Mat2) -> Result<Self> {
        if d.det() != 1 {
            return Err(Error::NotUnimodular(d.det()));
        }
        Ok(SerreIsometry { d })
    }

    pub fn from_entries(d11: i64, d12: i64, d21: i64, d22: i64) -> Result<Self> {
        SerreIsometry::new(Mat2::new(d11, d12, d21, d22))
    }

    pub fn matrix(&self) -> Mat2 {
        self.d
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        self.d.apply(v)
    }

    pub fn trace(&self) -> i64 {
        self.d.trace() as i64
    }

    fn has_no_fixed_lines(&self) -> bool {
        (-1..=1).contains(&self.trace())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "I+")]
    IPlus,
    #[serde(rename = "I-")]
    IMinus,
    #[serde(rename = "J+")]
    JPlus,
    #[serde(rename = "J-")]
    JMinus,
    #[serde(rename = "K+")]
    KPlus,
    #[serde(rename = "K-")]
    KMinus,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::IPlus, Family::IMinus, Family::JPlus, Family::JMinus, Family::KPlus, Family::KMinus];

    fn sign(self) -> i64 {
        match self {
            Family::IPlus | Family::JPlus | Family::KPlus => 1,
            _ => -1,
        }
    }

    /// Multiple of `n` in the lower-left entry.
    fn lower_left(self) -> i64 {
        match self {
            Family::IPlus | Family::IMinus => 0,
            Family::JPlus | Family::JMinus => -self.sign(),
            Family::KPlus | Family::KMinus => -2 * self.sign(),
        }
    }

    /// The canonical matrix `[[−n, ±n], [c·n, −n]]`.
    pub fn matrix(self, n: i64) -> EulerForm {
        EulerForm::new(-n, self.sign() * n, self.lower_left() * n, -n)
    }

    /// Order of the Serre isometry for this family.
    pub fn serre_order(self) -> u32 {
        match self {
            Family::IPlus | Family::IMinus => 6,
            Family::JPlus | Family::JMinus => 4,
            Family::KPlus | Family::KMinus => 3,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::IPlus => "I+",
            Family::IMinus => "I-",
            Family::JPlus => "J+",
            Family::JMinus => "J-",
            Family::KPlus => "K+",
            Family::KMinus => "K-",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.symbol() == s)
            .ok_or_else(|| Error::Parse { input: s.into(), reason: "unknown family".into() })
    }
}

/// Output of [`classify_form`]. The columns of `basis_change` are the
/// canonical basis vectors written in input coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub family: Family,
    pub n: i64,
    pub basis_change: Mat2,
}

impl CanonicalForm {
    pub fn matrix(&self) -> EulerForm {
        self.family.matrix(self.n)
    }

    /// A canonical form given directly, with identity basis change.
    pub fn of_family(family: Family, n: i64) -> Self {
        CanonicalForm { family, n, basis_change: Mat2::IDENTITY }
    }
}

pub fn compatible(q: &EulerForm, d: &SerreIsometry) -> bool {
    let e = [LatticeVector::new(1, 0), LatticeVector::new(0, 1)];
    e.iter().all(|&x| e.iter().all(|&y| q.pair(x, y) == q.pair(y, d.apply(x))))
}

pub fn serre_order(d: &SerreIsometry) -> Result<u32> {
    if !d.has_no_fixed_lines() {
        return Err(Error::FixedVector(d.trace()));
    }
    let mut p = d.matrix();
    for k in 1..=6u32 {
        if p == Mat2::IDENTITY {
            let expected = match d.trace() {
                -1 => 3,
                0 => 4,
                _ => 6,
            };
            if k != expected {
                return Err(Error::Internal(format!("order {k} disagrees with trace")));
            }
            return Ok(k);
        }
        p = p.mul(&d.matrix());
    }
    Err(Error::Internal("Serre operator of trace in {-1,0,1} has order > 6".into()))
}

/// All `x` with `−Q(x,x) ≤ bound` for a negative definite form.
fn ellipse_points(q: &EulerForm, bound: i128) -> Vec<LatticeVector> {
    let disc = q.definiteness_discriminant();
    debug_assert!(disc > 0);
    let p = -(q.q11 as i128);
    let r = -(q.q22 as i128);
    // −Q(x,x) = p a² − s a b + r b² ≥ a²·disc/(4r), and symmetrically in b.
    let amax = isqrt(4 * r * bound / disc) as i64;
    let bmax = isqrt(4 * p * bound / disc) as i64;
    let mut out = Vec::new();
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            let x = LatticeVector::new(a, b);
            if -q.pair(x, x) <= bound {
                out.push(x);
            }
        }
    }
    out
}

fn tie_break_key(x: LatticeVector) -> Option<(i64, i64)> {
    if x.a > 0 || (x.a == 0 && x.b > 0) {
        Some((x.a, x.b))
    } else {
        None
    }
}

/// Puts `(Q, D)` into one of the six canonical shapes.
pub fn classify_form(q: &EulerForm, d: &SerreIsometry) -> Result<CanonicalForm> {
    if q.det() == 0 {
        return Err(Error::Degenerate);
    }
    if !q.is_negative_semidefinite() {
        return Err(Error::NotNegative);
    }
    if !compatible(q, d) {
        return Err(Error::Incompatible);
    }
    if !d.has_no_fixed_lines() {
        return Err(Error::FixedVector(d.trace()));
    }
    if q.definiteness_discriminant() <= 0 {
        // Semidefinite but not definite; cannot coexist with a fixed-line-free D.
        return Err(Error::NotNegative);
    }
    // e1 already reaches −q11, so a maximizer lies in −Q(x,x) ≤ min(−q11, −q22).
    let bound = (-(q.q11 as i128)).min(-(q.q22 as i128));
    let x = ellipse_points(q, bound)
        .into_iter()
        .filter(|x| !x.is_zero())
        .filter_map(|x| tie_break_key(x).map(|k| (-q.pair(x, x), k, x)))
        .min()
        .map(|(_, _, x)| x)
        .ok_or_else(|| Error::Internal("no maximizer found".into()))?;
    let n = -q.pair(x, x);
    let dx = d.apply(x);
    let eps = cross(x, dx);
    if eps != 1 && eps != -1 {
        return Err(Error::Internal(format!("{{x, Dx}} is not a basis (cross {eps})")));
    }
    let basis = Mat2::from_columns(x, (eps as i64) * dx);
    let canonical = q.change_basis(&basis);
    let n = i64::try_from(n).map_err(|_| Error::Overflow("classify_form"))?;
    let family = Family::ALL
        .into_iter()
        .find(|f| f.sign() == -(eps as i64) && f.matrix(n) == canonical)
        .ok_or_else(|| Error::Internal(format!("canonical matrix {canonical} matches no family")))?;
    Ok(CanonicalForm { family, n, basis_change: basis })
}

/// Primitive `v` with `|v| > 1` whose Pick pieces satisfy `Q(v₊, v₋) ≥ 0`,
/// in the canonical basis of `form`. Sorted.
pub fn exceptional_vectors(form: &CanonicalForm) -> Vec<LatticeVector> {
    let q = form.matrix();
    let n = form.n as i128;
    let mut bound = 6 * n;
    loop {
        let found: BTreeSet<LatticeVector> = ellipse_points(&q, bound)
            .into_iter()
            .filter(|&v| is_primitive(v) && v.norm_sq() > 1)
            .filter(|&v| {
                let (m, p) = pick_decompose(v).expect("primitive non-unit vector");
                q.pair(p, m) >= 0
            })
            .collect();
        let outer = found.iter().any(|&v| -q.pair(v, v) * 2 > bound);
        if !outer {
            return found.into_iter().collect();
        }
        bound *= 2;
    }
}

/// Least `N ≥ 0` beyond which `Q(v₊, v₋) < 0` always holds.
pub fn n_chi(form: &CanonicalForm) -> i64 {
    let q = form.matrix();
    exceptional_vectors(form).into_iter().map(|v| -q.pair(v, v) as i64).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(a: i64, b: i64) -> LatticeVector {
        LatticeVector::new(a, b)
    }

    fn cubic() -> (EulerForm, SerreIsometry) {
        (EulerForm::new(-1, 0, -1, -1), SerreIsometry::from_entries(1, 1, -1, 0).unwrap())
    }

    #[test]
    fn cubic_is_compatible_and_i_plus() {
        let (q, d) = cubic();
        assert!(compatible(&q, &d));
        let c = classify_form(&q, &d).unwrap();
        assert_eq!((c.family, c.n), (Family::IPlus, 1));
        assert_eq!(q.change_basis(&c.basis_change), Family::IPlus.matrix(1));
    }

    #[test]
    fn negative_identity_with_identity_serre() {
        let q = EulerForm::new(-1, 0, 0, -1);
        let d = SerreIsometry::new(Mat2::IDENTITY).unwrap();
        assert!(compatible(&q, &d));
        assert_eq!(classify_form(&q, &d), Err(Error::FixedVector(2)));
    }

    #[test]
    fn serre_orders() {
        let s = |a, b, c, d| SerreIsometry::from_entries(a, b, c, d).unwrap();
        assert_eq!(serre_order(&s(1, 1, -1, 0)).unwrap(), 6);
        assert_eq!(serre_order(&s(0, -1, 1, -1)).unwrap(), 3);
        assert_eq!(serre_order(&s(0, 1, -1, 0)).unwrap(), 4);
        assert_eq!(serre_order(&s(1, 0, 0, 1)), Err(Error::FixedVector(2)));
    }

    #[test]
    fn exceptional_sets_of_i_families() {
        let ip = CanonicalForm::of_family(Family::IPlus, 1);
        assert_eq!(exceptional_vectors(&ip), vec![lv(-1, -1), lv(1, 1)]);
        assert_eq!(n_chi(&ip), 1);
        let im = CanonicalForm::of_family(Family::IMinus, 1);
        let mut expected = vec![lv(1, 1), lv(-1, 1), lv(-2, 1), lv(-1, 2)];
        expected.extend(expected.clone().into_iter().map(|v| -v));
        expected.sort();
        assert_eq!(exceptional_vectors(&im), expected);
        assert_eq!(n_chi(&im), 3);
    }

    #[test]
    fn degenerate_and_indefinite_inputs() {
        let d = SerreIsometry::from_entries(1, 1, -1, 0).unwrap();
        assert_eq!(classify_form(&EulerForm::new(-1, -1, -1, -1), &d), Err(Error::Degenerate));
        assert_eq!(classify_form(&EulerForm::new(1, 0, 0, -1), &d), Err(Error::NotNegative));
    }
}
