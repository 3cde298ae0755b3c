//! Exact phase bookkeeping in the hexagonal picture.
//!
//! Sextant `s` is the half-open cone from the ray `Rˢα` (inclusive) to
//! `Rˢ⁺¹α` (exclusive), i.e. phases in `[s/3, (s+1)/3)` with `φ(α) = 0`.
//! A lifted class `(v, k)` has phase in `[k/3, (k+1)/3)` and requires
//! `k ≡ sextant(v) (mod 6)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{rotate, serre_act, KuClass, ALPHA, SERRE};
use crate::error::{Error, Result};
use crate::lattice::{cross, LatticeVector};

fn ray(s: i64) -> LatticeVector {
    let mut r = ALPHA;
    for _ in 0..s.rem_euclid(6) {
        r = rotate(r);
    }
    r.vector()
}

/// Index in `0..6` of the sextant containing `v`.
pub fn sextant_index(v: KuClass) -> Result<i64> {
    v.nonzero()?;
    let x = v.vector();
    (0..6)
        .find(|&s| cross(x, ray(s + 1)) > 0 && cross(ray(s), x) >= 0)
        .ok_or_else(|| Error::Internal(format!("{v:?} lies in no sextant")))
}

/// A class together with a phase branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftedClass {
    pub cls: KuClass,
    pub branch: i64,
}

impl LiftedClass {
    pub fn new(cls: KuClass, branch: i64) -> Result<Self> {
        let s = sextant_index(cls)?;
        if branch.rem_euclid(6) != s {
            return Err(Error::BranchMismatch { branch, sextant: s });
        }
        Ok(LiftedClass { cls, branch })
    }

    /// The lift with phase in `[0, 2)`.
    pub fn principal(cls: KuClass) -> Result<Self> {
        Ok(LiftedClass { cls, branch: sextant_index(cls)? })
    }

    /// `[k]`: `(v, b) ↦ ((−1)ᵏ v, b + 3k)`.
    pub fn shift(self, k: i64) -> Self {
        let cls = if k.rem_euclid(2) == 0 { self.cls } else { -self.cls };
        LiftedClass { cls, branch: self.branch + 3 * k }
    }

    /// Rotation by π/3, raising the phase by 1/3.
    pub fn rotate(self) -> Self {
        LiftedClass { cls: rotate(self.cls), branch: self.branch + 1 }
    }

    /// Serre functor, raising the phase by 5/3.
    pub fn serre(self) -> Self {
        LiftedClass { cls: serre_act(self.cls), branch: self.branch + 5 }
    }

    /// The class moved into sextant 0 by the Serre action.
    fn in_first_sextant(self) -> LatticeVector {
        SERRE.pow(self.branch.rem_euclid(6) as u32).apply(self.cls.vector())
    }
}

/// `φ(w) − φ(v)` located exactly; values are in thirds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "thirds", rename_all = "lowercase")]
pub enum PhaseGap {
    /// Exactly `t/3`.
    Exact(i64),
    /// Strictly between `l/3` and `(l+1)/3`.
    Between(i64),
}

impl PhaseGap {
    /// Lies in the open interval `(lo/3, hi/3)`.
    pub fn in_open(self, lo: i64, hi: i64) -> bool {
        match self {
            PhaseGap::Exact(t) => lo < t && t < hi,
            PhaseGap::Between(l) => lo <= l && l < hi,
        }
    }

    pub fn is_exactly(self, t: i64) -> bool {
        self == PhaseGap::Exact(t)
    }

    /// Same gap reduced to `[0, 2)`.
    pub fn modulo_two(self) -> Self {
        match self {
            PhaseGap::Exact(t) => PhaseGap::Exact(t.rem_euclid(6)),
            PhaseGap::Between(l) => PhaseGap::Between(l.rem_euclid(6)),
        }
    }
}

fn thirds(t: i64) -> String {
    match (t % 3, t / 3) {
        (0, q) => q.to_string(),
        _ => format!("{t}/3"),
    }
}

impl fmt::Display for PhaseGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PhaseGap::Exact(t) => write!(f, "= {}", thirds(t)),
            PhaseGap::Between(l) => write!(f, "in ({}, {})", thirds(l), thirds(l + 1)),
        }
    }
}

/// Classifies `φ(w) − φ(v)` using branch integers and one cross-product sign.
pub fn phase_gap_class(v: LiftedClass, w: LiftedClass) -> Result<PhaseGap> {
    let v = LiftedClass::new(v.cls, v.branch)?;
    let w = LiftedClass::new(w.cls, w.branch)?;
    let j = w.branch - v.branch;
    // Both offsets inside the sextant compare by orientation.
    let c = cross(v.in_first_sextant(), w.in_first_sextant());
    Ok(match c.cmp(&0) {
        Ordering::Equal => PhaseGap::Exact(j),
        Ordering::Greater => PhaseGap::Between(j),
        Ordering::Less => PhaseGap::Between(j - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{BETA, GAMMA};

    #[test]
    fn anchor_phases() {
        assert_eq!(sextant_index(ALPHA).unwrap(), 0);
        assert_eq!(sextant_index(BETA).unwrap(), 1);
        assert_eq!(sextant_index(GAMMA).unwrap(), 2);
        assert_eq!(sextant_index(-ALPHA).unwrap(), 3);
        assert_eq!(sextant_index(KuClass::new(2, 1)).unwrap(), 0);
        assert_eq!(sextant_index(KuClass::new(1, -1)).unwrap(), 5);
    }

    #[test]
    fn gap_examples() {
        let a = LiftedClass::principal(ALPHA).unwrap();
        let b = LiftedClass::principal(BETA).unwrap();
        let g = LiftedClass::principal(GAMMA).unwrap();
        assert_eq!(phase_gap_class(a, b).unwrap(), PhaseGap::Exact(1));
        assert_eq!(phase_gap_class(a, g).unwrap(), PhaseGap::Exact(2));
        let v = LiftedClass::principal(KuClass::new(3, 2)).unwrap();
        assert_eq!(phase_gap_class(v, v.serre()).unwrap(), PhaseGap::Exact(5));
        let w = LiftedClass::principal(KuClass::new(2, 1)).unwrap();
        assert_eq!(phase_gap_class(a, w).unwrap(), PhaseGap::Between(0));
        assert_eq!(phase_gap_class(w, a).unwrap(), PhaseGap::Between(-1));
    }

    #[test]
    fn branch_must_match() {
        assert!(LiftedClass::new(ALPHA, 6).is_ok());
        assert_eq!(LiftedClass::new(ALPHA, 1), Err(Error::BranchMismatch { branch: 1, sextant: 0 }));
    }
}
