//! Lattice calculators for the Kuznetsov component of a cubic threefold.
//!
//! Classes are written `n·α + m·β`; `γ = β − α = (−1, 1)`.

mod fiber;
mod notation;
mod phase;
mod strata;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Mat2};

pub use fiber::{
    fano_fiber_check, moduli_info, quiver_canonical_degree, small_class_label, FanoFiber, ModuliInfo,
    QuiverDegree,
};
pub use notation::parse_class;
pub use phase::{phase_gap_class, sextant_index, LiftedClass, PhaseGap};
pub use strata::{ext_locus_codim, proj_ext_dim, strata, strata_beta, ExtLocus, Stratum};

/// A character `n·α + m·β` of Ku(Y3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KuClass {
    pub n: i64,
    pub m: i64,
}

pub const ALPHA: KuClass = KuClass { n: 1, m: 0 };
pub const BETA: KuClass = KuClass { n: 0, m: 1 };
pub const GAMMA: KuClass = KuClass { n: -1, m: 1 };

/// Serre action: `α ↦ α − β`, `β ↦ α`.
pub const SERRE: Mat2 = Mat2::new(1, 1, -1, 0);
/// Rotation by π/3: `α ↦ β ↦ γ ↦ −α`.
pub const ROTATION: Mat2 = Mat2::new(0, -1, 1, 1);

impl KuClass {
    pub const fn new(n: i64, m: i64) -> Self {
        KuClass { n, m }
    }

    pub fn is_zero(self) -> bool {
        self.n == 0 && self.m == 0
    }

    pub fn vector(self) -> LatticeVector {
        LatticeVector::new(self.n, self.m)
    }

    pub fn from_vector(v: LatticeVector) -> Self {
        KuClass::new(v.a, v.b)
    }

    pub fn nonzero(self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::ZeroClass)
        } else {
            Ok(self)
        }
    }
}

impl std::ops::Add for KuClass {
    type Output = KuClass;
    fn add(self, o: KuClass) -> KuClass {
        KuClass::from_vector(self.vector() + o.vector())
    }
}

impl std::ops::Sub for KuClass {
    type Output = KuClass;
    fn sub(self, o: KuClass) -> KuClass {
        KuClass::from_vector(self.vector() - o.vector())
    }
}

impl std::ops::Neg for KuClass {
    type Output = KuClass;
    fn neg(self) -> KuClass {
        KuClass::from_vector(-self.vector())
    }
}

impl std::ops::Mul<KuClass> for i64 {
    type Output = KuClass;
    fn mul(self, v: KuClass) -> KuClass {
        KuClass::from_vector(self * v.vector())
    }
}

impl fmt::Display for KuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::format_class(*self))
    }
}

/// `χ(v, w) = −n₁n₂ − m₁n₂ − m₁m₂`. Exact whenever every coordinate is at
/// most `2^62` in absolute value; panics if the `i128` sum overflows.
pub fn chi(v: KuClass, w: KuClass) -> i128 {
    checked_chi(v, w).expect("chi overflows i128")
}

pub fn checked_chi(v: KuClass, w: KuClass) -> Option<i128> {
    let (n1, m1, n2, m2) = (v.n as i128, v.m as i128, w.n as i128, w.m as i128);
    (n1 * n2).checked_add(m1 * n2)?.checked_add(m1 * m2)?.checked_neg()
}

pub fn serre_act(v: KuClass) -> KuClass {
    KuClass::from_vector(SERRE.apply(v.vector()))
}

pub fn rotate(v: KuClass) -> KuClass {
    KuClass::from_vector(ROTATION.apply(v.vector()))
}

/// `1 − χ(v, v)`.
pub fn moduli_dim(v: KuClass) -> Result<i128> {
    v.nonzero()?;
    checked_chi(v, v).and_then(|c| 1i128.checked_sub(c)).ok_or(Error::Overflow("moduli_dim"))
}

/// `{n ≥ 1, m ≥ 0} ∪ {(0, m) : m ≥ 1}`.
pub fn in_canonical_sextant(v: KuClass) -> bool {
    (v.n >= 1 && v.m >= 0) || (v.n == 0 && v.m >= 1)
}

/// `v' = sign·Sᵏ(v)` in the canonical sextant, with the least `k ∈ 0..6`
/// and `sign = +1` preferred.
pub fn sextant_normalize(v: KuClass) -> Result<(KuClass, u32, i64)> {
    v.nonzero()?;
    let mut w = v;
    for k in 0..6 {
        if in_canonical_sextant(w) {
            return Ok((w, k, 1));
        }
        if in_canonical_sextant(-w) {
            return Ok((-w, k, -1));
        }
        w = serre_act(w);
    }
    Err(Error::Internal(format!("{v:?} has no sextant normal form")))
}

/// The twelve classes `±Sᵏ(v)`, deduplicated and sorted.
pub fn signed_orbit(v: KuClass) -> Vec<KuClass> {
    let mut out = Vec::with_capacity(12);
    let mut w = v;
    for _ in 0..6 {
        out.push(w);
        out.push(-w);
        w = serre_act(w);
    }
    out.sort();
    out.dedup();
    out
}
