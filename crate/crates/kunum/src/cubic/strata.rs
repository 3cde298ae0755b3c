//! Stratifications of moduli spaces by extension loci.

use serde::Serialize;

use super::phase::{phase_gap_class, LiftedClass, PhaseGap};
use super::{chi, moduli_dim, KuClass};
use crate::error::{Error, Result};

/// One extension locus `E(v1, v2)` inside `M(v1 + v2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub v1: KuClass,
    pub v2: KuClass,
    pub codim: i128,
    pub dominant: bool,
}

/// Strata of `M(nα + mβ)` for `n, m ≥ 1`: all `(iα+jβ, (n−i)α+(m−j)β)`
/// with `0 ≤ i ≤ n`, `0 ≤ j ≤ m` and `j·n < i·m`. The `(nα, mβ)` stratum
/// is dominant and has codimension 0.
pub fn strata(v: KuClass) -> Result<Vec<Stratum>> {
    let (n, m) = (v.n, v.m);
    if n < 1 || m < 1 {
        return Err(Error::OutOfSextant { n, m });
    }
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=m {
            if (j as i128) * (n as i128) >= (i as i128) * (m as i128) {
                continue;
            }
            let v1 = KuClass::new(i, j);
            let v2 = KuClass::new(n - i, m - j);
            let codim = -chi(v1, v2);
            let dominant = (i, j) == (n, 0);
            if dominant && codim != 0 {
                return Err(Error::Internal(format!("dominant stratum of {v:?} has codim {codim}")));
            }
            out.push(Stratum { v1, v2, codim, dominant });
        }
    }
    Ok(out)
}

/// `M(mβ) = E(α, (m−1)β + γ)` for `m ≥ 2`; the single stratum is dominant.
/// Here `−χ(α, (m−1)β + γ) = −1` measures the generic fibre of the
/// extension map rather than a codimension, so the stratum is recorded with
/// codimension 0.
pub fn strata_beta(m: i64) -> Result<Vec<Stratum>> {
    if m < 2 {
        return Err(Error::PreconditionFailed(format!("multiple of beta needs m >= 2, got {m}")));
    }
    let v1 = KuClass::new(1, 0);
    let v2 = KuClass::new(-1, m);
    Ok(vec![Stratum { v1, v2, codim: 0, dominant: true }])
}

/// Codimension of the extension locus and whether the phase hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtLocus {
    pub codim: i128,
    /// `φ(w) − φ(v)` for the principal lifts, reduced to `[0, 2)`.
    pub gap: PhaseGap,
    /// Gap in `(0, 1)`.
    pub valid: bool,
    /// Gap in `(0, 1/3)`.
    pub small_gap: bool,
    pub reasons: Vec<String>,
}

pub fn ext_locus_codim(v: KuClass, w: KuClass) -> Result<ExtLocus> {
    let gap = phase_gap_class(LiftedClass::principal(v)?, LiftedClass::principal(w)?)?.modulo_two();
    let valid = gap.in_open(0, 3);
    let small_gap = gap.in_open(0, 1);
    let mut reasons = Vec::new();
    if !valid {
        reasons.push(format!("phase gap {gap} is not in (0, 1)"));
    }
    if small_gap {
        reasons.push("phase gap in (0, 1/3): the locus is a proper subset".into());
    }
    Ok(ExtLocus { codim: -chi(v, w), gap, valid, small_gap, reasons })
}

/// `dim M(v) + dim M(w) − χ(w, v) − 1`, checked against
/// `dim M(v + w) + χ(v, w)`.
pub fn proj_ext_dim(v: KuClass, w: KuClass) -> Result<i128> {
    let d = moduli_dim(v)? + moduli_dim(w)? - chi(w, v) - 1;
    let s = v + w;
    let other = 1 - chi(s, s) + chi(v, w);
    if d != other {
        return Err(Error::Internal(format!("dimension identity fails for {v:?}, {w:?}")));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{ALPHA, BETA};

    #[test]
    fn small_strata() {
        let s = strata(KuClass::new(1, 1)).unwrap();
        assert_eq!(s, vec![Stratum { v1: ALPHA, v2: BETA, codim: 0, dominant: true }]);
        let s = strata(KuClass::new(2, 1)).unwrap();
        assert_eq!(
            s,
            vec![
                Stratum { v1: ALPHA, v2: ALPHA + BETA, codim: 1, dominant: false },
                Stratum { v1: 2 * ALPHA, v2: BETA, codim: 0, dominant: true },
            ]
        );
        assert!(strata(KuClass::new(0, 3)).is_err());
        assert_eq!(strata_beta(3).unwrap()[0].v2, KuClass::new(-1, 3));
    }

    #[test]
    fn ext_examples() {
        let e = ext_locus_codim(ALPHA, BETA).unwrap();
        assert_eq!((e.codim, e.valid, e.small_gap), (0, true, false));
        let e = ext_locus_codim(ALPHA, KuClass::new(2, 1)).unwrap();
        assert!(e.small_gap && e.codim > 0);
        assert_eq!(proj_ext_dim(ALPHA, BETA).unwrap(), 4);
        assert_eq!(proj_ext_dim(ALPHA, 2 * BETA).unwrap(), 8);
    }
}
