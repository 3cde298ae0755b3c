//! Abel–Jacobi fibre data and the per-class summary report.

use serde::Serialize;

use super::{chi, in_canonical_sextant, moduli_dim, sextant_normalize, signed_orbit, KuClass};
use crate::error::{Error, Result};
use crate::lattice::{is_primitive, pick_decompose};

/// Canonical degree on the exceptional locus of a two-vertex quiver moduli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverDegree {
    pub degree: i64,
    /// Dimension of the projective space `Z ≅ P^{a21−1}`.
    pub z_dim: i64,
}

/// `a12 − a21`, with `Z` of dimension `a21 − 1`.
pub fn quiver_canonical_degree(a11: i64, a22: i64, a12: i64, a21: i64) -> Result<QuiverDegree> {
    if a11 < 0 || a22 < 0 || a12 < 0 {
        return Err(Error::PreconditionFailed("arrow counts must be nonnegative".into()));
    }
    if a21 < 2 {
        return Err(Error::TooFewArrows(a21));
    }
    Ok(QuiverDegree { degree: a12 - a21, z_dim: a21 - 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanoFiber {
    pub v_plus: KuClass,
    pub v_minus: KuClass,
    /// `χ(v₊, v₋)`.
    pub chi_pm: i128,
    /// `χ(v₋, v₊)`.
    pub chi_mp: i128,
    pub degree: i128,
    pub r: i128,
    pub passes: bool,
}

/// Local quiver data at the most degenerate point of an Abel–Jacobi fibre.
pub fn fano_fiber_check(v: KuClass) -> Result<FanoFiber> {
    if !is_primitive(v.vector()) {
        return Err(Error::PreconditionFailed(format!("{v:?} is not primitive")));
    }
    if !in_canonical_sextant(v) {
        return Err(Error::PreconditionFailed(format!("{v:?} is not in the canonical sextant")));
    }
    if chi(v, v) >= -4 {
        return Err(Error::PreconditionFailed(format!("chi({v:?}, {v:?}) = {} >= -4", chi(v, v))));
    }
    let (m, p) = pick_decompose(v.vector())?;
    let (vm, vp) = (KuClass::from_vector(m), KuClass::from_vector(p));
    let chi_pm = chi(vp, vm);
    let chi_mp = chi(vm, vp);
    let degree = chi_pm - chi_mp;
    let r = -chi_pm;
    let passes = chi_pm <= -2 && degree == -1;
    if passes {
        let q = quiver_canonical_degree(0, 0, -chi_mp as i64, r as i64)?;
        if q.degree as i128 != degree {
            return Err(Error::Internal(format!("quiver degree mismatch at {v:?}")));
        }
    }
    Ok(FanoFiber { v_plus: vp, v_minus: vm, chi_pm, chi_mp, degree, r, passes })
}

const LABELS: [((i64, i64), &str, &str); 5] = [
    ((1, 0), "F(Y3)", "Fano surface of lines"),
    ((-1, 2), "Bl_pΘ", "blow-up of the theta divisor at its singular point"),
    (
        (0, 2),
        "Bl_{F(Y3)}J(Y3)",
        "blow-up of the intermediate Jacobian along the Fano surface; Abel–Jacobi map birational",
    ),
    (
        (2, 1),
        "V14 fibre",
        "Abel–Jacobi fibre is a V14-type Fano threefold; orbit contains 2β+γ, realised by Hilb^{4,0}",
    ),
    ((1, 2), "V14 fibre", "Abel–Jacobi fibre is a V14-type Fano threefold"),
];

/// Identification of small moduli spaces, up to the signed Serre orbit.
pub fn small_class_label(v: KuClass) -> Option<(&'static str, &'static str)> {
    let orbit = signed_orbit(v);
    LABELS.iter().find(|((n, m), _, _)| orbit.contains(&KuClass::new(*n, *m))).map(|(_, l, d)| (*l, *d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliInfo {
    pub class: KuClass,
    pub notation: String,
    pub dim: i128,
    pub chi: i128,
    pub primitive: bool,
    pub normal_form: KuClass,
    pub normal_k: u32,
    pub normal_sign: i64,
    pub label: Option<String>,
    pub label_note: Option<String>,
    pub b1: Option<u32>,
    pub b2: Option<u32>,
    pub aj_fiber_dim: Option<i128>,
    pub fano_fiber: Option<bool>,
    pub mrc_quotient: Option<String>,
}

pub fn moduli_info(v: KuClass) -> Result<ModuliInfo> {
    let dim = moduli_dim(v)?;
    let (normal_form, normal_k, normal_sign) = sextant_normalize(v)?;
    let primitive = is_primitive(v.vector());
    let c = chi(v, v);
    let label = small_class_label(v);
    let large = primitive && c < -4;
    let fano_fiber = if large { Some(fano_fiber_check(normal_form)?.passes) } else { None };
    Ok(ModuliInfo {
        class: v,
        notation: v.to_string(),
        dim,
        chi: c,
        primitive,
        normal_form,
        normal_k,
        normal_sign,
        label: label.map(|l| l.0.to_string()),
        label_note: label.map(|l| l.1.to_string()),
        b1: large.then_some(10),
        b2: large.then_some(46),
        aj_fiber_dim: large.then_some(dim - 5),
        fano_fiber,
        mrc_quotient: large.then(|| "J(Y3), via the Abel–Jacobi map".to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{ALPHA, BETA, GAMMA};

    #[test]
    fn quiver_examples() {
        assert_eq!(quiver_canonical_degree(0, 0, 1, 2).unwrap().degree, -1);
        assert_eq!(quiver_canonical_degree(5, 7, 3, 3).unwrap().degree, 0);
        assert_eq!(quiver_canonical_degree(0, 0, 4, 2).unwrap(), QuiverDegree { degree: 2, z_dim: 1 });
        assert_eq!(quiver_canonical_degree(0, 0, 1, 1), Err(Error::TooFewArrows(1)));
    }

    #[test]
    fn fano_examples() {
        let f = fano_fiber_check(KuClass::new(2, 1)).unwrap();
        assert_eq!((f.chi_pm, f.chi_mp, f.degree, f.r, f.passes), (-2, -1, -1, 2, true));
        assert_eq!(f.v_plus, ALPHA + BETA);
        assert!(fano_fiber_check(KuClass::new(1, 1)).is_err());
        let f = fano_fiber_check(KuClass::new(5, 4)).unwrap();
        assert!(f.passes && f.degree == -1);
    }

    #[test]
    fn info_examples() {
        let i = moduli_info(BETA).unwrap();
        assert_eq!((i.dim, i.label.as_deref()), (2, Some("F(Y3)")));
        assert_eq!(moduli_info(GAMMA).unwrap().label.as_deref(), Some("F(Y3)"));
        let i = moduli_info(KuClass::new(1, 2)).unwrap();
        assert_eq!(
            (i.dim, i.aj_fiber_dim, i.fano_fiber, i.b1, i.b2),
            (8, Some(3), Some(true), Some(10), Some(46))
        );
        let i = moduli_info(2 * BETA).unwrap();
        assert_eq!((i.dim, i.label.as_deref()), (5, Some("Bl_{F(Y3)}J(Y3)")));
        assert_eq!(moduli_info(BETA + GAMMA).unwrap().label.as_deref(), Some("Bl_pΘ"));
    }
}
