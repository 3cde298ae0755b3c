//! Static lattice data for each covered Fano threefold.
//!
//! The data file `data/catalog.toml` is compiled into the binary and parsed
//! once.

use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_forms::{EulerForm, Family, SerreIsometry};
use crate::lattice::{LatticeVector, Mat2};

pub const CATALOG_TOML: &str = include_str!("../data/catalog.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EntryLabel {
    pub index: u32,
    pub degree: u32,
}

impl fmt::Display for EntryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.index, self.degree)
    }
}

impl std::str::FromStr for EntryLabel {
    type Err = Error;
    /// Accepts `2,3`, `(2,3)` or `2:3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split([',', ':']).map(str::trim).collect();
        let bad = || Error::Parse { input: s.into(), reason: "expected index,degree".into() };
        if parts.len() != 2 {
            return Err(bad());
        }
        Ok(EntryLabel {
            index: parts[0].parse().map_err(|_| bad())?,
            degree: parts[1].parse().map_err(|_| bad())?,
        })
    }
}

/// Global dimension of the stability condition: `< value` when strict,
/// `= value` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GldimBound {
    pub num: i64,
    pub den: i64,
    pub strict: bool,
}

impl GldimBound {
    pub fn value(&self) -> Ratio<i64> {
        Ratio::new(self.num, self.den)
    }
}

impl fmt::Display for GldimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gldim {} {}", if self.strict { "<" } else { "=" }, self.value())
    }
}

/// The base set: primitive `v` with `χ(v,v) ≥ chi_at_least`, `|v| = 1`, or
/// `χ(v,v)` in `orbit_chi` (classes permuted by the Serre functor, anchored
/// at `orbit_witness`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePredicate {
    pub chi_at_least: i64,
    #[serde(default)]
    pub orbit_chi: Vec<i64>,
    #[serde(default)]
    pub orbit_witness: Option<[i64; 2]>,
}

impl BasePredicate {
    pub fn witness(&self) -> Option<LatticeVector> {
        self.orbit_witness.map(|[a, b]| LatticeVector::new(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoKuEntry {
    pub index: u32,
    pub degree: u32,
    pub name: String,
    pub basis: String,
    #[serde(default)]
    pub euler_matrix: Option<[[i64; 2]; 2]>,
    #[serde(default)]
    pub serre: Option<[[i64; 2]; 2]>,
    #[serde(default)]
    pub serre_reconstructed: bool,
    #[serde(default)]
    pub serre_relation: Option<String>,
    #[serde(default)]
    pub gldim: Option<GldimBound>,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub family_n: Option<i64>,
    #[serde(default)]
    pub base: Option<BasePredicate>,
    #[serde(default)]
    pub curve_genus: Option<u32>,
    pub certifiable: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl FanoKuEntry {
    pub fn label(&self) -> EntryLabel {
        EntryLabel { index: self.index, degree: self.degree }
    }

    pub fn form(&self) -> Option<EulerForm> {
        self.euler_matrix.map(|m| EulerForm::from_matrix(Mat2 { m }))
    }

    pub fn serre_isometry(&self) -> Option<SerreIsometry> {
        self.serre.and_then(|m| SerreIsometry::new(Mat2 { m }).ok())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    #[serde(rename = "entry")]
    pub entries: Vec<FanoKuEntry>,
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| toml::from_str(CATALOG_TOML).expect("embedded catalog parses"))
}

pub fn lookup(index: u32, degree: u32) -> Result<&'static FanoKuEntry> {
    if let Some(e) = catalog().entries.iter().find(|e| e.index == index && e.degree == degree) {
        return Ok(e);
    }
    let note = if index == 1 && degree <= 8 {
        "; for index 1 and degree at most 8 the convention on the Kuznetsov component is floating".into()
    } else {
        String::new()
    };
    Err(Error::Uncovered { index, degree, note })
}

pub fn lookup_label(label: EntryLabel) -> Result<&'static FanoKuEntry> {
    lookup(label.index, label.degree)
}

/// Riemann–Roch on a genus-g curve: `(r1·d2 − r2·d1) − (g−1)·r1·r2`.
pub fn curve_pairing(g: i64, (r1, d1): (i64, i64), (r2, d2): (i64, i64)) -> i128 {
    let (r1, d1, r2, d2) = (r1 as i128, d1 as i128, r2 as i128, d2 as i128);
    (r1 * d2 - r2 * d1) - (g as i128 - 1) * r1 * r2
}

/// Lattice coordinates `(−deg, rank)` of a curve character.
pub fn curve_coordinates((r, d): (i64, i64)) -> LatticeVector {
    LatticeVector::new(-d, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler_forms::{classify_form, compatible};

    #[test]
    fn entries_exist() {
        assert_eq!(catalog().version, 1);
        let cubic = lookup(2, 3).unwrap();
        assert_eq!(cubic.family, Some(Family::IPlus));
        assert!(cubic.gldim.unwrap().strict);
        assert_eq!(lookup(2, 2).unwrap().euler_matrix, Some([[-1, -1], [-1, -2]]));
        assert_eq!(lookup(2, 1).unwrap().base.as_ref().unwrap().orbit_chi, vec![-3]);
        assert!(!lookup(1, 22).unwrap().certifiable);
        assert!(matches!(lookup(1, 8), Err(Error::Uncovered { ref note, .. }) if note.contains("floating")));
        assert!(matches!(lookup(3, 3), Err(Error::Uncovered { .. })));
    }

    #[test]
    fn every_form_is_compatible_and_classifies_as_recorded() {
        for e in &catalog().entries {
            let (Some(q), Some(d)) = (e.form(), e.serre_isometry()) else { continue };
            assert!(compatible(&q, &d), "{}", e.label());
            match e.family {
                Some(f) => {
                    let c = classify_form(&q, &d).unwrap();
                    assert_eq!((c.family, Some(c.n)), (f, e.family_n), "{}", e.label());
                }
                None => assert!(classify_form(&q, &d).is_err(), "{}", e.label()),
            }
        }
    }

    #[test]
    fn curve_pairing_examples() {
        assert_eq!(curve_pairing(2, (1, 0), (1, 0)), -1);
        assert_eq!(curve_pairing(1, (3, 5), (3, 5)), 0);
        assert_eq!(curve_pairing(2, (2, 1), (1, 0)), -3);
    }

    #[test]
    fn curve_entries_match_riemann_roch() {
        for e in catalog().entries.iter().filter(|e| e.curve_genus.is_some()) {
            let g = e.curve_genus.unwrap() as i64;
            let q = e.form().unwrap();
            for r1 in -3..=3 {
                for d1 in -3..=3 {
                    for r2 in -3..=3 {
                        for d2 in -3..=3 {
                            let x = curve_coordinates((r1, d1));
                            let y = curve_coordinates((r2, d2));
                            assert_eq!(q.pair(x, y), curve_pairing(g, (r1, d1), (r2, d2)));
                        }
                    }
                }
            }
        }
    }
}
