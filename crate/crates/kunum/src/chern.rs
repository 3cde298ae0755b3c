//! Chern characters on a smooth cubic threefold and Hirzebruch–Riemann–Roch.
//!
//! A character is `(r, c1·H, c2·L, c3·P)` with `H² = 3L`, `H·L = P`,
//! `H³ = 3P`. `c2` and `c3` are stored as the integers `2·c2` and `6·c3`.
//!
//! Curve classes: for a curve `C` of degree `d` and arithmetic genus `g`,
//! Grothendieck–Riemann–Roch with `td₁(C) = (1 − g)·pt` gives
//! `ch(O_C) = (0, 0, d·L, (1 − g − d)·P)`, hence
//! `ch(I_C) = (1, 0, −d·L, (d + g − 1)·P)`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cubic::KuClass;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernCharacterY3 {
    pub r: i64,
    pub c1: i64,
    /// `2·c2`.
    pub c2_twice: i64,
    /// `6·c3`.
    pub c3_sixfold: i64,
}

impl ChernCharacterY3 {
    pub const fn new(r: i64, c1: i64, c2_twice: i64, c3_sixfold: i64) -> Self {
        ChernCharacterY3 { r, c1, c2_twice, c3_sixfold }
    }

    pub fn c2(&self) -> Ratio<i64> {
        Ratio::new(self.c2_twice, 2)
    }

    pub fn c3(&self) -> Ratio<i64> {
        Ratio::new(self.c3_sixfold, 6)
    }

    /// `O_Y(kH)`.
    pub fn line_bundle(k: i64) -> Self {
        twist(STRUCTURE_SHEAF, k)
    }

    fn map(self, o: Self, f: impl Fn(i64, i64) -> i64) -> Self {
        ChernCharacterY3::new(
            f(self.r, o.r),
            f(self.c1, o.c1),
            f(self.c2_twice, o.c2_twice),
            f(self.c3_sixfold, o.c3_sixfold),
        )
    }

    pub fn scale(self, k: i64) -> Self {
        self.map(self, |a, _| k * a)
    }
}

impl std::ops::Add for ChernCharacterY3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.map(o, |a, b| a + b)
    }
}

impl std::ops::Sub for ChernCharacterY3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.map(o, |a, b| a - b)
    }
}

fn term(coeff: Ratio<i64>, symbol: &str, first: bool) -> Option<String> {
    if coeff == Ratio::from_integer(0) {
        return None;
    }
    let sign = if coeff < Ratio::from_integer(0) {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let a = if coeff < Ratio::from_integer(0) { -coeff } else { coeff };
    let body = match (symbol.is_empty(), *a.numer(), *a.denom()) {
        (true, n, 1) => n.to_string(),
        (true, n, d) => format!("{n}/{d}"),
        (false, 1, 1) => symbol.to_string(),
        (false, n, 1) => format!("{n}{symbol}"),
        (false, 1, d) => format!("{symbol}/{d}"),
        (false, n, d) => format!("{n}{symbol}/{d}"),
    };
    Some(format!("{sign}{body}"))
}

impl fmt::Display for ChernCharacterY3 {
    /// `(2, -H, -L/2, P/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (Ratio::from_integer(self.r), ""),
            (Ratio::from_integer(self.c1), "H"),
            (self.c2(), "L"),
            (self.c3(), "P"),
        ];
        let shown: Vec<String> =
            parts.iter().map(|&(c, s)| term(c, s, true).unwrap_or_else(|| "0".into())).collect();
        write!(f, "({})", shown.join(", "))
    }
}

pub const STRUCTURE_SHEAF: ChernCharacterY3 = ChernCharacterY3::new(1, 0, 0, 0);
/// `α = (2, −H, −L/2, P/2)`.
pub const CH_ALPHA: ChernCharacterY3 = ChernCharacterY3::new(2, -1, -1, 3);
/// `β = (1, 0, −L, 0)`, the ideal sheaf of a line.
pub const CH_BETA: ChernCharacterY3 = ChernCharacterY3::new(1, 0, -2, 0);
/// `γ = (−1, H, −L/2, −P/2)`.
pub const CH_GAMMA: ChernCharacterY3 = ChernCharacterY3::new(-1, 1, -1, -3);

/// `χ(E, F) = ∫ ch(E)^∨ · ch(F) · td(Y3)` with `td = (1, H, 2L, P)`.
pub fn euler_pairing(e: &ChernCharacterY3, f: &ChernCharacterY3) -> Result<i64> {
    let (r, a, b, c) = (e.r as i128, e.c1 as i128, e.c2_twice as i128, e.c3_sixfold as i128);
    let (r2, a2, b2, c2) = (f.r as i128, f.c1 as i128, f.c2_twice as i128, f.c3_sixfold as i128);
    // Six times the degree-3 part, grouped by the degree of ch^∨·ch.
    let six_chi = (r * c2 - r2 * c - 3 * a * b2 + 3 * a2 * b)
        + (3 * (r * b2 + r2 * b) - 18 * a * a2)
        + 12 * (r * a2 - a * r2)
        + 6 * r * r2;
    if six_chi % 6 != 0 {
        return Err(Error::IntegralityViolation { numerator: six_chi });
    }
    i64::try_from(six_chi / 6).map_err(|_| Error::Overflow("euler_pairing"))
}

/// `E · e^{kH}`.
pub fn twist(e: ChernCharacterY3, k: i64) -> ChernCharacterY3 {
    let (r, a, b, c) = (e.r, e.c1, e.c2_twice, e.c3_sixfold);
    ChernCharacterY3::new(
        r,
        a + r * k,
        b + 6 * a * k + 3 * r * k * k,
        c + 3 * b * k + 9 * a * k * k + 3 * r * k * k * k,
    )
}

/// Left mutation through `O(H)` and then `O`, at the level of characters.
pub fn ku_project(e: ChernCharacterY3) -> Result<ChernCharacterY3> {
    let oh = ChernCharacterY3::line_bundle(1);
    let e1 = e - oh.scale(euler_pairing(&oh, &e)?);
    Ok(e1 - STRUCTURE_SHEAF.scale(euler_pairing(&STRUCTURE_SHEAF, &e1)?))
}

/// `E = n·α + m·β`.
pub fn to_ku_basis(e: ChernCharacterY3) -> Result<KuClass> {
    let n = -e.c1;
    let m = e.r - 2 * n;
    let residual = e - from_ku_basis(KuClass::new(n, m));
    if residual != ChernCharacterY3::new(0, 0, 0, 0) {
        return Err(Error::NotInKuSpan { residual: residual.to_string() });
    }
    Ok(KuClass::new(n, m))
}

pub fn from_ku_basis(v: KuClass) -> ChernCharacterY3 {
    CH_ALPHA.scale(v.n) + CH_BETA.scale(v.m)
}

/// `ch(I_C) = (1, 0, −d·L, (d + g − 1)·P)`.
pub fn ideal_curve_character(d: i64, g: i64) -> ChernCharacterY3 {
    ChernCharacterY3::new(1, 0, -2 * d, 6 * (d + g - 1))
}

/// Class in Ku(Y3) of `I_C(m)` for a curve of degree `d` and genus `g`.
pub fn hilbert_character(d: i64, g: i64, m: i64) -> Result<KuClass> {
    to_ku_basis(ku_project(twist(ideal_curve_character(d, g), m))?)
}

/// The `(d, g, m)` triples of the small-degree table: a twist `m` for which
/// the projection from the Hilbert scheme of curves is expected dominant.
pub const HILBERT_TABLE: [(i64, i64, i64); 16] = [
    (1, 0, 0),
    (2, 0, 1),
    (2, 0, 2),
    (3, 0, 1),
    (3, 1, 2),
    (4, 0, 1),
    (4, 0, 2),
    (4, 0, 3),
    (4, 1, 2),
    (5, 0, 3),
    (5, 1, 2),
    (5, 1, 3),
    (5, 2, 2),
    (6, 1, 2),
    (6, 1, 3),
    (7, 2, 3),
];
