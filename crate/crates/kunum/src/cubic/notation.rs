//! Reading and writing classes in α/β/γ notation.
//!
//! Grammar accepted by [`parse_class`]:
//!
//! ```text
//! class  := coords | expr | "0"
//! coords := ["("] int ("," | " ") int [")"]
//! expr   := [sign] term (sign term)*
//! term   := [digits ["*"]] symbol
//! symbol := "a" | "b" | "g" | "α" | "β" | "γ" | "alpha" | "beta" | "gamma"
//! sign   := "+" | "-" | "−"
//! ```

use super::phase::sextant_index;
use super::{KuClass, ALPHA, BETA, GAMMA};
use crate::error::{Error, Result};
use crate::lattice::{cross, LatticeVector};

const SYMBOLS: [&str; 3] = ["α", "β", "γ"];

// Sextant rays in counter-clockwise order: (generator index, sign).
const RAYS: [(usize, i64); 6] = [(0, 1), (1, 1), (2, 1), (0, -1), (1, -1), (2, -1)];

fn generator(i: usize) -> LatticeVector {
    [ALPHA, BETA, GAMMA][i].vector()
}

fn ray(s: usize) -> LatticeVector {
    let (g, sign) = RAYS[s];
    sign * generator(g)
}

/// Writes `v` with the two rays bounding its sextant, both coefficients
/// of the same orientation, e.g. `2β+γ`, `α-2γ`, `-α-3β`.
pub fn format_class(v: KuClass) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let s = sextant_index(v).expect("nonzero class") as usize;
    let t = (s + 1) % 6;
    let x = cross(v.vector(), ray(t)) as i64;
    let y = cross(ray(s), v.vector()) as i64;
    let mut terms = vec![(RAYS[s].0, RAYS[s].1 * x), (RAYS[t].0, RAYS[t].1 * y)];
    terms.retain(|&(_, c)| c != 0);
    terms.sort();
    let mut out = String::new();
    for (i, (g, c)) in terms.into_iter().enumerate() {
        if c < 0 {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(SYMBOLS[g]);
    }
    out
}

fn parse_err(input: &str, reason: &str) -> Error {
    Error::Parse { input: input.into(), reason: reason.into() }
}

fn parse_coords(s: &str) -> Option<KuClass> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> =
        t.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
    if parts.len() != 2 {
        return None;
    }
    let n = parts[0].replace('−', "-").parse().ok()?;
    let m = parts[1].replace('−', "-").parse().ok()?;
    Some(KuClass::new(n, m))
}

/// Parses a class in coordinate or symbolic form.
pub fn parse_class(input: &str) -> Result<KuClass> {
    let s = input.trim();
    if s.is_empty() {
        return Err(parse_err(input, "empty class"));
    }
    if s == "0" {
        return Ok(KuClass::new(0, 0));
    }
    if let Some(c) = parse_coords(s) {
        return Ok(c);
    }
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut total = (0i64, 0i64);
    let mut first = true;
    while i < chars.len() {
        let mut sign = 1i64;
        match chars[i] {
            '+' => i += 1,
            '-' | '−' => {
                sign = -1;
                i += 1;
            }
            _ if !first => return Err(parse_err(input, "expected + or - between terms")),
            _ => {}
        }
        first = false;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if i > start {
            chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| parse_err(input, "coefficient too large"))?
        } else {
            1
        };
        if i < chars.len() && chars[i] == '*' {
            i += 1;
        }
        let rest: String = chars[i..].iter().collect();
        let (g, len) = [
            ("alpha", 0usize),
            ("beta", 1),
            ("gamma", 2),
            ("α", 0),
            ("β", 1),
            ("γ", 2),
            ("a", 0),
            ("b", 1),
            ("g", 2),
        ]
        .iter()
        .find(|(name, _)| rest.starts_with(name))
        .map(|(name, g)| (*g, name.chars().count()))
        .ok_or_else(|| parse_err(input, "expected a, b or g"))?;
        i += len;
        let gv = generator(g);
        let c = sign.checked_mul(coeff).ok_or_else(|| parse_err(input, "coefficient too large"))?;
        total.0 = total
            .0
            .checked_add(c.checked_mul(gv.a).ok_or_else(|| parse_err(input, "overflow"))?)
            .ok_or_else(|| parse_err(input, "overflow"))?;
        total.1 = total
            .1
            .checked_add(c.checked_mul(gv.b).ok_or_else(|| parse_err(input, "overflow"))?)
            .ok_or_else(|| parse_err(input, "overflow"))?;
    }
    Ok(KuClass::new(total.0, total.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_like_the_table() {
        let cases = [
            ((0, 1), "β"),
            ((-1, 1), "γ"),
            ((0, -1), "-β"),
            ((-1, 2), "β+γ"),
            ((-1, 3), "2β+γ"),
            ((-2, -1), "-2α-β"),
            ((3, -2), "α-2γ"),
            ((-1, 0), "-α"),
            ((1, -3), "-2β-γ"),
            ((0, -2), "-2β"),
            ((-1, -3), "-α-3β"),
            ((0, 0), "0"),
        ];
        for ((n, m), s) in cases {
            assert_eq!(format_class(KuClass::new(n, m)), s, "({n},{m})");
        }
        assert_eq!(format_class(-2 * GAMMA), "-2γ");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_class("2a+b").unwrap(), KuClass::new(2, 1));
        assert_eq!(parse_class("b+g").unwrap(), KuClass::new(-1, 2));
        assert_eq!(parse_class("-α-3β").unwrap(), KuClass::new(-1, -3));
        assert_eq!(parse_class("2,1").unwrap(), KuClass::new(2, 1));
        assert_eq!(parse_class("(−1, 2)").unwrap(), KuClass::new(-1, 2));
        assert_eq!(parse_class("3*gamma").unwrap(), KuClass::new(-3, 3));
        assert!(parse_class("2x").is_err());
        assert!(parse_class("a b").is_err());
    }

    #[test]
    fn round_trip() {
        for n in -6..=6 {
            for m in -6..=6 {
                let v = KuClass::new(n, m);
                assert_eq!(parse_class(&format_class(v)).unwrap(), v);
            }
        }
    }
}
