//! Argument parsing helpers.
//!
//! Class grammar (per class):
//!
//! ```text
//! class  := pair | coords | symbolic
//! pair   := INT INT                      two separate arguments
//! coords := INT "," INT | "(" INT ws INT ")"
//! symbolic := term (("+" | "-") term)*   e.g. 2a+b, b+g, -α-3β
//! term   := [INT] ["*"] gen
//! gen    := a | b | g | α | β | γ | alpha | beta | gamma
//! ```

use kunum::catalog::{lookup_label, EntryLabel, FanoKuEntry};
use kunum::cubic::{parse_class, KuClass};
use kunum::{Error, Result};

fn parse_err(input: &str, reason: &str) -> Error {
    Error::Parse { input: input.into(), reason: reason.into() }
}

pub fn classes(tokens: &[String], count: usize) -> Result<Vec<KuClass>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let int = |s: &str| s.trim().replace('−', "-").parse::<i64>().ok();
        match (int(&tokens[i]), tokens.get(i + 1).and_then(|t| int(t))) {
            (Some(n), Some(m)) => {
                out.push(KuClass::new(n, m));
                i += 2;
            }
            _ => {
                out.push(parse_class(&tokens[i])?);
                i += 1;
            }
        }
    }
    if out.len() != count {
        return Err(parse_err(
            &tokens.join(" "),
            &format!("expected {count} class(es), found {}", out.len()),
        ));
    }
    Ok(out)
}

pub fn class(tokens: &[String]) -> Result<KuClass> {
    Ok(classes(tokens, 1)?[0])
}

pub fn entry(s: &str) -> Result<&'static FanoKuEntry> {
    let label: EntryLabel = s.parse()?;
    lookup_label(label)
}

/// Four integers, ignoring brackets: `-1,0,-1,-1` or `[[-1,0],[-1,-1]]`.
pub fn matrix(s: &str) -> Result<[[i64; 2]; 2]> {
    let cleaned: String =
        s.chars().map(|c| if matches!(c, '[' | ']' | '(' | ')' | ';') { ',' } else { c }).collect();
    let nums: Vec<i64> = cleaned
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.replace('−', "-").parse::<i64>().map_err(|_| parse_err(s, "expected integers")))
        .collect::<Result<_>>()?;
    match nums[..] {
        [a, b, c, d] => Ok([[a, b], [c, d]]),
        _ => Err(parse_err(s, "expected four entries")),
    }
}

/// `a,b` as a birationality-graph node.
pub fn node(s: &str) -> Result<(i64, i64)> {
    let c = parse_class(s)?;
    Ok((c.n, c.m))
}

/// `N0:N1,M0:M1`.
pub fn window(s: &str) -> Result<((i64, i64), (i64, i64))> {
    let range = |t: &str| -> Result<(i64, i64)> {
        let (a, b) = t.split_once(':').ok_or_else(|| parse_err(s, "expected N0:N1"))?;
        let p = |x: &str| x.trim().parse::<i64>().map_err(|_| parse_err(s, "expected integers"));
        Ok((p(a)?, p(b)?))
    };
    let (n, m) = s.split_once(',').ok_or_else(|| parse_err(s, "expected N0:N1,M0:M1"))?;
    Ok((range(n)?, range(m)?))
}
