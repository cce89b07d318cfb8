//! String forms of ring specifications and elements.

use super::{GaloisSpec, RingElem, RingSpec};
use crate::error::{Error, Result};

pub(super) fn render_spec(spec: &RingSpec) -> String {
    match spec {
        RingSpec::ModN { n } => format!("zmod:{n}"),
        RingSpec::Galois(g) => {
            let base = format!("gr:{}:{}:{}", g.p(), g.m(), g.r());
            if g.has_default_modulus() {
                base
            } else {
                let low: Vec<String> = g.modulus().iter().map(u64::to_string).collect();
                format!("{base}:{}", low.join(","))
            }
        }
        RingSpec::Product(fs) => fs.iter().map(render_spec).collect::<Vec<_>>().join("*"),
    }
}

pub(super) fn parse_spec(s: &str) -> Result<RingSpec> {
    let factors = s
        .split('*')
        .map(|part| parse_factor(part.trim()))
        .collect::<Result<Vec<_>>>()?;
    RingSpec::product(factors)
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn parse_factor(s: &str) -> Result<RingSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["zmod", n] => RingSpec::zmod(parse_num(n, "modulus")?),
        ["gr", p, m, r] => RingSpec::galois(
            parse_num(p, "prime")?,
            parse_num(m, "exponent")?,
            parse_num(r, "degree")?,
        ),
        ["gr", p, m, r, low] => {
            let r: usize = parse_num(r, "degree")?;
            let low = low
                .split(',')
                .map(|c| parse_num(c, "modulus coefficient"))
                .collect::<Result<Vec<u64>>>()?;
            if low.len() != r {
                return Err(Error::Parse(format!(
                    "modulus of degree {r} needs {r} low coefficients"
                )));
            }
            GaloisSpec::with_modulus(parse_num(p, "prime")?, parse_num(m, "exponent")?, &low)
                .map(RingSpec::Galois)
        }
        _ => Err(Error::Parse(format!(
            "expected zmod:<n> or gr:<p>:<m>:<r>, got {s:?}"
        ))),
    }
}

pub(super) fn render_elem(spec: &RingSpec, x: &RingElem) -> String {
    match (spec, x) {
        (RingSpec::ModN { .. }, RingElem::Mod(v)) => v.to_string(),
        (RingSpec::Galois(_), RingElem::Poly(c)) => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| {
                    let coef = if v == 1 && i > 0 {
                        String::new()
                    } else {
                        v.to_string()
                    };
                    match i {
                        0 => coef,
                        1 => format!("{coef}z"),
                        _ => format!("{coef}z^{i}"),
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        }
        (RingSpec::Product(fs), RingElem::Tuple(xs)) => {
            let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| render_elem(f, x)).collect();
            format!("({})", parts.join(","))
        }
        _ => format!("{x:?}"),
    }
}

/// Splits at commas that are not nested inside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(super) fn parse_elem(spec: &RingSpec, s: &str) -> Result<RingElem> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse {s:?} as an element of {spec}"));
    match spec {
        RingSpec::ModN { .. } => {
            let k: i64 = s.parse().map_err(|_| bad())?;
            Ok(spec.from_int(k))
        }
        RingSpec::Galois(g) => {
            let poly = parse_poly(s).ok_or_else(bad)?;
            let pm = i128::from(g.pm());
            let coeffs: Vec<u64> = poly.iter().map(|&c| c.rem_euclid(pm) as u64).collect();
            let mut c = g.reduce(coeffs);
            c.resize(g.r(), 0);
            Ok(RingElem::Poly(c))
        }
        RingSpec::Product(fs) => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(bad)?;
            let parts = split_top_level(inner);
            if parts.len() != fs.len() {
                return Err(bad());
            }
            fs.iter()
                .zip(parts)
                .map(|(f, p)| parse_elem(f, p))
                .collect::<Result<Vec<_>>>()
                .map(RingElem::Tuple)
        }
    }
}

/// Parses a polynomial in `z` with integer coefficients, e.g. `3+2z-z^2`,
/// `2*z`. Returns ascending coefficients.
fn parse_poly(s: &str) -> Option<Vec<i128>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let mut coeffs: Vec<i128> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if coeffs.is_empty() => (1, rest),
            _ => return None,
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let (coef, power) = parse_term(term)?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += sign * coef;
        rest = tail;
    }
    Some(coeffs)
}

fn parse_term(term: &str) -> Option<(i128, usize)> {
    if term.is_empty() {
        return None;
    }
    match term.find('z') {
        None => Some((term.parse().ok()?, 0)),
        Some(pos) => {
            let coef_part = term[..pos].trim_end_matches('*');
            let coef = if coef_part.is_empty() {
                1
            } else {
                coef_part.parse().ok()?
            };
            let power_part = &term[pos + 1..];
            let power = if power_part.is_empty() {
                1
            } else {
                power_part.strip_prefix('^')?.parse().ok()?
            };
            Some((coef, power))
        }
    }
}
