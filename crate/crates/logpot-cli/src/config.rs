//! Line-oriented configuration format.
//!
//! ```text
//! # finite configuration: one `re im charge` triple per line
//! finite
//! -1 0 0.5
//!  1 0 0.5
//! ```
//!
//! ```text
//! # generated family; `n=auto` is accepted (the level list decides n)
//! family geometric-real rho=1 base=0.5
//! ```
//!
//! Families: `geometric-real rho= base=`, `geometric-spiral rho= base=
//! theta0=`, `harmonic-unbounded twist=`, `complex-spiral twist=`, and
//! `points kind= [rho=]` followed by `re im charge_re [charge_im]` lines.

use logpot::infinite::{FamilyKind, SequenceFamily};
use logpot::potential::ChargeConfiguration;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug)]
pub enum ParsedInput {
    Finite(ChargeConfiguration),
    Family(SequenceFamily),
}

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64, ParseError> {
    tok.parse::<f64>()
        .map_err(|_| err(line, format!("cannot parse {what} from `{tok}`")))
}

/// Content lines with original 1-based line numbers; `#` starts a comment.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

pub fn parse_config(text: &str, merge_coincident: bool) -> Result<ParsedInput, ParseError> {
    let lines = content_lines(text);
    let Some(&(first_no, first)) = lines.first() else {
        return Err(err(0, "empty configuration"));
    };
    let mut head = first.split_whitespace();
    match head.next() {
        Some("finite") => {
            if head.next().is_some() {
                return Err(err(first_no, "`finite` takes no arguments"));
            }
            parse_finite(&lines[1..], merge_coincident)
        }
        Some("family") => parse_family(first_no, head, &lines[1..]),
        Some(other) => Err(err(
            first_no,
            format!("expected `finite` or `family`, found `{other}`"),
        )),
        None => unreachable!("blank lines are filtered"),
    }
}

fn parse_finite(
    lines: &[(usize, &str)],
    merge_coincident: bool,
) -> Result<ParsedInput, ParseError> {
    let mut points = Vec::new();
    let mut charges = Vec::new();
    for &(no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(no, format!("expected `re im charge`, found {} fields", toks.len())));
        }
        let re = parse_f64(toks[0], no, "re")?;
        let im = parse_f64(toks[1], no, "im")?;
        let q = parse_f64(toks[2], no, "charge")?;
        if !(q.is_finite() && q > 0.0) {
            return Err(err(no, format!("charge must be positive, got {q}")));
        }
        points.push(Complex64::new(re, im));
        charges.push(q);
    }
    if points.is_empty() {
        return Err(err(0, "finite configuration has no points"));
    }
    let cfg = if merge_coincident {
        ChargeConfiguration::new_merging_coincident(points, charges)
    } else {
        ChargeConfiguration::new(points, charges)
    }
    .map_err(|e| err(0, e.to_string()))?;
    Ok(ParsedInput::Finite(cfg))
}

fn parse_kv<'a>(
    tokens: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<BTreeMap<&'a str, &'a str>, ParseError> {
    let mut map = BTreeMap::new();
    for tok in tokens {
        let Some((k, v)) = tok.split_once('=') else {
            return Err(err(line, format!("expected key=value, found `{tok}`")));
        };
        map.insert(k, v);
    }
    Ok(map)
}

fn take_f64(
    map: &mut BTreeMap<&str, &str>,
    key: &str,
    line: usize,
    default: Option<f64>,
) -> Result<f64, ParseError> {
    match map.remove(key) {
        Some(v) => parse_f64(v, line, key),
        None => default.ok_or_else(|| err(line, format!("missing required key `{key}`"))),
    }
}

fn parse_family<'a>(
    line: usize,
    mut head: impl Iterator<Item = &'a str>,
    rest: &[(usize, &str)],
) -> Result<ParsedInput, ParseError> {
    let Some(name) = head.next() else {
        return Err(err(line, "family name missing"));
    };
    let mut kv = parse_kv(head, line)?;
    kv.remove("n"); // `n=auto` is legal; truncation levels pick the size
    let family = match name {
        "geometric-real" => SequenceFamily::GeometricReal {
            rho: take_f64(&mut kv, "rho", line, Some(1.0))?,
            base: take_f64(&mut kv, "base", line, Some(0.5))?,
        },
        "geometric-spiral" => SequenceFamily::GeometricSpiral {
            rho: take_f64(&mut kv, "rho", line, Some(1.0))?,
            base: take_f64(&mut kv, "base", line, Some(0.5))?,
            theta0: take_f64(&mut kv, "theta0", line, Some(1.0))?,
        },
        "harmonic-unbounded" => SequenceFamily::HarmonicUnbounded {
            twist: take_f64(&mut kv, "twist", line, Some(2.399963))?,
        },
        "complex-spiral" => SequenceFamily::ComplexSpiral {
            twist: take_f64(&mut kv, "twist", line, Some(2.399963))?,
        },
        "points" => {
            let kind = match kv.remove("kind") {
                Some("bounded-real") => FamilyKind::BoundedReal,
                Some("bounded-complex") => FamilyKind::BoundedComplex,
                Some("unbounded") => FamilyKind::Unbounded,
                Some("complex-charge") => FamilyKind::ComplexCharge,
                Some(other) => return Err(err(line, format!("unknown kind `{other}`"))),
                None => return Err(err(line, "point-list family needs kind=")),
            };
            let rho = match kv.remove("rho") {
                Some(v) => Some(parse_f64(v, line, "rho")?),
                None => None,
            };
            let mut points = Vec::new();
            let mut charges = Vec::new();
            for &(no, l) in rest {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 3 && toks.len() != 4 {
                    return Err(err(no, "expected `re im charge_re [charge_im]`"));
                }
                points.push(Complex64::new(
                    parse_f64(toks[0], no, "re")?,
                    parse_f64(toks[1], no, "im")?,
                ));
                let cre = parse_f64(toks[2], no, "charge_re")?;
                let cim = if toks.len() == 4 {
                    parse_f64(toks[3], no, "charge_im")?
                } else {
                    0.0
                };
                if kind != FamilyKind::ComplexCharge {
                    if cim != 0.0 {
                        return Err(err(no, "complex charge in a positive-charge family"));
                    }
                    if cre <= 0.0 {
                        return Err(err(no, format!("charge must be positive, got {cre}")));
                    }
                }
                charges.push(Complex64::new(cre, cim));
            }
            let fam = SequenceFamily::PointList {
                kind,
                rho,
                points,
                charges,
            };
            fam.validate().map_err(|e| err(line, e.to_string()))?;
            if !kv.is_empty() {
                let keys: Vec<&str> = kv.keys().copied().collect();
                return Err(err(line, format!("unknown keys: {}", keys.join(", "))));
            }
            return Ok(ParsedInput::Family(fam));
        }
        other => return Err(err(line, format!("unknown family `{other}`"))),
    };
    if !kv.is_empty() {
        let keys: Vec<&str> = kv.keys().copied().collect();
        return Err(err(line, format!("unknown keys: {}", keys.join(", "))));
    }
    if !rest.is_empty() {
        return Err(err(rest[0].0, "unexpected data lines after generated family"));
    }
    family.validate().map_err(|e| err(line, e.to_string()))?;
    Ok(ParsedInput::Family(family))
}

/// 17-significant-digit decimal form; round-trips f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Emit a finite configuration in the input format.
pub fn emit_finite(cfg: &ChargeConfiguration) -> String {
    let mut out = String::from("finite\n");
    for (z, a) in cfg.points().iter().zip(cfg.charges()) {
        let _ = writeln!(out, "{} {} {}", fmt_f64(z.re), fmt_f64(z.im), fmt_f64(*a));
    }
    out
}
