//! Text forms used by the CLI and in debugging output.
//!
//! Elements: `3/2 y^(1,0) dy dt^2 delta - dy delta`.
//! Operators: `y1^2 d1 dt + 1/2 theta`; factors inside a term are composed left to right.

use std::fmt;

use num_traits::{One, Signed};

use super::bg::BgElement;
use super::operator::{OpMonomial, WeylOperator};
use crate::error::{Error, Result};
use crate::rational::{parse_q, qi, Q};

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Split at top-level `+`/`-`, returning `(negative, body)` pairs.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut neg = false;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if cur.trim().is_empty() {
                    neg ^= ch == '-';
                } else {
                    out.push((neg, cur.trim().to_string()));
                    cur.clear();
                    neg = ch == '-';
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return perr(format!("unbalanced parentheses in {s:?}"));
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    } else if !out.is_empty() {
        return perr(format!("dangling sign in {s:?}"));
    }
    Ok(out)
}

fn parse_exp(s: &str) -> Result<u32> {
    s.parse::<u32>().or_else(|_| perr(format!("bad exponent {s:?}")))
}

fn split_pow(tok: &str) -> Result<(&str, u32)> {
    match tok.split_once('^') {
        Some((b, e)) => Ok((b, parse_exp(e)?)),
        None => Ok((tok, 1)),
    }
}

fn is_coefficient(tok: &str) -> bool {
    tok.chars().next().is_some_and(|c| c.is_ascii_digit())
}

fn fmt_coefficient(f: &mut fmt::Formatter<'_>, first: bool, c: &Q, bare: bool) -> fmt::Result {
    let mag = c.abs();
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if !mag.is_one() || bare {
        write!(f, "{mag}")?;
        if !bare {
            write!(f, " ")?;
        }
    }
    Ok(())
}

impl BgElement {
    /// Parse an element over `n` variables.
    pub fn parse(s: &str, n: usize) -> Result<BgElement> {
        let mut out = BgElement::zero(n);
        if s.trim() == "0" {
            return Ok(out);
        }
        let terms = split_terms(s)?;
        if terms.is_empty() {
            return perr("empty element");
        }
        for (neg, body) in terms {
            let mut c = qi(1);
            let mut v = vec![0u32; n];
            let mut m = 0u32;
            let mut seen_dy = false;
            let mut seen_delta = false;
            for tok in body.split_whitespace() {
                if is_coefficient(tok) {
                    c *= parse_q(tok)?;
                } else if let Some(rest) = tok.strip_prefix("y^") {
                    let inner = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .map(str::to_string)
                        .unwrap_or_else(|| rest.to_string());
                    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if parts.len() != n {
                        return perr(format!("exponent {tok:?} has wrong length for n={n}"));
                    }
                    for (i, p) in parts.iter().enumerate() {
                        v[i] += parse_exp(p)?;
                    }
                } else if tok == "dy" {
                    seen_dy = true;
                } else if tok == "delta" {
                    seen_delta = true;
                } else if tok == "dt" || tok.starts_with("dt^") {
                    m += split_pow(tok)?.1;
                } else {
                    return perr(format!("unknown token {tok:?}"));
                }
            }
            if !seen_dy || !seen_delta {
                return perr(format!("term {body:?} must contain `dy` and `delta`"));
            }
            if neg {
                c = -c;
            }
            out.add_term(v, m, c);
        }
        Ok(out)
    }
}

impl fmt::Display for BgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((v, m), c)) in self.terms().enumerate() {
            fmt_coefficient(f, k == 0, c, false)?;
            if v.iter().any(|&x| x > 0) {
                let parts: Vec<String> = v.iter().map(u32::to_string).collect();
                write!(f, "y^({}) ", parts.join(","))?;
            }
            write!(f, "dy ")?;
            match m {
                0 => {}
                1 => write!(f, "dt ")?,
                _ => write!(f, "dt^{m} ")?,
            }
            write!(f, "delta")?;
        }
        Ok(())
    }
}

fn var_index(s: &str, n: usize) -> Result<usize> {
    let i: usize = s.parse().or_else(|_| perr(format!("bad variable index {s:?}")))?;
    if i == 0 || i > n {
        return perr(format!("variable index {i} outside 1..={n}"));
    }
    Ok(i - 1)
}

impl WeylOperator {
    /// Parse an operator over `n` variables; indices are 1-based (`y1`, `d1`).
    pub fn parse(s: &str, n: usize) -> Result<WeylOperator> {
        let mut out = WeylOperator::zero(n);
        if s.trim() == "0" {
            return Ok(out);
        }
        let terms = split_terms(s)?;
        if terms.is_empty() {
            return perr("empty operator");
        }
        for (neg, body) in terms {
            let mut acc = WeylOperator::one(n);
            for tok in body.split_whitespace() {
                if is_coefficient(tok) {
                    acc = acc.scale(&parse_q(tok)?);
                    continue;
                }
                let (base, e) = split_pow(tok)?;
                let factor = if base == "t" {
                    WeylOperator::t(n)
                } else if base == "dt" {
                    WeylOperator::dt(n)
                } else if base == "theta" {
                    WeylOperator::theta(n)
                } else if let Some(i) = base.strip_prefix('y') {
                    WeylOperator::y(n, var_index(i, n)?)
                } else if let Some(i) = base.strip_prefix('d') {
                    WeylOperator::dy(n, var_index(i, n)?)
                } else {
                    return perr(format!("unknown token {tok:?}"));
                };
                acc = acc.compose(&factor.pow(e));
            }
            if neg {
                acc = -&acc;
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

fn fmt_monomial(m: &OpMonomial) -> Vec<String> {
    let mut parts = Vec::new();
    let pw = |name: String, e: u32| if e == 1 { name } else { format!("{name}^{e}") };
    for (i, &e) in m.y.iter().enumerate() {
        if e > 0 {
            parts.push(pw(format!("y{}", i + 1), e));
        }
    }
    if m.t > 0 {
        parts.push(pw("t".into(), m.t));
    }
    for (i, &e) in m.dy.iter().enumerate() {
        if e > 0 {
            parts.push(pw(format!("d{}", i + 1), e));
        }
    }
    if m.dt > 0 {
        parts.push(pw("dt".into(), m.dt));
    }
    parts
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let parts = fmt_monomial(m);
            fmt_coefficient(f, k == 0, c, parts.is_empty())?;
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}
