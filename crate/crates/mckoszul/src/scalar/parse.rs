//! Textual scalar grammar, used by every file format and CLI surface.
//!
//! Novikov scalars print as `3/2*T^(1/2) + -1*T^(2)`; exponent-zero terms
//! print as the bare coefficient. Idempotent-tagged scalars print as
//! `pi0{...} + pi1{...}`, with the diagonal embedding of Λ printed plain.
//! Printing and parsing round-trip exactly.

use num::{BigRational, Zero};

use super::{BaseScalar, Coeff, NovikovScalar};

pub fn rat_to_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num::BigInt = num.parse().map_err(|_| format!("bad integer `{}`", num))?;
    let d: num::BigInt = den.parse().map_err(|_| format!("bad integer `{}`", den))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{}`", s));
    }
    Ok(BigRational::new(n, d))
}

fn coeff_to_string(c: &Coeff) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.re.is_zero() {
        format!("{}i", c.im)
    } else {
        // mixed parts are parenthesized so the term splitter never sees
        // their inner sign
        if c.im < BigRational::zero() {
            format!("({}{}i)", c.re, c.im)
        } else {
            format!("({}+{}i)", c.re, c.im)
        }
    }
}

fn parse_coeff(s: &str) -> Result<Coeff, String> {
    let s = s.trim();
    let inner = if s.starts_with('(') && s.ends_with(')') { &s[1..s.len() - 1] } else { s };
    // split a mixed `a+bi` / `a-bi` on the innermost sign not at position 0
    if inner.ends_with('i') {
        let body = &inner[..inner.len() - 1];
        if let Some(pos) = body.char_indices().skip(1).find_map(|(i, ch)| {
            ((ch == '+' || ch == '-') && !body[..i].ends_with('/')).then_some(i)
        }) {
            let re = parse_rational(&body[..pos])?;
            let sign = if body.as_bytes()[pos] == b'-' { -1 } else { 1 };
            let im_body = body[pos + 1..].trim();
            let im_mag = if im_body.is_empty() {
                BigRational::from_integer(1.into())
            } else {
                parse_rational(im_body)?
            };
            return Ok(Coeff { re, im: im_mag * BigRational::from_integer(sign.into()) });
        }
        let body = body.trim();
        let im = if body.is_empty() {
            BigRational::from_integer(1.into())
        } else if body == "-" {
            BigRational::from_integer((-1).into())
        } else {
            parse_rational(body)?
        };
        return Ok(Coeff { re: BigRational::zero(), im });
    }
    Ok(Coeff::rational(parse_rational(inner)?))
}

pub fn novikov_to_string(x: &NovikovScalar) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = x
        .terms()
        .iter()
        .map(|(c, e)| {
            if e.is_zero() {
                coeff_to_string(c)
            } else {
                format!("{}*T^({})", coeff_to_string(c), e)
            }
        })
        .collect();
    parts.join(" + ")
}

/// Split a sum into signed term strings, respecting `()` and `{}` nesting.
fn split_terms(s: &str) -> Vec<(i32, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut buf = String::new();
    let mut sign = 1;
    for ch in s.chars() {
        match ch {
            '(' | '{' => {
                depth += 1;
                buf.push(ch);
            }
            ')' | '}' => {
                depth -= 1;
                buf.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if buf.trim().is_empty() {
                    // sign at the start of a term
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    out.push((sign, buf.trim().to_string()));
                    buf.clear();
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => buf.push(ch),
        }
    }
    if !buf.trim().is_empty() {
        out.push((sign, buf.trim().to_string()));
    }
    out
}

pub fn parse_novikov(s: &str) -> Result<NovikovScalar, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty scalar".to_string());
    }
    let mut acc = NovikovScalar::zero();
    for (sign, term) in split_terms(s) {
        let (coeff_str, exp) = match term.find("T^(") {
            Some(pos) => {
                let rest = &term[pos + 3..];
                let close = rest.find(')').ok_or_else(|| format!("missing `)` in `{}`", term))?;
                let e = parse_rational(&rest[..close])?;
                let head = term[..pos].trim().trim_end_matches('*').trim();
                (if head.is_empty() { "1".to_string() } else { head.to_string() }, e)
            }
            None if term.trim() == "T" => ("1".to_string(), BigRational::from_integer(1.into())),
            None => (term.clone(), BigRational::zero()),
        };
        let mut c = parse_coeff(&coeff_str)?;
        if sign < 0 {
            c = c.neg();
        }
        acc = acc.add(&NovikovScalar::monomial(c, exp));
    }
    Ok(acc)
}

pub fn base_to_string(b: &BaseScalar) -> String {
    let r = b.rank();
    if b.is_zero() {
        return "0".to_string();
    }
    let all_equal = b.components().windows(2).all(|w| w[0] == w[1]);
    if r == 1 || all_equal {
        return novikov_to_string(b.component(0));
    }
    let parts: Vec<String> = (0..r)
        .filter(|&i| !b.component(i).is_zero())
        .map(|i| format!("pi{}{{{}}}", i, novikov_to_string(b.component(i))))
        .collect();
    parts.join(" + ")
}

pub fn parse_base_scalar(s: &str, r: usize) -> Result<BaseScalar, String> {
    let s = s.trim();
    if !s.contains("pi") || !s.contains('{') {
        // plain scalar: the diagonal embedding c·𝟏
        return Ok(BaseScalar::diagonal(r, parse_novikov(s)?));
    }
    let mut b = BaseScalar::zero(r);
    for (sign, term) in split_terms(s) {
        let term = term.trim();
        if term == "0" {
            continue;
        }
        let rest = term
            .strip_prefix("pi")
            .ok_or_else(|| format!("expected `pi<i>{{..}}` in `{}`", term))?;
        let open = rest.find('{').ok_or_else(|| format!("missing `{{` in `{}`", term))?;
        let idx: usize = rest[..open].trim().parse().map_err(|_| format!("bad idempotent index in `{}`", term))?;
        if idx >= r {
            return Err(format!("idempotent index {} out of range (r = {})", idx, r));
        }
        if !rest.ends_with('}') {
            return Err(format!("missing `}}` in `{}`", term));
        }
        let mut inner = parse_novikov(&rest[open + 1..rest.len() - 1])?;
        if sign < 0 {
            inner = inner.neg();
        }
        b = b.add(&BaseScalar::at(r, idx, inner));
    }
    Ok(b)
}
