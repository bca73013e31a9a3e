//! The algebra-definition file grammar.
//!
//! ```text
//! # comment
//! [ring] r=2
//! [cutoff] max_len=6 max_energy=10
//! [generators]
//! # name deg val src tgt [unit] [dual=<id>] [action=<rat>] [divisor] [potential]
//! one 0 0 0 0 unit
//! X 1 0 0 1 dual=x action=1/2 divisor
//! [ops]
//! m2(X,Y) = (-1)*Z + (1/2)*W
//! [augmentation]
//! unit
//! # or explicit lines:  eps(Z1) = 1*T^(-1)
//! [core] X Y
//! ```
//!
//! Scalars in `[ops]` right-hand sides are always parenthesized, so terms
//! split on top-level `+`. Generator names may contain `(`, `)`, `,`, `/`
//! and `-` (e.g. `C(-1,0)`); argument lists split on commas at paren
//! depth zero. The printer emits a canonical form that re-parses to an
//! identical structure, byte for byte.

use std::collections::BTreeMap;

use crate::scalar::{parse_novikov, parse_rational, EnergyCutoff, NovikovScalar};

use super::{AInfStructure, AugSpec, GenId, Generator};

/// Split `a,b,c` on commas at paren depth zero.
pub(crate) fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut buf = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                buf.push(ch);
            }
            ')' => {
                depth -= 1;
                buf.push(ch);
            }
            ',' if depth == 0 => {
                out.push(buf.trim().to_string());
                buf.clear();
            }
            _ => buf.push(ch),
        }
    }
    if !buf.trim().is_empty() {
        out.push(buf.trim().to_string());
    }
    out
}

/// Split `(c1)*Y1 + (c2)*Y2` on `+` at paren depth zero.
pub(crate) fn split_sum(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut buf = String::new();
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
            '+' if depth == 0 => {
                out.push(buf.trim().to_string());
                buf.clear();
            }
            _ => buf.push(ch),
        }
    }
    if !buf.trim().is_empty() {
        out.push(buf.trim().to_string());
    }
    out
}

/// Parse one `(scalar)*Name` term.
pub(crate) fn parse_term(term: &str) -> Result<(NovikovScalar, String), String> {
    let term = term.trim();
    if !term.starts_with('(') {
        return Err(format!("term `{}` must start with a parenthesized scalar", term));
    }
    let mut depth = 0i32;
    let mut close = None;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let close = close.ok_or_else(|| format!("unbalanced parens in `{}`", term))?;
    let scalar = parse_novikov(&term[1..close])?;
    let rest = term[close + 1..].trim();
    let name = rest
        .strip_prefix('*')
        .ok_or_else(|| format!("expected `*` after scalar in `{}`", term))?
        .trim();
    if name.is_empty() {
        return Err(format!("missing generator name in `{}`", term));
    }
    Ok((scalar, name.to_string()))
}

pub fn parse_algebra(text: &str) -> Result<AInfStructure, String> {
    let mut ring = 1usize;
    let mut cutoff = EnergyCutoff::default_window();
    let mut section = String::new();
    let mut gens: Vec<Generator> = Vec::new();
    let mut ops: Vec<(String, String)> = Vec::new();
    let mut aug_lines: Vec<String> = Vec::new();
    let mut core_names: Option<Vec<String>> = None;

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') {
            let close = line.find(']').ok_or_else(|| format!("bad section header `{}`", line))?;
            section = line[1..close].to_string();
            let rest = line[close + 1..].trim();
            match section.as_str() {
                "ring" => {
                    let r = rest
                        .strip_prefix("r=")
                        .ok_or_else(|| "expected `[ring] r=<int>`".to_string())?;
                    ring = r.trim().parse().map_err(|_| format!("bad ring size `{}`", r))?;
                }
                "cutoff" => {
                    for field in rest.split_whitespace() {
                        if let Some(v) = field.strip_prefix("max_len=") {
                            cutoff.max_len = v.parse().map_err(|_| format!("bad max_len `{}`", v))?;
                        } else if let Some(v) = field.strip_prefix("max_energy=") {
                            cutoff.max_energy = parse_rational(v)?;
                        } else {
                            return Err(format!("unknown cutoff field `{}`", field));
                        }
                    }
                }
                "core" => {
                    core_names = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
                }
                "generators" | "ops" | "augmentation" => {}
                other => return Err(format!("unknown section `{}`", other)),
            }
            continue;
        }
        match section.as_str() {
            "generators" => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() < 5 {
                    return Err(format!("generator line needs `name deg val src tgt`: `{}`", line));
                }
                let mut g = Generator::new(
                    fields[0],
                    fields[1].parse().map_err(|_| format!("bad degree in `{}`", line))?,
                    fields[3].parse().map_err(|_| format!("bad source in `{}`", line))?,
                    fields[4].parse().map_err(|_| format!("bad target in `{}`", line))?,
                );
                g.valuation = parse_rational(fields[2])?;
                for flag in &fields[5..] {
                    if *flag == "unit" {
                        g.is_unit = true;
                    } else if *flag == "divisor" {
                        g.divisor = true;
                    } else if *flag == "potential" {
                        g.potential = true;
                    } else if let Some(d) = flag.strip_prefix("dual=") {
                        g.dual = d.to_string();
                    } else if let Some(a) = flag.strip_prefix("action=") {
                        g.action = Some(parse_rational(a)?);
                    } else {
                        return Err(format!("unknown generator flag `{}`", flag));
                    }
                }
                gens.push(g);
            }
            "ops" => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| format!("op line needs `=`: `{}`", line))?;
                ops.push((lhs.trim().to_string(), rhs.trim().to_string()));
            }
            "augmentation" => aug_lines.push(line.to_string()),
            other => return Err(format!("content outside a known section (`{}`): `{}`", other, line)),
        }
    }

    let mut s = AInfStructure::new(ring, cutoff);
    for g in gens {
        s.add_generator(g)?;
    }
    for (lhs, rhs) in ops {
        if !lhs.starts_with('m') {
            return Err(format!("op must start with m<k>: `{}`", lhs));
        }
        let open = lhs.find('(').ok_or_else(|| format!("missing `(` in `{}`", lhs))?;
        let k: usize = lhs[1..open].parse().map_err(|_| format!("bad arity in `{}`", lhs))?;
        if !lhs.ends_with(')') {
            return Err(format!("missing `)` in `{}`", lhs));
        }
        let args = split_args(&lhs[open + 1..lhs.len() - 1]);
        if args.len() != k {
            return Err(format!("arity mismatch in `{}`: m{} with {} arguments", lhs, k, args.len()));
        }
        let tuple: Vec<GenId> = args.iter().map(|a| s.lookup(a)).collect::<Result<_, _>>()?;
        let mut outputs = Vec::new();
        if rhs.trim() != "0" {
            for term in split_sum(&rhs) {
                let (c, name) = parse_term(&term)?;
                outputs.push((s.lookup(&name)?, c));
            }
        }
        s.insert(tuple, outputs)?;
    }
    if !aug_lines.is_empty() {
        if aug_lines.len() == 1 && aug_lines[0] == "unit" {
            s.augmentation = Some(AugSpec::UnitProjection);
        } else {
            let mut map = BTreeMap::new();
            for line in aug_lines {
                let rest = line
                    .strip_prefix("eps(")
                    .ok_or_else(|| format!("expected `eps(<name>) = <scalar>`: `{}`", line))?;
                // the name may contain parens; match to the `)` that
                // precedes the top-level `=`
                let eq = rest.rfind('=').ok_or_else(|| format!("missing `=` in `{}`", line))?;
                let head = rest[..eq].trim();
                let head = head
                    .strip_suffix(')')
                    .ok_or_else(|| format!("missing `)` in `{}`", line))?;
                let id = s.lookup(head)?;
                map.insert(id, parse_novikov(rest[eq + 1..].trim())?);
            }
            s.augmentation = Some(AugSpec::Explicit(map));
        }
    }
    if let Some(names) = core_names {
        let mut ids = Vec::new();
        for n in names {
            ids.push(s.lookup(&n)?);
        }
        s.core = Some(ids);
    }
    Ok(s)
}

pub fn print_algebra(s: &AInfStructure) -> String {
    let mut out = String::new();
    out.push_str(&format!("[ring] r={}\n", s.ring_size));
    out.push_str(&format!(
        "[cutoff] max_len={} max_energy={}\n",
        s.cutoff.max_len, s.cutoff.max_energy
    ));
    out.push_str("[generators]\n");
    for g in &s.generators {
        let mut line = format!("{} {} {} {} {}", g.name, g.degree, g.valuation, g.source, g.target);
        if g.is_unit {
            line.push_str(" unit");
        }
        if g.dual != g.name.to_lowercase() {
            line.push_str(&format!(" dual={}", g.dual));
        }
        if let Some(a) = &g.action {
            line.push_str(&format!(" action={}", a));
        }
        if g.divisor {
            line.push_str(" divisor");
        }
        if g.potential {
            line.push_str(" potential");
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("[ops]\n");
    for (tuple, outputs) in s.table() {
        let args: Vec<&str> = tuple.iter().map(|&i| s.gen(i).name.as_str()).collect();
        let rhs: Vec<String> = outputs
            .iter()
            .map(|(y, c)| format!("({})*{}", c, s.gen(*y).name))
            .collect();
        out.push_str(&format!("m{}({}) = {}\n", tuple.len(), args.join(","), rhs.join(" + ")));
    }
    match &s.augmentation {
        Some(AugSpec::UnitProjection) => {
            out.push_str("[augmentation]\nunit\n");
        }
        Some(AugSpec::Explicit(map)) => {
            out.push_str("[augmentation]\n");
            for (id, v) in map {
                out.push_str(&format!("eps({}) = {}\n", s.gen(*id).name, v));
            }
        }
        None => {}
    }
    if let Some(core) = &s.core {
        let names: Vec<&str> = core.iter().map(|&i| s.gen(i).name.as_str()).collect();
        out.push_str(&format!("[core] {}\n", names.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# nodal sphere
[ring] r=1
[generators]
one 0 0 0 0 unit
U 1 1/2 0 0 action=1/2
V 1 -1/2 0 0 action=-1/2
H 2 0 0 0
[ops]
m2(U,V) = (-1)*H
m2(V,U) = (1)*H
m2(one,one) = (1)*one
m2(one,U) = (1)*U
m2(U,one) = (-1)*U
m2(one,V) = (1)*V
m2(V,one) = (-1)*V
m2(one,H) = (1)*H
m2(H,one) = (1)*H
[augmentation]
unit
";

    #[test]
    fn parse_print_round_trip_is_bit_exact() {
        let s = parse_algebra(SAMPLE).unwrap();
        let printed = print_algebra(&s);
        let s2 = parse_algebra(&printed).unwrap();
        assert!(s.same_structure(&s2));
        assert_eq!(printed, print_algebra(&s2));
    }

    #[test]
    fn names_with_parens_and_commas() {
        let text = "\
[ring] r=1
[generators]
one 0 0 0 0 unit
C(-1,0) 0 0 0 0 dual=c(-1,0)
C(1,0) 0 0 0 0 dual=c(1,0)
C(0,1) 0 0 0 0 dual=c(0,1)
[ops]
m2(C(-1,0),C(1,0)) = (1)*C(0,1) + (1)*one
[augmentation]
eps(C(0,1)) = -1
";
        let s = parse_algebra(text).unwrap();
        let a = s.lookup("C(-1,0)").unwrap();
        let b = s.lookup("C(1,0)").unwrap();
        assert_eq!(s.m(&[a, b]).len(), 2);
        let printed = print_algebra(&s);
        assert!(s.same_structure(&parse_algebra(&printed).unwrap()));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse_algebra("[ring] r=1\n[generators]\nX 1 0 0 0\n[ops]\nm2(X,X) = (1)*X\n").is_err());
        assert!(parse_algebra("[ring] r=1\n[generators]\nX 1 0 5 0\n").is_err());
        assert!(parse_algebra("junk\n").is_err());
    }
}
