//! The pair-definition file grammar: two embedded algebra blocks with
//! `w.`/`v.`-prefixed section names, the bimodule table, the declared
//! 𝔪-generators, chart coordinates, and the optional correction data.
//!
//! ```text
//! [pair] name=ts1
//! [w.ring] r=1
//! [w.generators]
//! ...
//! [v.ring] r=1
//! ...
//! [module]
//! m(Z1 | dt,dt) = (1/2)
//! m(Z1 | ) = (1) synthetic
//! [mgens]
//! Z1-1 = (1)*Z1 + (-1)*one
//! [chart] Z1
//! [correction] q=Q
//! rPQ = (1)*z
//! rQP = (1)*x.y
//! ```

use crate::ainf::{parse_algebra, print_algebra, GenId};
use crate::barcobar::DualSeries;
use crate::scalar::parse_novikov;

use super::{Correction, PairData, WCombo};

fn take_block<'a>(lines: &'a [(String, Vec<String>)], prefix: &str) -> String {
    let mut out = String::new();
    for (header, body) in lines {
        if let Some(stripped) = header.strip_prefix(prefix) {
            out.push_str(&format!("[{}\n", stripped));
            for l in body {
                out.push_str(l);
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_pair(text: &str) -> Result<PairData, String> {
    // group the file into (header, body-lines) blocks
    let mut blocks: Vec<(String, Vec<String>)> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') {
            blocks.push((line[1..].to_string(), Vec::new()));
        } else {
            match blocks.last_mut() {
                Some((_, body)) => body.push(line.to_string()),
                None => return Err(format!("content before any section: `{}`", line)),
            }
        }
    }
    let mut name = "pair".to_string();
    for (header, _) in &blocks {
        if let Some(rest) = header.strip_prefix("pair]") {
            if let Some(n) = rest.trim().strip_prefix("name=") {
                name = n.trim().to_string();
            }
        }
    }
    let w_text = take_block(&blocks, "w.");
    let v_text = take_block(&blocks, "v.");
    if w_text.is_empty() || v_text.is_empty() {
        return Err("pair file needs [w.*] and [v.*] sections".to_string());
    }
    let w = parse_algebra(&w_text)?;
    let v = parse_algebra(&v_text)?;
    let mut pd = PairData::new(&name, w, v)?;

    for (header, body) in &blocks {
        let header = header.trim_end_matches(|c: char| c.is_whitespace());
        if header.starts_with("module]") {
            for line in body {
                parse_module_line(&mut pd, line)?;
            }
        } else if header.starts_with("mgens]") {
            for line in body {
                let (label, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| format!("mgens line needs `=`: `{}`", line))?;
                let combo = parse_combo(&pd, rhs.trim())?;
                pd.m_gens.push((label.trim().to_string(), combo));
            }
        } else if let Some(rest) = header.strip_prefix("chart]") {
            for n in rest.split_whitespace() {
                let id = pd.w.lookup(n)?;
                pd.chart_gens.push(id);
            }
        } else if let Some(rest) = header.strip_prefix("correction]") {
            let q_name = rest
                .trim()
                .strip_prefix("q=")
                .ok_or_else(|| "correction header needs q=<name>".to_string())?
                .to_string();
            let mut r_pq = None;
            let mut r_qp = None;
            for line in body {
                if let Some(rhs) = line.strip_prefix("rPQ =") {
                    r_pq = Some(DualSeries::parse(rhs.trim(), &pd.vocab, pd.v.cutoff.clone())?);
                } else if let Some(rhs) = line.strip_prefix("rQP =") {
                    r_qp = Some(DualSeries::parse(rhs.trim(), &pd.vocab, pd.v.cutoff.clone())?);
                } else {
                    return Err(format!("unknown correction line `{}`", line));
                }
            }
            pd.correction = Some(Correction {
                q_name,
                r_pq: r_pq.ok_or("correction needs rPQ")?,
                r_qp: r_qp.ok_or("correction needs rQP")?,
            });
        }
    }
    Ok(pd)
}

fn parse_module_line(pd: &mut PairData, line: &str) -> Result<(), String> {
    let inner = line
        .strip_prefix("m(")
        .ok_or_else(|| format!("module line must start with `m(`: `{}`", line))?;
    // find the closing paren at depth 0 (names may contain parens)
    let mut depth = 1i32;
    let mut close = None;
    for (i, ch) in inner.char_indices() {
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
    let close = close.ok_or_else(|| format!("unbalanced parens in `{}`", line))?;
    let args = &inner[..close];
    let rest = inner[close + 1..].trim();
    let (zpart, xpart) = args
        .split_once('|')
        .ok_or_else(|| format!("module arguments need `Z… | X…`: `{}`", line))?;
    let zs: Vec<GenId> = crate::ainf::split_args(zpart)
        .iter()
        .map(|n| pd.w.lookup(n))
        .collect::<Result<_, _>>()?;
    let xs: Vec<GenId> = crate::ainf::split_args(xpart)
        .iter()
        .map(|n| pd.v.lookup(n))
        .collect::<Result<_, _>>()?;
    let rhs = rest
        .strip_prefix('=')
        .ok_or_else(|| format!("module line needs `=`: `{}`", line))?
        .trim();
    let (scalar_text, synthetic) = match rhs.strip_suffix("synthetic") {
        Some(st) => (st.trim(), true),
        None => (rhs, false),
    };
    let scalar_text = scalar_text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("module value must be parenthesized: `{}`", line))?;
    let coeff = parse_novikov(scalar_text)?;
    pd.insert_module(zs, xs, coeff, synthetic)
}

fn parse_combo(pd: &PairData, text: &str) -> Result<WCombo, String> {
    let mut combo = WCombo::new();
    for term in crate::ainf::split_sum(text) {
        let (c, name) = crate::ainf::parse_term(&term)?;
        combo.push((pd.w.lookup(&name)?, c));
    }
    combo.sort_by_key(|(g, _)| *g);
    Ok(combo)
}

pub fn print_pair(pd: &PairData) -> String {
    let mut out = String::new();
    out.push_str(&format!("[pair] name={}\n", pd.name));
    for line in print_algebra(&pd.w).lines() {
        if line.starts_with('[') {
            out.push_str(&format!("[w.{}\n", &line[1..]));
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    for line in print_algebra(&pd.v).lines() {
        if line.starts_with('[') {
            out.push_str(&format!("[v.{}\n", &line[1..]));
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str("[module]\n");
    for ((zs, xs), entry) in &pd.module_table {
        let zn: Vec<&str> = zs.iter().map(|&z| pd.w.gen(z).name.as_str()).collect();
        let xn: Vec<&str> = xs.iter().map(|&x| pd.v.gen(x).name.as_str()).collect();
        out.push_str(&format!(
            "m({} | {}) = ({}){}\n",
            zn.join(","),
            xn.join(","),
            entry.coeff,
            if entry.synthetic { " synthetic" } else { "" }
        ));
    }
    if !pd.m_gens.is_empty() {
        out.push_str("[mgens]\n");
        for (label, combo) in &pd.m_gens {
            let terms: Vec<String> = combo
                .iter()
                .map(|(g, c)| format!("({})*{}", c, pd.w.gen(*g).name))
                .collect();
            out.push_str(&format!("{} = {}\n", label, terms.join(" + ")));
        }
    }
    if !pd.chart_gens.is_empty() {
        let names: Vec<&str> = pd.chart_gens.iter().map(|&g| pd.w.gen(g).name.as_str()).collect();
        out.push_str(&format!("[chart] {}\n", names.join(" ")));
    }
    if let Some(c) = &pd.correction {
        out.push_str(&format!("[correction] q={}\n", c.q_name));
        out.push_str(&format!("rPQ = {}\n", c.r_pq.render(&pd.vocab)));
        out.push_str(&format!("rQP = {}\n", c.r_qp.render(&pd.vocab)));
    }
    out
}
