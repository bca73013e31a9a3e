//! The deformed-conifold complement: two matching spheres L₀ ⊕ L₁ with
//! immersed generators X, Z (vertex 0 → 1) and Y, W (vertex 1 → 0), dual
//! to the section pair G₀ ⊕ G₁ over the semisimple ring Λπ₀ ⊕ Λπ₁.
//!
//! The Maurer-Cartan relations are the quiver-with-potential relations
//! xyz − zyx, yzw − wzy, zwx − xwz, wxy − yxw (with xz = zx = yw = wy = 0
//! forced by the idempotent typing). W is generated by the chord families
//! P⁰/P¹ (loops) and Q/R (half-integer crossings); its product table is
//! transported from the κ images through a loop model of the path algebra,
//! so associativity and κ-multiplicativity hold by construction and the
//! displayed binomial product formulas become checkable facts.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::ainf::{AInfStructure, AugSpec, GenId, Generator};
use crate::barcobar::{DualSeries, Vocab, Word};
use crate::koszul::PairData;
use crate::scalar::{EnergyCutoff, NovikovScalar};

#[derive(Clone, Copy, Debug)]
pub struct ConifoldWindow {
    /// Integer families range over |a| <= amax; half-integer ones over
    /// |a| <= amax - 1/2.
    pub amax: i64,
    pub bmin: i64,
    pub bmax: i64,
    pub cmin: i64,
    pub cmax: i64,
}

impl Default for ConifoldWindow {
    fn default() -> Self {
        ConifoldWindow { amax: 3, bmin: -1, bmax: 2, cmin: -1, cmax: 2 }
    }
}

/// Chord family labels. `a` is stored doubled so half-integers stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Family {
    P0,
    P1,
    Q,
    R,
}

fn fam_name(f: Family, a2: i64, b: i64, c: i64) -> String {
    let a = if a2 % 2 == 0 { format!("{}", a2 / 2) } else { format!("{}/2", a2) };
    match f {
        Family::P0 => format!("P0({},{},{})", a, b, c),
        Family::P1 => format!("P1({},{},{})", a, b, c),
        Family::Q => format!("Q({},{},{})", a, b, c),
        Family::R => format!("R({},{},{})", a, b, c),
    }
}

/// One canonical path-algebra term: loops at the source vertex written in
/// the coordinates p, (q−1), (r−1), s (with min(p-exp, s-exp) = 0 after
/// reduction), followed by at most one arrow.
///
/// The loop letters transport through arrows index-for-index, so a single
/// exponent vector works at both vertices. Shift exponents β, γ may be
/// negative (geometric series live entirely in the family indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct LoopTerm {
    src: u8,
    /// 0 = none, otherwise the trailing arrow letter.
    arrow: u8,
    p: i64,
    b: i64,
    c: i64,
    s: i64,
}

const ARROW_NONE: u8 = 0;
const ARROW_X: u8 = b'x';
const ARROW_Y: u8 = b'y';
const ARROW_Z: u8 = b'z';
const ARROW_W: u8 = b'w';

fn arrow_endpoints(a: u8, src: u8) -> Option<(u8, u8)> {
    // letters carry the transposed typing of their generators
    match a {
        ARROW_NONE => Some((src, src)),
        ARROW_X | ARROW_Z => Some((1, 0)),
        ARROW_Y | ARROW_W => Some((0, 1)),
        _ => None,
    }
}

#[derive(Clone, Debug, Default)]
struct PathPoly {
    terms: BTreeMap<LoopTerm, BigRational>,
}

impl PathPoly {
    fn add_term(&mut self, t: LoopTerm, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(t).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&t);
        }
    }

    fn single(t: LoopTerm) -> PathPoly {
        let mut p = PathPoly::default();
        p.add_term(t, BigRational::from_integer(1.into()));
        p
    }

    fn mul(&self, other: &PathPoly) -> PathPoly {
        let mut out = PathPoly::default();
        for (t1, c1) in &self.terms {
            let (_, tgt1) = arrow_endpoints(t1.arrow, t1.src).unwrap();
            for (t2, c2) in &other.terms {
                if t2.src != tgt1 {
                    continue;
                }
                // loops of the right factor transport through the left
                // arrow index-for-index
                let merged = LoopTerm {
                    src: t1.src,
                    arrow: ARROW_NONE,
                    p: t1.p + t2.p,
                    b: t1.b + t2.b,
                    c: t1.c + t2.c,
                    s: t1.s + t2.s,
                };
                let coeff = c1 * c2;
                match (t1.arrow, t2.arrow) {
                    (ARROW_NONE, a2) => {
                        reduce_into(&mut out, LoopTerm { arrow: a2, ..merged }, coeff)
                    }
                    (a1, ARROW_NONE) => {
                        reduce_into(&mut out, LoopTerm { arrow: a1, ..merged }, coeff)
                    }
                    (a1, a2) => {
                        // two arrows close into a loop:
                        // xw, wx → p; xy, yx → q; zw, wz → r; zy, yz → s
                        let (dp, db, dc, ds, extra_one) = match (a1, a2) {
                            (ARROW_X, ARROW_W) | (ARROW_W, ARROW_X) => (1, 0, 0, 0, false),
                            (ARROW_X, ARROW_Y) | (ARROW_Y, ARROW_X) => (0, 1, 0, 0, true),
                            (ARROW_Z, ARROW_W) | (ARROW_W, ARROW_Z) => (0, 0, 1, 0, true),
                            (ARROW_Z, ARROW_Y) | (ARROW_Y, ARROW_Z) => (0, 0, 0, 1, false),
                            _ => continue, // xz-type compositions vanish by typing
                        };
                        // q = (q−1) + 1 and r = (r−1) + 1 split into two terms
                        let bumped = LoopTerm {
                            arrow: ARROW_NONE,
                            p: merged.p + dp,
                            b: merged.b + db,
                            c: merged.c + dc,
                            s: merged.s + ds,
                            ..merged
                        };
                        reduce_into(&mut out, bumped, coeff.clone());
                        if extra_one {
                            reduce_into(&mut out, merged, coeff);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Canonicalize: ps → qr = ((q−1)+1)((r−1)+1), then the module rules
/// s·w = r·y, p·y = q·w (vertex 0) and s·x = q·z, p·z = r·x (vertex 1).
fn reduce_into(out: &mut PathPoly, t: LoopTerm, coeff: BigRational) {
    if t.p > 0 && t.s > 0 {
        // ps = (q−1)(r−1) + (q−1) + (r−1) + 1
        let base = LoopTerm { p: t.p - 1, s: t.s - 1, ..t };
        for (db, dc) in [(1, 1), (1, 0), (0, 1), (0, 0)] {
            reduce_into(out, LoopTerm { b: base.b + db, c: base.c + dc, ..base }, coeff.clone());
        }
        return;
    }
    match (t.arrow, t.src) {
        (ARROW_W, 0) if t.s > 0 => {
            // s·w = r·y = ((r−1)+1)·y
            let base = LoopTerm { arrow: ARROW_Y, s: t.s - 1, ..t };
            reduce_into(out, LoopTerm { c: base.c + 1, ..base }, coeff.clone());
            reduce_into(out, base, coeff);
        }
        (ARROW_Y, 0) if t.p > 0 => {
            // p·y = q·w = ((q−1)+1)·w
            let base = LoopTerm { arrow: ARROW_W, p: t.p - 1, ..t };
            reduce_into(out, LoopTerm { b: base.b + 1, ..base }, coeff.clone());
            reduce_into(out, base, coeff);
        }
        (ARROW_X, 1) if t.s > 0 => {
            // s·x = q·z
            let base = LoopTerm { arrow: ARROW_Z, s: t.s - 1, ..t };
            reduce_into(out, LoopTerm { b: base.b + 1, ..base }, coeff.clone());
            reduce_into(out, base, coeff);
        }
        (ARROW_Z, 1) if t.p > 0 => {
            // p·z = r·x
            let base = LoopTerm { arrow: ARROW_X, p: t.p - 1, ..t };
            reduce_into(out, LoopTerm { c: base.c + 1, ..base }, coeff.clone());
            reduce_into(out, base, coeff);
        }
        _ => out.add_term(t, coeff),
    }
}

/// Canonical loop-model form of κ(family element); `a2` is the doubled
/// index.
fn model_of(f: Family, a2: i64, b: i64, c: i64) -> LoopTerm {
    match f {
        Family::P0 | Family::P1 => {
            let src = if f == Family::P0 { 0 } else { 1 };
            let a = a2 / 2;
            LoopTerm {
                src,
                arrow: ARROW_NONE,
                p: a.max(0),
                b,
                c,
                s: (-a).max(0),
            }
        }
        Family::Q => {
            // x(wx)^{a−1/2}·shifts = p^{a−1/2}(q−1)^b(r−1)^c·x at vertex 1
            if a2 > 0 {
                LoopTerm { src: 1, arrow: ARROW_X, p: (a2 - 1) / 2, b, c, s: 0 }
            } else {
                LoopTerm { src: 1, arrow: ARROW_Z, p: 0, b, c, s: (-a2 - 1) / 2 }
            }
        }
        Family::R => {
            if a2 > 0 {
                LoopTerm { src: 0, arrow: ARROW_W, p: (a2 - 1) / 2, b, c, s: 0 }
            } else {
                LoopTerm { src: 0, arrow: ARROW_Y, p: 0, b, c, s: (-a2 - 1) / 2 }
            }
        }
    }
}

/// Inverse of [`model_of`] on canonical terms.
fn family_of(t: &LoopTerm) -> (Family, i64, i64, i64) {
    match (t.src, t.arrow) {
        (0, ARROW_NONE) => (Family::P0, 2 * (t.p - t.s), t.b, t.c),
        (1, ARROW_NONE) => (Family::P1, 2 * (t.p - t.s), t.b, t.c),
        (1, ARROW_X) => (Family::Q, 2 * t.p + 1, t.b, t.c),
        (1, ARROW_Z) => (Family::Q, -(2 * t.s + 1), t.b, t.c),
        (0, ARROW_W) => (Family::R, 2 * t.p + 1, t.b, t.c),
        (0, ARROW_Y) => (Family::R, -(2 * t.s + 1), t.b, t.c),
        _ => unreachable!("non-canonical loop term"),
    }
}

/// The quiver-with-relations algebra of L₀ ⊕ L₁.
pub(crate) fn conifold_v(
    ax: &BigRational,
    az: &BigRational,
    cutoff: EnergyCutoff,
) -> Result<AInfStructure, String> {
    let mut v = AInfStructure::new(2, cutoff);
    v.add_generator(Generator::unit("one0", 0))?;
    v.add_generator(Generator::unit("one1", 1))?;
    let x = v.add_generator(
        Generator::new("X", 1, 0, 1).with_valuation(ax.clone()).with_action(ax.clone()),
    )?;
    let y = v.add_generator(
        Generator::new("Y", 1, 1, 0).with_valuation(-ax.clone()).with_action(-ax.clone()),
    )?;
    let z = v.add_generator(
        Generator::new("Z", 1, 0, 1).with_valuation(az.clone()).with_action(az.clone()),
    )?;
    let w = v.add_generator(
        Generator::new("W", 1, 1, 0).with_valuation(-az.clone()).with_action(-az.clone()),
    )?;
    // degree-2 catchers, one per quiver relation, in the relation order
    let cxyz = v.add_generator(
        Generator::new("Cxyz", 2, 0, 1).with_dual("cxyz").with_valuation(az.clone()),
    )?;
    let cyzw = v.add_generator(
        Generator::new("Cyzw", 2, 1, 0).with_dual("cyzw").with_valuation(-ax.clone()),
    )?;
    let czwx = v.add_generator(
        Generator::new("Czwx", 2, 0, 1).with_dual("czwx").with_valuation(ax.clone()),
    )?;
    let cwxy = v.add_generator(
        Generator::new("Cwxy", 2, 1, 0).with_dual("cwxy").with_valuation(-az.clone()),
    )?;
    let one = NovikovScalar::one;
    let neg = || NovikovScalar::from_int(-1);
    // words are reversed tuples: coefficient xyz ⟸ m₃(Z,Y,X), etc.
    v.insert(vec![z, y, x], vec![(cxyz, one())])?;
    v.insert(vec![x, y, z], vec![(cxyz, neg())])?;
    v.insert(vec![w, z, y], vec![(cyzw, one())])?;
    v.insert(vec![y, z, w], vec![(cyzw, neg())])?;
    v.insert(vec![x, w, z], vec![(czwx, one())])?;
    v.insert(vec![z, w, x], vec![(czwx, neg())])?;
    v.insert(vec![y, x, w], vec![(cwxy, one())])?;
    v.insert(vec![w, x, y], vec![(cwxy, neg())])?;
    v.insert_unit_rows()?;
    v.augmentation = Some(AugSpec::UnitProjection);
    Ok(v)
}

/// κ image in free words, expanded in the displayed factor order; used for
/// the module table and as the closed-form oracle.
pub fn conifold_kappa_formula(
    vocab: &Vocab,
    family: &str,
    a2: i64,
    b: i64,
    c: i64,
    cutoff: &EnergyCutoff,
) -> Result<DualSeries, String> {
    let lx = vocab.by_name("x")?;
    let ly = vocab.by_name("y")?;
    let lz = vocab.by_name("z")?;
    let lw = vocab.by_name("w")?;
    let word = |ls: &[crate::barcobar::LetterId]| {
        DualSeries::monomial(vocab, Word(ls.to_vec()), NovikovScalar::one(), cutoff.clone())
    };
    let shift_pow = |base: DualSeries, e: i64| -> DualSeries {
        // (base − 1)^e with geometric expansion for negative e; the
        // diagonal constants collapse onto the right component under the
        // vertex-typed seed
        let one = DualSeries::one(2, cutoff.clone());
        let shifted = base.sub(&one, vocab);
        if e >= 0 {
            shifted.pow(e as usize, vocab)
        } else {
            let m = (-e) as usize;
            let mut acc = DualSeries::zero(cutoff.clone());
            let mut j = 0usize;
            loop {
                let pw = base.pow(j, vocab);
                if pw.is_zero() {
                    break;
                }
                let cf = super::i1::binom_pub(m as i64 - 1 + j as i64, j as i64);
                acc = acc.add(&pw.scale(&NovikovScalar::from_rat(cf), vocab), vocab);
                j += 1;
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            acc.scale(&NovikovScalar::from_int(sign), vocab)
        }
    };
    let (vertex, lead, loop_word, shift_b, shift_c) = match family {
        "P0" if a2 >= 0 => (0, None, word(&[lw, lx]), word(&[ly, lx]), word(&[lw, lz])),
        "P0" => (0, None, word(&[ly, lz]), word(&[ly, lx]), word(&[lw, lz])),
        "P1" if a2 >= 0 => (1, None, word(&[lx, lw]), word(&[lx, ly]), word(&[lz, lw])),
        "P1" => (1, None, word(&[lz, ly]), word(&[lx, ly]), word(&[lz, lw])),
        "Q" if a2 > 0 => (1, Some(word(&[lx])), word(&[lw, lx]), word(&[ly, lx]), word(&[lw, lz])),
        "Q" => (1, Some(word(&[lz])), word(&[ly, lz]), word(&[ly, lx]), word(&[lw, lz])),
        "R" if a2 > 0 => (0, Some(word(&[lw])), word(&[lx, lw]), word(&[lx, ly]), word(&[lz, lw])),
        "R" => (0, Some(word(&[ly])), word(&[lz, ly]), word(&[lx, ly]), word(&[lz, lw])),
        _ => return Err(format!("unknown family `{}`", family)),
    };
    // the displayed factor order: lead · loops · (shift_b − 1)^b · (shift_c − 1)^c,
    // seeded with the unit of the family's vertex component
    let mut acc = DualSeries::constant(
        crate::scalar::BaseScalar::at(2, vertex, NovikovScalar::one()),
        cutoff.clone(),
    );
    let loop_count = if lead.is_some() { (a2.abs() - 1) / 2 } else { a2.abs() / 2 };
    if let Some(l) = lead {
        acc = acc.mul(&l, vocab);
    }
    acc = acc.mul(&loop_word.pow(loop_count as usize, vocab), vocab);
    acc = acc.mul(&shift_pow(shift_b, b), vocab);
    acc = acc.mul(&shift_pow(shift_c, c), vocab);
    Ok(acc)
}

/// Build the conifold pair. Actions: 𝒜(X) = ax with 𝒜(Y) = −ax, and
/// 𝒜(Z) = az with 𝒜(W) = −az.
pub fn build_conifold(
    ax: BigRational,
    az: BigRational,
    window: ConifoldWindow,
    cutoff: EnergyCutoff,
) -> Result<PairData, String> {
    let v = conifold_v(&ax, &az, cutoff.clone())?;
    let mut w_alg = AInfStructure::new(2, cutoff.clone());
    let one0 = w_alg.add_generator(Generator::unit("one0", 0))?;
    let one1 = w_alg.add_generator(Generator::unit("one1", 1))?;
    let mut ids: BTreeMap<(Family, i64, i64, i64), GenId> = BTreeMap::new();
    ids.insert((Family::P0, 0, 0, 0), one0);
    ids.insert((Family::P1, 0, 0, 0), one1);
    let in_window = |f: Family, a2: i64, b: i64, c: i64| -> bool {
        let ok_a = match f {
            Family::P0 | Family::P1 => a2 % 2 == 0 && a2.abs() <= 2 * window.amax,
            Family::Q | Family::R => a2 % 2 != 0 && a2.abs() <= 2 * window.amax - 1,
        };
        ok_a && (window.bmin..=window.bmax).contains(&b) && (window.cmin..=window.cmax).contains(&c)
    };
    for f in [Family::P0, Family::P1, Family::Q, Family::R] {
        let (src, tgt) = match f {
            Family::P0 => (0, 0),
            Family::P1 => (1, 1),
            Family::Q => (1, 0),
            Family::R => (0, 1),
        };
        let a_range: Vec<i64> = match f {
            Family::P0 | Family::P1 => (-window.amax..=window.amax).map(|a| 2 * a).collect(),
            Family::Q | Family::R => {
                let mut v = Vec::new();
                let mut a2 = 1;
                while a2 <= 2 * window.amax - 1 {
                    v.push(a2);
                    v.push(-a2);
                    a2 += 2;
                }
                v.sort();
                v
            }
        };
        for &a2 in &a_range {
            for b in window.bmin..=window.bmax {
                for c in window.cmin..=window.cmax {
                    if (f == Family::P0 || f == Family::P1) && (a2, b, c) == (0, 0, 0) {
                        continue; // the units
                    }
                    let g = w_alg.add_generator(Generator::new(&fam_name(f, a2, b, c), 0, src, tgt))?;
                    ids.insert((f, a2, b, c), g);
                }
            }
        }
    }
    // transported product table
    let keys: Vec<(Family, i64, i64, i64)> = ids.keys().copied().collect();
    for &(f1, a21, b1, c1) in &keys {
        if (a21, b1, c1) == (0, 0, 0) && (f1 == Family::P0 || f1 == Family::P1) {
            continue;
        }
        let m1 = PathPoly::single(model_of(f1, a21, b1, c1));
        for &(f2, a22, b2, c2) in &keys {
            if (a22, b2, c2) == (0, 0, 0) && (f2 == Family::P0 || f2 == Family::P1) {
                continue;
            }
            let g1 = ids[&(f1, a21, b1, c1)];
            let g2 = ids[&(f2, a22, b2, c2)];
            if w_alg.gen(g1).target != w_alg.gen(g2).source {
                continue;
            }
            let m2 = PathPoly::single(model_of(f2, a22, b2, c2));
            let product = m1.mul(&m2);
            let outputs: Option<Vec<(GenId, NovikovScalar)>> = product
                .terms
                .iter()
                .map(|(t, coeff)| {
                    let (f, a2, b, c) = family_of(t);
                    ids.get(&(f, a2, b, c))
                        .map(|&g| (g, NovikovScalar::from_rat(coeff.clone())))
                })
                .collect();
            if let Some(outs) = outputs {
                w_alg.insert(vec![g1, g2], outs)?;
            }
        }
    }
    w_alg.insert_unit_rows()?;
    // core: products of up to three core elements stay inside the window
    let mut core = vec![one0, one1];
    for (&(_, a2, b, c), &g) in &ids {
        if a2.abs() <= 2 && b == 0 && c == 0 && (a2, b, c) != (0, 0, 0) {
            core.push(g);
        }
    }
    core.sort();
    core.dedup();
    w_alg.core = Some(core);

    let mut pd = PairData::new("conifold", w_alg, v)?;
    // module table from the κ formulas
    let vocab = pd.vocab.clone();
    for &(f, a2, b, c) in &keys {
        let z = ids[&(f, a2, b, c)];
        let fname = match f {
            Family::P0 => "P0",
            Family::P1 => "P1",
            Family::Q => "Q",
            Family::R => "R",
        };
        let series = conifold_kappa_formula(&vocab, fname, a2, b, c, &cutoff)?;
        for (word, cf) in &series.terms {
            let xs: Vec<GenId> = word.0.iter().map(|&l| vocab.letter(l).gen.unwrap()).collect();
            let lam = match word.source(&vocab) {
                Some(s) => cf.component(s).clone(),
                None => cf.component(pd.w.gen(z).source).clone(),
            };
            let synthetic = b < 0 || c < 0;
            pd.insert_module(vec![z], xs, lam, synthetic)?;
        }
    }
    for (label, key) in [
        ("P0(1,0,0)", (Family::P0, 2, 0, 0)),
        ("P0(-1,0,0)", (Family::P0, -2, 0, 0)),
        ("P1(1,0,0)", (Family::P1, 2, 0, 0)),
        ("P1(-1,0,0)", (Family::P1, -2, 0, 0)),
        ("Q(1/2,0,0)", (Family::Q, 1, 0, 0)),
        ("Q(-1/2,0,0)", (Family::Q, -1, 0, 0)),
        ("R(1/2,0,0)", (Family::R, 1, 0, 0)),
        ("R(-1/2,0,0)", (Family::R, -1, 0, 0)),
    ] {
        pd.m_gens.push((label.to_string(), vec![(ids[&key], NovikovScalar::one())]));
    }
    pd.chart_gens = vec![
        ids[&(Family::Q, 1, 0, 0)],
        ids[&(Family::Q, -1, 0, 0)],
        ids[&(Family::R, 1, 0, 0)],
        ids[&(Family::R, -1, 0, 0)],
    ];
    Ok(pd)
}

/// The displayed product formula for two P⁰ elements, used as a test
/// oracle against the transported table.
pub fn conifold_p0_product_formula(
    a1: i64,
    b1: i64,
    c1: i64,
    a2: i64,
    b2: i64,
    c2: i64,
) -> Vec<((i64, i64, i64), BigRational)> {
    let k = if a1 * a2 < 0 { a1.abs().min(a2.abs()) } else { 0 };
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            out.push((
                (a1 + a2, b1 + b2 + i, c1 + c2 + j),
                super::i1::binom_pub(k, i) * super::i1::binom_pub(k, j),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::verify_ainf;
    use crate::mcalg::mc_relations;
    use crate::scalar::rat_int;

    fn pd() -> PairData {
        build_conifold(rat_int(0), rat_int(0), ConifoldWindow::default(), EnergyCutoff::default_window())
            .unwrap()
    }

    #[test]
    fn mc_relations_are_the_quiver_relations() {
        let v = conifold_v(&rat_int(0), &rat_int(0), EnergyCutoff::default_window()).unwrap();
        let vocab = Vocab::from_structure(&v);
        let p = mc_relations(&v, &vocab).unwrap();
        let rendered: Vec<(String, String)> = p
            .relations
            .iter()
            .map(|(g, f)| (v.gen(*g).name.clone(), f.render(&vocab)))
            .collect();
        assert_eq!(
            rendered,
            vec![
                ("Cxyz".to_string(), "(1)*x.y.z + (-1)*z.y.x".to_string()),
                ("Cyzw".to_string(), "(1)*y.z.w + (-1)*w.z.y".to_string()),
                ("Czwx".to_string(), "(1)*z.w.x + (-1)*x.w.z".to_string()),
                ("Cwxy".to_string(), "(1)*w.x.y + (-1)*y.x.w".to_string()),
            ]
        );
        // xz-type words are non-composable, enforced by typing
        let lx = vocab.by_name("x").unwrap();
        let lz = vocab.by_name("z").unwrap();
        assert!(!Word(vec![lx, lz]).composable(&vocab));
        assert!(!Word(vec![lz, lx]).composable(&vocab));
    }

    #[test]
    fn v_satisfies_the_relations() {
        let v = conifold_v(&rat_int(0), &rat_int(0), EnergyCutoff::default_window()).unwrap();
        let report = verify_ainf(&v, 4, 4, None);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn transported_table_is_associative_on_the_core() {
        let pd = pd();
        let report = verify_ainf(&pd.w, 3, 3, None);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn displayed_p0_binomials_match_the_table() {
        let pd = pd();
        for (a1, b1, c1, a2, b2, c2) in
            [(1i64, 0i64, 0i64, -1i64, 0i64, 0i64), (2, 0, 0, -1, 0, 1), (1, 1, 0, -2, 0, 0), (-1, 0, 0, 2, 1, -1)]
        {
            let g1 = pd.w.lookup(&fam_name(Family::P0, 2 * a1, b1, c1)).unwrap();
            let g2 = pd.w.lookup(&fam_name(Family::P0, 2 * a2, b2, c2)).unwrap();
            let got = pd.w.m(&[g1, g2]);
            let want = conifold_p0_product_formula(a1, b1, c1, a2, b2, c2);
            assert_eq!(got.len(), want.len(), "({},{},{})·({},{},{})", a1, b1, c1, a2, b2, c2);
            for ((a, b, c), coeff) in want {
                let name = if (a, b, c) == (0, 0, 0) {
                    "one0".to_string()
                } else {
                    fam_name(Family::P0, 2 * a, b, c)
                };
                let y = pd.w.lookup(&name).unwrap();
                let entry = got.iter().find(|(g, _)| *g == y).expect("missing output");
                assert_eq!(entry.1, NovikovScalar::from_rat(coeff));
            }
        }
    }

    #[test]
    fn qr_product_carries_the_shifted_binomial() {
        // m₂(Q(1/2), R(−1/2)) = P1(0,0,0) + P1(0,1,0): the q′-bump k₁ = 1
        let pd = pd();
        let q = pd.w.lookup("Q(1/2,0,0)").unwrap();
        let r = pd.w.lookup("R(-1/2,0,0)").unwrap();
        let got = pd.w.m(&[q, r]);
        let names: Vec<String> = got.iter().map(|(g, _)| pd.w.gen(*g).name.clone()).collect();
        assert_eq!(names, vec!["one1".to_string(), "P1(0,1,0)".to_string()]);
        // and the same-sign product is a single output
        let r2 = pd.w.lookup("R(1/2,0,0)").unwrap();
        let got2 = pd.w.m(&[q, r2]);
        let names2: Vec<String> = got2.iter().map(|(g, _)| pd.w.gen(*g).name.clone()).collect();
        assert_eq!(names2, vec!["P1(1,0,0)".to_string()]);
    }

    #[test]
    fn kappa_of_crossing_generators() {
        let pd = pd();
        let q = pd.w.lookup("Q(1/2,0,0)").unwrap();
        assert_eq!(pd.kappa(&[q]).unwrap().render(&pd.vocab), "(1)*x");
        let p = pd.w.lookup("P0(1,0,0)").unwrap();
        assert_eq!(pd.kappa(&[p]).unwrap().render(&pd.vocab), "(1)*w.x");
    }
}
