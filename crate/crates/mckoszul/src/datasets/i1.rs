//! The nodal I₁ fiber: an immersed sphere L with one transversal double
//! point carrying complementary generators U, V (actions summing to zero),
//! dual to the section G of the conic fibration. W is spanned by chords
//! C(a,b) with the binomial product
//! m₂(C(a₁,b₁), C(a₂,b₂)) = Σᵢ₌₀ᵏ (k choose i) C(a₁+a₂, b₁+b₂+i),
//! k = min(|a₁|,|a₂|) when the a's have opposite signs and 0 otherwise;
//! κ sends C(a,b) to (ũṽ−1)^b·ũ^{|a|} for a < 0 and (ũṽ−1)^b·ṽ^a for
//! a ≥ 0, with negative b expanded as a geometric series.

use num::BigRational;

use crate::ainf::{AInfStructure, AugSpec, GenId, Generator};
use crate::barcobar::{DualSeries, Vocab, Word};
use crate::koszul::PairData;
use crate::scalar::{Coeff, EnergyCutoff, NovikovScalar};

#[derive(Clone, Copy, Debug)]
pub struct I1Window {
    pub amax: i64,
    pub bmin: i64,
    pub bmax: i64,
}

impl Default for I1Window {
    fn default() -> Self {
        I1Window { amax: 7, bmin: -5, bmax: 8 }
    }
}

fn c_name(a: i64, b: i64) -> String {
    format!("C({},{})", a, b)
}

pub(crate) fn binom_pub(n: i64, k: i64) -> BigRational {
    binom(n, k)
}

fn binom(n: i64, k: i64) -> BigRational {
    let mut acc = BigRational::from_integer(1.into());
    for i in 0..k {
        acc *= BigRational::from_integer((n - i).into());
        acc /= BigRational::from_integer((i + 1).into());
    }
    acc
}

/// The nodal-sphere algebra: unit, U, V in degree 1 with the stated
/// actions, and the degree-2 class catching uv − vu.
pub(crate) fn nodal_sphere_v(action_u: &BigRational, cutoff: EnergyCutoff) -> Result<AInfStructure, String> {
    let mut v = AInfStructure::new(1, cutoff);
    v.add_generator(Generator::unit("one", 0))?;
    let u = v.add_generator(
        Generator::new("U", 1, 0, 0)
            .with_valuation(action_u.clone())
            .with_action(action_u.clone()),
    )?;
    let vv = v.add_generator(
        Generator::new("V", 1, 0, 0)
            .with_valuation(-action_u.clone())
            .with_action(-action_u.clone()),
    )?;
    let h = v.add_generator(Generator::new("H", 2, 0, 0))?;
    v.insert(vec![u, vv], vec![(h, NovikovScalar::from_int(-1))])?;
    v.insert(vec![vv, u], vec![(h, NovikovScalar::one())])?;
    v.insert_unit_rows()?;
    v.augmentation = Some(AugSpec::UnitProjection);
    Ok(v)
}

/// The closed-form κ image of C(a,b), expanded in free words; the factor
/// order is literal: (uv−1)-powers first, then the u/v tail.
pub fn i1_kappa_formula(
    pd_vocab: &Vocab,
    a: i64,
    b: i64,
    cutoff: &EnergyCutoff,
) -> Result<DualSeries, String> {
    let lu = pd_vocab.by_name("u")?;
    let lv = pd_vocab.by_name("v")?;
    let uv = DualSeries::monomial(pd_vocab, Word(vec![lu, lv]), NovikovScalar::one(), cutoff.clone());
    let one = DualSeries::one(1, cutoff.clone());
    // (uv − 1)^b, geometric for b < 0
    let shift = if b >= 0 {
        uv.sub(&one, pd_vocab).pow(b as usize, pd_vocab)
    } else {
        let m = (-b) as usize;
        // (uv−1)^{−m} = (−1)^m Σ_j C(m−1+j, j) (uv)^j
        let mut acc = DualSeries::zero(cutoff.clone());
        let mut j = 0i64;
        loop {
            let pw = uv.pow(j as usize, pd_vocab);
            if pw.is_zero() {
                break;
            }
            let c = binom(m as i64 - 1 + j, j);
            acc = acc.add(&pw.scale(&NovikovScalar::from_rat(c), pd_vocab), pd_vocab);
            j += 1;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        acc.scale(&NovikovScalar::from_int(sign), pd_vocab)
    };
    let tail = if a < 0 {
        DualSeries::letter(pd_vocab, lu, cutoff.clone()).pow((-a) as usize, pd_vocab)
    } else {
        DualSeries::letter(pd_vocab, lv, cutoff.clone()).pow(a as usize, pd_vocab)
    };
    Ok(shift.mul(&tail, pd_vocab))
}

/// Build the (G, L) pair for the I₁ model. `action_u` is 𝒜(U); 𝒜(V) is
/// its negative.
pub fn build_i1(
    action_u: BigRational,
    window: I1Window,
    cutoff: EnergyCutoff,
) -> Result<PairData, String> {
    let v = nodal_sphere_v(&action_u, cutoff.clone())?;
    let mut w = AInfStructure::new(1, cutoff.clone());
    let mut ids: std::collections::BTreeMap<(i64, i64), GenId> = Default::default();
    for a in -window.amax..=window.amax {
        for b in window.bmin..=window.bmax {
            let id = if (a, b) == (0, 0) {
                w.add_generator(Generator::unit("one", 0))?
            } else {
                w.add_generator(Generator::new(&c_name(a, b), 0, 0, 0))?
            };
            ids.insert((a, b), id);
        }
    }
    for (&(a1, b1), &g1) in &ids {
        for (&(a2, b2), &g2) in &ids {
            if (a1, b1) == (0, 0) || (a2, b2) == (0, 0) {
                continue;
            }
            let k = if a1 * a2 < 0 { a1.abs().min(a2.abs()) } else { 0 };
            let outputs: Option<Vec<(GenId, NovikovScalar)>> = (0..=k)
                .map(|i| {
                    ids.get(&(a1 + a2, b1 + b2 + i)).map(|&y| {
                        (y, NovikovScalar::from_rat(binom(k, i)))
                    })
                })
                .collect();
            // entries whose outputs leave the window are boundary-truncated
            if let Some(outs) = outputs {
                w.insert(vec![g1, g2], outs)?;
            }
        }
    }
    w.insert_unit_rows()?;
    let core: Vec<GenId> = ids
        .iter()
        .filter(|(&(a, b), _)| a.abs() <= 1 && (0..=1).contains(&b))
        .map(|(_, &id)| id)
        .collect();
    w.core = Some(core);
    let mut pd = PairData::new("i1", w, v)?;
    // module table from the closed form
    let vocab = pd.vocab.clone();
    for (&(a, b), _) in &ids {
        let series = i1_kappa_formula(&vocab, a, b, &cutoff)?;
        let z = pd.w.lookup(if (a, b) == (0, 0) { "one" } else { &c_name(a, b) })?;
        for (word, c) in &series.terms {
            let xs: Vec<GenId> = word
                .0
                .iter()
                .map(|&l| vocab.letter(l).gen.unwrap())
                .collect();
            let lam = match word.source(&vocab) {
                Some(s) => c.component(s).clone(),
                None => c.component(0).clone(),
            };
            pd.insert_module(vec![z], xs, lam, b < 0)?;
        }
    }
    let u = pd.w.lookup("C(-1,0)")?;
    let vv = pd.w.lookup("C(1,0)")?;
    pd.m_gens.push(("C(-1,0)".into(), vec![(u, NovikovScalar::one())]));
    pd.m_gens.push(("C(1,0)".into(), vec![(vv, NovikovScalar::one())]));
    pd.chart_gens = vec![u, vv];
    Ok(pd)
}

/// The paper's product formula, used as the oracle against the table.
pub fn i1_m2_formula(a1: i64, b1: i64, a2: i64, b2: i64) -> Vec<((i64, i64), BigRational)> {
    let k = if a1 * a2 < 0 { a1.abs().min(a2.abs()) } else { 0 };
    (0..=k).map(|i| ((a1 + a2, b1 + b2 + i), binom(k, i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::verify_ainf;
    use crate::scalar::{rat, rat_int};

    fn small() -> PairData {
        build_i1(rat_int(0), I1Window { amax: 4, bmin: -3, bmax: 5 }, EnergyCutoff::default_window())
            .unwrap()
    }

    #[test]
    fn product_matches_the_closed_form() {
        let pd = small();
        // m2(C(-1,0), C(1,0)) = C(0,0) + C(0,1)
        let a = pd.w.lookup("C(-1,0)").unwrap();
        let b = pd.w.lookup("C(1,0)").unwrap();
        let got = pd.w.m(&[a, b]);
        assert_eq!(got.len(), 2);
        assert_eq!(pd.w.gen(got[0].0).name, "one");
        assert_eq!(pd.w.gen(got[1].0).name, "C(0,1)");
    }

    #[test]
    fn associativity_on_the_core() {
        let pd = small();
        let report = verify_ainf(&pd.w, 3, 3, None);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn kappa_images_match_the_display() {
        let pd = small();
        let u = pd.w.lookup("C(-1,0)").unwrap();
        let k = pd.kappa(&[u]).unwrap();
        assert_eq!(k.render(&pd.vocab), "(1)*u");
        let c01 = pd.w.lookup("C(0,1)").unwrap();
        let k01 = pd.kappa(&[c01]).unwrap();
        assert_eq!(k01.render(&pd.vocab), "(-1) + (1)*u.v");
        // κ(C(-2,1)) = (uv−1)·u²
        let c = pd.w.lookup("C(-2,1)").unwrap();
        let kc = pd.kappa(&[c]).unwrap();
        assert_eq!(kc.render(&pd.vocab), "(-1)*u.u + (1)*u.v.u.u");
    }

    #[test]
    fn augmentation_values_are_kappa_at_zero() {
        let pd = small();
        for name in ["C(-1,0)", "C(1,0)", "C(2,1)"] {
            let z = pd.w.lookup(name).unwrap();
            assert!(pd.augmentation(z).is_zero(), "{}", name);
        }
        let z = pd.w.lookup("C(0,1)").unwrap();
        assert_eq!(pd.augmentation(z), NovikovScalar::from_int(-1));
        let z = pd.w.lookup("C(0,-2)").unwrap();
        assert_eq!(pd.augmentation(z), NovikovScalar::one());
    }

    #[test]
    fn geometric_series_for_negative_b() {
        let pd = small();
        let z = pd.w.lookup("C(0,-1)").unwrap();
        let k = pd.kappa(&[z]).unwrap();
        // (uv−1)^{-1} = −1 − uv − uvuv − …
        let s = k.render(&pd.vocab);
        assert_eq!(s, "(-1) + (-1)*u.v + (-1)*u.v.u.v");
    }

    #[test]
    fn actions_shift_letter_valuations() {
        let pd = build_i1(rat(1, 2), I1Window { amax: 2, bmin: -1, bmax: 2 }, EnergyCutoff::default_window())
            .unwrap();
        let lu = pd.vocab.by_name("u").unwrap();
        assert_eq!(pd.vocab.letter(lu).valuation, rat(-1, 2));
    }
}
