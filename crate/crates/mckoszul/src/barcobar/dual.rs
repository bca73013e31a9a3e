//! The differential of (BV)^∨, computed by expanding Σ_k m_k(b̃,…,b̃) for
//! b̃ = Σ xᵢXᵢ over all non-unit generators and collecting the coefficient
//! of each Xᵢ.
//!
//! Coefficient words come out reversed relative to the input tuple, per
//! the convention m_k(x₁X₁,…,x_kX_k) = x_k⋯x₁·m_k(X₁,…,X_k). The sign on
//! each coordinate is (−1)^{|Xᵢ|}, fixed so that the differential of a
//! degree-2 coordinate is literally the Maurer-Cartan coefficient of its
//! generator (the two appearances of the sign in the source conventions
//! disagree globally; this orientation is the one every worked example
//! satisfies).

use std::collections::BTreeMap;

use crate::ainf::AInfStructure;
use crate::scalar::Coeff;

use super::{DualSeries, LetterId, Vocab, Word};

/// Differential values on generator coordinates.
pub type DiffMap = BTreeMap<LetterId, DualSeries>;

/// d on every generator coordinate of (BV)^∨.
pub fn dual_diff_generators(s: &AInfStructure, vocab: &Vocab) -> Result<DiffMap, String> {
    let mut map: DiffMap = vocab
        .ids()
        .filter(|l| vocab.letter(*l).gen.is_some())
        .map(|l| (l, DualSeries::zero(s.cutoff.clone())))
        .collect();
    for (tuple, outputs) in s.table() {
        // b̃ ranges over non-unit generators only
        if tuple.iter().any(|&g| s.gen(g).is_unit) {
            continue;
        }
        let letters: Option<Vec<LetterId>> = tuple.iter().rev().map(|&g| vocab.of_gen(g)).collect();
        let letters = match letters {
            Some(ls) => ls,
            None => continue,
        };
        let word = Word(letters);
        debug_assert!(word.composable(vocab));
        for (y, c) in outputs {
            let gy = s.gen(*y);
            if gy.is_unit {
                return Err(format!(
                    "entry {} hits the unit; the reduced dual differential needs a strict augmentation",
                    s.render_tuple(tuple)
                ));
            }
            let ly = vocab
                .of_gen(*y)
                .ok_or_else(|| format!("no dual letter for `{}`", gy.name))?;
            let sign = if gy.degree.rem_euclid(2) == 0 { 1 } else { -1 };
            let contribution = DualSeries::monomial(
                vocab,
                word.clone(),
                c.scale(&Coeff::integer(sign)),
                s.cutoff.clone(),
            );
            // d(xᵢ) must carry the typing of xᵢ
            debug_assert_eq!(word.source(vocab), Some(vocab.letter(ly).source));
            debug_assert_eq!(word.target(vocab), Some(vocab.letter(ly).target));
            let slot = map.get_mut(&ly).unwrap();
            *slot = slot.add(&contribution, vocab);
        }
    }
    Ok(map)
}

/// Graded-Leibniz extension of the generator differentials to arbitrary
/// series: d(x_{w₁}⋯x_{w_n}) = Σᵢ (−1)^{|x_{w₁}|″+⋯+|x_{w_{i−1}}|″}
/// x_{w₁}⋯d(x_{wᵢ})⋯x_{w_n}. Letters without a differential (fresh
/// variables) are d-closed.
pub fn dual_diff(f: &DualSeries, diff: &DiffMap, vocab: &Vocab) -> DualSeries {
    let mut out = DualSeries::zero(f.cutoff.clone());
    out.truncated = f.truncated;
    for (w, c) in &f.terms {
        let mut sign_exp: i64 = 0;
        for (i, &l) in w.0.iter().enumerate() {
            let dl = match diff.get(&l) {
                Some(d) if !d.is_zero() => d,
                _ => {
                    sign_exp += vocab.letter(l).cobar_degree;
                    continue;
                }
            };
            let sign = if sign_exp.rem_euclid(2) == 0 { 1 } else { -1 };
            let prefix = DualSeries::monomial(
                vocab,
                Word(w.0[..i].to_vec()),
                crate::scalar::NovikovScalar::from_int(sign),
                f.cutoff.clone(),
            );
            let suffix = DualSeries::monomial(
                vocab,
                Word(w.0[i + 1..].to_vec()),
                crate::scalar::NovikovScalar::one(),
                f.cutoff.clone(),
            );
            let piece = prefix.mul(dl, vocab).mul(&suffix, vocab);
            // reattach the original coefficient from the left
            let piece = match w.source(vocab) {
                Some(src) => piece.scale(c.component(src), vocab),
                None => piece,
            };
            out = out.add(&piece, vocab);
            sign_exp += vocab.letter(l).cobar_degree;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{AugSpec, Generator};
    use crate::scalar::{BaseScalar, EnergyCutoff, NovikovScalar};

    /// Exterior algebra on two degree-1 generators, with the dg → A∞ sign
    /// bridge m₂(X,Y) = (−1)^{|X|} X∧Y.
    fn torus2() -> AInfStructure {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        s.add_generator(Generator::unit("one", 0)).unwrap();
        let x1 = s.add_generator(Generator::new("dth1", 1, 0, 0).with_dual("x1")).unwrap();
        let x2 = s.add_generator(Generator::new("dth2", 1, 0, 0).with_dual("x2")).unwrap();
        let x12 = s.add_generator(Generator::new("dth12", 2, 0, 0).with_dual("x12")).unwrap();
        s.insert(vec![x1, x2], vec![(x12, NovikovScalar::from_int(-1))]).unwrap();
        s.insert(vec![x2, x1], vec![(x12, NovikovScalar::one())]).unwrap();
        s.insert_unit_rows().unwrap();
        s.augmentation = Some(AugSpec::UnitProjection);
        s
    }

    #[test]
    fn torus_diff_is_the_commutator() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let d = dual_diff_generators(&s, &vocab).unwrap();
        let l1 = vocab.by_name("x1").unwrap();
        let l2 = vocab.by_name("x2").unwrap();
        let l12 = vocab.by_name("x12").unwrap();
        // d(x12) = x1x2 - x2x1, d(x1) = d(x2) = 0
        let mut expect = DualSeries::zero(s.cutoff.clone());
        expect.insert(Word(vec![l1, l2]), BaseScalar::diagonal(1, NovikovScalar::one()), &vocab);
        expect.insert(Word(vec![l2, l1]), BaseScalar::diagonal(1, NovikovScalar::from_int(-1)), &vocab);
        assert_eq!(d.get(&l12).unwrap(), &expect);
        assert!(d.get(&l1).unwrap().is_zero());
        assert!(d.get(&l2).unwrap().is_zero());
    }

    #[test]
    fn constant_series_is_closed() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let d = dual_diff_generators(&s, &vocab).unwrap();
        let one = DualSeries::one(1, s.cutoff.clone());
        assert!(dual_diff(&one, &d, &vocab).is_zero());
    }

    #[test]
    fn leibniz_rule_on_random_letter_pairs() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let d = dual_diff_generators(&s, &vocab).unwrap();
        let letters: Vec<LetterId> = vocab.ids().collect();
        for &a in &letters {
            for &b in &letters {
                let xa = DualSeries::letter(&vocab, a, s.cutoff.clone());
                let xb = DualSeries::letter(&vocab, b, s.cutoff.clone());
                let lhs = dual_diff(&xa.mul(&xb, &vocab), &d, &vocab);
                let sign = if vocab.letter(a).cobar_degree.rem_euclid(2) == 0 { 1 } else { -1 };
                let rhs = dual_diff(&xa, &d, &vocab).mul(&xb, &vocab).add(
                    &xa.mul(&dual_diff(&xb, &d, &vocab), &vocab)
                        .scale(&NovikovScalar::from_int(sign), &vocab),
                    &vocab,
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn d_squared_vanishes_on_all_short_words() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let d = dual_diff_generators(&s, &vocab).unwrap();
        let letters: Vec<LetterId> = vocab.ids().collect();
        let mut words: Vec<Vec<LetterId>> = vec![vec![]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &words {
                for &l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            for w in next {
                let f = DualSeries::monomial(&vocab, Word(w.clone()), NovikovScalar::one(), s.cutoff.clone());
                let dd = dual_diff(&dual_diff(&f, &d, &vocab), &d, &vocab);
                assert!(dd.is_zero(), "d² != 0 on {:?}: {}", w, dd.render(&vocab));
                words.push(w);
            }
        }
    }
}
