//! Cobar construction of the dualized coalgebra — the cross-check model
//! Ω(V^∨) for (BV)^∨.
//!
//! The coalgebra operations come from transposing the structure table:
//! an entry m_k(X_{a₁},…,X_{a_k}) ∋ c·Xᵢ contributes the summand
//! (−1)^{|X_{a₁}|′+⋯+|X_{a_k}|′}·c·(x_{a_k}⊗⋯⊗x_{a₁}) to Δ_k(xᵢ). Note the
//! sign is recomputed from the *input* degrees here, while the direct dual
//! differential uses the output degree; the two agree exactly when the
//! degree rule |Xᵢ| = Σ|X_{a_t}| + 2 − k holds, which is what the
//! letter-for-letter agreement test certifies.

use std::collections::BTreeMap;

use crate::ainf::AInfStructure;
use crate::scalar::{Coeff, NovikovScalar};

use super::{DualSeries, LetterId, Vocab, Word};

/// The dualized coalgebra: Δ_k on every generator coordinate.
#[derive(Clone, Debug)]
pub struct DualCoalgebra {
    /// letter → Σ c·word, the word already reversed into dual order.
    pub deltas: BTreeMap<LetterId, Vec<(Word, NovikovScalar)>>,
}

impl DualCoalgebra {
    /// Transpose the structure table per the dual-coalgebra rule.
    pub fn dualize(s: &AInfStructure, vocab: &Vocab) -> Result<DualCoalgebra, String> {
        let mut deltas: BTreeMap<LetterId, Vec<(Word, NovikovScalar)>> = BTreeMap::new();
        for (tuple, outputs) in s.table() {
            if tuple.iter().any(|&g| s.gen(g).is_unit) {
                continue;
            }
            let input_shift: i64 = tuple.iter().map(|&g| s.gen(g).shifted_degree()).sum();
            let sign = if input_shift.rem_euclid(2) == 0 { 1 } else { -1 };
            let letters: Vec<LetterId> = tuple
                .iter()
                .rev()
                .map(|&g| vocab.of_gen(g).ok_or_else(|| format!("no letter for `{}`", s.gen(g).name)))
                .collect::<Result<_, _>>()?;
            for (y, c) in outputs {
                if s.gen(*y).is_unit {
                    continue;
                }
                let ly = vocab
                    .of_gen(*y)
                    .ok_or_else(|| format!("no letter for `{}`", s.gen(*y).name))?;
                deltas
                    .entry(ly)
                    .or_default()
                    .push((Word(letters.clone()), c.scale(&Coeff::integer(sign))));
            }
        }
        for v in deltas.values_mut() {
            v.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Ok(DualCoalgebra { deltas })
    }

    /// Δ on one letter, as a series.
    pub fn delta_series(&self, l: LetterId, vocab: &Vocab, cutoff: crate::scalar::EnergyCutoff) -> DualSeries {
        let mut out = DualSeries::zero(cutoff);
        if let Some(words) = self.deltas.get(&l) {
            for (w, c) in words {
                let piece = DualSeries::monomial(vocab, w.clone(), c.clone(), out.cutoff.clone());
                out = out.add(&piece, vocab);
            }
        }
        out
    }
}

/// Cobar differential: letterwise Δ-insertion with Koszul prefix signs,
/// δ(x₁⊗⋯⊗x_k) = Σᵢ (−1)^{|x₁|″+⋯+|x_{i−1}|″} x₁⊗⋯⊗Δ(xᵢ)⊗⋯⊗x_k.
pub fn cobar_diff(f: &DualSeries, coalg: &DualCoalgebra, vocab: &Vocab) -> DualSeries {
    let mut out = DualSeries::zero(f.cutoff.clone());
    out.truncated = f.truncated;
    for (w, c) in &f.terms {
        let mut sign_exp: i64 = 0;
        for (i, &l) in w.0.iter().enumerate() {
            let delta = coalg.delta_series(l, vocab, f.cutoff.clone());
            if delta.is_zero() {
                sign_exp += vocab.letter(l).cobar_degree;
                continue;
            }
            let sign = if sign_exp.rem_euclid(2) == 0 { 1 } else { -1 };
            let prefix = DualSeries::monomial(
                vocab,
                Word(w.0[..i].to_vec()),
                NovikovScalar::from_int(sign),
                f.cutoff.clone(),
            );
            let suffix = DualSeries::monomial(
                vocab,
                Word(w.0[i + 1..].to_vec()),
                NovikovScalar::one(),
                f.cutoff.clone(),
            );
            let piece = prefix.mul(&delta, vocab).mul(&suffix, vocab);
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
    use crate::barcobar::{dual_diff, dual_diff_generators};
    use crate::scalar::EnergyCutoff;

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
    fn single_letter_delta_is_the_definition() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let coalg = DualCoalgebra::dualize(&s, &vocab).unwrap();
        let l12 = vocab.by_name("x12").unwrap();
        let f = DualSeries::letter(&vocab, l12, s.cutoff.clone());
        let df = cobar_diff(&f, &coalg, &vocab);
        assert_eq!(df.render(&vocab), "(1)*x1.x2 + (-1)*x2.x1");
    }

    #[test]
    fn cobar_agrees_with_dual_diff_on_generators_and_words() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let coalg = DualCoalgebra::dualize(&s, &vocab).unwrap();
        let dmap = dual_diff_generators(&s, &vocab).unwrap();
        let letters: Vec<LetterId> = vocab.ids().collect();
        for &l in &letters {
            let f = DualSeries::letter(&vocab, l, s.cutoff.clone());
            assert_eq!(cobar_diff(&f, &coalg, &vocab), dual_diff(&f, &dmap, &vocab));
        }
        // two-letter words as well
        for &a in &letters {
            for &b in &letters {
                let f = DualSeries::monomial(&vocab, Word(vec![a, b]), NovikovScalar::one(), s.cutoff.clone());
                assert_eq!(cobar_diff(&f, &coalg, &vocab), dual_diff(&f, &dmap, &vocab));
            }
        }
    }

    #[test]
    fn cobar_diff_squares_to_zero() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let coalg = DualCoalgebra::dualize(&s, &vocab).unwrap();
        let letters: Vec<LetterId> = vocab.ids().collect();
        for &a in &letters {
            for &b in &letters {
                let f = DualSeries::monomial(&vocab, Word(vec![a, b]), NovikovScalar::one(), s.cutoff.clone());
                let dd = cobar_diff(&cobar_diff(&f, &coalg, &vocab), &coalg, &vocab);
                assert!(dd.is_zero(), "{}", dd.render(&vocab));
            }
        }
    }
}
