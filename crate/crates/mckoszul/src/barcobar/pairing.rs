//! Evaluation pairing between (BV)^∨ and BV, and the transpose identity
//! relating the two differentials.
//!
//! A dual word (y₁,…,y_k) evaluates on a bar word (X₁,…,X_k) by pairing
//! y_k with X₁, y_{k−1} with X₂, and so on — the reversal mirrors how
//! coefficient words are built from input tuples. The transpose identity
//! reads ⟨d f, ξ⟩ = (−1)^{|f|+1} ⟨f, d_bar ξ⟩ for homogeneous f of dga
//! degree |f|.

use crate::ainf::AInfStructure;
use crate::scalar::{BaseScalar, NovikovScalar};

use super::{bar_codiff, dual_diff, BarElement, DiffMap, DualSeries, Vocab};
use crate::ainf::Report;
use crate::ainf::Violation;

/// ⟨f, ξ⟩ ∈ 𝕜_Λ.
pub fn pairing(f: &DualSeries, xi: &BarElement, s: &AInfStructure, vocab: &Vocab) -> BaseScalar {
    let mut acc = BaseScalar::zero(s.ring_size);
    for (w, cf) in &f.terms {
        for (bw, cb) in &xi.terms {
            if w.len() != bw.len() {
                continue;
            }
            let matched = w
                .0
                .iter()
                .zip(bw.0.iter().rev())
                .all(|(&l, &g)| vocab.letter(l).gen == Some(g));
            if !matched {
                continue;
            }
            if w.is_empty() {
                acc = acc.add(&cf.mul_exact(cb));
            } else {
                let comp = s.gen(bw.0[0]).source;
                let value = cf
                    .component(w.source(vocab).unwrap())
                    .mul_exact(cb.component(comp));
                acc = acc.add(&BaseScalar::at(s.ring_size, comp, value));
            }
        }
    }
    acc
}

/// Check ⟨d f, ξ⟩ = (−1)^{|f|+1}⟨f, d_bar ξ⟩, per homogeneous degree
/// component of f. Empty report = identity holds.
pub fn pairing_check(
    f: &DualSeries,
    xi: &BarElement,
    s: &AInfStructure,
    vocab: &Vocab,
    diff: &DiffMap,
) -> Result<Report, String> {
    let d_xi = bar_codiff(xi, s)?;
    let mut violations = Vec::new();
    let mut examined = 0;
    for degree in f.degrees(vocab) {
        examined += 1;
        let part = f.degree_part(degree, vocab);
        let lhs = pairing(&dual_diff(&part, diff, vocab), xi, s, vocab);
        let sign = if (degree + 1).rem_euclid(2) == 0 { 1 } else { -1 };
        let rhs = pairing(&part, &d_xi, s, vocab).scale(&NovikovScalar::from_int(sign));
        if lhs != rhs {
            violations.push(Violation {
                subject: format!("degree {} part of {}", degree, part.render(vocab)),
                detail: format!(
                    "<df,xi> = {} but (-1)^(|f|+1)<f,d xi> = {}",
                    crate::scalar::base_to_string(&lhs),
                    crate::scalar::base_to_string(&rhs)
                ),
            });
        }
    }
    Ok(Report { check: "pairing transpose identity".into(), violations, examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{AugSpec, Generator};
    use crate::barcobar::{dual_diff_generators, BarWord, Word};
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
    fn coordinate_pairs_with_its_generator() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let l12 = vocab.by_name("x12").unwrap();
        let f = DualSeries::letter(&vocab, l12, s.cutoff.clone());
        let xi = BarElement::word(&s, vec![s.lookup("dth12").unwrap()], s.cutoff.clone()).unwrap();
        let val = pairing(&f, &xi, &s, &vocab);
        assert_eq!(val, BaseScalar::one(1));
    }

    #[test]
    fn transpose_identity_on_the_worked_example() {
        // f = x12, ξ = (dth1, dth2): both sides — as stored — evaluate to -1
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let diff = dual_diff_generators(&s, &vocab).unwrap();
        let l12 = vocab.by_name("x12").unwrap();
        let f = DualSeries::letter(&vocab, l12, s.cutoff.clone());
        let xi = BarElement::word(
            &s,
            vec![s.lookup("dth1").unwrap(), s.lookup("dth2").unwrap()],
            s.cutoff.clone(),
        )
        .unwrap();
        let lhs = pairing(&dual_diff(&f, &diff, &vocab), &xi, &s, &vocab);
        assert_eq!(lhs, BaseScalar::diagonal(1, NovikovScalar::from_int(-1)));
        let report = pairing_check(&f, &xi, &s, &vocab, &diff).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn constant_f_pairs_trivially() {
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let diff = dual_diff_generators(&s, &vocab).unwrap();
        let f = DualSeries::one(1, s.cutoff.clone());
        let xi = BarElement::word(&s, vec![s.lookup("dth1").unwrap()], s.cutoff.clone()).unwrap();
        let report = pairing_check(&f, &xi, &s, &vocab, &diff).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn transpose_identity_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let s = torus2();
        let vocab = Vocab::from_structure(&s);
        let diff = dual_diff_generators(&s, &vocab).unwrap();
        let letters: Vec<_> = vocab.ids().collect();
        let gens: Vec<_> = s.non_units();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let fl = rng.gen_range(1..4usize);
            let word = Word((0..fl).map(|_| letters[rng.gen_range(0..letters.len())]).collect());
            let coeff = NovikovScalar::from_int(rng.gen_range(-3..4));
            let f = DualSeries::monomial(&vocab, word, coeff, s.cutoff.clone());
            let bl = rng.gen_range(1..5usize);
            let bw: Vec<_> = (0..bl).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
            let mut xi = BarElement::zero(s.cutoff.clone());
            xi.insert(
                BarWord(bw),
                BaseScalar::diagonal(1, NovikovScalar::from_int(rng.gen_range(-2..3))),
            );
            let report = pairing_check(&f, &xi, &s, &vocab, &diff).unwrap();
            assert!(report.passed(), "{}", report.render());
        }
    }
}
