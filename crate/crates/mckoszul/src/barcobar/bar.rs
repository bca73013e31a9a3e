//! Reduced bar construction: the tensor coalgebra on the shifted
//! augmentation kernel, with the codifferential packaging all m_k and the
//! deconcatenation coproduct.

use std::collections::BTreeMap;

use crate::ainf::{AInfStructure, AugSpec, GenId};
use crate::scalar::{BaseScalar, EnergyCutoff, NovikovScalar};

/// Word of generators in Floer-input order, letters from the augmentation
/// kernel only. The empty word spans the 𝕜_Λ component of BV.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BarWord(pub Vec<GenId>);

impl BarWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Grading by Σ |Xᵢ|′.
    pub fn degree(&self, s: &AInfStructure) -> i64 {
        self.0.iter().map(|&g| s.gen(g).shifted_degree()).sum()
    }

    pub fn render(&self, s: &AInfStructure) -> String {
        if self.is_empty() {
            return "()".to_string();
        }
        let names: Vec<&str> = self.0.iter().map(|&g| s.gen(g).name.as_str()).collect();
        format!("({})", names.join(","))
    }
}

impl PartialOrd for BarWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BarWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Element of the reduced bar construction BV = T(sV̄).
#[derive(Clone, Debug)]
pub struct BarElement {
    pub terms: BTreeMap<BarWord, BaseScalar>,
    pub cutoff: EnergyCutoff,
}

impl PartialEq for BarElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl BarElement {
    pub fn zero(cutoff: EnergyCutoff) -> BarElement {
        BarElement { terms: BTreeMap::new(), cutoff }
    }

    pub fn word(s: &AInfStructure, gens: Vec<GenId>, cutoff: EnergyCutoff) -> Result<BarElement, String> {
        check_reduced_word(s, &gens)?;
        let mut b = BarElement::zero(cutoff);
        let coeff = match gens.first() {
            Some(&g) => BaseScalar::at(s.ring_size, s.gen(g).source, NovikovScalar::one()),
            None => BaseScalar::one(s.ring_size),
        };
        b.insert(BarWord(gens), coeff);
        Ok(b)
    }

    pub fn insert(&mut self, word: BarWord, coeff: BaseScalar) {
        if coeff.is_zero() || !self.cutoff.keeps_len(word.len()) {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                *existing = existing.add(&coeff);
                if existing.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BarElement) -> BarElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn render(&self, s: &AInfStructure) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({})*{}", crate::scalar::base_to_string(c), w.render(s)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The reduced bar construction only makes sense over the compact-side
/// augmentation: letters must span ker ε, i.e. be the non-unit generators
/// under the unit projection.
fn check_reduced_word(s: &AInfStructure, gens: &[GenId]) -> Result<(), String> {
    match &s.augmentation {
        Some(AugSpec::UnitProjection) => {}
        Some(AugSpec::Explicit(_)) => {
            return Err(
                "bar construction needs the unit-projection augmentation; \
                 the kernel of an explicit augmentation is not spanned by generators"
                    .to_string(),
            )
        }
        None => return Err("bar construction needs an augmented structure".to_string()),
    }
    for &g in gens {
        if s.gen(g).is_unit {
            return Err(format!(
                "letter `{}` is the unit; bar words use the augmentation kernel only",
                s.gen(g).name
            ));
        }
    }
    for pair in gens.windows(2) {
        if s.gen(pair[0]).target != s.gen(pair[1]).source {
            return Err(format!(
                "bar word letters `{}`,`{}` do not compose",
                s.gen(pair[0]).name,
                s.gen(pair[1]).name
            ));
        }
    }
    Ok(())
}

/// Codifferential of the (reduced) bar construction:
/// d(x₁⊗⋯⊗x_k) = Σ_{i,l} (−1)^{|x₁|′+⋯+|xᵢ|′} x₁⊗⋯⊗m_l(x_{i+1},…,x_{i+l})⊗⋯⊗x_k,
/// with unit outputs projected away.
pub fn bar_codiff(b: &BarElement, s: &AInfStructure) -> Result<BarElement, String> {
    let mut out = BarElement::zero(b.cutoff.clone());
    for (word, coeff) in &b.terms {
        check_reduced_word(s, &word.0)?;
        let n = word.len();
        for i in 0..n {
            let sign_exp: i64 = word.0[..i].iter().map(|&g| s.gen(g).shifted_degree()).sum();
            let sign = if sign_exp.rem_euclid(2) == 0 { 1 } else { -1 };
            for l in 1..=(n - i) {
                for (y, c) in s.m(&word.0[i..i + l]) {
                    if s.gen(*y).is_unit {
                        // reduced: project the unit component away
                        continue;
                    }
                    let mut new_word = Vec::with_capacity(n - l + 1);
                    new_word.extend_from_slice(&word.0[..i]);
                    new_word.push(*y);
                    new_word.extend_from_slice(&word.0[i + l..]);
                    let factor = c.scale(&crate::scalar::Coeff::integer(sign)).truncate(&b.cutoff);
                    out.insert(BarWord(new_word), coeff.scale(&factor));
                }
            }
        }
    }
    Ok(out)
}

/// Deconcatenation coproduct, including the two empty factors:
/// Δ(x₁⊗⋯⊗x_k) = Σ_{i=0}^{k} (x₁⊗⋯⊗xᵢ) ⊗ (x_{i+1}⊗⋯⊗x_k).
pub fn bar_coprod(b: &BarElement) -> Vec<(BarWord, BarWord, BaseScalar)> {
    let mut out = Vec::new();
    for (word, coeff) in &b.terms {
        for i in 0..=word.len() {
            out.push((
                BarWord(word.0[..i].to_vec()),
                BarWord(word.0[i..].to_vec()),
                coeff.clone(),
            ));
        }
    }
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::Generator;
    use crate::scalar::EnergyCutoff;

    fn nodal_sphere() -> AInfStructure {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        s.add_generator(Generator::unit("one", 0)).unwrap();
        let u = s.add_generator(Generator::new("U", 1, 0, 0)).unwrap();
        let v = s.add_generator(Generator::new("V", 1, 0, 0)).unwrap();
        let h = s.add_generator(Generator::new("H", 2, 0, 0)).unwrap();
        s.insert(vec![u, v], vec![(h, NovikovScalar::from_int(-1))]).unwrap();
        s.insert(vec![v, u], vec![(h, NovikovScalar::one())]).unwrap();
        s.insert_unit_rows().unwrap();
        s.augmentation = Some(AugSpec::UnitProjection);
        s
    }

    #[test]
    fn minimal_model_kills_length_one_words() {
        let s = nodal_sphere();
        let u = s.lookup("U").unwrap();
        let b = BarElement::word(&s, vec![u], EnergyCutoff::default_window()).unwrap();
        assert!(bar_codiff(&b, &s).unwrap().is_zero());
    }

    #[test]
    fn codiff_expands_table_blocks() {
        let s = nodal_sphere();
        let u = s.lookup("U").unwrap();
        let v = s.lookup("V").unwrap();
        let h = s.lookup("H").unwrap();
        let b = BarElement::word(&s, vec![u, v], EnergyCutoff::default_window()).unwrap();
        let d = bar_codiff(&b, &s).unwrap();
        let expect = d.terms.get(&BarWord(vec![h])).unwrap();
        assert_eq!(expect.component(0), &NovikovScalar::from_int(-1));
    }

    #[test]
    fn units_are_rejected_as_letters() {
        let s = nodal_sphere();
        let one = s.lookup("one").unwrap();
        let err = BarElement::word(&s, vec![one], EnergyCutoff::default_window()).unwrap_err();
        assert!(err.contains("unit"));
    }

    #[test]
    fn explicit_augmentation_rejected() {
        let mut s = nodal_sphere();
        s.augmentation = Some(AugSpec::Explicit(Default::default()));
        let u = s.lookup("U").unwrap();
        let err = BarElement::word(&s, vec![u], EnergyCutoff::default_window()).unwrap_err();
        assert!(err.contains("unit-projection"));
    }

    #[test]
    fn coprod_deconcatenates_with_empty_factors() {
        let s = nodal_sphere();
        let u = s.lookup("U").unwrap();
        let v = s.lookup("V").unwrap();
        let b = BarElement::word(&s, vec![u, v], EnergyCutoff::default_window()).unwrap();
        let pieces = bar_coprod(&b);
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[0].0, BarWord(vec![]));
        assert_eq!(pieces[0].1, BarWord(vec![u, v]));
        assert_eq!(pieces[2].1, BarWord(vec![]));
    }

    #[test]
    fn coprod_is_coassociative_on_random_words() {
        // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ as multisets of triples
        use rand::{Rng, SeedableRng};
        let s = nodal_sphere();
        let pool = [s.lookup("U").unwrap(), s.lookup("V").unwrap(), s.lookup("H").unwrap()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(0..4);
            let word: Vec<GenId> = (0..n).map(|_| pool[rng.gen_range(0..3)]).collect();
            let b = BarElement::word(&s, word.clone(), EnergyCutoff::default_window()).unwrap();
            let mut left: Vec<(Vec<GenId>, Vec<GenId>, Vec<GenId>)> = Vec::new();
            let mut right = Vec::new();
            for (w1, w2, _) in bar_coprod(&b) {
                let b1 = BarElement::word(&s, w1.0.clone(), b.cutoff.clone()).unwrap();
                for (w11, w12, _) in bar_coprod(&b1) {
                    left.push((w11.0, w12.0, w2.0.clone()));
                }
                let b2 = BarElement::word(&s, w2.0.clone(), b.cutoff.clone()).unwrap();
                for (w21, w22, _) in bar_coprod(&b2) {
                    right.push((w1.0.clone(), w21.0, w22.0));
                }
            }
            left.sort();
            right.sort();
            assert_eq!(left, right);
        }
    }
}
