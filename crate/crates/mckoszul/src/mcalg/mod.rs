//! Maurer-Cartan presentations: the degree-0 slice of the Koszul dual dga
//! as a bounded noncommutative power-series ring modulo the closed
//! relation ideal, modeled by an oriented rewriting system inside the
//! (length, energy) window.

mod expsub;
mod rewrite;

pub use expsub::{exp_substitute, ExpSubstitution};
pub use rewrite::{check_confluence, normal_form, orient, ConfluenceStatus, RewriteRule};

use crate::ainf::{AInfStructure, GenId};
use crate::barcobar::{DualSeries, LetterId, Vocab, Word};
use crate::scalar::EnergyCutoff;

/// Presentation of the Maurer-Cartan algebra
/// Λ{{x₁,…,x_l}} / ⟨⟨f₁,…,f_{N′}⟩⟩.
#[derive(Clone, Debug)]
pub struct MCPresentation {
    /// Dual coordinates of the degree-1 generators, in generator order.
    pub variables: Vec<LetterId>,
    /// Relation fⱼ per degree-2 catcher, in catcher order.
    pub relations: Vec<(GenId, DualSeries)>,
    /// The Maurer-Cartan coefficient of the designated potential catcher,
    /// kept out of the relation ideal.
    pub potential: Option<(GenId, DualSeries)>,
    /// Oriented rules derived from the relations (plus any quotient extras).
    pub rules: Vec<RewriteRule>,
    pub confluence: ConfluenceStatus,
    pub cutoff: EnergyCutoff,
}

impl MCPresentation {
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// One-line summary used by the CLI.
    pub fn render(&self, s: &AInfStructure, vocab: &Vocab) -> String {
        let vars: Vec<String> =
            self.variables.iter().map(|&l| vocab.letter(l).name.clone()).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|(g, f)| format!("{}: {}", s.gen(*g).name, f.render(vocab)))
            .collect();
        let mut out = format!("vars: {}; relations: [{}]", vars.join(","), rels.join("; "));
        if let Some((g, f)) = &self.potential {
            out.push_str(&format!("; potential({}): {}", s.gen(*g).name, f.render(vocab)));
        }
        out.push_str(&format!("; confluent: {}", self.confluence));
        out
    }
}

/// Extract the Maurer-Cartan relations of an augmented structure.
///
/// b = Σ xᵢXᵢ runs over the degree-1 generators only; expanding
/// Σ_k m_k(b,…,b) with the reversed-coefficient convention collects a
/// noncommutative series fⱼ against every degree-2 generator Xⱼ. A
/// catcher flagged `potential` is reported separately and does not join
/// the relation ideal.
pub fn mc_relations(s: &AInfStructure, vocab: &Vocab) -> Result<MCPresentation, String> {
    for id in s.ids() {
        let g = s.gen(id);
        if g.degree < 0 {
            return Err(format!("generator `{}` has negative degree", g.name));
        }
        if g.degree == 0 && !g.is_unit {
            return Err(format!(
                "degree-0 generator `{}` is not the unit; the degree-0 part must be spanned by units",
                g.name
            ));
        }
    }
    let variables: Vec<LetterId> = s
        .ids()
        .filter(|&id| s.gen(id).degree == 1)
        .filter_map(|id| vocab.of_gen(id))
        .collect();
    let catchers: Vec<GenId> = s.ids().filter(|&id| s.gen(id).degree == 2).collect();
    let mut series: std::collections::BTreeMap<GenId, DualSeries> = catchers
        .iter()
        .map(|&g| (g, DualSeries::zero(s.cutoff.clone())))
        .collect();
    for (tuple, outputs) in s.table() {
        if !tuple.iter().all(|&g| s.gen(g).degree == 1) {
            continue;
        }
        let letters: Vec<LetterId> = tuple
            .iter()
            .rev()
            .map(|&g| vocab.of_gen(g).ok_or_else(|| format!("no dual letter for `{}`", s.gen(g).name)))
            .collect::<Result<_, _>>()?;
        let word = Word(letters);
        if !s.cutoff.keeps_len(word.len()) {
            continue;
        }
        for (y, c) in outputs {
            // degree-1 inputs force degree-2 outputs
            let slot = series
                .get_mut(y)
                .ok_or_else(|| format!("entry {} lands outside degree 2", s.render_tuple(tuple)))?;
            let piece = DualSeries::monomial(vocab, word.clone(), c.clone(), s.cutoff.clone());
            *slot = slot.add(&piece, vocab);
        }
    }
    let mut relations = Vec::new();
    let mut potential = None;
    for g in catchers {
        let f = series.remove(&g).unwrap();
        if s.gen(g).potential {
            potential = Some((g, f));
        } else if !f.is_zero() {
            relations.push((g, f));
        }
    }
    let rules = rewrite::orient(&relations.iter().map(|(_, f)| f.clone()).collect::<Vec<_>>(), vocab)?;
    let mut p = MCPresentation {
        variables,
        relations,
        potential,
        rules,
        confluence: ConfluenceStatus::Unverified,
        cutoff: s.cutoff.clone(),
    };
    let report = check_confluence(&p, vocab, p.cutoff.max_len);
    if report.passed() {
        p.confluence = ConfluenceStatus::VerifiedUpTo(p.cutoff.max_len);
    }
    Ok(p)
}

/// Presentation with extra relations adjoined (a further quotient);
/// confluence status is recomputed.
pub fn with_extra_relations(
    p: &MCPresentation,
    extra: &[DualSeries],
    vocab: &Vocab,
) -> Result<MCPresentation, String> {
    let mut all: Vec<DualSeries> = p.relations.iter().map(|(_, f)| f.clone()).collect();
    all.extend_from_slice(extra);
    let rules = rewrite::orient(&all, vocab)?;
    let mut out = p.clone();
    out.rules = rules;
    out.confluence = ConfluenceStatus::Unverified;
    let report = check_confluence(&out, vocab, out.cutoff.max_len);
    if report.passed() {
        out.confluence = ConfluenceStatus::VerifiedUpTo(out.cutoff.max_len);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{AugSpec, Generator};
    use crate::scalar::{BaseScalar, NovikovScalar};

    #[test]
    fn torus_relations_are_commutators() {
        for n in 1..=3usize {
            let s = crate::datasets::build_torus(n, EnergyCutoff::default_window()).unwrap();
            let vocab = Vocab::from_structure(&s);
            let p = mc_relations(&s, &vocab).unwrap();
            assert_eq!(p.variables.len(), n);
            assert_eq!(p.relations.len(), n * (n - 1) / 2);
            for (_, f) in &p.relations {
                // each relation is x_i x_j - x_j x_i with i < j
                let mut terms: Vec<(&Word, &BaseScalar)> = f.terms.iter().collect();
                terms.sort_by(|a, b| a.0.cmp(b.0));
                assert_eq!(terms.len(), 2);
                let (w1, c1) = &terms[0];
                let (w2, c2) = &terms[1];
                assert_eq!(w1.0.len(), 2);
                assert!(w1.0[0] < w1.0[1]);
                assert_eq!(w2.0, vec![w1.0[1], w1.0[0]]);
                assert_eq!(c1.component(0), &NovikovScalar::one());
                assert_eq!(c2.component(0), &NovikovScalar::from_int(-1));
            }
        }
    }

    #[test]
    fn degree_zero_junk_is_rejected() {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        s.add_generator(Generator::unit("one", 0)).unwrap();
        s.add_generator(Generator::new("Z", 0, 0, 0)).unwrap();
        s.augmentation = Some(AugSpec::UnitProjection);
        let vocab = Vocab::from_structure(&s);
        assert!(mc_relations(&s, &vocab).is_err());
    }
}
