//! Exponential change of variables zᵢ = ρᵢ·e^{xᵢ} for divisor-type
//! coordinates with Λ_U holonomies ρᵢ.
//!
//! Substitution is length-convergent only in one direction: zᵢ expands as
//! a finite-window series ρᵢ·Σ xᵢᵏ/k!, while xᵢ = log(ρᵢ⁻¹zᵢ) has a
//! constant inside the log and no formal expansion in z-words. Commutator
//! relations survive the change exactly — [xᵢ,xⱼ] and [zᵢ,zⱼ] generate the
//! same closed ideal, via exp/log inside the window — so the z-presentation
//! keeps commutators verbatim. Relations of any other shape are rejected.

use std::collections::BTreeMap;

use crate::barcobar::{DualSeries, LetterId, Vocab, Word};
use crate::scalar::NovikovScalar;

use super::{orient, rewrite::check_confluence_rules, ConfluenceStatus, MCPresentation};

/// Result of the change of variables.
#[derive(Clone, Debug)]
pub struct ExpSubstitution {
    /// Vocabulary extended with the z-letters.
    pub vocab: Vocab,
    /// xᵢ-letter → (zᵢ-letter, holonomy ρᵢ).
    pub z_of: BTreeMap<LetterId, (LetterId, NovikovScalar)>,
    /// The z-presentation: commutator relations in z-letters.
    pub presentation: MCPresentation,
    /// zᵢ ↦ ρᵢ·e^{xᵢ}, a series in the original letters.
    pub z_images: BTreeMap<LetterId, DualSeries>,
}

impl ExpSubstitution {
    /// log(ρᵢ⁻¹·zᵢ(x)) with zᵢ(x) = ρᵢe^{xᵢ}: the composed series must
    /// return xᵢ exactly within the window.
    pub fn log_of_z_image(&self, x: LetterId) -> Result<DualSeries, String> {
        let (z, rho) = self
            .z_of
            .get(&x)
            .ok_or_else(|| "letter was not substituted".to_string())?;
        let image = self.z_images.get(z).unwrap();
        let rho_inv = rho.invert(&image.cutoff)?;
        let u = image
            .scale(&rho_inv, &self.vocab)
            .sub(&DualSeries::one(self.vocab.ring_size, image.cutoff.clone()), &self.vocab);
        Ok(u.log1p(&self.vocab))
    }
}

/// Is `f` a commutator c·(ab − ba) in the given variables?
fn commutator_letters(f: &DualSeries) -> Option<(LetterId, LetterId)> {
    if f.terms.len() != 2 {
        return None;
    }
    let mut it = f.terms.iter();
    let (w1, c1) = it.next().unwrap();
    let (w2, c2) = it.next().unwrap();
    if w1.len() != 2 || w2.len() != 2 {
        return None;
    }
    if w2.0 != [w1.0[1], w1.0[0]] || w1.0[0] == w1.0[1] {
        return None;
    }
    if c1.add(c2).is_zero() {
        Some((w1.0[0], w1.0[1]))
    } else {
        None
    }
}

/// Perform zᵢ = ρᵢ·e^{xᵢ} on the chosen variables.
///
/// `divisor_ok(l)` attests the divisor axiom for the letter (datasets wire
/// this to the generator flag); missing holonomies default to 1.
pub fn exp_substitute(
    p: &MCPresentation,
    vocab: &Vocab,
    vars: &[LetterId],
    holonomies: &BTreeMap<LetterId, NovikovScalar>,
    divisor_ok: impl Fn(LetterId) -> bool,
) -> Result<ExpSubstitution, String> {
    for &l in vars {
        if !p.variables.contains(&l) {
            return Err(format!("`{}` is not a presentation variable", vocab.letter(l).name));
        }
        if !divisor_ok(l) {
            return Err(format!(
                "variable `{}` is not divisor-type; the exponential substitution needs the 1/k! insertion pattern",
                vocab.letter(l).name
            ));
        }
    }
    let mut ext = vocab.clone();
    let mut z_of = BTreeMap::new();
    let mut z_images = BTreeMap::new();
    let mut z_vars = Vec::new();
    for &l in vars {
        let base = &vocab.letter(l).name;
        let zname = if let Some(stripped) = base.strip_prefix('x') {
            format!("z{}", stripped)
        } else {
            format!("z_{}", base)
        };
        let rho = holonomies.get(&l).cloned().unwrap_or_else(NovikovScalar::one);
        if rho.val() != crate::scalar::Val::Finite(num::BigRational::from_integer(0.into())) {
            return Err(format!("holonomy for `{}` must be unitary (valuation 0)", base));
        }
        let lt = vocab.letter(l);
        let z = ext.fresh(&zname, lt.cobar_degree, num::BigRational::from_integer(0.into()), lt.source, lt.target);
        z_of.insert(l, (z, rho.clone()));
        z_vars.push(z);
        // z = ρ·e^x as a series in the old letters
        let x_series = DualSeries::letter(&ext, l, p.cutoff.clone());
        z_images.insert(z, x_series.exp(&ext).scale(&rho, &ext));
    }
    // transport the relations
    let mut z_relations = Vec::new();
    for (g, f) in &p.relations {
        match commutator_letters(f) {
            Some((a, b)) if z_of.contains_key(&a) && z_of.contains_key(&b) => {
                let za = z_of[&a].0;
                let zb = z_of[&b].0;
                let ab = DualSeries::monomial(&ext, Word(vec![za, zb]), NovikovScalar::one(), p.cutoff.clone());
                let ba = DualSeries::monomial(&ext, Word(vec![zb, za]), NovikovScalar::one(), p.cutoff.clone());
                z_relations.push((*g, ab.sub(&ba, &ext)));
            }
            _ => {
                let involved = f.terms.keys().any(|w| w.0.iter().any(|l| z_of.contains_key(l)));
                if involved {
                    return Err(
                        "only commutator relations survive the exponential substitution in closed form"
                            .to_string(),
                    );
                }
                z_relations.push((*g, f.clone()));
            }
        }
    }
    let rules = orient(&z_relations.iter().map(|(_, f)| f.clone()).collect::<Vec<_>>(), &ext)?;
    let mut pres = MCPresentation {
        variables: z_vars,
        relations: z_relations,
        potential: p.potential.clone(),
        rules,
        confluence: ConfluenceStatus::Unverified,
        cutoff: p.cutoff.clone(),
    };
    let report = check_confluence_rules(&pres.rules, &ext, pres.cutoff.max_len, &pres.cutoff);
    if report.passed() {
        pres.confluence = ConfluenceStatus::VerifiedUpTo(pres.cutoff.max_len);
    }
    Ok(ExpSubstitution { vocab: ext, z_of, presentation: pres, z_images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcalg::mc_relations;
    use crate::scalar::{rat, rat_int, EnergyCutoff};

    fn torus_setup(n: usize) -> (crate::ainf::AInfStructure, Vocab, MCPresentation) {
        let s = crate::datasets::build_torus(n, EnergyCutoff::default_window()).unwrap();
        let vocab = Vocab::from_structure(&s);
        let p = mc_relations(&s, &vocab).unwrap();
        (s, vocab, p)
    }

    #[test]
    fn torus_z_presentation_keeps_commutators() {
        let (s, vocab, p) = torus_setup(2);
        let divisor = |l: LetterId| {
            vocab.letter(l).gen.map(|g| s.gen(g).divisor).unwrap_or(false)
        };
        let sub = exp_substitute(&p, &vocab, &p.variables.clone(), &BTreeMap::new(), divisor).unwrap();
        assert_eq!(sub.presentation.relations.len(), 1);
        let f = &sub.presentation.relations[0].1;
        let names: Vec<String> = f
            .terms
            .keys()
            .map(|w| w.render(&sub.vocab))
            .collect();
        assert_eq!(names, vec!["z1.z2", "z2.z1"]);
    }

    #[test]
    fn log_of_exp_is_the_identity() {
        let (s, vocab, p) = torus_setup(1);
        let divisor =
            |l: LetterId| vocab.letter(l).gen.map(|g| s.gen(g).divisor).unwrap_or(false);
        let mut hol = BTreeMap::new();
        // a nontrivial unitary holonomy: 2 + T
        hol.insert(
            p.variables[0],
            NovikovScalar::from_int(2).add(&NovikovScalar::t_power(rat_int(1))),
        );
        let sub = exp_substitute(&p, &vocab, &p.variables.clone(), &hol, divisor).unwrap();
        let x = p.variables[0];
        let back = sub.log_of_z_image(x).unwrap();
        assert_eq!(back, DualSeries::letter(&sub.vocab, x, p.cutoff.clone()));
    }

    #[test]
    fn exp_taylor_coefficients_at_small_window() {
        let s = crate::datasets::build_torus(1, EnergyCutoff::new(rat_int(10), 4)).unwrap();
        let vocab = Vocab::from_structure(&s);
        let p = mc_relations(&s, &vocab).unwrap();
        let divisor =
            |l: LetterId| vocab.letter(l).gen.map(|g| s.gen(g).divisor).unwrap_or(false);
        let sub =
            exp_substitute(&p, &vocab, &p.variables.clone(), &BTreeMap::new(), divisor).unwrap();
        let x = p.variables[0];
        let z = sub.z_of[&x].0;
        let img = &sub.z_images[&z];
        // 1 + x + x²/2 + x³/6, nothing longer at max_len = 4
        assert_eq!(img.terms.len(), 4);
        let w3 = Word(vec![x, x, x]);
        assert_eq!(
            img.terms.get(&w3).unwrap().component(0),
            &NovikovScalar::from_rat(rat(1, 6))
        );
    }

    #[test]
    fn non_divisor_variables_are_rejected() {
        let (_, vocab, p) = torus_setup(2);
        let err = exp_substitute(&p, &vocab, &p.variables.clone(), &BTreeMap::new(), |_| false)
            .unwrap_err();
        assert!(err.contains("divisor"));
    }
}
