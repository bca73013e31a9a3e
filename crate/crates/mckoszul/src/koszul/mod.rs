//! Dual-pair machinery for (G, L): the wrapped-side algebra W = hom(G,G),
//! the compact-side algebra V = hom(L,L), the rank-1 connecting family P,
//! and the bimodule table m_{l+1+k}(Z₁,…,Z_l, P, X₁,…,X_k) = c·P that
//! drives the augmentation ε_L and the Koszul map κ.

mod chart;
mod format;
mod madic;

pub use chart::{chart, Chart, ChartRow, ChartShape};
pub use format::{parse_pair, print_pair};
pub use madic::{madic_quotient, MadicQuotient};

use std::collections::BTreeMap;

use crate::ainf::{AInfStructure, AugSpec, GenId, LinComb, Report, Violation};
use crate::barcobar::{DualSeries, Vocab, Word};
use crate::mcalg::{normal_form, with_extra_relations, MCPresentation};
use crate::scalar::NovikovScalar;

/// One bimodule structure constant, with the dataset's provenance flag:
/// synthetic entries complete the table beyond the closed forms the
/// dataset is built from.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleEntry {
    pub coeff: NovikovScalar,
    pub synthetic: bool,
}

/// A linear combination of W generators.
pub type WCombo = Vec<(GenId, NovikovScalar)>;

/// Extra degree-1 connecting generator data (immersed dual Lagrangians):
/// κ is a homomorphism only modulo ⟨r_PQ, r_QP⟩.
#[derive(Clone, Debug)]
pub struct Correction {
    pub q_name: String,
    pub r_pq: DualSeries,
    pub r_qp: DualSeries,
}

/// The (G, L) package.
#[derive(Clone, Debug)]
pub struct PairData {
    pub name: String,
    pub w: AInfStructure,
    pub v: AInfStructure,
    /// Dual letters of V, shared by every series this pair produces.
    pub vocab: Vocab,
    /// (Z-tuple, X-tuple) → c with m(Z…, P, X…) = c·P.
    pub module_table: BTreeMap<(Vec<GenId>, Vec<GenId>), ModuleEntry>,
    /// Declared generators of 𝔪 = ker ε_L.
    pub m_gens: Vec<(String, WCombo)>,
    /// Generators whose κ images define the chart coordinates.
    pub chart_gens: Vec<GenId>,
    pub correction: Option<Correction>,
}

impl PairData {
    pub fn new(name: &str, w: AInfStructure, v: AInfStructure) -> Result<PairData, String> {
        for id in w.ids() {
            if w.gen(id).degree > 0 {
                return Err(format!(
                    "W generator `{}` has positive degree; dual pairs need hom^{{>0}}(G,G) = 0",
                    w.gen(id).name
                ));
            }
        }
        if w.ring_size != v.ring_size {
            return Err("W and V must share the base ring".to_string());
        }
        let vocab = Vocab::from_structure(&v);
        Ok(PairData {
            name: name.to_string(),
            w,
            v,
            vocab,
            module_table: BTreeMap::new(),
            m_gens: Vec::new(),
            chart_gens: Vec::new(),
            correction: None,
        })
    }

    /// Record m(Z…, P, X…) = c·P; the degree constraint
    /// Σ|Zᵢ| + Σ|Xⱼ| + 1 = l + k must hold for a nonzero constant.
    pub fn insert_module(
        &mut self,
        zs: Vec<GenId>,
        xs: Vec<GenId>,
        coeff: NovikovScalar,
        synthetic: bool,
    ) -> Result<(), String> {
        if coeff.is_zero() {
            return Ok(());
        }
        let degs: i64 = zs.iter().map(|&z| self.w.gen(z).degree).sum::<i64>()
            + xs.iter().map(|&x| self.v.gen(x).degree).sum::<i64>();
        if degs + 1 != (zs.len() + xs.len()) as i64 {
            return Err(format!(
                "module entry ({:?} | {:?}) violates the degree constraint",
                zs.iter().map(|&z| &self.w.gen(z).name).collect::<Vec<_>>(),
                xs.iter().map(|&x| &self.v.gen(x).name).collect::<Vec<_>>()
            ));
        }
        if xs.iter().any(|&x| self.v.gen(x).is_unit) {
            return Err("module words range over non-unit generators only".to_string());
        }
        self.module_table.insert((zs, xs), ModuleEntry { coeff, synthetic });
        Ok(())
    }

    /// ε_L(Z) = the (Z | ∅) module constant; zero on nonzero degrees.
    pub fn augmentation(&self, z: GenId) -> NovikovScalar {
        if self.w.gen(z).degree != 0 {
            return NovikovScalar::zero();
        }
        self.module_table
            .get(&(vec![z], vec![]))
            .map(|e| e.coeff.clone())
            .unwrap_or_else(NovikovScalar::zero)
    }

    /// ε_L as an explicit augmentation spec on W.
    pub fn eps_spec(&self) -> AugSpec {
        let mut map = BTreeMap::new();
        for id in self.w.ids() {
            if self.w.gen(id).is_unit {
                continue;
            }
            let v = self.augmentation(id);
            if !v.is_zero() {
                map.insert(id, v);
            }
        }
        AugSpec::Explicit(map)
    }

    /// κ_l on a tuple of W generators: expand over all module words with
    /// b̃ = Σ xᵢXᵢ ranging over every non-unit V generator, collecting
    /// P-coefficients into Σ c_{i₁…i_k} x_{i₁}⋯x_{i_k}.
    pub fn kappa(&self, zs: &[GenId]) -> Result<DualSeries, String> {
        if !self.w.composable(zs) {
            return Err("κ tuple does not compose".to_string());
        }
        let mut out = DualSeries::zero(self.v.cutoff.clone());
        for ((tz, tx), entry) in &self.module_table {
            if tz.as_slice() != zs {
                continue;
            }
            let letters: Vec<_> = tx
                .iter()
                .map(|&x| {
                    self.vocab
                        .of_gen(x)
                        .ok_or_else(|| format!("no letter for `{}`", self.v.gen(x).name))
                })
                .collect::<Result<_, _>>()?;
            let word = Word(letters);
            let piece = if word.is_empty() {
                // constants sit at the tuple's source idempotent
                let src = self.w.gen(zs[0]).source;
                DualSeries::constant(
                    crate::scalar::BaseScalar::at(self.v.ring_size, src, entry.coeff.clone()),
                    out.cutoff.clone(),
                )
            } else {
                DualSeries::monomial(&self.vocab, word, entry.coeff.clone(), out.cutoff.clone())
            };
            out = out.add(&piece, &self.vocab);
        }
        // κ degree law: every word of κ_l(Z₁..Z_l) has dga degree
        // Σ|Zᵢ| + (1 − l)
        let want: i64 = zs.iter().map(|&z| self.w.gen(z).degree).sum::<i64>() + 1 - zs.len() as i64;
        for w in out.terms.keys() {
            if !w.is_empty() && w.degree(&self.vocab) != want {
                return Err(format!(
                    "κ degree law violated: word {} has degree {}, want {}",
                    w.render(&self.vocab),
                    w.degree(&self.vocab),
                    want
                ));
            }
        }
        Ok(out)
    }

    /// κ extended 𝕜-linearly to a combination of W generators.
    pub fn kappa_combo(&self, combo: &WCombo) -> Result<DualSeries, String> {
        let mut out = DualSeries::zero(self.v.cutoff.clone());
        for (z, c) in combo {
            let k = self.kappa(&[*z])?;
            out = out.add(&k.scale(c, &self.vocab), &self.vocab);
        }
        Ok(out)
    }

    /// m₂ on W-combos, coefficients multiplied in Λ.
    pub fn w_mul(&self, a: &WCombo, b: &WCombo) -> WCombo {
        let mut acc: LinComb = LinComb::new();
        for (za, ca) in a {
            for (zb, cb) in b {
                let coeff = ca.mul(cb, &self.w.cutoff);
                for (y, cy) in self.w.m(&[*za, *zb]) {
                    crate::ainf::lincomb_add(&mut acc, *y, cy.mul(&coeff, &self.w.cutoff));
                }
            }
        }
        acc.into_iter().collect()
    }

    pub fn w_combo_of(&self, name: &str) -> Result<WCombo, String> {
        Ok(vec![(self.w.lookup(name)?, NovikovScalar::one())])
    }

    /// Look up an 𝔪-generator by its declared label.
    pub fn m_gen(&self, label: &str) -> Option<&WCombo> {
        self.m_gens.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }

    /// Check that every declared 𝔪-generator is killed by ε_L.
    pub fn check_m_gens(&self) -> Report {
        let mut violations = Vec::new();
        for (label, combo) in &self.m_gens {
            let mut acc = NovikovScalar::zero();
            for (z, c) in combo {
                acc = acc.add(&self.augmentation(*z).mul_exact(c));
            }
            if !acc.is_zero() {
                violations.push(Violation {
                    subject: label.clone(),
                    detail: format!("eps value {}, want 0", acc),
                });
            }
        }
        Report {
            check: "m-ideal generators lie in ker eps".into(),
            violations,
            examined: self.m_gens.len(),
        }
    }
}

/// Multiplicativity of κ on H⁰: for composable degree-0 pairs (Z, Z′)
/// from the pool, normal_form(κ(m₂(Z,Z′)) − κ(Z)·κ(Z′)) must vanish.
/// With W concentrated in degree 0 there is no d-exact correction.
pub fn verify_kappa_hom(
    pd: &PairData,
    p: &MCPresentation,
    pool: &[GenId],
) -> Result<Report, String> {
    let mut violations = Vec::new();
    let mut examined = 0usize;
    for &a in pool {
        for &b in pool {
            if pd.w.gen(a).target != pd.w.gen(b).source {
                continue;
            }
            examined += 1;
            let ka = pd.kappa(&[a])?;
            let kb = pd.kappa(&[b])?;
            let prod = ka.mul(&kb, &pd.vocab);
            let image = {
                let mut acc = DualSeries::zero(pd.v.cutoff.clone());
                for (y, c) in pd.w.m(&[a, b]) {
                    let ky = pd.kappa(&[*y])?;
                    acc = acc.add(&ky.scale(c, &pd.vocab), &pd.vocab);
                }
                acc
            };
            let diff = normal_form(&image.sub(&prod, &pd.vocab), p, &pd.vocab)?;
            if !diff.is_zero() {
                violations.push(Violation {
                    subject: format!("kappa(m2({},{}))", pd.w.gen(a).name, pd.w.gen(b).name),
                    detail: format!("off by {}", diff.render(&pd.vocab)),
                });
            }
        }
    }
    violations.sort();
    Report { check: "kappa multiplicativity mod relation ideal".into(), violations, examined }
}

/// κ in the presence of a degree-1 connecting generator Q: the
/// homomorphism property holds modulo ⟨r_PQ, r_QP⟩, so the check runs in
/// the quotient presentation with both series adjoined. Returns the
/// quotient presentation alongside the report.
pub fn kappa_with_correction(
    pd: &PairData,
    p: &MCPresentation,
    pool: &[GenId],
) -> Result<(MCPresentation, Report), String> {
    let corr = pd
        .correction
        .as_ref()
        .ok_or_else(|| "dataset declares no correction generator".to_string())?;
    let quotient = with_extra_relations(p, &[corr.r_pq.clone(), corr.r_qp.clone()], &pd.vocab)?;
    let report = verify_kappa_hom(pd, &quotient, pool)?;
    Ok((quotient, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::EnergyCutoff;

    #[test]
    fn positive_degree_w_is_rejected() {
        let cut = EnergyCutoff::default_window();
        let mut w = AInfStructure::new(1, cut.clone());
        w.add_generator(crate::ainf::Generator::new("Z", 1, 0, 0)).unwrap();
        let v = AInfStructure::new(1, cut);
        let err = PairData::new("bad", w, v).unwrap_err();
        assert!(err.contains("positive degree"));
    }
}
