//! Exact-generator normalization X̃ = T^{𝒜(X)}·X.
//!
//! Generators carrying an action are rescaled so that their valuation
//! equals the action; structure constants pick up T^{Σ𝒜(inputs) − 𝒜(output)}.
//! Generators without an action are treated as having action 0. The two
//! directions are mutually inverse.

use num::{BigRational, Zero};

use super::{AInfStructure, AugSpec};

impl AInfStructure {
    fn rescale(&self, to_exact: bool) -> Result<AInfStructure, String> {
        let mut out = self.clone();
        let act = |s: &AInfStructure, id: super::GenId| -> BigRational {
            s.gen(id).action.clone().unwrap_or_else(BigRational::zero)
        };
        let sign: i64 = if to_exact { 1 } else { -1 };
        for g in &mut out.generators {
            let a = g.action.clone().unwrap_or_else(BigRational::zero);
            g.valuation = &g.valuation + a * BigRational::from_integer(sign.into());
            if g.is_unit && !g.valuation.is_zero() {
                return Err(format!("rescaling gives unit `{}` a nonzero valuation", g.name));
            }
        }
        let mut table = std::collections::BTreeMap::new();
        for (tuple, outputs) in self.table() {
            let in_sum: BigRational = tuple.iter().map(|&i| act(self, i)).fold(BigRational::zero(), |x, y| x + y);
            let rescaled: Vec<_> = outputs
                .iter()
                .map(|(y, c)| {
                    let shift = (&in_sum - act(self, *y)) * BigRational::from_integer(sign.into());
                    (*y, c.shift(&shift))
                })
                .collect();
            table.insert(tuple.clone(), rescaled);
        }
        out.table = table;
        if let Some(AugSpec::Explicit(map)) = &self.augmentation {
            let mut new_map = std::collections::BTreeMap::new();
            for (id, v) in map {
                // ε(X̃) = ε(T^𝒜 X) = T^{𝒜·dir} ε(X)
                let shift = act(self, *id) * BigRational::from_integer(sign.into());
                new_map.insert(*id, v.shift(&shift));
            }
            out.augmentation = Some(AugSpec::Explicit(new_map));
        }
        Ok(out)
    }

    /// Pass to the exact basis X̃ = T^{𝒜(X)}X; ν(X̃) = ν(X) + 𝒜(X).
    pub fn rescale_to_exact(&self) -> Result<AInfStructure, String> {
        self.rescale(true)
    }

    /// Inverse of [`AInfStructure::rescale_to_exact`].
    pub fn rescale_to_geometric(&self) -> Result<AInfStructure, String> {
        self.rescale(false)
    }
}
