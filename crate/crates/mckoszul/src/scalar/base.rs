//! The semisimple base ring 𝕜_Λ = ⊕ᵢ₌₀^{r−1} Λ πᵢ with orthogonal
//! idempotents: πᵢ·πᵢ = πᵢ and πᵢ·πⱼ = 0 for i ≠ j.

use super::{EnergyCutoff, NovikovScalar, Val};

/// Idempotent-indexed vector of Novikov scalars. All arithmetic is
/// componentwise; `r` is fixed per structure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseScalar {
    comps: Vec<NovikovScalar>,
}

impl BaseScalar {
    pub fn zero(r: usize) -> Self {
        assert!(r >= 1);
        BaseScalar { comps: vec![NovikovScalar::zero(); r] }
    }

    /// The unit 𝟏 = Σᵢ πᵢ.
    pub fn one(r: usize) -> Self {
        BaseScalar { comps: vec![NovikovScalar::one(); r] }
    }

    /// c placed at every component: c·𝟏.
    pub fn diagonal(r: usize, c: NovikovScalar) -> Self {
        BaseScalar { comps: vec![c; r] }
    }

    /// c·πᵢ.
    pub fn at(r: usize, i: usize, c: NovikovScalar) -> Self {
        let mut b = BaseScalar::zero(r);
        b.comps[i] = c;
        b
    }

    pub fn from_components(comps: Vec<NovikovScalar>) -> Self {
        assert!(!comps.is_empty());
        BaseScalar { comps }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &NovikovScalar {
        &self.comps[i]
    }

    pub fn components(&self) -> &[NovikovScalar] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &BaseScalar) -> BaseScalar {
        assert_eq!(self.rank(), other.rank(), "mismatched base ring rank");
        BaseScalar {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn neg(&self) -> BaseScalar {
        BaseScalar { comps: self.comps.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, other: &BaseScalar) -> BaseScalar {
        self.add(&other.neg())
    }

    /// Componentwise product; this is the ring structure in which
    /// πᵢ·πⱼ = δᵢⱼ πᵢ.
    pub fn mul(&self, other: &BaseScalar, cut: &EnergyCutoff) -> BaseScalar {
        assert_eq!(self.rank(), other.rank(), "mismatched base ring rank");
        BaseScalar {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b, cut)).collect(),
        }
    }

    pub fn mul_exact(&self, other: &BaseScalar) -> BaseScalar {
        assert_eq!(self.rank(), other.rank(), "mismatched base ring rank");
        BaseScalar {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul_exact(b)).collect(),
        }
    }

    pub fn scale(&self, c: &NovikovScalar) -> BaseScalar {
        BaseScalar { comps: self.comps.iter().map(|a| a.mul_exact(c)).collect() }
    }

    /// min over components.
    pub fn val(&self) -> Val {
        self.comps.iter().map(|c| c.val()).fold(Val::Infinity, Val::min)
    }

    pub fn truncate(&self, cut: &EnergyCutoff) -> BaseScalar {
        BaseScalar { comps: self.comps.iter().map(|c| c.truncate(cut)).collect() }
    }

    /// Componentwise inverse. Fails on any zero component: such an element
    /// is a zero divisor in 𝕜_Λ.
    pub fn invert(&self, cut: &EnergyCutoff) -> Result<BaseScalar, String> {
        let mut comps = Vec::with_capacity(self.rank());
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                return Err(format!(
                    "zero divisor: component pi{} is zero, global inverse does not exist",
                    i
                ));
            }
            comps.push(c.invert(cut)?);
        }
        Ok(BaseScalar { comps })
    }
}

impl std::fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::parse::base_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn idempotents_are_orthogonal() {
        let cut = EnergyCutoff::default_window();
        let pi0 = BaseScalar::at(2, 0, NovikovScalar::one());
        let pi1 = BaseScalar::at(2, 1, NovikovScalar::one());
        assert_eq!(pi0.mul(&pi0, &cut), pi0);
        assert!(pi0.mul(&pi1, &cut).is_zero());
        // pi0·x * pi1·y = 0 for any scalars x, y
        let x = pi0.scale(&NovikovScalar::t_power(rat_int(1)));
        let y = pi1.scale(&NovikovScalar::from_int(3));
        assert!(x.mul(&y, &cut).is_zero());
    }

    #[test]
    fn val_is_componentwise_min() {
        let b = BaseScalar::from_components(vec![
            NovikovScalar::t_power(rat_int(2)),
            NovikovScalar::t_power(rat_int(-1)),
        ]);
        assert_eq!(b.val(), Val::Finite(rat_int(-1)));
    }

    #[test]
    fn zero_component_blocks_inversion() {
        let cut = EnergyCutoff::default_window();
        let b = BaseScalar::at(2, 0, NovikovScalar::one());
        let err = b.invert(&cut).unwrap_err();
        assert!(err.contains("zero divisor"));
    }
}
