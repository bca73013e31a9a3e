//! Graded filtered free 𝕜_Λ-bimodules with designated generators and a
//! sparse table of A∞ structure constants {m_k}.
//!
//! A structure owns its basis and a map from composable input tuples to
//! output combinations. Table entries are validated on insertion: the
//! idempotent typing must compose left to right, the output degree must be
//! Σ|Xᵢ| + 2 − k, and the entry must respect the valuation filtration
//! val(c) + ν(Y) ≥ Σ ν(Xᵢ). Degree- or filtration-violating entries are a
//! hard error, never silently dropped.

mod format;
mod oracle;
mod rescale;
mod verify;

pub use format::{parse_algebra, print_algebra};
pub(crate) use format::{parse_term, split_args, split_sum};
pub use oracle::oracle_residual;
pub use verify::{
    check_strict_augmentation, verify_ainf, verify_filtered_unital, Report, Violation,
};

use std::collections::BTreeMap;

use num::BigRational;
use num::Zero;

use crate::scalar::{BaseScalar, EnergyCutoff, NovikovScalar, Val};

/// Index of a generator within its structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A graded, valued, idempotent-typed basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Name of the dual coordinate function (defaults to the lowercased name).
    pub dual: String,
    pub degree: i64,
    /// Valuation ν of the generator.
    pub valuation: BigRational,
    /// Source idempotent: tuples compose when target(Xᵢ) = source(Xᵢ₊₁).
    pub source: usize,
    pub target: usize,
    pub is_unit: bool,
    /// Primitive-difference action 𝒜, when the dataset provides one.
    pub action: Option<BigRational>,
    /// Insertions of this generator obey the divisor axiom (1/k! factors),
    /// which licenses the exponential change of variables on its dual.
    pub divisor: bool,
    /// Marks the degree-2 catcher whose Maurer-Cartan coefficient is the
    /// potential term rather than a relation.
    pub potential: bool,
}

impl Generator {
    pub fn new(name: &str, degree: i64, source: usize, target: usize) -> Self {
        Generator {
            name: name.to_string(),
            dual: name.to_lowercase(),
            degree,
            valuation: BigRational::zero(),
            source,
            target,
            is_unit: false,
            action: None,
            divisor: false,
            potential: false,
        }
    }

    pub fn unit(name: &str, component: usize) -> Self {
        let mut g = Generator::new(name, 0, component, component);
        g.is_unit = true;
        g
    }

    pub fn with_dual(mut self, dual: &str) -> Self {
        self.dual = dual.to_string();
        self
    }

    pub fn with_valuation(mut self, v: BigRational) -> Self {
        self.valuation = v;
        self
    }

    pub fn with_action(mut self, a: BigRational) -> Self {
        self.action = Some(a);
        self
    }

    pub fn divisor(mut self) -> Self {
        self.divisor = true;
        self
    }

    pub fn potential(mut self) -> Self {
        self.potential = true;
        self
    }

    /// Shifted degree |X|′ = |X| − 1.
    pub fn shifted_degree(&self) -> i64 {
        self.degree - 1
    }
}

/// How the strict augmentation ε is designated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AugSpec {
    /// ε is the projection to the unit component(s).
    UnitProjection,
    /// Explicit values on degree-0 generators; unlisted generators map to 0.
    Explicit(BTreeMap<GenId, NovikovScalar>),
}

/// Linear combination of generators with Λ coefficients.
pub type LinComb = BTreeMap<GenId, NovikovScalar>;

pub fn lincomb_add(acc: &mut LinComb, id: GenId, c: NovikovScalar) {
    if c.is_zero() {
        return;
    }
    let entry = acc.entry(id).or_insert_with(NovikovScalar::zero);
    *entry = entry.add(&c);
    if entry.is_zero() {
        acc.remove(&id);
    }
}

/// A filtered A∞-algebra presented by generators and a sparse table.
#[derive(Clone, Debug)]
pub struct AInfStructure {
    pub ring_size: usize,
    pub generators: Vec<Generator>,
    names: BTreeMap<String, GenId>,
    /// Input tuple (length k) → output combination of m_k.
    table: BTreeMap<Vec<GenId>, Vec<(GenId, NovikovScalar)>>,
    pub augmentation: Option<AugSpec>,
    pub cutoff: EnergyCutoff,
    /// Sub-basis on which the truncated table is complete; verification
    /// loops restrict to it so window-boundary truncation is not reported
    /// as a violation. `None` means the whole basis is safe.
    pub core: Option<Vec<GenId>>,
}

impl AInfStructure {
    pub fn new(ring_size: usize, cutoff: EnergyCutoff) -> Self {
        assert!(ring_size >= 1);
        AInfStructure {
            ring_size,
            generators: Vec::new(),
            names: BTreeMap::new(),
            table: BTreeMap::new(),
            augmentation: None,
            cutoff,
            core: None,
        }
    }

    pub fn add_generator(&mut self, g: Generator) -> Result<GenId, String> {
        if self.names.contains_key(&g.name) {
            return Err(format!("duplicate generator name `{}`", g.name));
        }
        if g.source >= self.ring_size || g.target >= self.ring_size {
            return Err(format!("generator `{}` uses an idempotent outside the ring", g.name));
        }
        if g.is_unit && (g.degree != 0 || !g.valuation.is_zero()) {
            return Err(format!("unit generator `{}` must have degree 0 and valuation 0", g.name));
        }
        let id = GenId(self.generators.len() as u32);
        self.names.insert(g.name.clone(), id);
        self.generators.push(g);
        Ok(id)
    }

    pub fn gen(&self, id: GenId) -> &Generator {
        &self.generators[id.idx()]
    }

    pub fn lookup(&self, name: &str) -> Result<GenId, String> {
        self.names.get(name).copied().ok_or_else(|| format!("unknown generator `{}`", name))
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generators.len() as u32).map(GenId)
    }

    pub fn units(&self) -> Vec<GenId> {
        self.ids().filter(|&i| self.gen(i).is_unit).collect()
    }

    pub fn non_units(&self) -> Vec<GenId> {
        self.ids().filter(|&i| !self.gen(i).is_unit).collect()
    }

    /// The basis used by verification loops: the declared core, or everything.
    pub fn core_basis(&self) -> Vec<GenId> {
        match &self.core {
            Some(c) => c.clone(),
            None => self.ids().collect(),
        }
    }

    pub fn table(&self) -> &BTreeMap<Vec<GenId>, Vec<(GenId, NovikovScalar)>> {
        &self.table
    }

    pub fn max_arity(&self) -> usize {
        self.table.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn composable(&self, tuple: &[GenId]) -> bool {
        tuple.windows(2).all(|w| self.gen(w[0]).target == self.gen(w[1]).source)
    }

    /// Validating insertion of m_k(tuple) = Σ c·Y.
    pub fn insert(&mut self, tuple: Vec<GenId>, outputs: Vec<(GenId, NovikovScalar)>) -> Result<(), String> {
        let outputs: Vec<(GenId, NovikovScalar)> =
            outputs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if outputs.is_empty() {
            return Ok(());
        }
        let k = tuple.len();
        if k == 0 {
            return Err("m_0 entries are not supported (unobstructed structures only)".to_string());
        }
        if !self.composable(&tuple) {
            return Err(format!("entry {} has non-composable inputs", self.render_tuple(&tuple)));
        }
        let deg_in: i64 = tuple.iter().map(|&i| self.gen(i).degree).sum();
        let val_in: BigRational =
            tuple.iter().map(|&i| self.gen(i).valuation.clone()).fold(BigRational::zero(), |a, b| a + b);
        let (src, tgt) = (self.gen(tuple[0]).source, self.gen(tuple[k - 1]).target);
        for (y, c) in &outputs {
            let gy = self.gen(*y);
            if gy.source != src || gy.target != tgt {
                return Err(format!(
                    "entry {}: output `{}` breaks idempotent typing",
                    self.render_tuple(&tuple),
                    gy.name
                ));
            }
            if gy.degree != deg_in + 2 - k as i64 {
                return Err(format!(
                    "entry {}: output `{}` violates the degree rule (want {}, got {})",
                    self.render_tuple(&tuple),
                    gy.name,
                    deg_in + 2 - k as i64,
                    gy.degree
                ));
            }
            match c.val() {
                Val::Finite(v) => {
                    if v + &gy.valuation < val_in {
                        return Err(format!(
                            "entry {}: output `{}` violates the filtration",
                            self.render_tuple(&tuple),
                            gy.name
                        ));
                    }
                }
                Val::Infinity => {}
            }
        }
        self.insert_unchecked(tuple, outputs);
        Ok(())
    }

    /// Raw insertion, bypassing validation. Used to build deliberately
    /// broken structures in tests and by the verifier examples.
    pub fn insert_unchecked(&mut self, tuple: Vec<GenId>, outputs: Vec<(GenId, NovikovScalar)>) {
        if outputs.is_empty() {
            return;
        }
        let slot = self.table.entry(tuple).or_default();
        for (y, c) in outputs {
            match slot.iter_mut().find(|(id, _)| *id == y) {
                Some((_, existing)) => *existing = existing.add(&c),
                None => slot.push((y, c)),
            }
        }
        slot.retain(|(_, c)| !c.is_zero());
        slot.sort_by_key(|(id, _)| *id);
    }

    /// Standard unit rows for every unit/generator pair:
    /// m₂(e, X) = X, m₂(X, e) = (−1)^{|X|} X.
    pub fn insert_unit_rows(&mut self) -> Result<(), String> {
        let units = self.units();
        for u in units {
            let comp = self.gen(u).source;
            for x in self.ids().collect::<Vec<_>>() {
                let gx = self.gen(x).clone();
                if gx.source == comp {
                    self.insert(vec![u, x], vec![(x, NovikovScalar::one())])?;
                }
                if gx.target == comp && !(gx.is_unit && x == u) {
                    let sign = if gx.degree % 2 == 0 { 1 } else { -1 };
                    self.insert(vec![x, u], vec![(x, NovikovScalar::from_int(sign))])?;
                }
            }
        }
        Ok(())
    }

    /// Raw table lookup for m_k on a basis tuple.
    pub fn m(&self, tuple: &[GenId]) -> &[(GenId, NovikovScalar)] {
        self.table.get(tuple).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// m_k on a basis tuple, scaled by a Λ coefficient.
    pub fn m_lincomb(&self, tuple: &[GenId], coeff: &NovikovScalar) -> LinComb {
        let mut out = LinComb::new();
        for (y, c) in self.m(tuple) {
            lincomb_add(&mut out, *y, c.mul(coeff, &self.cutoff));
        }
        out
    }

    /// Evaluate m_k on scalar-weighted arguments.
    ///
    /// Scalar coefficients are pulled out in reversed order, so
    /// apply_m([(c₁,X₁),…,(c_k,X_k)]) = (c_k ⋯ c₁) · m_k(X₁,…,X_k). With a
    /// non-composable tuple the result is 0; an unknown generator is an error.
    /// Each BaseScalar acts through its component at the source idempotent of
    /// its generator.
    pub fn apply_m(&self, args: &[(BaseScalar, GenId)]) -> Result<LinComb, String> {
        assert!(!args.is_empty(), "apply_m needs at least one argument");
        for (c, id) in args {
            if id.idx() >= self.generators.len() {
                return Err(format!("unknown generator id {:?}", id));
            }
            if c.rank() != self.ring_size {
                return Err("coefficient rank does not match the base ring".to_string());
            }
        }
        let tuple: Vec<GenId> = args.iter().map(|(_, id)| *id).collect();
        if !self.composable(&tuple) {
            return Ok(LinComb::new());
        }
        // reversed product of the scalar parts
        let mut coeff = NovikovScalar::one();
        for (c, id) in args.iter().rev() {
            coeff = coeff.mul(c.component(self.gen(*id).source), &self.cutoff);
        }
        Ok(self.m_lincomb(&tuple, &coeff))
    }

    /// ε value of a generator under the given augmentation spec.
    pub fn eps_value(&self, aug: &AugSpec, id: GenId) -> NovikovScalar {
        match aug {
            AugSpec::UnitProjection => {
                if self.gen(id).is_unit {
                    NovikovScalar::one()
                } else {
                    NovikovScalar::zero()
                }
            }
            AugSpec::Explicit(map) => {
                if self.gen(id).is_unit {
                    NovikovScalar::one()
                } else {
                    map.get(&id).cloned().unwrap_or_else(NovikovScalar::zero)
                }
            }
        }
    }

    pub fn render_tuple(&self, tuple: &[GenId]) -> String {
        let names: Vec<&str> = tuple.iter().map(|&i| self.gen(i).name.as_str()).collect();
        format!("m{}({})", tuple.len(), names.join(","))
    }

    pub fn render_lincomb(&self, lc: &LinComb) -> String {
        if lc.is_empty() {
            return "0".to_string();
        }
        lc.iter()
            .map(|(id, c)| format!("({})*{}", c, self.gen(*id).name))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Structural equality: same generators, table, augmentation and cutoff.
    pub fn same_structure(&self, other: &AInfStructure) -> bool {
        self.ring_size == other.ring_size
            && self.generators == other.generators
            && self.table == other.table
            && self.augmentation == other.augmentation
            && self.cutoff == other.cutoff
            && self.core == other.core
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn two_gen_algebra() -> (AInfStructure, GenId, GenId, GenId, GenId) {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        let one = s.add_generator(Generator::unit("one", 0)).unwrap();
        let u = s.add_generator(Generator::new("U", 1, 0, 0)).unwrap();
        let v = s.add_generator(Generator::new("V", 1, 0, 0)).unwrap();
        let h = s.add_generator(Generator::new("H", 2, 0, 0)).unwrap();
        s.insert(vec![u, v], vec![(h, NovikovScalar::from_int(-1))]).unwrap();
        s.insert(vec![v, u], vec![(h, NovikovScalar::one())]).unwrap();
        s.insert_unit_rows().unwrap();
        s.augmentation = Some(AugSpec::UnitProjection);
        (s, one, u, v, h)
    }

    #[test]
    fn unit_rows_and_lookup() {
        let (s, one, u, _, _) = two_gen_algebra();
        assert_eq!(s.m(&[one, u]), &[(u, NovikovScalar::one())]);
        assert_eq!(s.m(&[u, one]), &[(u, NovikovScalar::from_int(-1))]);
        assert!(s.lookup("nope").is_err());
    }

    #[test]
    fn apply_m_reverses_coefficients() {
        let (s, _, u, v, h) = two_gen_algebra();
        let c1 = BaseScalar::diagonal(1, NovikovScalar::t_power(rat_int(1)));
        let c2 = BaseScalar::diagonal(1, NovikovScalar::from_int(3));
        let out = s.apply_m(&[(c1.clone(), u), (c2.clone(), v)]).unwrap();
        // (c2·c1)·m2(U,V) = 3T·(-H)
        let expect = NovikovScalar::t_power(rat_int(1)).scale(&crate::scalar::Coeff::integer(-3));
        assert_eq!(out.get(&h), Some(&expect));
        // multilinearity against the unscaled value
        let base = s.apply_m(&[(BaseScalar::one(1), u), (BaseScalar::one(1), v)]).unwrap();
        let scaled: NovikovScalar = base
            .get(&h)
            .unwrap()
            .mul_exact(&c1.component(0).mul_exact(c2.component(0)));
        assert_eq!(out.get(&h), Some(&scaled));
    }

    #[test]
    fn degree_violations_rejected() {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        let u = s.add_generator(Generator::new("U", 1, 0, 0)).unwrap();
        let err = s.insert(vec![u, u], vec![(u, NovikovScalar::one())]).unwrap_err();
        assert!(err.contains("degree rule"), "{}", err);
    }

    #[test]
    fn filtration_violations_rejected() {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        let u = s
            .add_generator(Generator::new("U", 1, 0, 0).with_valuation(rat_int(1)))
            .unwrap();
        let h = s.add_generator(Generator::new("H", 2, 0, 0)).unwrap();
        // val(c) + ν(H) = -1 < ν(U) + ν(U) = 2
        let err = s
            .insert(vec![u, u], vec![(h, NovikovScalar::t_power(rat_int(-1)))])
            .unwrap_err();
        assert!(err.contains("filtration"), "{}", err);
    }

    #[test]
    fn non_composable_apply_is_zero() {
        let mut s = AInfStructure::new(2, EnergyCutoff::default_window());
        let x = s.add_generator(Generator::new("X", 1, 0, 1)).unwrap();
        let z = s.add_generator(Generator::new("Z", 1, 0, 1)).unwrap();
        let out = s.apply_m(&[(BaseScalar::one(2), x), (BaseScalar::one(2), z)]).unwrap();
        assert!(out.is_empty());
    }
}
