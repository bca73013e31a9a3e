//! The reduced bar construction and the continuous dual dga (BV)^∨.
//!
//! Dual coordinates live in a [`Vocab`]: one letter per non-unit generator
//! X, printed with the generator's `dual` name, carrying the inverse-shifted
//! degree |x|″ = 1 − |X|, the valuation −ν(X), and the transposed idempotent
//! typing. A [`DualSeries`] is a truncated noncommutative series in these
//! letters; its product is word concatenation, which is the dga product of
//! (BV)^∨ ≅ Ω(V^∨). Words are stored reversed relative to Floer-input
//! order: the reversal happens once, where structure-table tuples are
//! turned into words, and nowhere else.

mod bar;
mod cobar;
mod dual;
mod pairing;

pub use bar::{bar_codiff, bar_coprod, BarElement, BarWord};
pub use cobar::{cobar_diff, DualCoalgebra};
pub use dual::{dual_diff, dual_diff_generators, DiffMap};
pub use pairing::{pairing, pairing_check};

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::ainf::{AInfStructure, GenId};
use crate::scalar::{parse_novikov, BaseScalar, EnergyCutoff, NovikovScalar};

/// Index of a dual coordinate within a [`Vocab`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(pub u32);

impl LetterId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A dual coordinate function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    /// Generator this letter is dual to; fresh variables have none.
    pub gen: Option<GenId>,
    /// Inverse-shifted degree |x|″ = |x| + 1 = 1 − |X|.
    pub cobar_degree: i64,
    /// ν(x) = −ν(X).
    pub valuation: BigRational,
    /// Transposed typing: source(x) = target(X), target(x) = source(X).
    pub source: usize,
    pub target: usize,
}

/// Letter arena shared by every series over one algebra.
#[derive(Clone, Debug)]
pub struct Vocab {
    pub ring_size: usize,
    letters: Vec<Letter>,
    by_gen: BTreeMap<GenId, LetterId>,
    by_name: BTreeMap<String, LetterId>,
}

impl Vocab {
    /// One letter per non-unit generator of the structure.
    pub fn from_structure(s: &AInfStructure) -> Vocab {
        let mut v = Vocab {
            ring_size: s.ring_size,
            letters: Vec::new(),
            by_gen: BTreeMap::new(),
            by_name: BTreeMap::new(),
        };
        for id in s.ids() {
            let g = s.gen(id);
            if g.is_unit {
                continue;
            }
            let lid = LetterId(v.letters.len() as u32);
            v.letters.push(Letter {
                name: g.dual.clone(),
                gen: Some(id),
                cobar_degree: 1 - g.degree,
                valuation: -g.valuation.clone(),
                source: g.target,
                target: g.source,
            });
            v.by_gen.insert(id, lid);
            v.by_name.insert(g.dual.clone(), lid);
        }
        v
    }

    /// Add a fresh variable not tied to any generator.
    pub fn fresh(
        &mut self,
        name: &str,
        cobar_degree: i64,
        valuation: BigRational,
        source: usize,
        target: usize,
    ) -> LetterId {
        assert!(!self.by_name.contains_key(name), "duplicate letter `{}`", name);
        let lid = LetterId(self.letters.len() as u32);
        self.letters.push(Letter {
            name: name.to_string(),
            gen: None,
            cobar_degree,
            valuation,
            source,
            target,
        });
        self.by_name.insert(name.to_string(), lid);
        lid
    }

    pub fn letter(&self, id: LetterId) -> &Letter {
        &self.letters[id.idx()]
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LetterId> + '_ {
        (0..self.letters.len() as u32).map(LetterId)
    }

    pub fn of_gen(&self, g: GenId) -> Option<LetterId> {
        self.by_gen.get(&g).copied()
    }

    pub fn by_name(&self, name: &str) -> Result<LetterId, String> {
        self.by_name.get(name).copied().ok_or_else(|| format!("unknown letter `{}`", name))
    }
}

/// A word in dual coordinates; empty = the 𝕜_Λ component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<LetterId>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(l: LetterId) -> Word {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn composable(&self, vocab: &Vocab) -> bool {
        self.0.windows(2).all(|w| vocab.letter(w[0]).target == vocab.letter(w[1]).source)
    }

    pub fn source(&self, vocab: &Vocab) -> Option<usize> {
        self.0.first().map(|&l| vocab.letter(l).source)
    }

    pub fn target(&self, vocab: &Vocab) -> Option<usize> {
        self.0.last().map(|&l| vocab.letter(l).target)
    }

    /// dga degree: Σ |xᵢ|″.
    pub fn degree(&self, vocab: &Vocab) -> i64 {
        self.0.iter().map(|&l| vocab.letter(l).cobar_degree).sum()
    }

    pub fn valuation(&self, vocab: &Vocab) -> BigRational {
        self.0
            .iter()
            .map(|&l| vocab.letter(l).valuation.clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn render(&self, vocab: &Vocab) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&l| vocab.letter(l).name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic: by length first, then letter indices.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Truncated noncommutative series in dual coordinates with 𝕜_Λ
/// coefficients. The coefficient of a nonempty word sits at the word's
/// source idempotent; the empty word carries a full 𝕜_Λ element.
#[derive(Clone, Debug)]
pub struct DualSeries {
    pub terms: BTreeMap<Word, BaseScalar>,
    pub cutoff: EnergyCutoff,
    /// Set when the cutoff discarded something on the way here; equality
    /// tests compare only the retained window.
    pub truncated: bool,
}

impl PartialEq for DualSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for DualSeries {}

impl DualSeries {
    pub fn zero(cutoff: EnergyCutoff) -> DualSeries {
        DualSeries { terms: BTreeMap::new(), cutoff, truncated: false }
    }

    pub fn constant(c: BaseScalar, cutoff: EnergyCutoff) -> DualSeries {
        let mut s = DualSeries::zero(cutoff);
        if !c.is_zero() {
            s.terms.insert(Word::empty(), c);
        }
        s
    }

    pub fn one(ring_size: usize, cutoff: EnergyCutoff) -> DualSeries {
        DualSeries::constant(BaseScalar::one(ring_size), cutoff)
    }

    /// λ·w with the coefficient placed at the word's source idempotent
    /// (diagonal for the empty word).
    pub fn monomial(
        vocab: &Vocab,
        word: Word,
        coeff: NovikovScalar,
        cutoff: EnergyCutoff,
    ) -> DualSeries {
        let base = match word.source(vocab) {
            Some(s) => BaseScalar::at(vocab.ring_size, s, coeff),
            None => BaseScalar::diagonal(vocab.ring_size, coeff),
        };
        let mut out = DualSeries::zero(cutoff);
        out.insert(word, base, vocab);
        out
    }

    pub fn letter(vocab: &Vocab, l: LetterId, cutoff: EnergyCutoff) -> DualSeries {
        DualSeries::monomial(vocab, Word::single(l), NovikovScalar::one(), cutoff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Insert with cutoff discipline: words at or above the length bound
    /// and terms at or above the energy bound are dropped (and flagged).
    pub fn insert(&mut self, word: Word, coeff: BaseScalar, vocab: &Vocab) {
        if coeff.is_zero() {
            return;
        }
        if !self.cutoff.keeps_len(word.len()) {
            self.truncated = true;
            return;
        }
        let energy_floor = word.valuation(vocab);
        let mut comps = Vec::with_capacity(coeff.rank());
        let mut dropped = false;
        for c in coeff.components() {
            let mut keep_terms = Vec::new();
            for (a, e) in c.terms() {
                if self.cutoff.keeps_energy(&(e + &energy_floor)) {
                    keep_terms.push((a.clone(), e.clone()));
                } else {
                    dropped = true;
                }
            }
            keep_terms.sort_by(|a, b| a.1.cmp(&b.1));
            comps.push(NovikovScalar::from_terms(keep_terms));
        }
        if dropped {
            self.truncated = true;
        }
        let coeff = BaseScalar::from_components(comps);
        if coeff.is_zero() {
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

    pub fn add(&self, other: &DualSeries, vocab: &Vocab) -> DualSeries {
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone(), vocab);
        }
        out
    }

    pub fn neg(&self) -> DualSeries {
        DualSeries {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
            cutoff: self.cutoff.clone(),
            truncated: self.truncated,
        }
    }

    pub fn sub(&self, other: &DualSeries, vocab: &Vocab) -> DualSeries {
        self.add(&other.neg(), vocab)
    }

    /// Left multiplication by a Λ scalar.
    pub fn scale(&self, c: &NovikovScalar, vocab: &Vocab) -> DualSeries {
        let mut out = DualSeries::zero(self.cutoff.clone());
        out.truncated = self.truncated;
        for (w, b) in &self.terms {
            out.insert(w.clone(), b.scale(c), vocab);
        }
        out
    }

    /// Concatenation product. Non-composable word pairs multiply to zero;
    /// coefficients transport through the idempotent bookkeeping.
    pub fn mul(&self, other: &DualSeries, vocab: &Vocab) -> DualSeries {
        let mut out = DualSeries::zero(self.cutoff.clone());
        out.truncated = self.truncated || other.truncated;
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let (word, coeff) = match (w1.is_empty(), w2.is_empty()) {
                    (true, true) => (Word::empty(), c1.mul_exact(c2)),
                    (true, false) => {
                        let s2 = w2.source(vocab).unwrap();
                        (w2.clone(), c2.scale(c1.component(s2)))
                    }
                    (false, true) => {
                        let t1 = w1.target(vocab).unwrap();
                        (w1.clone(), c1.scale(c2.component(t1)))
                    }
                    (false, false) => {
                        if w1.target(vocab) != w2.source(vocab) {
                            continue;
                        }
                        let s2 = w2.source(vocab).unwrap();
                        (w1.concat(w2), c1.scale(c2.component(s2)))
                    }
                };
                out.insert(word, coeff, vocab);
            }
        }
        out
    }

    pub fn pow(&self, n: usize, vocab: &Vocab) -> DualSeries {
        let mut acc = DualSeries::one(vocab.ring_size, self.cutoff.clone());
        for _ in 0..n {
            acc = acc.mul(self, vocab);
        }
        acc
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self, vocab: &Vocab) -> DualSeries {
        assert!(
            !self.terms.contains_key(&Word::empty()),
            "exp needs a constant-term-free argument"
        );
        let mut acc = DualSeries::one(vocab.ring_size, self.cutoff.clone());
        let mut power = DualSeries::one(vocab.ring_size, self.cutoff.clone());
        let mut k = 1usize;
        loop {
            power = power.mul(self, vocab);
            if power.is_zero() {
                break;
            }
            let inv_fact = NovikovScalar::factorial(k).invert(&self.cutoff).unwrap();
            acc = acc.add(&power.scale(&inv_fact, vocab), vocab);
            k += 1;
        }
        acc
    }

    /// log(1 + u) for a series u with zero constant term.
    pub fn log1p(&self, vocab: &Vocab) -> DualSeries {
        assert!(
            !self.terms.contains_key(&Word::empty()),
            "log1p needs a constant-term-free argument"
        );
        let mut acc = DualSeries::zero(self.cutoff.clone());
        let mut power = DualSeries::one(vocab.ring_size, self.cutoff.clone());
        let mut m = 1usize;
        loop {
            power = power.mul(self, vocab);
            if power.is_zero() {
                break;
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let c = NovikovScalar::from_rat(BigRational::new(sign.into(), (m as i64).into()));
            acc = acc.add(&power.scale(&c, vocab), vocab);
            m += 1;
        }
        acc
    }

    /// Replace letters by series. Letters absent from the map stay
    /// themselves.
    pub fn substitute(
        &self,
        map: &BTreeMap<LetterId, DualSeries>,
        vocab: &Vocab,
    ) -> DualSeries {
        let mut out = DualSeries::zero(self.cutoff.clone());
        out.truncated = self.truncated;
        for (w, c) in &self.terms {
            let mut acc = DualSeries::constant(c.clone(), self.cutoff.clone());
            for &l in &w.0 {
                let factor = match map.get(&l) {
                    Some(s) => s.clone(),
                    None => DualSeries::letter(vocab, l, self.cutoff.clone()),
                };
                acc = acc.mul(&factor, vocab);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc, vocab);
        }
        out
    }

    /// Constant term as a 𝕜_Λ element.
    pub fn constant_term(&self, ring_size: usize) -> BaseScalar {
        self.terms
            .get(&Word::empty())
            .cloned()
            .unwrap_or_else(|| BaseScalar::zero(ring_size))
    }

    /// Terms of one homogeneous dga degree.
    pub fn degree_part(&self, degree: i64, vocab: &Vocab) -> DualSeries {
        DualSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree(vocab) == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            cutoff: self.cutoff.clone(),
            truncated: self.truncated,
        }
    }

    pub fn degrees(&self, vocab: &Vocab) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(|w| w.degree(vocab)).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    /// Canonical rendering: terms sorted by (degree, length, lexicographic).
    pub fn render(&self, vocab: &Vocab) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Word, &BaseScalar)> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (w.degree(vocab), w.len(), w.0.clone()));
        terms
            .iter()
            .map(|(w, c)| {
                let coeff = if w.is_empty() {
                    crate::scalar::base_to_string(c)
                } else {
                    c.component(w.source(vocab).unwrap()).to_string()
                };
                if w.is_empty() {
                    format!("({})", coeff)
                } else {
                    format!("({})*{}", coeff, w.render(vocab))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parse the rendering produced by [`DualSeries::render`].
    pub fn parse(text: &str, vocab: &Vocab, cutoff: EnergyCutoff) -> Result<DualSeries, String> {
        let text = text.trim();
        let mut out = DualSeries::zero(cutoff);
        if text == "0" {
            return Ok(out);
        }
        for part in split_series_terms(text) {
            let part = part.trim();
            if !part.starts_with('(') {
                return Err(format!("series term `{}` must start with a parenthesized scalar", part));
            }
            let mut depth = 0i32;
            let mut close = None;
            for (i, ch) in part.char_indices() {
                match ch {
                    '(' | '{' => depth += 1,
                    ')' | '}' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let close = close.ok_or_else(|| format!("unbalanced parens in `{}`", part))?;
            let scalar_text = &part[1..close];
            let rest = part[close + 1..].trim();
            let word = if rest.is_empty() {
                Word::empty()
            } else {
                let body = rest
                    .strip_prefix('*')
                    .ok_or_else(|| format!("expected `*` after scalar in `{}`", part))?
                    .trim();
                if body == "1" {
                    Word::empty()
                } else {
                    let mut ls = Vec::new();
                    for name in body.split('.') {
                        ls.push(vocab.by_name(name.trim())?);
                    }
                    Word(ls)
                }
            };
            let coeff = if scalar_text.contains("pi") && scalar_text.contains('{') {
                crate::scalar::parse_base_scalar(scalar_text, vocab.ring_size)?
            } else {
                let c = parse_novikov(scalar_text)?;
                match word.source(vocab) {
                    Some(s) => BaseScalar::at(vocab.ring_size, s, c),
                    None => BaseScalar::diagonal(vocab.ring_size, c),
                }
            };
            out.insert(word, coeff, vocab);
        }
        Ok(out)
    }
}

/// Split on `+` outside parens/braces (series terms are parenthesized, so
/// coefficient-internal sums never split).
fn split_series_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut buf = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '{' => {
                depth += 1;
                buf.push(ch);
            }
            ')' | '}' => {
                depth -= 1;
                buf.push(ch);
            }
            '+' if depth == 0 => {
                out.push(buf.trim().to_string());
                buf.clear();
            }
            _ => buf.push(ch),
        }
    }
    if !buf.trim().is_empty() {
        out.push(buf.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::Generator;
    use crate::scalar::{rat, rat_int};

    fn setup() -> (AInfStructure, Vocab) {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        s.add_generator(Generator::unit("one", 0)).unwrap();
        s.add_generator(Generator::new("U", 1, 0, 0)).unwrap();
        s.add_generator(Generator::new("V", 1, 0, 0)).unwrap();
        s.add_generator(Generator::new("H", 2, 0, 0)).unwrap();
        let v = Vocab::from_structure(&s);
        (s, v)
    }

    #[test]
    fn letters_carry_transposed_data() {
        let (s, v) = setup();
        let h = s.lookup("H").unwrap();
        let lh = v.of_gen(h).unwrap();
        assert_eq!(v.letter(lh).cobar_degree, -1);
        assert_eq!(v.letter(lh).name, "h");
        assert!(v.of_gen(s.lookup("one").unwrap()).is_none());
    }

    #[test]
    fn word_order_is_deglex() {
        let (s, v) = setup();
        let u = v.of_gen(s.lookup("U").unwrap()).unwrap();
        let x = v.of_gen(s.lookup("V").unwrap()).unwrap();
        assert!(Word::single(x) < Word(vec![u, u]));
        assert!(Word(vec![u, x]) < Word(vec![x, u]));
    }

    #[test]
    fn product_truncates_at_length() {
        let (s, v) = setup();
        let u = v.of_gen(s.lookup("U").unwrap()).unwrap();
        let cut = EnergyCutoff::new(rat_int(10), 3);
        let xu = DualSeries::letter(&v, u, cut.clone());
        let sq = xu.mul(&xu, &v);
        assert_eq!(sq.terms.len(), 1);
        let cube = sq.mul(&xu, &v);
        assert!(cube.is_zero());
        assert!(cube.truncated);
    }

    #[test]
    fn exp_and_log_are_inverse() {
        let (s, v) = setup();
        let u = v.of_gen(s.lookup("U").unwrap()).unwrap();
        let cut = EnergyCutoff::new(rat_int(10), 6);
        let xu = DualSeries::letter(&v, u, cut.clone());
        let e = xu.exp(&v);
        // 1 + x + x²/2 + x³/6 + ...
        let half = NovikovScalar::from_rat(rat(1, 2));
        assert_eq!(e.terms.get(&Word(vec![u, u])).unwrap().component(0), &half);
        let back = e.sub(&DualSeries::one(1, cut.clone()), &v).log1p(&v);
        assert_eq!(back, xu);
    }

    #[test]
    fn render_parse_round_trip() {
        let (s, v) = setup();
        let u = v.of_gen(s.lookup("U").unwrap()).unwrap();
        let w = v.of_gen(s.lookup("V").unwrap()).unwrap();
        let cut = EnergyCutoff::default_window();
        let mut f = DualSeries::zero(cut.clone());
        f.insert(Word(vec![u, w]), BaseScalar::diagonal(1, NovikovScalar::one()), &v);
        f.insert(Word::empty(), BaseScalar::diagonal(1, NovikovScalar::from_int(-1)), &v);
        let text = f.render(&v);
        assert_eq!(text, "(-1) + (1)*u.v");
        let parsed = DualSeries::parse(&text, &v, cut).unwrap();
        assert_eq!(parsed, f);
    }
}
