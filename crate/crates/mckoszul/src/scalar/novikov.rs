//! The Novikov field element: a finite, exponent-sorted term list.

use num::{BigRational, Zero};

use super::{EnergyCutoff, Val};

/// Gaussian-rational coefficient `re + im*i`.
///
/// All built-in datasets have rational structure constants; the imaginary
/// part is carried for completeness and is exact like everything else.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    pub re: BigRational,
    pub im: BigRational,
}

impl Coeff {
    pub fn rational(re: BigRational) -> Self {
        Coeff { re, im: BigRational::zero() }
    }

    pub fn integer(n: i64) -> Self {
        Coeff::rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Coeff::integer(0)
    }

    pub fn one() -> Self {
        Coeff::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        Coeff { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn neg(&self) -> Coeff {
        Coeff { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        Coeff {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "division by zero coefficient");
        let norm = &self.re * &self.re + &self.im * &self.im;
        Coeff { re: &self.re / &norm, im: -(&self.im / &norm) }
    }
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im < BigRational::zero() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Element of the universal Novikov field: Σ aᵢ T^{λᵢ}, finitely many
/// terms, exponents strictly increasing, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NovikovScalar {
    /// (coefficient, exponent) pairs sorted by strictly increasing exponent.
    terms: Vec<(Coeff, BigRational)>,
}

/// Most specific subring containing a given scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ScalarClass {
    Zero,
    InLambdaPlus,
    InLambdaZero,
    InLambdaU,
    General,
}

impl std::fmt::Display for ScalarClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ScalarClass::Zero => "zero",
            ScalarClass::InLambdaPlus => "in_Lambda_plus",
            ScalarClass::InLambdaZero => "in_Lambda_zero",
            ScalarClass::InLambdaU => "in_Lambda_U",
            ScalarClass::General => "general",
        };
        write!(f, "{}", s)
    }
}

/// Full membership record: Λ₊ ⊂ Λ₀ ⊃ Λ_U, plus the most specific class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub primary: ScalarClass,
    pub in_lambda_zero: bool,
    pub in_lambda_plus: bool,
    pub in_lambda_u: bool,
}

impl NovikovScalar {
    pub fn zero() -> Self {
        NovikovScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        NovikovScalar::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        NovikovScalar::monomial(c, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        NovikovScalar::constant(Coeff::integer(n))
    }

    pub fn from_rat(q: BigRational) -> Self {
        NovikovScalar::constant(Coeff::rational(q))
    }

    /// c·T^λ (zero if c = 0).
    pub fn monomial(c: Coeff, exponent: BigRational) -> Self {
        if c.is_zero() {
            NovikovScalar::zero()
        } else {
            NovikovScalar { terms: vec![(c, exponent)] }
        }
    }

    /// T^λ.
    pub fn t_power(exponent: BigRational) -> Self {
        NovikovScalar::monomial(Coeff::one(), exponent)
    }

    pub fn from_terms(mut terms: Vec<(Coeff, BigRational)>) -> Self {
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(Coeff, BigRational)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            if let Some(last) = out.last_mut() {
                if last.1 == e {
                    last.0 = last.0.add(&c);
                    if last.0.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((c, e));
            }
        }
        NovikovScalar { terms: out }
    }

    pub fn terms(&self) -> &[(Coeff, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_zero() && self.terms[0].0 == Coeff::one()
    }

    /// Smallest exponent; +∞ on zero.
    pub fn val(&self) -> Val {
        match self.terms.first() {
            Some((_, e)) => Val::Finite(e.clone()),
            None => Val::Infinity,
        }
    }

    pub fn leading(&self) -> Option<&(Coeff, BigRational)> {
        self.terms.first()
    }

    pub fn add(&self, other: &NovikovScalar) -> NovikovScalar {
        let mut out: Vec<(Coeff, BigRational)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].1.cmp(&other.terms[j].1) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].0.add(&other.terms[j].0);
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        NovikovScalar { terms: out }
    }

    pub fn neg(&self) -> NovikovScalar {
        NovikovScalar { terms: self.terms.iter().map(|(c, e)| (c.neg(), e.clone())).collect() }
    }

    pub fn sub(&self, other: &NovikovScalar) -> NovikovScalar {
        self.add(&other.neg())
    }

    /// Term-list convolution without any truncation. Exact; used where the
    /// factors are known to be small.
    pub fn mul_exact(&self, other: &NovikovScalar) -> NovikovScalar {
        let mut acc: Vec<(Coeff, BigRational)> = Vec::new();
        for (a, ea) in &self.terms {
            for (b, eb) in &other.terms {
                acc.push((a.mul(b), ea + eb));
            }
        }
        NovikovScalar::from_terms(acc)
    }

    /// Convolution with terms of exponent >= cut.max_energy discarded.
    pub fn mul(&self, other: &NovikovScalar, cut: &EnergyCutoff) -> NovikovScalar {
        self.mul_exact(other).truncate(cut)
    }

    pub fn scale(&self, c: &Coeff) -> NovikovScalar {
        if c.is_zero() {
            return NovikovScalar::zero();
        }
        NovikovScalar { terms: self.terms.iter().map(|(a, e)| (a.mul(c), e.clone())).collect() }
    }

    /// Multiply by T^s.
    pub fn shift(&self, s: &BigRational) -> NovikovScalar {
        NovikovScalar { terms: self.terms.iter().map(|(a, e)| (a.clone(), e + s)).collect() }
    }

    pub fn truncate(&self, cut: &EnergyCutoff) -> NovikovScalar {
        NovikovScalar {
            terms: self.terms.iter().filter(|(_, e)| cut.keeps_energy(e)).cloned().collect(),
        }
    }

    /// Inverse of a nonzero scalar, exact on the leading term and a
    /// truncated geometric series on the tail. The result carries every
    /// exponent < max_energy - val(a), so a·invert(a) = 1 up to terms of
    /// exponent >= max_energy.
    pub fn invert(&self, cut: &EnergyCutoff) -> Result<NovikovScalar, String> {
        let (c0, e0) = match self.leading() {
            Some(t) => t.clone(),
            None => return Err("cannot invert zero".to_string()),
        };
        // a = c0 T^{e0} (1 + u) with val(u) > 0; a^{-1} = c0^{-1} T^{-e0} Σ (-u)^k.
        let lead_inv = NovikovScalar::monomial(c0.inv(), -e0.clone());
        let unit_part = self.shift(&-e0.clone()).scale(&c0.inv());
        let u = unit_part.sub(&NovikovScalar::one());
        let bound = &cut.max_energy - &e0;
        let inner_cut = EnergyCutoff {
            max_energy: if bound > BigRational::zero() { bound } else { return Ok(lead_inv) },
            max_len: cut.max_len,
        };
        let mut series = NovikovScalar::one();
        let mut power = NovikovScalar::one();
        let minus_u = u.neg();
        loop {
            power = power.mul(&minus_u, &inner_cut);
            if power.is_zero() {
                break;
            }
            series = series.add(&power);
        }
        Ok(series.mul_exact(&lead_inv))
    }

    /// Membership in the standard subrings.
    pub fn classify(&self) -> Classification {
        if self.is_zero() {
            return Classification {
                primary: ScalarClass::Zero,
                in_lambda_zero: true,
                in_lambda_plus: true,
                in_lambda_u: false,
            };
        }
        let v = self.terms[0].1.clone();
        let zero = BigRational::zero();
        if v > zero {
            Classification {
                primary: ScalarClass::InLambdaPlus,
                in_lambda_zero: true,
                in_lambda_plus: true,
                in_lambda_u: false,
            }
        } else if v == zero {
            Classification {
                primary: ScalarClass::InLambdaU,
                in_lambda_zero: true,
                in_lambda_plus: false,
                in_lambda_u: true,
            }
        } else {
            Classification {
                primary: ScalarClass::General,
                in_lambda_zero: false,
                in_lambda_plus: false,
                in_lambda_u: false,
            }
        }
    }

    /// `n!` as a scalar, for exponential-series coefficients.
    pub fn factorial(n: usize) -> NovikovScalar {
        let mut acc = num::BigInt::from(1);
        for k in 2..=n {
            acc *= num::BigInt::from(k);
        }
        NovikovScalar::from_rat(BigRational::from_integer(acc))
    }
}

impl std::fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::parse::novikov_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn t(e: BigRational) -> NovikovScalar {
        NovikovScalar::t_power(e)
    }

    #[test]
    fn add_cancels_and_merges() {
        // (T^{1/2} + 2T) + (-T^{1/2}) = 2T
        let a = t(rat(1, 2)).add(&t(rat_int(1)).scale(&Coeff::integer(2)));
        let b = t(rat(1, 2)).neg();
        let expect = t(rat_int(1)).scale(&Coeff::integer(2));
        assert_eq!(a.add(&b), expect);
        // 0 + T^3 = T^3
        assert_eq!(NovikovScalar::zero().add(&t(rat_int(3))), t(rat_int(3)));
        // (1 + T) + (1 - T) = 2
        let one_plus = NovikovScalar::one().add(&t(rat_int(1)));
        let one_minus = NovikovScalar::one().sub(&t(rat_int(1)));
        assert_eq!(one_plus.add(&one_minus), NovikovScalar::from_int(2));
    }

    #[test]
    fn mul_truncates_at_energy() {
        let cut = EnergyCutoff::new(rat_int(3), 6);
        let one_plus = NovikovScalar::one().add(&t(rat_int(1)));
        let one_minus = NovikovScalar::one().sub(&t(rat_int(1)));
        // (1+T)(1-T) = 1 - T^2, below E=3
        assert_eq!(
            one_plus.mul(&one_minus, &cut),
            NovikovScalar::one().sub(&t(rat_int(2)))
        );
        // T^{1/2}·T^{1/2} = T
        assert_eq!(t(rat(1, 2)).mul(&t(rat(1, 2)), &cut), t(rat_int(1)));
    }

    #[test]
    fn val_examples() {
        let a = t(rat(1, 2)).add(&t(rat(6, 5)).scale(&Coeff::integer(2)));
        assert_eq!(a.val(), Val::Finite(rat(1, 2)));
        assert_eq!(NovikovScalar::zero().val(), Val::Infinity);
        assert_eq!(NovikovScalar::from_int(3).add(&t(rat_int(1))).val(), Val::Finite(rat_int(0)));
    }

    #[test]
    fn invert_geometric_series() {
        let cut = EnergyCutoff::new(rat_int(3), 6);
        let a = NovikovScalar::one().add(&t(rat_int(1)));
        let inv = a.invert(&cut).unwrap();
        let expect = NovikovScalar::from_terms(vec![
            (Coeff::integer(1), rat_int(0)),
            (Coeff::integer(-1), rat_int(1)),
            (Coeff::integer(1), rat_int(2)),
        ]);
        assert_eq!(inv, expect);
        // a · a^{-1} = 1 + (terms >= E)
        let prod = a.mul_exact(&inv).truncate(&cut);
        assert_eq!(prod, NovikovScalar::one());

        assert_eq!(t(rat_int(1)).invert(&cut).unwrap(), t(rat_int(-1)));
        assert_eq!(
            NovikovScalar::from_int(2).invert(&cut).unwrap(),
            NovikovScalar::from_rat(rat(1, 2))
        );
        assert!(NovikovScalar::zero().invert(&cut).is_err());
    }

    #[test]
    fn invert_unit_identity_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let cut = EnergyCutoff::new(rat_int(5), 6);
        for _ in 0..50 {
            let nterms = rng.gen_range(1..4);
            let mut terms = Vec::new();
            for k in 0..nterms {
                let num = rng.gen_range(-4i64..5);
                let num = if k == 0 && num == 0 { 1 } else { num };
                let den = rng.gen_range(1i64..4);
                let exp = rat(rng.gen_range(0i64..7), rng.gen_range(1i64..3));
                let exp = if k == 0 { rat_int(rng.gen_range(-2i64..3)) } else { exp };
                terms.push((Coeff::rational(rat(num, den)), exp));
            }
            let a = NovikovScalar::from_terms(terms);
            if a.is_zero() {
                continue;
            }
            let inv = a.invert(&cut).unwrap();
            let prod = a.mul_exact(&inv);
            // 1 + terms of exponent >= E - |val(a)|
            let v = a.val().finite().unwrap().clone();
            let bound = &cut.max_energy - if v < rat_int(0) { -v } else { v };
            for (c, e) in prod.sub(&NovikovScalar::one()).terms() {
                assert!(!c.is_zero());
                assert!(*e >= bound, "residual term below bound: T^{}", e);
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(t(rat(1, 3)).classify().primary, ScalarClass::InLambdaPlus);
        let u = NovikovScalar::from_int(2).add(&t(rat_int(1)));
        let cls = u.classify();
        assert_eq!(cls.primary, ScalarClass::InLambdaU);
        assert!(cls.in_lambda_zero && cls.in_lambda_u && !cls.in_lambda_plus);
        assert_eq!(t(rat_int(-1)).classify().primary, ScalarClass::General);
        assert_eq!(NovikovScalar::zero().classify().primary, ScalarClass::Zero);
    }

    #[test]
    fn ring_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut random_scalar = |rng: &mut rand_chacha::ChaCha8Rng| {
            let n = rng.gen_range(0..4);
            let terms: Vec<_> = (0..n)
                .map(|_| {
                    (
                        Coeff::rational(rat(rng.gen_range(-3i64..4), rng.gen_range(1i64..4))),
                        rat(rng.gen_range(-4i64..8), rng.gen_range(1i64..4)),
                    )
                })
                .collect();
            NovikovScalar::from_terms(terms)
        };
        for _ in 0..60 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            let c = random_scalar(&mut rng);
            // associativity, commutativity, distributivity (untruncated products)
            assert_eq!(a.mul_exact(&b).mul_exact(&c), a.mul_exact(&b.mul_exact(&c)));
            assert_eq!(a.mul_exact(&b), b.mul_exact(&a));
            assert_eq!(a.mul_exact(&b.add(&c)), a.mul_exact(&b).add(&a.mul_exact(&c)));
            // val(ab) = val(a) + val(b)
            assert_eq!(a.mul_exact(&b).val(), a.val().plus(&b.val()));
            // val(a+b) >= min(val a, val b), equality when they differ
            let s = a.add(&b);
            assert!(s.val() >= a.val().clone().min(b.val()));
            if a.val() != b.val() {
                assert_eq!(s.val(), a.val().min(b.val()));
            }
        }
    }
}
