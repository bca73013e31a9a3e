//! Valuation charts: the polydisk each dataset's Maurer-Cartan space
//! occupies in the coordinates furnished by the chart generators.
//!
//! Two closed-form shapes occur: a generator mapped to a single exact
//! variable c·x (radius exponent −(val(c) + ν(x)), centered at ε = 0),
//! and an exponential ε·e^{m·x} of a divisor variable (radius exponent
//! −val(ε), from the log-series convergence condition
//! val(Z − ε(Z)) > val(ε(Z))). Anything else is flagged, not guessed.

use num::BigRational;

use crate::scalar::{NovikovScalar, Val};

use super::PairData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ChartShape {
    Linear,
    Exponential,
    Unrecognized,
}

#[derive(Clone, Debug)]
pub struct ChartRow {
    pub gen: String,
    pub eps: NovikovScalar,
    pub shape: ChartShape,
    /// Radius exponent c of the polydisk factor {val(Z − ε(Z)) > −c};
    /// the norm radius is e^c. None when the shape is unrecognized.
    pub radius_exp: Option<BigRational>,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub rows: Vec<ChartRow>,
}

impl Chart {
    /// TSV: gen, eps, radius_exp (norm radius e^radius_exp).
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("gen\teps\tradius_exp\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                r.gen,
                r.eps,
                match &r.radius_exp {
                    Some(q) => q.to_string(),
                    None => "no-closed-form".to_string(),
                }
            ));
        }
        out
    }
}

/// Chart of all designated coordinate generators.
pub fn chart(pd: &PairData) -> Result<Chart, String> {
    let mut rows = Vec::new();
    for &z in &pd.chart_gens {
        let name = pd.w.gen(z).name.clone();
        let eps = pd.augmentation(z);
        let kappa = pd.kappa(&[z])?;
        let vocab = &pd.vocab;
        // collect length-1 terms and their letter
        let mut single: Vec<(crate::barcobar::LetterId, NovikovScalar)> = Vec::new();
        let mut max_len = 0usize;
        let mut multi_letter = false;
        let mut letters_seen: Vec<crate::barcobar::LetterId> = Vec::new();
        for (w, c) in &kappa.terms {
            max_len = max_len.max(w.len());
            for &l in &w.0 {
                if !letters_seen.contains(&l) {
                    letters_seen.push(l);
                }
            }
            if letters_seen.len() > 1 {
                multi_letter = true;
            }
            if w.len() == 1 {
                single.push((w.0[0], c.component(w.source(vocab).unwrap()).clone()));
            }
        }
        let row = if eps.is_zero() && kappa.terms.len() == 1 && single.len() == 1 {
            // c·x: radius exponent −(val(c) + ν(x))
            let (l, c) = &single[0];
            match c.val() {
                Val::Finite(v) => ChartRow {
                    gen: name,
                    eps,
                    shape: ChartShape::Linear,
                    radius_exp: Some(-(v + &vocab.letter(*l).valuation)),
                },
                Val::Infinity => unreachable!("nonzero term"),
            }
        } else if !eps.is_zero() && !multi_letter && single.len() == 1 && exp_pattern(pd, &kappa, &eps) {
            let (l, c) = &single[0];
            match c.val() {
                Val::Finite(v) => ChartRow {
                    gen: name,
                    eps,
                    shape: ChartShape::Exponential,
                    radius_exp: Some(-(v + &vocab.letter(*l).valuation)),
                },
                Val::Infinity => unreachable!("nonzero term"),
            }
        } else {
            ChartRow { gen: name, eps, shape: ChartShape::Unrecognized, radius_exp: None }
        };
        rows.push(row);
    }
    Ok(Chart { rows })
}

/// κ(Z) = ε·Σ (m·x)^k/k! for one letter x and a unit ratio m?
fn exp_pattern(pd: &PairData, kappa: &crate::barcobar::DualSeries, eps: &NovikovScalar) -> bool {
    let cutoff = &pd.v.cutoff;
    let eps_inv = match eps.invert(cutoff) {
        Ok(e) => e,
        Err(_) => return false,
    };
    // ratio m = a₁/ε must reproduce aₖ = ε·mᵏ/k! exactly
    let mut m: Option<NovikovScalar> = None;
    for (w, c) in &kappa.terms {
        let lam = match w.source(&pd.vocab) {
            Some(s) => c.component(s).clone(),
            None => c.component(0).clone(),
        };
        if w.len() == 1 {
            m = Some(lam.mul(&eps_inv, cutoff));
        }
    }
    let m = match m {
        Some(m) => m,
        None => return false,
    };
    for (w, c) in &kappa.terms {
        let k = w.len();
        let lam = match w.source(&pd.vocab) {
            Some(s) => c.component(s).clone(),
            None => c.component(0).clone(),
        };
        let mut want = eps.clone();
        for _ in 0..k {
            want = want.mul(&m, cutoff);
        }
        let fact_inv = NovikovScalar::factorial(k).invert(cutoff).unwrap();
        want = want.mul(&fact_inv, cutoff);
        if lam != want {
            return false;
        }
    }
    true
}
