//! 𝔪-adic quotients H⁰(W)/𝔪ᵏ and the truncated Koszul isomorphism κ̂.
//!
//! 𝔪ᵏ is modeled inside the window by the span of length-k products of the
//! declared 𝔪-generators. Candidate monomials of length < k span the
//! quotient when the declared presentation generates; κ̂ maps them to
//! normal-form words of length < k in the Maurer-Cartan algebra, and the
//! resulting matrix is checked for bijectivity by exact elimination. A
//! non-generating presentation shows up as rank deficiency and is
//! reported, not guessed around.

use crate::barcobar::{Vocab, Word};
use crate::mcalg::{normal_form, MCPresentation};
use crate::scalar::NovikovScalar;

use super::{PairData, WCombo};

#[derive(Clone, Debug)]
pub struct MadicQuotient {
    pub k: usize,
    /// Labels of the surviving candidate monomials (the quotient basis).
    pub basis: Vec<String>,
    /// Candidate monomials that vanish modulo 𝔪ᵏ (e.g. a generator with
    /// g = ±(h)ⁿ·g for every n dies in every finite quotient).
    pub dead: Vec<String>,
    /// Normal-form words of the Maurer-Cartan algebra with length < k.
    pub target: Vec<String>,
    /// Row i = κ̂(basis[i]) in target coordinates.
    pub matrix: Vec<Vec<NovikovScalar>>,
    pub invertible: bool,
    /// κ̂⁻¹ when the matrix is square and invertible: inverse[j][i] is the
    /// coefficient of basis[i] in the preimage of target[j].
    pub inverse: Option<Vec<Vec<NovikovScalar>>>,
    pub notes: Vec<String>,
}

impl MadicQuotient {
    /// The preimage series of a target word under κ̂, as (label, coeff).
    pub fn preimage(&self, target_word: &str) -> Option<Vec<(String, NovikovScalar)>> {
        let j = self.target.iter().position(|t| t == target_word)?;
        let inv = self.inverse.as_ref()?;
        Some(
            inv[j]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.basis[i].clone(), c.clone()))
                .collect(),
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "quotient H0(W)/m^{}: basis [{}], target [{}], kappa-hat {}\n",
            self.k,
            self.basis.join(", "),
            self.target.join(", "),
            if self.invertible { "invertible" } else { "NOT invertible" }
        ));
        for d in &self.dead {
            out.push_str(&format!("  {} == 0 in the quotient\n", d));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {}\n", n));
        }
        out
    }
}

type Row = Vec<NovikovScalar>;

/// Reduce `row` against the pivoted rows in `rref` (pivot column list in
/// `pivots`). Returns the reduced row.
fn reduce_row(row: &mut Row, rref: &[Row], pivots: &[usize], cutoff: &crate::scalar::EnergyCutoff) {
    for (r, &p) in rref.iter().zip(pivots.iter()) {
        if row[p].is_zero() {
            continue;
        }
        let factor = row[p].clone();
        for (dst, src) in row.iter_mut().zip(r.iter()) {
            *dst = dst.sub(&src.mul(&factor, cutoff));
        }
    }
}

/// Insert a row into row-echelon form; returns false if it reduced to 0.
fn echelon_insert(
    row: Row,
    rref: &mut Vec<Row>,
    pivots: &mut Vec<usize>,
    cutoff: &crate::scalar::EnergyCutoff,
) -> Result<bool, String> {
    let mut row = row;
    reduce_row(&mut row, rref, pivots, cutoff);
    let pivot = match row.iter().position(|c| !c.is_zero()) {
        Some(p) => p,
        None => return Ok(false),
    };
    let inv = row[pivot].invert(cutoff)?;
    for c in row.iter_mut() {
        *c = c.mul(&inv, cutoff);
    }
    // back-substitute into existing rows
    for r in rref.iter_mut() {
        if !r[pivot].is_zero() {
            let factor = r[pivot].clone();
            for (dst, src) in r.iter_mut().zip(row.iter()) {
                *dst = dst.sub(&src.mul(&factor, cutoff));
            }
        }
    }
    rref.push(row);
    pivots.push(pivot);
    Ok(true)
}

/// All index words over `m` symbols of the given length, lexicographic.
fn index_words(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &acc {
            for i in 0..m {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        acc = next;
    }
    acc
}

fn combo_row(pd: &PairData, combo: &WCombo) -> Row {
    let mut row = vec![NovikovScalar::zero(); pd.w.generators.len()];
    for (g, c) in combo {
        row[g.idx()] = row[g.idx()].add(c);
    }
    row
}

/// Irreducible composable words of length < k over the presentation
/// variables.
fn target_words(p: &MCPresentation, vocab: &Vocab, k: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 1..k {
        let mut next = Vec::new();
        for w in &layer {
            for &v in &p.variables {
                if let Some(t) = w.target(vocab) {
                    if t != vocab.letter(v).source {
                        continue;
                    }
                }
                let mut ls = w.0.clone();
                ls.push(v);
                let cand = Word(ls);
                let reducible = p.rules.iter().any(|r| {
                    let l = r.lhs.len();
                    l <= cand.len()
                        && (0..=cand.len() - l).any(|pos| cand.0[pos..pos + l] == r.lhs.0[..])
                });
                if !reducible {
                    next.push(cand);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// Compute H⁰(W)/𝔪ᵏ with the induced κ̂ matrix and its inverse.
pub fn madic_quotient(
    pd: &PairData,
    p: &MCPresentation,
    k: usize,
) -> Result<MadicQuotient, String> {
    if k < 1 {
        return Err("k must be at least 1".to_string());
    }
    if pd.m_gens.is_empty() {
        return Err("dataset declares no m-ideal generators".to_string());
    }
    let kill = pd.check_m_gens();
    if !kill.passed() {
        return Err(format!("declared m-generators are not in ker eps:\n{}", kill.render()));
    }
    let cutoff = &pd.w.cutoff.clone();
    let gens: Vec<&WCombo> = pd.m_gens.iter().map(|(_, c)| c).collect();
    let labels: Vec<&str> = pd.m_gens.iter().map(|(l, _)| l.as_str()).collect();
    let unit_combo: WCombo = pd
        .w
        .units()
        .iter()
        .map(|&u| (u, NovikovScalar::one()))
        .collect();

    let combo_of_word = |w: &[usize]| -> WCombo {
        let mut acc = unit_combo.clone();
        for &i in w {
            acc = pd.w_mul(&acc, gens[i]);
        }
        acc
    };
    let label_of_word = |w: &[usize]| -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&i| labels[i].to_string()).collect::<Vec<_>>().join("*")
        }
    };

    // span of m^k: length-k products of the declared generators
    let mut rref: Vec<Row> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for w in index_words(gens.len(), k) {
        let combo = combo_of_word(&w);
        echelon_insert(combo_row(pd, &combo), &mut rref, &mut pivots, cutoff)?;
    }

    // candidate monomials of length < k, reduced against m^k and against
    // the candidates already kept
    let mut kept: Vec<(String, WCombo)> = Vec::new();
    let mut dead: Vec<String> = Vec::new();
    let mut cand_rref = rref.clone();
    let mut cand_pivots = pivots.clone();
    for len in 0..k {
        for w in index_words(gens.len(), len) {
            let combo = combo_of_word(&w);
            let survived =
                echelon_insert(combo_row(pd, &combo), &mut cand_rref, &mut cand_pivots, cutoff)?;
            if survived {
                kept.push((label_of_word(&w), combo));
            } else {
                dead.push(label_of_word(&w));
            }
        }
    }

    // κ̂ of the kept candidates, in normal-form word coordinates
    let targets = target_words(p, &pd.vocab, k);
    let target_names: Vec<String> = targets.iter().map(|w| w.render(&pd.vocab)).collect();
    let mut matrix: Vec<Row> = Vec::new();
    for (_, combo) in &kept {
        let image = pd.kappa_combo(combo)?;
        let image = normal_form(&image, p, &pd.vocab)?;
        let mut row = vec![NovikovScalar::zero(); targets.len()];
        for (w, c) in &image.terms {
            if w.len() >= k {
                continue; // κ̂ lives in the length-< k quotient
            }
            let j = targets
                .iter()
                .position(|t| t == w)
                .ok_or_else(|| format!("κ image word {} is not in normal form", w.render(&pd.vocab)))?;
            let comp = match w.source(&pd.vocab) {
                Some(s) => c.component(s).clone(),
                None => {
                    // constants: all components agree on our single-point quotients
                    c.component(0).clone()
                }
            };
            row[j] = comp;
        }
        matrix.push(row);
    }

    // bijectivity: square and full rank, checked by Gauss-Jordan with the
    // identity carried along
    let n = targets.len();
    let mut invertible = kept.len() == n;
    let mut notes = Vec::new();
    let mut inverse = None;
    if kept.len() != n {
        notes.push(format!(
            "candidate basis has {} elements but the target has {}: the declared m-presentation {} generate",
            kept.len(),
            n,
            if kept.len() < n { "does not" } else { "over-" }
        ));
    }
    if invertible {
        // augmented elimination on Mᵀ? Rows are κ̂(basis_i); we solve for
        // the inverse directly: N with N·M = I.
        let mut aug: Vec<(Row, Row)> = matrix
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut e = vec![NovikovScalar::zero(); n];
                e[i] = NovikovScalar::one();
                (r.clone(), e)
            })
            .collect();
        let mut rank = 0usize;
        for col in 0..n {
            let pivot_row = (rank..n).find(|&r| !aug[r].0[col].is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => continue,
            };
            aug.swap(rank, pr);
            let inv = aug[rank].0[col].invert(cutoff)?;
            for c in aug[rank].0.iter_mut() {
                *c = c.mul(&inv, cutoff);
            }
            for c in aug[rank].1.iter_mut() {
                *c = c.mul(&inv, cutoff);
            }
            for r in 0..n {
                if r != rank && !aug[r].0[col].is_zero() {
                    let f = aug[r].0[col].clone();
                    for j in 0..n {
                        let d = aug[rank].0[j].mul(&f, cutoff);
                        aug[r].0[j] = aug[r].0[j].sub(&d);
                        let d = aug[rank].1[j].mul(&f, cutoff);
                        aug[r].1[j] = aug[r].1[j].sub(&d);
                    }
                }
            }
            rank += 1;
        }
        if rank < n {
            invertible = false;
            notes.push(format!("kappa-hat matrix has rank {} < {}", rank, n));
        } else {
            // rows of `aug` now hold I | M⁻¹ᵀ-ish; recover N with
            // N[j][i] = coefficient of basis i in the preimage of target j.
            // After full Gauss-Jordan the permutation is identity, and
            // aug[r].1 solves eᵣᵀ·M⁻¹.
            // We want columns: preimage of target j = Σ_i N[j][i]·basis_i
            // with Σ_i N[j][i]·M[i][t] = δ_{jt}; aug gives rows of M⁻¹
            // in the order pivots were taken (identity here).
            let mut nmat = vec![vec![NovikovScalar::zero(); n]; n];
            for (r, (lead, tail)) in aug.iter().enumerate() {
                // lead is e_r after reduction; r-th row of M⁻¹ is tail
                debug_assert!(lead.iter().enumerate().all(|(j, c)| {
                    if j == r { c.is_one() } else { c.is_zero() }
                }));
                for (i, c) in tail.iter().enumerate() {
                    nmat[r][i] = c.clone();
                }
            }
            inverse = Some(nmat);
        }
    }

    Ok(MadicQuotient {
        k,
        basis: kept.into_iter().map(|(l, _)| l).collect(),
        dead,
        target: target_names,
        matrix,
        invertible,
        inverse,
        notes,
    })
}
