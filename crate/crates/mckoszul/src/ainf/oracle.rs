//! Independent brute-force evaluator of the A∞ relation.
//!
//! This is a from-scratch double-sum expansion working on the raw table,
//! sharing no evaluation code with [`verify_ainf`]: signs are recomputed
//! from unshifted degrees, accumulation uses a plain vector that is
//! combined only at the end, and no LinComb helpers are involved. The
//! `fuzz` subcommand and the acceptance suite compare the two paths on
//! randomized structures.
//!
//! [`verify_ainf`]: super::verify_ainf

use std::collections::BTreeMap;

use crate::scalar::{Coeff, NovikovScalar};

use super::{AInfStructure, GenId};

/// Residual of Σ (−1)^{|X₁|+⋯+|Xᵢ|−i} m_{k₁}(…, m_{k₂}(…), …) on `tuple`,
/// as a generator → coefficient map (empty = relation holds).
pub fn oracle_residual(s: &AInfStructure, tuple: &[GenId]) -> BTreeMap<GenId, NovikovScalar> {
    let n = tuple.len();
    let mut pieces: Vec<(GenId, NovikovScalar)> = Vec::new();
    for i in 0..n {
        for k2 in 1..=(n - i) {
            // parity of |X_1|' + ... + |X_i|' recomputed from raw degrees
            let mut parity = 0i64;
            for &g in &tuple[..i] {
                parity += s.generators[g.idx()].degree - 1;
            }
            let sign = if parity % 2 == 0 { Coeff::integer(1) } else { Coeff::integer(-1) };
            let inner_key: Vec<GenId> = tuple[i..i + k2].to_vec();
            let inner_out = match s.table().get(&inner_key) {
                Some(v) => v,
                None => continue,
            };
            for (mid, c_mid) in inner_out {
                let mut outer_key: Vec<GenId> = Vec::new();
                outer_key.extend_from_slice(&tuple[..i]);
                outer_key.push(*mid);
                outer_key.extend_from_slice(&tuple[i + k2..]);
                let outer_out = match s.table().get(&outer_key) {
                    Some(v) => v,
                    None => continue,
                };
                for (y, c_out) in outer_out {
                    let c = c_mid.mul_exact(c_out).scale(&sign).truncate(&s.cutoff);
                    pieces.push((*y, c));
                }
            }
        }
    }
    let mut acc: BTreeMap<GenId, NovikovScalar> = BTreeMap::new();
    for (y, c) in pieces {
        let slot = acc.entry(y).or_insert_with(NovikovScalar::zero);
        *slot = slot.add(&c);
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{verify::ainf_residual, Generator};
    use crate::scalar::EnergyCutoff;
    use rand::{Rng, SeedableRng};

    /// Random degree-lawful 3-generator structure; usually violates the
    /// A∞ relations, which is the point.
    pub(crate) fn random_structure(seed: u64) -> AInfStructure {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        let degrees = [1i64, rng.gen_range(1..3), rng.gen_range(1..4)];
        for (i, d) in degrees.iter().enumerate() {
            s.add_generator(Generator::new(&format!("G{}", i), *d, 0, 0)).unwrap();
        }
        let ids: Vec<GenId> = s.ids().collect();
        for k in 1..=3usize {
            for _ in 0..rng.gen_range(1..5) {
                let tuple: Vec<GenId> = (0..k).map(|_| ids[rng.gen_range(0..ids.len())]).collect();
                let deg_in: i64 = tuple.iter().map(|&g| s.gen(g).degree).sum();
                let want = deg_in + 2 - k as i64;
                let outs: Vec<(GenId, NovikovScalar)> = ids
                    .iter()
                    .filter(|&&y| s.gen(y).degree == want)
                    .map(|&y| (y, NovikovScalar::from_int(rng.gen_range(-2..3))))
                    .collect();
                if !outs.is_empty() {
                    s.insert(tuple, outs).unwrap();
                }
            }
        }
        s
    }

    #[test]
    fn oracle_agrees_with_verifier_on_random_structures() {
        for seed in 0..40u64 {
            let s = random_structure(seed);
            let ids: Vec<GenId> = s.ids().collect();
            for len in 1..=4usize {
                let mut stack = vec![Vec::new()];
                for _ in 0..len {
                    let mut next = Vec::new();
                    for t in &stack {
                        for &g in &ids {
                            let mut t2: Vec<GenId> = t.clone();
                            t2.push(g);
                            next.push(t2);
                        }
                    }
                    stack = next;
                }
                for t in stack {
                    let a = ainf_residual(&s, &t, 8);
                    let b = oracle_residual(&s, &t);
                    assert_eq!(a, b, "seed {} tuple {:?}", seed, t);
                }
            }
        }
    }
}
