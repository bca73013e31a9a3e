//! The torus fiber Tⁿ in (ℂ^×)ⁿ: no nonconstant disks, so the structure
//! is the exterior algebra on dθ₁,…,dθₙ with the cup product, carried
//! across the dg → A∞ sign bridge m₂(X,Y) = (−1)^{|X|} X∧Y.

use crate::ainf::{AInfStructure, AugSpec, Generator};
use crate::scalar::{EnergyCutoff, NovikovScalar};

/// Sign of the shuffle sorting `a ++ b` (both strictly increasing);
/// zero overlap is the caller's responsibility.
fn shuffle_sign(a: &[usize], b: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x > y {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn subset_name(s: &[usize]) -> String {
    let digits: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("dth{}", digits.join(""))
}

fn dual_name(s: &[usize]) -> String {
    let digits: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("x{}", digits.join(""))
}

/// Exterior algebra on n degree-1 generators; m₂ is the signed wedge,
/// everything else vanishes. The degree-1 generators carry the divisor
/// flag (torus insertions have the 1/k! pattern).
pub fn build_torus(n: usize, cutoff: EnergyCutoff) -> Result<AInfStructure, String> {
    if n < 1 {
        return Err("torus dimension must be at least 1".to_string());
    }
    if n > 6 {
        return Err("torus dimension capped at 6".to_string());
    }
    let mut s = AInfStructure::new(1, cutoff);
    s.add_generator(Generator::unit("one", 0))?;
    // subsets in (size, lexicographic) order so duals of degree-1 come first
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        subsets.push(subset);
    }
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    for subset in &subsets {
        let mut g = Generator::new(&subset_name(subset), subset.len() as i64, 0, 0)
            .with_dual(&dual_name(subset));
        if subset.len() == 1 {
            g = g.divisor();
        }
        s.add_generator(g)?;
    }
    for a in &subsets {
        for b in &subsets {
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            let mut union: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
            union.sort();
            let bridge = if a.len() % 2 == 0 { 1 } else { -1 };
            let coeff = NovikovScalar::from_int(bridge * shuffle_sign(a, b));
            let ida = s.lookup(&subset_name(a))?;
            let idb = s.lookup(&subset_name(b))?;
            let idu = s.lookup(&subset_name(&union))?;
            s.insert(vec![ida, idb], vec![(idu, coeff)])?;
        }
    }
    s.insert_unit_rows()?;
    s.augmentation = Some(AugSpec::UnitProjection);
    Ok(s)
}
