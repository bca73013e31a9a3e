//! Axiom verification: A∞ relations, filtration and unit axioms, and
//! strictness of the designated augmentation.
//!
//! Violations are report entries, not errors. Reports are sorted
//! canonically so their text is independent of evaluation order (the
//! relation check fans out over tuples with rayon).

use rayon::prelude::*;

use crate::scalar::{NovikovScalar, Val};

use super::{lincomb_add, AInfStructure, AugSpec, GenId, LinComb};

/// One failed check, rendered in terms of generator names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Violation {
    pub subject: String,
    pub detail: String,
}

/// Outcome of a verification pass; empty means pass.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct Report {
    pub check: String,
    pub violations: Vec<Violation>,
    /// Number of tuples / entries examined.
    pub examined: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.passed() {
            out.push_str(&format!("{}: pass ({} checked)\n", self.check, self.examined));
        } else {
            out.push_str(&format!(
                "{}: FAIL ({} violations / {} checked)\n",
                self.check,
                self.violations.len(),
                self.examined
            ));
            for v in &self.violations {
                out.push_str(&format!("  {} : {}\n", v.subject, v.detail));
            }
        }
        out
    }
}

fn composable_tuples(s: &AInfStructure, pool: &[GenId], len: usize) -> Vec<Vec<GenId>> {
    let mut acc: Vec<Vec<GenId>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &acc {
            for &g in pool {
                if t.last().map_or(true, |&last| s.gen(last).target == s.gen(g).source) {
                    let mut t2 = t.clone();
                    t2.push(g);
                    next.push(t2);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Residual of the A∞ relation on one basis tuple:
/// Σ (−1)^{|X₁|′+⋯+|Xᵢ|′} m_{k₁}(X₁,…,Xᵢ, m_{k₂}(X_{i+1},…,X_{i+k₂}), …).
pub(crate) fn ainf_residual(s: &AInfStructure, tuple: &[GenId], maxk: usize) -> LinComb {
    let n = tuple.len();
    let mut residual = LinComb::new();
    for k2 in 1..=n.min(maxk) {
        let k1 = n - k2 + 1;
        if k1 > maxk {
            continue;
        }
        for i in 0..=(n - k2) {
            let sign_exp: i64 = tuple[..i].iter().map(|&g| s.gen(g).shifted_degree()).sum();
            let sign = if sign_exp.rem_euclid(2) == 0 { 1 } else { -1 };
            let inner = s.m(&tuple[i..i + k2]);
            if inner.is_empty() {
                continue;
            }
            for (y, c) in inner {
                let mut outer: Vec<GenId> = Vec::with_capacity(k1);
                outer.extend_from_slice(&tuple[..i]);
                outer.push(*y);
                outer.extend_from_slice(&tuple[i + k2..]);
                let coeff = c.scale(&crate::scalar::Coeff::integer(sign));
                for (z, cz) in s.m_lincomb(&outer, &coeff) {
                    lincomb_add(&mut residual, z, cz);
                }
            }
        }
    }
    residual
}

/// Evaluate the A∞ relation on every composable tuple from the pool
/// (`subset`, or the structure's core basis) up to length `maxlen`,
/// with both inner and outer arities capped at `maxk`.
pub fn verify_ainf(
    s: &AInfStructure,
    maxk: usize,
    maxlen: usize,
    subset: Option<&[GenId]>,
) -> Report {
    let pool: Vec<GenId> = match subset {
        Some(ids) => ids.to_vec(),
        None => s.core_basis(),
    };
    let mut violations: Vec<Violation> = Vec::new();
    let mut examined = 0usize;
    for len in 1..=maxlen {
        let tuples = composable_tuples(s, &pool, len);
        examined += tuples.len();
        let mut found: Vec<Violation> = tuples
            .par_iter()
            .filter_map(|t| {
                let r = ainf_residual(s, t, maxk);
                if r.is_empty() {
                    None
                } else {
                    Some(Violation {
                        subject: s.render_tuple(t),
                        detail: format!("residual = {}", s.render_lincomb(&r)),
                    })
                }
            })
            .collect();
        found.sort();
        violations.extend(found);
    }
    Report { check: format!("A-infinity relations (k<={}, tuples<={})", maxk, maxlen), violations, examined }
}

/// Per-entry filtration and degree bookkeeping plus the unit axioms.
pub fn verify_filtered_unital(s: &AInfStructure) -> Report {
    let mut violations = Vec::new();
    let mut examined = 0usize;
    for (tuple, outputs) in s.table() {
        examined += 1;
        let k = tuple.len();
        if !s.composable(tuple) {
            violations.push(Violation {
                subject: s.render_tuple(tuple),
                detail: "inputs do not compose".into(),
            });
            continue;
        }
        let deg_in: i64 = tuple.iter().map(|&i| s.gen(i).degree).sum();
        let val_in = tuple
            .iter()
            .map(|&i| s.gen(i).valuation.clone())
            .fold(num::BigRational::from_integer(0.into()), |a, b| a + b);
        for (y, c) in outputs {
            let gy = s.gen(*y);
            if gy.degree != deg_in + 2 - k as i64 {
                violations.push(Violation {
                    subject: s.render_tuple(tuple),
                    detail: format!("output `{}` has degree {}, want {}", gy.name, gy.degree, deg_in + 2 - k as i64),
                });
            }
            if let Val::Finite(v) = c.val() {
                if v + &gy.valuation < val_in {
                    violations.push(Violation {
                        subject: s.render_tuple(tuple),
                        detail: format!(
                            "filtration violated: val({}) + nu({}) < {}",
                            c, gy.name, val_in
                        ),
                    });
                }
            }
        }
        // units may only appear in the two m₂ rows
        let has_unit = tuple.iter().any(|&i| s.gen(i).is_unit);
        if has_unit && k != 2 {
            violations.push(Violation {
                subject: s.render_tuple(tuple),
                detail: "m_k with a unit argument must vanish for k != 2".into(),
            });
        }
    }
    // m₂(e,X) = X and m₂(X,e) = (−1)^{|X|} X wherever composable
    for u in s.units() {
        let comp = s.gen(u).source;
        for x in s.ids() {
            let gx = s.gen(x);
            if gx.source == comp {
                examined += 1;
                let got = s.m(&[u, x]);
                if got != [(x, NovikovScalar::one())] {
                    violations.push(Violation {
                        subject: format!("m2({},{})", s.gen(u).name, gx.name),
                        detail: format!("unit axiom wants 1*{}", gx.name),
                    });
                }
            }
            if gx.target == comp {
                examined += 1;
                let sign = if gx.degree % 2 == 0 { 1 } else { -1 };
                let got = s.m(&[x, u]);
                if got != [(x, NovikovScalar::from_int(sign))] {
                    violations.push(Violation {
                        subject: format!("m2({},{})", gx.name, s.gen(u).name),
                        detail: format!("unit axiom wants ({})*{}", sign, gx.name),
                    });
                }
            }
        }
    }
    violations.sort();
    violations.dedup();
    Report { check: "filtered + unital axioms".into(), violations, examined }
}

/// Strictness of the augmentation: ε∘m₁ = 0, ε(m₂(a,b)) = ε(a)·ε(b),
/// ε vanishes outside degree 0, and ε∘m_k = 0 for k ≥ 3. Together these
/// say ε is a strict A∞-map, i.e. ker ε is closed under every m_k.
pub fn check_strict_augmentation(s: &AInfStructure, subset: Option<&[GenId]>) -> Report {
    let mut violations = Vec::new();
    let mut examined = 0usize;
    let aug = match &s.augmentation {
        Some(a) => a.clone(),
        None => {
            return Report {
                check: "strict augmentation".into(),
                violations: vec![Violation {
                    subject: "augmentation".into(),
                    detail: "no augmentation designated".into(),
                }],
                examined: 0,
            }
        }
    };
    if let AugSpec::Explicit(map) = &aug {
        for (id, v) in map {
            if s.gen(*id).degree != 0 && !v.is_zero() {
                violations.push(Violation {
                    subject: format!("eps({})", s.gen(*id).name),
                    detail: "augmentation must vanish on nonzero degrees".into(),
                });
            }
        }
    }
    let eps = |id: GenId| s.eps_value(&aug, id);
    let eps_of = |lc: &[(GenId, NovikovScalar)]| {
        let mut acc = NovikovScalar::zero();
        for (y, c) in lc {
            acc = acc.add(&c.mul_exact(&eps(*y)));
        }
        acc
    };
    // ε of every table entry, against the multiplicative rule
    for (tuple, outputs) in s.table() {
        examined += 1;
        let lhs = eps_of(outputs);
        let rhs = if tuple.len() == 2 {
            eps(tuple[0]).mul_exact(&eps(tuple[1]))
        } else {
            NovikovScalar::zero()
        };
        if lhs != rhs {
            violations.push(Violation {
                subject: format!("eps({})", s.render_tuple(tuple)),
                detail: format!("got {}, want {}", lhs, rhs),
            });
        }
    }
    // composable pairs with no table entry: m₂ = 0, so ε(a)·ε(b) must vanish
    let pool: Vec<GenId> = match subset {
        Some(ids) => ids.to_vec(),
        None => s.core_basis(),
    };
    for &a in &pool {
        for &b in &pool {
            if s.gen(a).target != s.gen(b).source || !s.m(&[a, b]).is_empty() {
                continue;
            }
            examined += 1;
            let rhs = eps(a).mul_exact(&eps(b));
            if !rhs.is_zero() {
                violations.push(Violation {
                    subject: format!("eps(m2({},{}))", s.gen(a).name, s.gen(b).name),
                    detail: format!("got 0, want {}", rhs),
                });
            }
        }
    }
    violations.sort();
    violations.dedup();
    Report { check: "strict augmentation".into(), violations, examined }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::Generator;
    use crate::scalar::{rat_int, EnergyCutoff};

    fn nodal_sphere() -> AInfStructure {
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        s.add_generator(Generator::unit("one", 0)).unwrap();
        let u = s.add_generator(Generator::new("U", 1, 0, 0)).unwrap();
        let v = s.add_generator(Generator::new("V", 1, 0, 0)).unwrap();
        let h = s.add_generator(Generator::new("H", 2, 0, 0)).unwrap();
        s.insert(vec![u, v], vec![(h, NovikovScalar::from_int(-1))]).unwrap();
        s.insert(vec![v, u], vec![(h, NovikovScalar::one())]).unwrap();
        s.insert_unit_rows().unwrap();
        s.augmentation = Some(AugSpec::UnitProjection);
        s
    }

    #[test]
    fn relations_pass_on_nodal_sphere() {
        let s = nodal_sphere();
        let report = verify_ainf(&s, 4, 4, None);
        assert!(report.passed(), "{}", report.render());
        assert!(verify_filtered_unital(&s).passed());
        assert!(check_strict_augmentation(&s, None).passed());
    }

    #[test]
    fn injected_m1_square_failure_is_named() {
        let mut s = nodal_sphere();
        let u = s.lookup("U").unwrap();
        let h = s.lookup("H").unwrap();
        // m1(U) = H and a degree-unlawful m1(H) = U give m1(m1(U)) = U != 0
        s.insert_unchecked(vec![u], vec![(h, NovikovScalar::one())]);
        s.insert_unchecked(vec![h], vec![(u, NovikovScalar::one())]);
        let report = verify_ainf(&s, 4, 3, None);
        assert!(!report.passed());
        assert!(
            report.violations.iter().any(|v| v.subject == "m1(U)"),
            "violating tuple should be named: {}",
            report.render()
        );
    }

    #[test]
    fn filtration_violation_reported() {
        let mut s = nodal_sphere();
        let u = s.lookup("U").unwrap();
        let v = s.lookup("V").unwrap();
        let h = s.lookup("H").unwrap();
        s.insert_unchecked(vec![u, v], vec![(h, NovikovScalar::t_power(rat_int(-1)))]);
        let report = verify_filtered_unital(&s);
        assert!(report.violations.iter().any(|v| v.detail.contains("filtration")));
    }

    #[test]
    fn unit_violation_reported() {
        let mut s = nodal_sphere();
        let one = s.lookup("one").unwrap();
        let u = s.lookup("U").unwrap();
        let v = s.lookup("V").unwrap();
        let h = s.lookup("H").unwrap();
        s.insert_unchecked(vec![one, u, v], vec![(h, NovikovScalar::one())]);
        let report = verify_filtered_unital(&s);
        assert!(report
            .violations
            .iter()
            .any(|v| v.detail.contains("unit argument")));
    }

    #[test]
    fn augmentation_multiplicativity_violation() {
        // ε(Z1)=2, ε(Z2)=3 with m2(Z1,Z1)=Z2: 2·2 ≠ 3
        let mut s = AInfStructure::new(1, EnergyCutoff::default_window());
        s.add_generator(Generator::unit("one", 0)).unwrap();
        let z1 = s.add_generator(Generator::new("Z1", 0, 0, 0)).unwrap();
        let z2 = s.add_generator(Generator::new("Z2", 0, 0, 0)).unwrap();
        s.insert(vec![z1, z1], vec![(z2, NovikovScalar::one())]).unwrap();
        s.insert_unit_rows().unwrap();
        let mut map = std::collections::BTreeMap::new();
        map.insert(z1, NovikovScalar::from_int(2));
        map.insert(z2, NovikovScalar::from_int(3));
        s.augmentation = Some(AugSpec::Explicit(map));
        let report = check_strict_augmentation(&s, None);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.subject.contains("m2(Z1,Z1)")));
    }
}
