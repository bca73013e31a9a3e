//! The pair of pants: wrapped algebra 𝕜[𝐔,𝐕]/⟨𝐔𝐕⟩ of the noncompact arc
//! G₁, paired with either the Seidel immersed circle L₀ (three degree-1
//! generators X, Y, Z, commutator relations plus the potential term
//! x̃ỹz̃ caught by the auxiliary degree-2 class E) or an embedded circle L
//! in one leg (κ(𝐔) = e^x, κ(𝐕) = 0, ker ε = ⟨𝐔−1, 𝐕⟩).

use num::{BigRational, Zero};

use crate::ainf::{AInfStructure, AugSpec, GenId, Generator};
use crate::barcobar::DualSeries;
use crate::koszul::{Correction, PairData};
use crate::scalar::{EnergyCutoff, NovikovScalar};

fn u_name(i: i64) -> String {
    format!("U({})", i)
}

fn v_name(i: i64) -> String {
    format!("V({})", i)
}

/// 𝕜[𝐔,𝐕]/⟨𝐔𝐕⟩ truncated to exponents 1..=window (plus the unit).
pub(crate) fn pop_w(window: i64, cutoff: EnergyCutoff) -> Result<AInfStructure, String> {
    let mut w = AInfStructure::new(1, cutoff);
    let one = w.add_generator(Generator::unit("one", 0))?;
    let mut us = vec![one];
    let mut vs = vec![one];
    for i in 1..=window {
        us.push(w.add_generator(Generator::new(&u_name(i), 0, 0, 0).with_dual(&format!("uu{}", i)))?);
        vs.push(w.add_generator(Generator::new(&v_name(i), 0, 0, 0).with_dual(&format!("vv{}", i)))?);
    }
    for i in 1..=window as usize {
        for j in 1..=window as usize {
            if i + j <= window as usize {
                w.insert(vec![us[i], us[j]], vec![(us[i + j], NovikovScalar::one())])?;
                w.insert(vec![vs[i], vs[j]], vec![(vs[i + j], NovikovScalar::one())])?;
            }
            // m₂(Uᵢ, Vⱼ) = 0: the mixed products vanish identically
        }
    }
    w.insert_unit_rows()?;
    let bound = (window / 3).max(1);
    let mut core = vec![one];
    core.extend(us[1..=bound as usize].iter().copied());
    core.extend(vs[1..=bound as usize].iter().copied());
    w.core = Some(core);
    Ok(w)
}

/// The Seidel-Lagrangian algebra with actions (𝒜X, 𝒜Y, 𝒜Z), Σ𝒜 ≤ 0.
/// The degree-2 classes X', Y', Z' carry the opposite actions of their
/// complementary degree-1 partners; E is the potential catcher.
pub(crate) fn seidel_v(
    ax: &BigRational,
    ay: &BigRational,
    az: &BigRational,
    cutoff: EnergyCutoff,
) -> Result<AInfStructure, String> {
    if ax + ay + az > BigRational::zero() {
        return Err("Seidel actions must satisfy A(X)+A(Y)+A(Z) <= 0".to_string());
    }
    let mut v = AInfStructure::new(1, cutoff);
    v.add_generator(Generator::unit("one", 0))?;
    let x = v.add_generator(
        Generator::new("X", 1, 0, 0).with_valuation(ax.clone()).with_action(ax.clone()),
    )?;
    let y = v.add_generator(
        Generator::new("Y", 1, 0, 0).with_valuation(ay.clone()).with_action(ay.clone()),
    )?;
    let z = v.add_generator(
        Generator::new("Z", 1, 0, 0).with_valuation(az.clone()).with_action(az.clone()),
    )?;
    let xp = v.add_generator(
        Generator::new("Xp", 2, 0, 0).with_dual("xp").with_valuation(-ax.clone()).with_action(-ax.clone()),
    )?;
    let yp = v.add_generator(
        Generator::new("Yp", 2, 0, 0).with_dual("yp").with_valuation(-ay.clone()).with_action(-ay.clone()),
    )?;
    let zp = v.add_generator(
        Generator::new("Zp", 2, 0, 0).with_dual("zp").with_valuation(-az.clone()).with_action(-az.clone()),
    )?;
    let e = v.add_generator(Generator::new("E", 2, 0, 0).with_dual("e").potential())?;
    let one_s = NovikovScalar::one;
    let neg = || NovikovScalar::from_int(-1);
    // coefficient of X̃' in m(e^b) is ỹz̃ − z̃ỹ, cyclically
    v.insert(vec![z, y], vec![(xp, one_s())])?;
    v.insert(vec![y, z], vec![(xp, neg())])?;
    v.insert(vec![x, z], vec![(yp, one_s())])?;
    v.insert(vec![z, x], vec![(yp, neg())])?;
    v.insert(vec![y, x], vec![(zp, one_s())])?;
    v.insert(vec![x, y], vec![(zp, neg())])?;
    // the potential word x̃ỹz̃
    v.insert(vec![z, y, x], vec![(e, one_s())])?;
    v.insert_unit_rows()?;
    v.augmentation = Some(AugSpec::UnitProjection);
    Ok(v)
}

/// The (G₁, L₀) pair with the Seidel Lagrangian: κ(𝐔ᵢ) = x̃ⁱ, κ(𝐕ⱼ) = ỹʲ,
/// with correction data r_PQ = z̃, r_QP = x̃ỹ from the extra degree-1
/// intersection point Q.
pub fn build_pair_of_pants(
    ax: BigRational,
    ay: BigRational,
    az: BigRational,
    window: i64,
    cutoff: EnergyCutoff,
) -> Result<PairData, String> {
    let w = pop_w(window, cutoff.clone())?;
    let v = seidel_v(&ax, &ay, &az, cutoff.clone())?;
    let mut pd = PairData::new("pop", w, v)?;
    let gx = pd.v.lookup("X")?;
    let gy = pd.v.lookup("Y")?;
    let gz = pd.v.lookup("Z")?;
    for i in 1..=window {
        if !cutoff.keeps_len(i as usize) {
            continue;
        }
        let ui = pd.w.lookup(&u_name(i))?;
        pd.insert_module(vec![ui], vec![gx; i as usize], NovikovScalar::one(), i > 1)?;
        let vi = pd.w.lookup(&v_name(i))?;
        pd.insert_module(vec![vi], vec![gy; i as usize], NovikovScalar::one(), i > 1)?;
    }
    let one = pd.w.lookup("one")?;
    pd.insert_module(vec![one], vec![], NovikovScalar::one(), false)?;
    let lz = pd.vocab.by_name("z")?;
    let lx = pd.vocab.by_name("x")?;
    let ly = pd.vocab.by_name("y")?;
    pd.correction = Some(Correction {
        q_name: "Q".to_string(),
        r_pq: DualSeries::letter(&pd.vocab, lz, cutoff.clone()),
        r_qp: DualSeries::monomial(
            &pd.vocab,
            crate::barcobar::Word(vec![lx, ly]),
            NovikovScalar::one(),
            cutoff.clone(),
        ),
    });
    let u1 = pd.w.lookup(&u_name(1))?;
    let v1 = pd.w.lookup(&v_name(1))?;
    pd.m_gens.push((u_name(1), vec![(u1, NovikovScalar::one())]));
    pd.m_gens.push((v_name(1), vec![(v1, NovikovScalar::one())]));
    pd.chart_gens = vec![u1, v1];
    Ok(pd)
}

/// The (G₁, L) pair with an embedded exact circle in the 𝐔-leg:
/// κ(𝐔ᵢ) = e^{ix}, κ(𝐕ⱼ) = 0, ker ε = ⟨𝐔−1, 𝐕⟩.
pub fn build_pop_circle(window: i64, cutoff: EnergyCutoff) -> Result<PairData, String> {
    let w = pop_w(window, cutoff.clone())?;
    let v = super::cotangent::circle_v(cutoff.clone())?;
    let mut pd = PairData::new("pop-circle", w, v)?;
    let dt = pd.v.lookup("dt")?;
    let one = pd.w.lookup("one")?;
    pd.insert_module(vec![one], vec![], NovikovScalar::one(), false)?;
    for i in 1..=window {
        let ui = pd.w.lookup(&u_name(i))?;
        for k in 0..cutoff.max_len {
            let mut pow = BigRational::from_integer(1.into());
            for _ in 0..k {
                pow *= BigRational::from_integer(i.into());
            }
            let c = NovikovScalar::from_rat(pow)
                .mul_exact(&NovikovScalar::factorial(k).invert(&cutoff)?);
            pd.insert_module(vec![ui], vec![dt; k], c, k > 1)?;
        }
        // κ(Vⱼ) = 0: no module entries at all
    }
    let u1 = pd.w.lookup(&u_name(1))?;
    let v1 = pd.w.lookup(&v_name(1))?;
    pd.m_gens.push((
        "U(1)-1".to_string(),
        vec![(one, NovikovScalar::from_int(-1)), (u1, NovikovScalar::one())],
    ));
    pd.m_gens.push((v_name(1), vec![(v1, NovikovScalar::one())]));
    pd.chart_gens = vec![u1];
    Ok(pd)
}
