//! The cotangent bundle T*S¹ with fiber G and the circle fiber L_r at
//! level r: W = Λ[𝐙,𝐙⁻¹] truncated to an index window with
//! m₂(Zᵢ,Zⱼ) = Z_{i+j}, V = H*(S¹), and the bimodule pattern
//! m_{k+2}(Zᵢ, P, dt,…,dt) = (iᵏ/k!)·T^{−ri}, so ε(Zᵢ) = T^{−ri} and
//! κ(Zᵢ) = T^{−ri}·e^{ix}.

use num::{BigRational, Zero};

use crate::ainf::{AInfStructure, AugSpec, GenId, Generator};
use crate::koszul::PairData;
use crate::scalar::{EnergyCutoff, NovikovScalar};

fn z_name(i: i64) -> String {
    format!("Z({})", i)
}

/// W on the window |i| <= w, with the core restricted so products of core
/// tuples stay inside the table.
pub(crate) fn cotangent_w(window: i64, core_div: i64, cutoff: EnergyCutoff) -> Result<AInfStructure, String> {
    let mut w = AInfStructure::new(1, cutoff);
    let mut ids: std::collections::BTreeMap<i64, GenId> = Default::default();
    for i in -window..=window {
        let id = if i == 0 {
            w.add_generator(Generator::unit("one", 0).with_dual("z0"))?
        } else {
            w.add_generator(Generator::new(&z_name(i), 0, 0, 0).with_dual(&format!("z{}", i)))?
        };
        ids.insert(i, id);
    }
    for i in -window..=window {
        for j in -window..=window {
            if i == 0 || j == 0 {
                continue; // unit rows below
            }
            if let Some(&out) = ids.get(&(i + j)) {
                w.insert(vec![ids[&i], ids[&j]], vec![(out, NovikovScalar::one())])?;
            }
        }
    }
    w.insert_unit_rows()?;
    let core_bound = window / core_div.max(1);
    w.core = Some(
        (-core_bound..=core_bound)
            .map(|i| ids[&i])
            .collect(),
    );
    Ok(w)
}

/// H*(S¹): unit and the divisor class dt.
pub(crate) fn circle_v(cutoff: EnergyCutoff) -> Result<AInfStructure, String> {
    let mut v = AInfStructure::new(1, cutoff);
    v.add_generator(Generator::unit("one", 0))?;
    v.add_generator(Generator::new("dt", 1, 0, 0).with_dual("x").divisor())?;
    v.insert_unit_rows()?;
    v.augmentation = Some(AugSpec::UnitProjection);
    Ok(v)
}

/// The (G, L_r) pair at fiber level r, index window |i| <= window.
pub fn build_cotangent_circle(
    r: BigRational,
    window: i64,
    cutoff: EnergyCutoff,
) -> Result<PairData, String> {
    if window < 1 {
        return Err("index window must contain Z(1)".to_string());
    }
    let w = cotangent_w(window, 4, cutoff.clone())?;
    let v = circle_v(cutoff.clone())?;
    let mut pd = PairData::new("ts1", w, v)?;
    let dt = pd.v.lookup("dt")?;
    for i in -window..=window {
        let z = if i == 0 { pd.w.lookup("one")? } else { pd.w.lookup(&z_name(i))? };
        if i == 0 {
            // unit acts through m₂ only
            pd.insert_module(vec![z], vec![], NovikovScalar::one(), false)?;
            continue;
        }
        // m_{k+2}(Zᵢ, P, dt^k) = T^{-ri}·iᵏ/k!: the k = 0,1 entries realize
        // the stated augmentation and divisor pattern; higher insertions
        // complete the exponential and are marked synthetic.
        let eps = NovikovScalar::t_power(-(&r * BigRational::from_integer(i.into())));
        for k in 0..cutoff.max_len {
            let mut c = eps.clone();
            let ik = BigRational::from_integer(i.into());
            let mut pow = BigRational::from_integer(1.into());
            for _ in 0..k {
                pow *= &ik;
            }
            c = c.mul_exact(&NovikovScalar::from_rat(pow));
            let fact_inv = NovikovScalar::factorial(k).invert(&cutoff)?;
            c = c.mul_exact(&fact_inv);
            pd.insert_module(vec![z], vec![dt; k], c, k > 1)?;
        }
    }
    // ker ε_L is generated by Z(1) − ε(Z(1))·1 inside the window
    let one = pd.w.lookup("one")?;
    let z1 = pd.w.lookup(&z_name(1))?;
    let eps1 = NovikovScalar::t_power(-r.clone());
    pd.m_gens.push((
        "Z(1)-eps".to_string(),
        vec![(one, eps1.neg()), (z1, NovikovScalar::one())],
    ));
    pd.chart_gens.push(z1);
    Ok(pd)
}
