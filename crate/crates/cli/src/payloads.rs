//! JSON payloads for each analysis.

use entropy_decomp::decomposition::{SynergySearch, Witness};
use entropy_decomp::gaussian::{
    gaussian_cmi, gaussian_coinformation, gaussian_joint_mi, gaussian_mi, LatentWeights,
};
use entropy_decomp::maxent::{PmeSynergy, SynergySplit};
use entropy_decomp::measures::{
    conditional_mutual_information, dual_total_correlation, entropy, exclusive_information_sum,
    mutual_information, negentropy, total_correlation,
};
use entropy_decomp::netinfo::{BroadcastCapacities, RateRegion, WiretapCapacities};
use entropy_decomp::{
    EntropySpectrum, GaussianTriple, JointPmf, Layers, Pair, Result, SymmetricDecomposition,
    TripleInfo, Units,
};
use serde_json::{json, Map, Value};

use crate::report::AnalysisReport;

fn pair_key(i: usize, j: usize) -> String {
    format!("{};{}", i + 1, j + 1)
}

fn cond_key(pair: Pair) -> String {
    let (i, j) = pair.vars();
    format!("{};{}|{}", i + 1, j + 1, pair.third() + 1)
}

pub fn discrete_measures(p: &JointPmf, units: Units) -> Result<Value> {
    let n = p.num_vars();
    let all: Vec<usize> = (0..n).collect();
    let marginal: Vec<f64> = (0..n)
        .map(|i| entropy(p, &[i], units))
        .collect::<Result<_>>()?;
    let mut mi = Map::new();
    for i in 0..n {
        for j in i + 1..n {
            mi.insert(pair_key(i, j), mutual_information(p, &[i], &[j], units)?.into());
        }
    }
    let mut out = json!({
        "entropy": {"joint": entropy(p, &all, units)?, "marginal": marginal},
        "mutual_information": mi,
        "total_correlation": total_correlation(p, units)?,
        "dual_total_correlation": dual_total_correlation(p, units)?,
        "exclusive_information": exclusive_information_sum(p, units)?,
        "negentropy": negentropy(p, units)?,
        "units": units.as_str(),
    });
    if n == 3 {
        let mut cmi = Map::new();
        for pair in Pair::ALL {
            let (i, j) = pair.vars();
            cmi.insert(
                cond_key(pair),
                conditional_mutual_information(p, &[i], &[j], &[pair.third()], units)?.into(),
            );
        }
        let info = TripleInfo::from_pmf(p, units)?;
        out["conditional_mutual_information"] = Value::Object(cmi);
        out["co_information"] = info.co_information.into();
    }
    Ok(out)
}

fn witness_text(w: Option<Witness>) -> Value {
    w.map_or(Value::Null, |w| w.describe().into())
}

pub fn decomposition(
    d: &SymmetricDecomposition,
    info: &TripleInfo,
    layers: Option<&Layers>,
    report: &mut AnalysisReport,
) -> Value {
    let mut un = Map::new();
    for pair in Pair::ALL {
        un.insert(pair.label().to_string(), d.un(pair).into());
    }
    let (s_lo, s_hi) = info.synergy_bounds();
    for term in &d.clamped {
        report.warn(format!("negative rounding residue on {term} set to zero"));
    }
    let mut out = json!({
        "red": d.red,
        "un": un,
        "syn": d.syn,
        "unique": d.unique,
        "witness": witness_text(d.witness),
        "point_rule": if d.unique { "closed form" } else { "min-MI" },
        "shared_interval": [d.interval.0, d.interval.1],
        "synergy_interval": [s_lo, s_hi],
        "co_information": info.co_information,
        "units": d.units.as_str(),
    });
    if let Some(l) = layers {
        out["layers"] = json!({
            "H_(1)": l.exclusive,
            "dH_(2)": l.private,
            "dH_(3)": l.triple,
            "H": l.total(),
        });
    }
    out
}

pub fn spectrum(s: &EntropySpectrum, report: &mut AnalysisReport) -> Value {
    for k in &s.clamped {
        report.warn(format!("external increment dH^({k}) was slightly negative and set to zero"));
    }
    for (k, r) in s.residuals.iter().enumerate() {
        if *r > 0.0 {
            report.warn(format!("projection onto {}-marginals has residual {r:e}", k + 1));
        }
    }
    if !s.converged {
        report.warn("at least one maximum-entropy projection did not converge");
    }
    json!({
        "external": s.external,
        "external_increments": s.external_increments,
        "kl_increments": s.kl_increments,
        "internal": s.internal,
        "internal_increments": s.internal_increments,
        "joint_entropy": s.joint_entropy,
        "tc": s.tc,
        "dtc": s.dtc,
        "residuals": s.residuals,
        "converged": s.converged,
        "units": s.units.as_str(),
    })
}

pub fn synergy_split(s: &SynergySplit) -> Value {
    let pme = match s.pme_synergy {
        PmeSynergy::Exact(v) => json!({"value": v}),
        PmeSynergy::Interval(lo, hi) => json!({"interval": [lo, hi]}),
    };
    json!({
        "dH^(3)": s.delta_h3,
        "pme_synergy": pme,
        "synergy": s.synergy,
        "units": s.units.as_str(),
    })
}

pub fn gaussian_input(g: &GaussianTriple) -> Value {
    json!({
        "sigma": g.sigma,
        "corr": {"a": g.alpha, "b": g.beta, "g": g.gamma},
    })
}

pub fn gaussian_measures(g: &GaussianTriple, units: Units) -> Result<Value> {
    let mut mi = Map::new();
    let mut cmi = Map::new();
    for pair in Pair::ALL {
        let (i, j) = pair.vars();
        mi.insert(pair_key(i, j), gaussian_mi(g, pair, units)?.into());
        cmi.insert(cond_key(pair), gaussian_cmi(g, pair, units)?.into());
    }
    let mut joint = Map::new();
    for t in 0..3 {
        let others: Vec<String> = (0..3).filter(|&i| i != t).map(|i| (i + 1).to_string()).collect();
        joint.insert(
            format!("{};{}", t + 1, others.concat()),
            gaussian_joint_mi(g, t, units)?.into(),
        );
    }
    Ok(json!({
        "mutual_information": mi,
        "conditional_mutual_information": cmi,
        "joint_mutual_information": joint,
        "co_information": gaussian_coinformation(g, units)?,
        "correlation_determinant": g.correlation_determinant(),
        "units": units.as_str(),
    }))
}

pub fn latent(w: &LatentWeights, g: &GaussianTriple) -> Value {
    json!({
        "s123": w.s123,
        "s12": w.s12,
        "s13": w.s13,
        "s1": w.s1,
        "s2": w.s2,
        "s3": w.s3,
        "reconstruction_error": w.reconstruction_error(g),
    })
}

pub fn broadcast(c: &BroadcastCapacities, sender: usize, units: Units) -> Value {
    json!({
        "sender": sender + 1,
        "private_receiver": c.receivers.0 + 1,
        "other_receiver": c.receivers.1 + 1,
        "c_pub": c.public,
        "c_priv": c.private,
        "units": units.as_str(),
    })
}

pub fn region(r: &RateRegion) -> Value {
    let constraints: Vec<Value> = r
        .constraints
        .iter()
        .map(|c| {
            json!({
                "coeffs": c.coeffs,
                "cmp": c.cmp,
                "bound": c.bound,
                "label": c.label,
            })
        })
        .collect();
    json!({
        "rates": r.rates,
        "constraints": constraints,
        "units": r.units.as_str(),
    })
}

pub fn membership(r: &RateRegion, rates: &[f64]) -> Result<Value> {
    let inside = r.contains(rates)?;
    let violated: Vec<&str> = r.violated(rates).iter().map(|c| c.label.as_str()).collect();
    Ok(json!({"rates": rates, "inside": inside, "violated": violated}))
}

pub fn wiretap(w: &WiretapCapacities, units: Units) -> Value {
    json!({"c_sec": w.secrecy, "c_eav": w.eavesdropper, "units": units.as_str()})
}

pub fn synergy_search(s: &SynergySearch) -> Value {
    json!({
        "k": s.k,
        "exhaustive": s.exhaustive,
        "best_table": s.best_table,
        "best_synergy": s.best_synergy,
        "maximizers": s.maximizers,
        "bound": s.bound,
        "attains_bound": (s.best_synergy - s.bound).abs() < 1e-9,
        "units": s.units.as_str(),
    })
}
