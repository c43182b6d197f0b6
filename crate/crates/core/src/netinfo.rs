//! Rate regions and capacities of four network scenarios written in terms
//! of the decomposition: Slepian-Wolf coding of three sources, a two-user
//! multiple access channel, a degraded wiretap channel and a Gaussian
//! broadcast channel.

use serde::Serialize;

use crate::decomposition::{decompose_markov, Pair, SymmetricDecomposition, TripleInfo};
use crate::gaussian::{gaussian_mi, gaussian_redundant_predictability, GaussianTriple};
use crate::measures::conditional_entropy;
use crate::{Error, JointPmf, Result, Units, ZERO_INFO_TOL};

/// Slack on membership tests so that boundary points count as inside.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparator {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

/// `coeffs · R  cmp  bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearConstraint {
    pub coeffs: Vec<f64>,
    pub cmp: Comparator,
    pub bound: f64,
    pub label: String,
}

impl LinearConstraint {
    pub fn holds(&self, rates: &[f64]) -> bool {
        let lhs: f64 = self.coeffs.iter().zip(rates).map(|(c, r)| c * r).sum();
        match self.cmp {
            Comparator::Ge => lhs >= self.bound - BOUNDARY_TOL,
            Comparator::Le => lhs <= self.bound + BOUNDARY_TOL,
        }
    }
}

/// A closed polyhedral region given by its inequalities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRegion {
    pub rates: Vec<String>,
    pub constraints: Vec<LinearConstraint>,
    pub units: Units,
}

impl RateRegion {
    pub fn contains(&self, rates: &[f64]) -> Result<bool> {
        if rates.len() != self.rates.len() {
            return Err(Error::InvalidSubset(format!(
                "expected {} rates, got {}",
                self.rates.len(),
                rates.len()
            )));
        }
        Ok(self.constraints.iter().all(|c| c.holds(rates)))
    }

    /// Constraints violated by `rates`.
    pub fn violated(&self, rates: &[f64]) -> Vec<&LinearConstraint> {
        self.constraints.iter().filter(|c| !c.holds(rates)).collect()
    }
}

fn indicator(n: usize, on: &[usize]) -> Vec<f64> {
    (0..n).map(|i| if on.contains(&i) { 1.0 } else { 0.0 }).collect()
}

fn check_triple(p: &JointPmf) -> Result<()> {
    if p.num_vars() != 3 {
        return Err(Error::UnsupportedSize(format!(
            "needs 3 variables, got {}",
            p.num_vars()
        )));
    }
    Ok(())
}

/// Slepian-Wolf region for three sources in excess-rate coordinates
/// `R~k = Rk - H(Xk|rest)`.
///
/// `d` is the decomposition the bounds are expressed with; it is checked
/// against the measures of `p`.
pub fn slepian_wolf_region(p: &JointPmf, d: &SymmetricDecomposition) -> Result<RateRegion> {
    check_triple(p)?;
    let info = TripleInfo::from_pmf(p, d.units)?;
    d.check_against(&info)?;
    let mut constraints = Vec::with_capacity(7);
    for i in 0..3 {
        constraints.push(LinearConstraint {
            coeffs: indicator(3, &[i]),
            cmp: Comparator::Ge,
            bound: 0.0,
            label: format!("R~{} >= 0", i + 1),
        });
    }
    for pair in [Pair::P12, Pair::P13, Pair::P23] {
        let (i, j) = pair.vars();
        constraints.push(LinearConstraint {
            coeffs: indicator(3, &[i, j]),
            cmp: Comparator::Ge,
            bound: d.un(pair) + d.syn,
            label: format!("R~{} + R~{} >= Un({}) + Syn", i + 1, j + 1, pair.label()),
        });
    }
    constraints.push(LinearConstraint {
        coeffs: vec![1.0; 3],
        cmp: Comparator::Ge,
        bound: d.private_total() + d.red + 2.0 * d.syn,
        label: "R~1 + R~2 + R~3 >= dH_(2) + dH_(3)".into(),
    });
    Ok(RateRegion {
        rates: vec!["R~1".into(), "R~2".into(), "R~3".into()],
        constraints,
        units: d.units,
    })
}

/// Slepian-Wolf region in plain rates: `sum_{k in S} Rk >= H(X_S | X_S^c)`
/// for every non-empty subset `S`.
pub fn slepian_wolf_textbook(p: &JointPmf, units: Units) -> Result<RateRegion> {
    check_triple(p)?;
    let mut constraints = Vec::with_capacity(7);
    for mask in 1..8usize {
        let s: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 0).collect();
        let names: Vec<String> = s.iter().map(|i| format!("R{}", i + 1)).collect();
        constraints.push(LinearConstraint {
            coeffs: indicator(3, &s),
            cmp: Comparator::Ge,
            bound: conditional_entropy(p, &s, &rest, units)?,
            label: format!("{} >= H(X_S|X_S^c)", names.join(" + ")),
        });
    }
    Ok(RateRegion {
        rates: vec!["R1".into(), "R2".into(), "R3".into()],
        constraints,
        units,
    })
}

/// Excess rates `Rk - H(Xk|rest)` of plain rates.
pub fn excess_rates(p: &JointPmf, rates: &[f64; 3], units: Units) -> Result<[f64; 3]> {
    check_triple(p)?;
    let mut out = [0.0; 3];
    for k in 0..3 {
        let rest: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        out[k] = rates[k] - conditional_entropy(p, &[k], &rest, units)?;
    }
    Ok(out)
}

/// Capacity constants of a multiple access channel with independent inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MacCapacities {
    /// `I(X_first; Y)`.
    pub c1: f64,
    /// `I(X_second; Y)`.
    pub c2: f64,
    /// Synergy `I(X_first; X_second | Y)`.
    pub cs: f64,
    pub region: RateRegion,
}

/// Capacity region of a two-user channel from inputs `inputs` to `output`,
/// with the input law fixed by `p`.
pub fn mac_region(p: &JointPmf, inputs: (usize, usize), output: usize, units: Units) -> Result<MacCapacities> {
    check_triple(p)?;
    let (a, b) = inputs;
    let pair = Pair::of(a, b)?;
    if pair.third() != output {
        return Err(Error::InvalidSubset(format!(
            "output {output} must differ from inputs {a} and {b}"
        )));
    }
    let info = TripleInfo::from_pmf(p, units)?;
    if info.mi(pair) >= ZERO_INFO_TOL {
        return Err(Error::NotPairwiseIndependent {
            first: a,
            second: b,
            mi: info.mi(pair),
        });
    }
    let c1 = info.mi(Pair::of(a, output)?);
    let c2 = info.mi(Pair::of(b, output)?);
    let cs = info.cmi(pair);
    let constraints = vec![
        LinearConstraint {
            coeffs: vec![1.0, 0.0],
            cmp: Comparator::Ge,
            bound: 0.0,
            label: "R1 >= 0".into(),
        },
        LinearConstraint {
            coeffs: vec![0.0, 1.0],
            cmp: Comparator::Ge,
            bound: 0.0,
            label: "R2 >= 0".into(),
        },
        LinearConstraint {
            coeffs: vec![1.0, 0.0],
            cmp: Comparator::Le,
            bound: c1 + cs,
            label: "R1 <= C1 + C_S".into(),
        },
        LinearConstraint {
            coeffs: vec![0.0, 1.0],
            cmp: Comparator::Le,
            bound: c2 + cs,
            label: "R2 <= C2 + C_S".into(),
        },
        LinearConstraint {
            coeffs: vec![1.0, 1.0],
            cmp: Comparator::Le,
            bound: c1 + c2 + cs,
            label: "R1 + R2 <= C1 + C2 + C_S".into(),
        },
    ];
    Ok(MacCapacities {
        c1,
        c2,
        cs,
        region: RateRegion {
            rates: vec!["R1".into(), "R2".into()],
            constraints,
            units,
        },
    })
}

/// Multiple access region in its usual form:
/// `R1 <= I(X1;Y|X2)`, `R2 <= I(X2;Y|X1)`, `R1 + R2 <= I(X1X2;Y)`.
pub fn mac_textbook(p: &JointPmf, inputs: (usize, usize), output: usize, units: Units) -> Result<RateRegion> {
    check_triple(p)?;
    let (a, b) = inputs;
    let info = TripleInfo::from_pmf(p, units)?;
    let r1 = info.cmi(Pair::of(a, output)?);
    let r2 = info.cmi(Pair::of(b, output)?);
    let sum = info.joint_mi(a, b, output)?;
    let le = |coeffs: Vec<f64>, bound: f64, label: &str| LinearConstraint {
        coeffs,
        cmp: Comparator::Le,
        bound,
        label: label.into(),
    };
    let ge = |coeffs: Vec<f64>, label: &str| LinearConstraint {
        coeffs,
        cmp: Comparator::Ge,
        bound: 0.0,
        label: label.into(),
    };
    Ok(RateRegion {
        rates: vec!["R1".into(), "R2".into()],
        constraints: vec![
            ge(vec![1.0, 0.0], "R1 >= 0"),
            ge(vec![0.0, 1.0], "R2 >= 0"),
            le(vec![1.0, 0.0], r1, "R1 <= I(X1;Y|X2)"),
            le(vec![0.0, 1.0], r2, "R2 <= I(X2;Y|X1)"),
            le(vec![1.0, 1.0], sum, "R1 + R2 <= I(X1X2;Y)"),
        ],
        units,
    })
}

/// Secrecy and eavesdropper capacities of a degraded wiretap channel
/// `X1 - X2 - X3` (sender, legitimate receiver, eavesdropper).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WiretapCapacities {
    /// `I(X1;X2) - I(X1;X3) = Un(1,2|3)`.
    pub secrecy: f64,
    /// `I(X1;X3)`, the shared information.
    pub eavesdropper: f64,
}

pub fn wiretap_capacities(p: &JointPmf, units: Units) -> Result<WiretapCapacities> {
    check_triple(p)?;
    let d = decompose_markov(p, 1, units)?;
    Ok(WiretapCapacities {
        secrecy: d.un(Pair::P12),
        eavesdropper: d.red,
    })
}

/// Public and private capacities of a Gaussian broadcast channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BroadcastCapacities {
    /// Rate decodable by both receivers: the redundant predictability.
    pub public: f64,
    /// Confidential rate to the stronger receiver, hidden from the other.
    pub private: f64,
    /// `(addressed, other)` receivers as variable indices; the addressed one
    /// has the larger mutual information with the sender, ties going to the
    /// lower index.
    pub receivers: (usize, usize),
}

/// Capacities when `sender` transmits and the other two variables are
/// received.
pub fn gaussian_broadcast_capacities(g: &GaussianTriple, sender: usize, units: Units) -> Result<BroadcastCapacities> {
    if sender > 2 {
        return Err(Error::InvalidSubset(format!("no variable {sender}")));
    }
    let public = gaussian_redundant_predictability(g, sender, units)?;
    let others: Vec<usize> = (0..3).filter(|&i| i != sender).collect();
    let first = gaussian_mi(g, Pair::of(sender, others[0])?, units)?;
    let second = gaussian_mi(g, Pair::of(sender, others[1])?, units)?;
    let (receivers, gap) = if first >= second {
        ((others[0], others[1]), first - second)
    } else {
        ((others[1], others[0]), second - first)
    };
    Ok(BroadcastCapacities {
        public,
        private: gap.max(0.0),
        receivers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;

    const B: Units = Units::Bits;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    fn gate(f: impl Fn(usize, usize) -> usize) -> JointPmf {
        JointPmf::from_fn(vec![2, 2, 2], |x| if x[2] == f(x[0], x[1]) { 0.25 } else { 0.0 })
            .unwrap()
    }

    fn h2(q: f64) -> f64 {
        -q * q.log2() - (1.0 - q) * (1.0 - q).log2()
    }

    fn bsc_chain(e1: f64, e2: f64) -> JointPmf {
        JointPmf::from_fn(vec![2, 2, 2], |x| {
            let f1 = if x[0] == x[1] { 1.0 - e1 } else { e1 };
            let f2 = if x[1] == x[2] { 1.0 - e2 } else { e2 };
            0.5 * f1 * f2
        })
        .unwrap()
    }

    #[test]
    fn slepian_wolf_examples() {
        let xor = gate(|a, b| a ^ b);
        let r = slepian_wolf_region(&xor, &decompose(&xor, B).unwrap()).unwrap();
        assert_eq!(r.constraints.len(), 7);
        assert!(r.contains(&[1.0, 1.0, 0.0]).unwrap());
        assert!(!r.contains(&[1.0, 0.0, 0.0]).unwrap());
        let v = r.violated(&[1.0, 0.0, 0.0]);
        assert!(v.iter().any(|c| c.label.starts_with("R~2 + R~3")));

        let indep = JointPmf::uniform(vec![2, 2, 2]).unwrap();
        let r = slepian_wolf_region(&indep, &decompose(&indep, B).unwrap()).unwrap();
        assert!(r.constraints.iter().all(|c| c.bound.abs() < 1e-12));
        assert!(r.contains(&[0.0, 0.0, 0.0]).unwrap());
        assert!(!r.contains(&[-0.1, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn slepian_wolf_rejects_foreign_decomposition() {
        let xor = gate(|a, b| a ^ b);
        let and = gate(|a, b| a & b);
        assert!(matches!(
            slepian_wolf_region(&xor, &decompose(&and, B).unwrap()),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn mac_examples() {
        let m = mac_region(&gate(|a, b| a ^ b), (0, 1), 2, B).unwrap();
        close(m.c1, 0.0, 1e-12);
        close(m.c2, 0.0, 1e-12);
        close(m.cs, 1.0, 1e-12);
        assert!(m.region.contains(&[0.5, 0.5]).unwrap());
        assert!(!m.region.contains(&[0.6, 0.5]).unwrap());

        // X3 = (X1, X2) as a four-letter output
        let two_bit = JointPmf::from_fn(vec![2, 2, 4], |x| {
            if x[2] == 2 * x[0] + x[1] {
                0.25
            } else {
                0.0
            }
        })
        .unwrap();
        let m = mac_region(&two_bit, (0, 1), 2, B).unwrap();
        close(m.c1, 1.0, 1e-12);
        close(m.c2, 1.0, 1e-12);
        close(m.cs, 0.0, 1e-12);

        let m = mac_region(&JointPmf::uniform(vec![2, 2, 3]).unwrap(), (0, 1), 2, B).unwrap();
        assert!(m.region.constraints.iter().all(|c| c.bound.abs() < 1e-12));

        let copy = gate(|a, _| a);
        let dependent = copy.permute(&[0, 2, 1]).unwrap();
        assert!(matches!(
            mac_region(&dependent, (0, 1), 2, B),
            Err(Error::NotPairwiseIndependent { .. })
        ));
    }

    #[test]
    fn wiretap_examples() {
        let w = wiretap_capacities(&bsc_chain(0.1, 0.1), B).unwrap();
        close(w.secrecy, h2(0.18) - h2(0.1), 1e-12);
        close(w.eavesdropper, 1.0 - h2(0.18), 1e-12);
        close(w.secrecy, 0.2111, 1e-4);
        close(w.eavesdropper, 0.3199, 1e-4);

        let w = wiretap_capacities(&bsc_chain(0.1, 0.0), B).unwrap();
        close(w.secrecy, 0.0, 1e-12);

        let w = wiretap_capacities(&bsc_chain(0.1, 0.5), B).unwrap();
        close(w.secrecy, 1.0 - h2(0.1), 1e-12);
        close(w.eavesdropper, 0.0, 1e-12);

        assert!(matches!(
            wiretap_capacities(&gate(|a, b| a ^ b), B),
            Err(Error::NotMarkov { .. })
        ));
    }

    #[test]
    fn broadcast_examples() {
        let g = GaussianTriple::standard(0.6, 0.4, 0.1).unwrap();
        let c = gaussian_broadcast_capacities(&g, 0, B).unwrap();
        close(c.public, 0.5 * (1.0f64 / 0.84).log2(), 1e-12);
        close(c.private, 0.5 * (1.0f64 / 0.64).log2() - 0.5 * (1.0f64 / 0.84).log2(), 1e-12);
        close(c.public, 0.1258, 1e-4);
        close(c.private, 0.1961, 1e-4);

        let c = gaussian_broadcast_capacities(&GaussianTriple::standard(0.5, 0.5, 0.2).unwrap(), 0, B)
            .unwrap();
        close(c.private, 0.0, 1e-15);

        let g = GaussianTriple::standard(0.6, 0.0, 0.1).unwrap();
        let c = gaussian_broadcast_capacities(&g, 0, B).unwrap();
        close(c.public, 0.0, 1e-15);
        close(c.private, gaussian_mi(&g, Pair::P12, B).unwrap(), 1e-15);
        assert_eq!(c.receivers, (1, 2));

        // the stronger link decides who receives the private message
        let g = GaussianTriple::standard(0.4, 0.6, 0.1).unwrap();
        let c = gaussian_broadcast_capacities(&g, 0, B).unwrap();
        assert_eq!(c.receivers, (2, 1));
        close(c.private, 0.5 * (1.0f64 / 0.64).log2() - 0.5 * (1.0f64 / 0.84).log2(), 1e-12);
    }
}
