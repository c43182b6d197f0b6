//! Shannon measures on a [`JointPmf`].
//!
//! Every function takes the [`Units`] its result is expressed in. Subsets
//! are slices of variable positions; they are validated against the pmf.

use crate::distributions::{JointPmf, VariableSubset};
use crate::{clamp_nonneg, Error, Result, Units};

/// Entropy of a probability vector, with `0 log 0 = 0`.
pub fn shannon_entropy(probabilities: &[f64], units: Units) -> f64 {
    -probabilities
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * units.log(x))
        .sum::<f64>()
}

fn subset_entropy(p: &JointPmf, s: &VariableSubset, units: Units) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    if s.len() == p.num_vars() {
        return shannon_entropy(p.probabilities(), units);
    }
    shannon_entropy(p.marginal_of(s).probabilities(), units)
}

fn disjoint(parts: &[&VariableSubset]) -> Result<()> {
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !a.is_disjoint(b) {
                return Err(Error::InvalidSubset(format!(
                    "subsets {:?} and {:?} overlap",
                    a.indices(),
                    b.indices()
                )));
            }
        }
    }
    Ok(())
}

/// Joint entropy of the variables in `over`.
pub fn entropy(p: &JointPmf, over: &[usize], units: Units) -> Result<f64> {
    let s = p.subset(over)?;
    Ok(subset_entropy(p, &s, units))
}

/// `H(of | given) = H(of, given) - H(given)`.
pub fn conditional_entropy(p: &JointPmf, of: &[usize], given: &[usize], units: Units) -> Result<f64> {
    let of = p.subset(of)?;
    let given = p.subset(given)?;
    disjoint(&[&of, &given])?;
    let value = subset_entropy(p, &of.union(&given), units) - subset_entropy(p, &given, units);
    clamp_nonneg(value, "conditional entropy")
}

/// `I(a; b) = H(a) + H(b) - H(a, b)`.
pub fn mutual_information(p: &JointPmf, a: &[usize], b: &[usize], units: Units) -> Result<f64> {
    let a = p.subset(a)?;
    let b = p.subset(b)?;
    disjoint(&[&a, &b])?;
    let value = subset_entropy(p, &a, units) + subset_entropy(p, &b, units)
        - subset_entropy(p, &a.union(&b), units);
    clamp_nonneg(value, "mutual information")
}

/// `I(a; b | given)`.
pub fn conditional_mutual_information(
    p: &JointPmf,
    a: &[usize],
    b: &[usize],
    given: &[usize],
    units: Units,
) -> Result<f64> {
    let a = p.subset(a)?;
    let b = p.subset(b)?;
    let g = p.subset(given)?;
    disjoint(&[&a, &b, &g])?;
    let value = subset_entropy(p, &a.union(&g), units) + subset_entropy(p, &b.union(&g), units)
        - subset_entropy(p, &a.union(&b).union(&g), units)
        - subset_entropy(p, &g, units);
    clamp_nonneg(value, "conditional mutual information")
}

/// Co-information `I(X_a; X_b; X_c)` of three distinct single variables.
///
/// Evaluated by inclusion-exclusion, so the result does not depend on the
/// argument order beyond floating-point summation.
pub fn co_information(p: &JointPmf, a: &[usize], b: &[usize], c: &[usize], units: Units) -> Result<f64> {
    let (i, j, k) = match (a, b, c) {
        (&[i], &[j], &[k]) => (i, j, k),
        _ => {
            return Err(Error::InvalidSubset(
                "co-information takes three single variables".into(),
            ))
        }
    };
    p.subset(&[i, j, k])?;
    let h = |idx: &[usize]| entropy(p, idx, units);
    Ok(h(&[i])? + h(&[j])? + h(&[k])? - h(&[i, j])? - h(&[i, k])? - h(&[j, k])?
        + h(&[i, j, k])?)
}

fn all_vars(p: &JointPmf) -> Vec<usize> {
    (0..p.num_vars()).collect()
}

/// `TC = Σ_j H(X_j) - H(X)`.
pub fn total_correlation(p: &JointPmf, units: Units) -> Result<f64> {
    let singles: f64 = (0..p.num_vars())
        .map(|j| entropy(p, &[j], units))
        .sum::<Result<f64>>()?;
    clamp_nonneg(singles - entropy(p, &all_vars(p), units)?, "total correlation")
}

/// `H_(1) = Σ_j H(X_j | X_j^c)`, the exclusive information of every variable.
pub fn exclusive_information_sum(p: &JointPmf, units: Units) -> Result<f64> {
    let n = p.num_vars();
    (0..n)
        .map(|j| {
            let rest: Vec<usize> = (0..n).filter(|&i| i != j).collect();
            conditional_entropy(p, &[j], &rest, units)
        })
        .sum()
}

/// `DTC = H(X) - H_(1)`.
pub fn dual_total_correlation(p: &JointPmf, units: Units) -> Result<f64> {
    let joint = entropy(p, &all_vars(p), units)?;
    clamp_nonneg(
        joint - exclusive_information_sum(p, units)?,
        "dual total correlation",
    )
}

/// Gap between the uniform entropy `Σ_j log Ω_j` and `H(X)`.
pub fn negentropy(p: &JointPmf, units: Units) -> Result<f64> {
    let max: f64 = p.cardinalities().iter().map(|&c| units.log(c as f64)).sum();
    clamp_nonneg(max - entropy(p, &all_vars(p), units)?, "negentropy")
}

/// Relative entropy `D(p || q)` between two pmfs of the same shape.
pub fn kl_divergence(p: &JointPmf, q: &JointPmf, units: Units) -> Result<f64> {
    if p.cardinalities() != q.cardinalities() {
        return Err(Error::InvalidDistribution(format!(
            "shape mismatch: {:?} vs {:?}",
            p.cardinalities(),
            q.cardinalities()
        )));
    }
    let mut total = 0.0;
    for (idx, (&a, &b)) in p.probabilities().iter().zip(q.probabilities()).enumerate() {
        if a <= 0.0 {
            continue;
        }
        if b <= 0.0 {
            return Err(Error::AbsoluteContinuity(format!(
                "cell {idx} has p = {a:e} but q = 0"
            )));
        }
        total += a * units.log(a / b);
    }
    clamp_nonneg(total, "relative entropy")
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: Units = Units::Bits;

    fn gate(f: impl Fn(usize, usize) -> usize) -> JointPmf {
        JointPmf::from_fn(vec![2, 2, 2], |x| if x[2] == f(x[0], x[1]) { 0.25 } else { 0.0 })
            .unwrap()
    }

    fn xor() -> JointPmf {
        gate(|a, b| a ^ b)
    }

    fn and() -> JointPmf {
        gate(|a, b| a & b)
    }

    fn copies() -> JointPmf {
        JointPmf::from_fn(vec![2, 2, 2], |x| {
            if x[0] == x[1] && x[1] == x[2] {
                0.5
            } else {
                0.0
            }
        })
        .unwrap()
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn entropy_cases() {
        close(entropy(&xor(), &[0, 1, 2], B).unwrap(), 2.0);
        let point = JointPmf::point_mass(vec![3, 2], &[1, 1]).unwrap();
        close(entropy(&point, &[0, 1], B).unwrap(), 0.0);
        let uniform = JointPmf::uniform(vec![5]).unwrap();
        close(entropy(&uniform, &[0], Units::Nats).unwrap(), 5f64.ln());
        close(entropy(&xor(), &[], B).unwrap(), 0.0);
    }

    #[test]
    fn conditional_entropy_cases() {
        close(conditional_entropy(&xor(), &[2], &[0, 1], B).unwrap(), 0.0);
        close(conditional_entropy(&and(), &[0], &[1, 2], B).unwrap(), 0.5);
        let indep = JointPmf::new(vec![2, 2], vec![0.18, 0.12, 0.42, 0.28]).unwrap();
        close(
            conditional_entropy(&indep, &[0], &[1], B).unwrap(),
            entropy(&indep, &[0], B).unwrap(),
        );
        assert!(matches!(
            conditional_entropy(&xor(), &[0, 1], &[1], B),
            Err(Error::InvalidSubset(_))
        ));
    }

    #[test]
    fn mutual_information_cases() {
        close(mutual_information(&xor(), &[0], &[2], B).unwrap(), 0.0);
        close(mutual_information(&xor(), &[0, 1], &[2], B).unwrap(), 1.0);
        let copy = JointPmf::new(vec![3, 3], vec![0.2, 0., 0., 0., 0.3, 0., 0., 0., 0.5]).unwrap();
        close(
            mutual_information(&copy, &[0], &[1], B).unwrap(),
            entropy(&copy, &[0], B).unwrap(),
        );
        assert!(mutual_information(&xor(), &[0], &[0], B).is_err());
    }

    #[test]
    fn conditional_mutual_information_cases() {
        let and_cmi = conditional_mutual_information(&and(), &[0], &[1], &[2], B).unwrap();
        // (3/4) h(1/3) - 1/2
        close(and_cmi, 0.75 * 3f64.log2() - 1.0);
        assert!((and_cmi - 0.1887).abs() < 5e-5);
        close(
            conditional_mutual_information(&xor(), &[0], &[1], &[2], B).unwrap(),
            1.0,
        );
        // X1 -> X2 -> X3 with binary symmetric links.
        let chain = JointPmf::from_fn(vec![2, 2, 2], |x| {
            let f = |a: usize, b: usize, e: f64| if a == b { 1.0 - e } else { e };
            0.5 * f(x[0], x[1], 0.1) * f(x[1], x[2], 0.2)
        })
        .unwrap();
        close(
            conditional_mutual_information(&chain, &[0], &[2], &[1], B).unwrap(),
            0.0,
        );
    }

    #[test]
    fn co_information_cases() {
        close(co_information(&xor(), &[0], &[1], &[2], B).unwrap(), -1.0);
        let indep = JointPmf::uniform(vec![2, 3, 2]).unwrap();
        close(co_information(&indep, &[0], &[1], &[2], B).unwrap(), 0.0);
        assert!(co_information(&xor(), &[0, 1], &[1], &[2], B).is_err());
    }

    #[test]
    fn total_and_dual_total_correlation() {
        close(total_correlation(&xor(), B).unwrap(), 1.0);
        close(total_correlation(&copies(), B).unwrap(), 2.0);
        close(dual_total_correlation(&xor(), B).unwrap(), 2.0);
        let indep = JointPmf::uniform(vec![2, 2, 2]).unwrap();
        close(total_correlation(&indep, B).unwrap(), 0.0);
        close(dual_total_correlation(&indep, B).unwrap(), 0.0);
        let pair = JointPmf::new(vec![2, 2], vec![0.4, 0.1, 0.2, 0.3]).unwrap();
        close(
            dual_total_correlation(&pair, B).unwrap(),
            mutual_information(&pair, &[0], &[1], B).unwrap(),
        );
    }

    #[test]
    fn negentropy_cases() {
        close(negentropy(&JointPmf::uniform(vec![2, 3]).unwrap(), B).unwrap(), 0.0);
        close(negentropy(&xor(), B).unwrap(), 1.0);
        let point = JointPmf::point_mass(vec![2, 2, 2], &[0, 1, 0]).unwrap();
        close(negentropy(&point, B).unwrap(), 3.0);
    }

    #[test]
    fn exclusive_information_cases() {
        close(exclusive_information_sum(&xor(), B).unwrap(), 0.0);
        close(
            exclusive_information_sum(&JointPmf::uniform(vec![2, 2, 2]).unwrap(), B).unwrap(),
            3.0,
        );
        close(exclusive_information_sum(&and(), B).unwrap(), 1.0);
    }

    #[test]
    fn kl_requires_absolute_continuity() {
        let p = JointPmf::new(vec![2], vec![0.5, 0.5]).unwrap();
        let q = JointPmf::new(vec![2], vec![1.0, 0.0]).unwrap();
        assert!(matches!(kl_divergence(&p, &q, B), Err(Error::AbsoluteContinuity(_))));
        close(kl_divergence(&q, &p, B).unwrap(), 1.0);
    }
}
