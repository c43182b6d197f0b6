//! Dense joint probability tensors over finite alphabets.
//!
//! A [`JointPmf`] stores the probabilities of `N` variables in row-major
//! order: the last variable varies fastest. Outcomes are 0-based integers.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, NORMALIZATION_TOL};

/// Ordered list of distinct variable positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSubset {
    indices: Vec<usize>,
}

impl VariableSubset {
    /// Validates `indices` against a system of `num_vars` variables.
    pub fn new(indices: &[usize], num_vars: usize) -> Result<Self> {
        for (pos, &i) in indices.iter().enumerate() {
            if i >= num_vars {
                return Err(Error::InvalidSubset(format!(
                    "index {i} out of range for {num_vars} variables"
                )));
            }
            if indices[..pos].contains(&i) {
                return Err(Error::InvalidSubset(format!("duplicate index {i}")));
            }
        }
        Ok(Self {
            indices: indices.to_vec(),
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn is_disjoint(&self, other: &VariableSubset) -> bool {
        self.indices.iter().all(|i| !other.contains(*i))
    }

    /// Concatenation of two disjoint subsets, `self` first.
    pub fn union(&self, other: &VariableSubset) -> VariableSubset {
        let mut indices = self.indices.clone();
        indices.extend(other.indices.iter().filter(|i| !self.contains(**i)));
        VariableSubset { indices }
    }

    /// Remaining variables of an `num_vars`-variable system, in increasing order.
    pub fn complement(&self, num_vars: usize) -> VariableSubset {
        VariableSubset {
            indices: (0..num_vars).filter(|i| !self.contains(*i)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawPmf {
    cardinalities: Vec<usize>,
    probabilities: Vec<f64>,
}

/// Joint probability mass function of `N` finite-alphabet variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPmf", into = "RawPmf")]
pub struct JointPmf {
    cardinalities: Vec<usize>,
    probabilities: Vec<f64>,
}

impl TryFrom<RawPmf> for JointPmf {
    type Error = Error;

    fn try_from(raw: RawPmf) -> Result<Self> {
        JointPmf::new(raw.cardinalities, raw.probabilities)
    }
}

impl From<JointPmf> for RawPmf {
    fn from(p: JointPmf) -> Self {
        RawPmf {
            cardinalities: p.cardinalities,
            probabilities: p.probabilities,
        }
    }
}

impl JointPmf {
    /// Builds a pmf, checking shape, signs and normalization.
    ///
    /// A total mass within [`NORMALIZATION_TOL`] of one is renormalized once.
    pub fn new(cardinalities: Vec<usize>, probabilities: Vec<f64>) -> Result<Self> {
        if cardinalities.is_empty() {
            return Err(Error::InvalidDistribution("no variables".into()));
        }
        if let Some(pos) = cardinalities.iter().position(|&c| c == 0) {
            return Err(Error::InvalidDistribution(format!(
                "variable {pos} has an empty alphabet"
            )));
        }
        let len = cardinalities
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .ok_or_else(|| Error::InvalidDistribution("tensor size overflows".into()))?;
        if len != probabilities.len() {
            return Err(Error::InvalidDistribution(format!(
                "expected {len} probabilities for cardinalities {cardinalities:?}, got {}",
                probabilities.len()
            )));
        }
        if let Some(pos) = probabilities.iter().position(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "entry {pos} is negative or not finite ({})",
                probabilities[pos]
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let mut probabilities = probabilities;
        // Re-dividing an already normalized tensor would perturb the last bits.
        if (total - 1.0).abs() > 1e-15 {
            probabilities.iter_mut().for_each(|x| *x /= total);
        }
        Ok(Self {
            cardinalities,
            probabilities,
        })
    }

    /// Builds a pmf by evaluating `f` on every outcome tuple.
    pub fn from_fn(cardinalities: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let len: usize = cardinalities.iter().product();
        let mut outcome = vec![0; cardinalities.len()];
        let mut probabilities = Vec::with_capacity(len);
        for _ in 0..len {
            probabilities.push(f(&outcome));
            advance(&mut outcome, &cardinalities);
        }
        Self::new(cardinalities, probabilities)
    }

    /// Uniform distribution over all outcomes.
    pub fn uniform(cardinalities: Vec<usize>) -> Result<Self> {
        let len: usize = cardinalities.iter().product();
        Self::new(cardinalities, vec![1.0 / len as f64; len])
    }

    /// Point mass on a single outcome.
    pub fn point_mass(cardinalities: Vec<usize>, outcome: &[usize]) -> Result<Self> {
        Self::from_fn(cardinalities, |x| if x == outcome { 1.0 } else { 0.0 })
    }

    pub fn num_vars(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    /// Validated subset of this pmf's variables.
    pub fn subset(&self, indices: &[usize]) -> Result<VariableSubset> {
        VariableSubset::new(indices, self.num_vars())
    }

    /// Flat index of an outcome tuple.
    pub fn index_of(&self, outcome: &[usize]) -> usize {
        outcome
            .iter()
            .zip(&self.cardinalities)
            .fold(0, |acc, (&x, &c)| acc * c + x)
    }

    /// Probability of an outcome tuple.
    pub fn get(&self, outcome: &[usize]) -> f64 {
        self.probabilities[self.index_of(outcome)]
    }

    /// Iterates over `(outcome, probability)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let mut outcome = vec![0; self.num_vars()];
        self.probabilities.iter().map(move |&p| {
            let current = outcome.clone();
            advance(&mut outcome, &self.cardinalities);
            (current, p)
        })
    }

    /// Marginal over `keep`, with variables ordered as in `keep`.
    pub fn marginalize(&self, keep: &[usize]) -> Result<JointPmf> {
        let keep = self.subset(keep)?;
        Ok(self.marginal_of(&keep))
    }

    pub(crate) fn marginal_of(&self, keep: &VariableSubset) -> JointPmf {
        let cards: Vec<usize> = keep
            .indices()
            .iter()
            .map(|&i| self.cardinalities[i])
            .collect();
        let len: usize = cards.iter().product();
        let mut out = vec![0.0; len];
        let mut outcome = vec![0; self.num_vars()];
        for &p in &self.probabilities {
            let idx = keep
                .indices()
                .iter()
                .fold(0, |acc, &i| acc * self.cardinalities[i] + outcome[i]);
            out[idx] += p;
            advance(&mut outcome, &self.cardinalities);
        }
        JointPmf {
            cardinalities: cards,
            probabilities: out,
        }
    }

    /// Distribution of the remaining variables given `on = value`.
    pub fn condition(&self, on: &[usize], value: &[usize]) -> Result<JointPmf> {
        let on = self.subset(on)?;
        if value.len() != on.len() {
            return Err(Error::InvalidSubset(format!(
                "{} conditioning values for {} variables",
                value.len(),
                on.len()
            )));
        }
        for (&i, &v) in on.indices().iter().zip(value) {
            if v >= self.cardinalities[i] {
                return Err(Error::InvalidSubset(format!(
                    "value {v} outside the alphabet of variable {i}"
                )));
            }
        }
        let rest = on.complement(self.num_vars());
        if rest.is_empty() {
            return Err(Error::InvalidSubset(
                "conditioning on every variable leaves nothing".into(),
            ));
        }
        let cards: Vec<usize> = rest
            .indices()
            .iter()
            .map(|&i| self.cardinalities[i])
            .collect();
        let mut out = vec![0.0; cards.iter().product()];
        let mut mass = 0.0;
        for (outcome, p) in self.iter() {
            if on.indices().iter().zip(value).all(|(&i, &v)| outcome[i] == v) {
                let idx = rest
                    .indices()
                    .iter()
                    .fold(0, |acc, &i| acc * self.cardinalities[i] + outcome[i]);
                out[idx] += p;
                mass += p;
            }
        }
        if mass <= 0.0 {
            return Err(Error::DegenerateCondition);
        }
        out.iter_mut().for_each(|x| *x /= mass);
        Ok(JointPmf {
            cardinalities: cards,
            probabilities: out,
        })
    }

    /// Unary marginal of variable `i`.
    pub fn unary(&self, i: usize) -> Result<Vec<f64>> {
        Ok(self.marginalize(&[i])?.probabilities)
    }

    /// Outer product of the unary marginals.
    pub fn product_of_marginals(&self) -> JointPmf {
        let unaries: Vec<Vec<f64>> = (0..self.num_vars())
            .map(|i| {
                self.marginal_of(&VariableSubset { indices: vec![i] })
                    .probabilities
            })
            .collect();
        let mut outcome = vec![0; self.num_vars()];
        let probabilities = (0..self.len())
            .map(|_| {
                let p = outcome
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| unaries[i][x])
                    .product();
                advance(&mut outcome, &self.cardinalities);
                p
            })
            .collect();
        JointPmf {
            cardinalities: self.cardinalities.clone(),
            probabilities,
        }
    }

    /// Same variables with the axes reordered: variable `order[j]` of `self`
    /// becomes variable `j` of the result.
    pub fn permute(&self, order: &[usize]) -> Result<JointPmf> {
        let subset = self.subset(order)?;
        if subset.len() != self.num_vars() {
            return Err(Error::InvalidSubset(
                "a permutation must list every variable".into(),
            ));
        }
        Ok(self.marginal_of(&subset))
    }

    /// Largest absolute elementwise difference to another pmf of the same shape.
    pub fn max_abs_diff(&self, other: &JointPmf) -> f64 {
        assert_eq!(self.cardinalities, other.cardinalities);
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Builds a tensor without validation; used for intermediate iterates.
    pub(crate) fn from_parts_unchecked(cardinalities: Vec<usize>, probabilities: Vec<f64>) -> Self {
        Self {
            cardinalities,
            probabilities,
        }
    }
}

/// Advances a row-major outcome counter by one position.
pub(crate) fn advance(outcome: &mut [usize], cardinalities: &[usize]) {
    for pos in (0..outcome.len()).rev() {
        outcome[pos] += 1;
        if outcome[pos] < cardinalities[pos] {
            return;
        }
        outcome[pos] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> JointPmf {
        JointPmf::from_fn(vec![2, 2, 2], |x| {
            if x[2] == x[0] ^ x[1] {
                0.25
            } else {
                0.0
            }
        })
        .unwrap()
    }

    fn and() -> JointPmf {
        JointPmf::from_fn(vec![2, 2, 2], |x| {
            if x[2] == x[0] & x[1] {
                0.25
            } else {
                0.0
            }
        })
        .unwrap()
    }

    #[test]
    fn rejects_malformed_tensors() {
        assert!(JointPmf::new(vec![2, 2], vec![0.5, 0.5]).is_err());
        assert!(JointPmf::new(vec![2], vec![1.5, -0.5]).is_err());
        assert!(JointPmf::new(vec![2], vec![0.5, 0.6]).is_err());
        assert!(JointPmf::new(vec![0], vec![]).is_err());
        assert!(JointPmf::new(vec![2], vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn renormalizes_within_tolerance() {
        let p = JointPmf::new(vec![2], vec![0.5, 0.5 + 5e-13]).unwrap();
        let total: f64 = p.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn xor_pair_marginal_is_uniform() {
        let m = xor().marginalize(&[0, 1]).unwrap();
        assert_eq!(m.cardinalities(), &[2, 2]);
        for &x in m.probabilities() {
            assert!((x - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn marginalizing_everything_is_identity() {
        let p = and();
        assert_eq!(p.marginalize(&[0, 1, 2]).unwrap(), p);
    }

    #[test]
    fn and_output_marginal() {
        let m = and().marginalize(&[2]).unwrap();
        assert!((m.probabilities()[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn marginalize_reorders_axes() {
        let p = JointPmf::new(vec![2, 3], vec![0.1, 0.2, 0.0, 0.3, 0.15, 0.25]).unwrap();
        let t = p.marginalize(&[1, 0]).unwrap();
        assert_eq!(t.cardinalities(), &[3, 2]);
        assert_eq!(t.get(&[2, 1]), p.get(&[1, 2]));
    }

    #[test]
    fn out_of_range_subset_is_rejected() {
        assert!(matches!(
            xor().marginalize(&[3]),
            Err(Error::InvalidSubset(_))
        ));
        assert!(matches!(
            xor().marginalize(&[1, 1]),
            Err(Error::InvalidSubset(_))
        ));
    }

    #[test]
    fn and_conditioned_on_output_one() {
        let c = and().condition(&[2], &[1]).unwrap();
        assert_eq!(c.get(&[1, 1]), 1.0);
        assert_eq!(c.probabilities().iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn xor_conditioned_on_output_zero() {
        let c = xor().condition(&[2], &[0]).unwrap();
        assert_eq!(c.probabilities(), &[0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn conditioning_on_impossible_event_fails() {
        let p = JointPmf::point_mass(vec![2, 2], &[0, 0]).unwrap();
        assert_eq!(p.condition(&[0], &[1]), Err(Error::DegenerateCondition));
    }

    #[test]
    fn conditioning_a_product_leaves_the_rest_alone() {
        let p = JointPmf::new(vec![2, 2], vec![0.3 * 0.6, 0.3 * 0.4, 0.7 * 0.6, 0.7 * 0.4])
            .unwrap();
        for v in 0..2 {
            let c = p.condition(&[0], &[v]).unwrap();
            assert!((c.probabilities()[0] - 0.6).abs() < 1e-12);
        }
    }

    #[test]
    fn xor_product_of_marginals_is_uniform() {
        let q = xor().product_of_marginals();
        assert!(q.probabilities().iter().all(|&x| (x - 0.125).abs() < 1e-15));
    }

    #[test]
    fn and_product_of_marginals() {
        let q = and().product_of_marginals();
        assert!((q.get(&[1, 1, 1]) - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn independent_pmf_is_fixed_point() {
        let p = JointPmf::new(vec![2, 2], vec![0.18, 0.12, 0.42, 0.28]).unwrap();
        assert!(p.product_of_marginals().max_abs_diff(&p) < 1e-15);
    }

    #[test]
    fn json_shape() {
        let p: JointPmf =
            serde_json::from_str(r#"{"cardinalities":[2],"probabilities":[0.25,0.75]}"#).unwrap();
        assert_eq!(p.cardinalities(), &[2]);
        let bad = serde_json::from_str::<JointPmf>(r#"{"cardinalities":[3],"probabilities":[1.0]}"#);
        assert!(bad.is_err());
    }
}
