//! Symmetric decomposition of the information shared by three variables.
//!
//! For three variables the dependencies split into a shared part `Red`,
//! three private parts `Un(i,j|k)` and a synergistic part `Syn`, tied to
//! the Shannon quantities by
//!
//! ```text
//! I(Xi;Xj)      = Red + Un(i,j|k)
//! I(Xi;Xj|Xk)   = Un(i,j|k) + Syn
//! I(X1;X2;X3)   = Red - Syn
//! ```
//!
//! Any admissible `Red` lies in `[c1, c2]` with `c1 = [I(X1;X2;X3)]^+` and
//! `c2 = min_{i<j} I(Xi;Xj)`. The interval has width equal to the smallest
//! of the three mutual informations and three conditional mutual
//! informations, so the decomposition is pinned down exactly when two
//! variables are independent or the three form a Markov chain. Outside
//! those regimes the reported point is the min-MI rule (the upper end of the
//! interval) and the interval is always attached.

use crate::distributions::JointPmf;
use crate::measures::{
    co_information, conditional_mutual_information, entropy, exclusive_information_sum,
    mutual_information,
};
use crate::{clamp_nonneg, Error, Result, Units, ZERO_INFO_TOL};

/// Tolerance for the identities linking the decomposition to Shannon terms.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Negative residues smaller than this are considered float noise and are
/// zeroed without being reported.
const SILENT_CLAMP: f64 = 1e-12;

/// Unordered pair of the three variables, named by the third one left out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    /// `(X1, X2)` given `X3`.
    P12,
    /// `(X2, X3)` given `X1`.
    P23,
    /// `(X1, X3)` given `X2`.
    P13,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P12, Pair::P23, Pair::P13];

    /// Pair formed by variables `i` and `j` (0-based, any order).
    pub fn of(i: usize, j: usize) -> Result<Pair> {
        match (i.min(j), i.max(j)) {
            (0, 1) => Ok(Pair::P12),
            (1, 2) => Ok(Pair::P23),
            (0, 2) => Ok(Pair::P13),
            _ => Err(Error::InvalidSubset(format!(
                "({i}, {j}) is not a pair of distinct variables among three"
            ))),
        }
    }

    pub fn vars(self) -> (usize, usize) {
        match self {
            Pair::P12 => (0, 1),
            Pair::P23 => (1, 2),
            Pair::P13 => (0, 2),
        }
    }

    pub fn third(self) -> usize {
        match self {
            Pair::P12 => 2,
            Pair::P23 => 0,
            Pair::P13 => 1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Pair::P12 => 0,
            Pair::P23 => 1,
            Pair::P13 => 2,
        }
    }

    /// Label in the form `12|3`.
    pub fn label(self) -> &'static str {
        match self {
            Pair::P12 => "12|3",
            Pair::P23 => "23|1",
            Pair::P13 => "13|2",
        }
    }
}

/// Shannon quantities of a three-variable system that the decomposition
/// is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleInfo {
    pub units: Units,
    /// `I(Xi;Xj)` indexed by [`Pair::index`].
    pub mi: [f64; 3],
    /// `I(Xi;Xj|Xk)` indexed by [`Pair::index`].
    pub cmi: [f64; 3],
    /// Co-information `I(X1;X2;X3)`.
    pub co_information: f64,
    /// Joint entropy, when the system is discrete.
    pub joint_entropy: Option<f64>,
    /// `H_(1)`, when the system is discrete.
    pub exclusive: Option<f64>,
}

impl TripleInfo {
    pub fn from_pmf(p: &JointPmf, units: Units) -> Result<Self> {
        require_three(p)?;
        let mut mi = [0.0; 3];
        let mut cmi = [0.0; 3];
        for pair in Pair::ALL {
            let (i, j) = pair.vars();
            mi[pair.index()] = mutual_information(p, &[i], &[j], units)?;
            cmi[pair.index()] =
                conditional_mutual_information(p, &[i], &[j], &[pair.third()], units)?;
        }
        Ok(Self {
            units,
            mi,
            cmi,
            co_information: co_information(p, &[0], &[1], &[2], units)?,
            joint_entropy: Some(entropy(p, &[0, 1, 2], units)?),
            exclusive: Some(exclusive_information_sum(p, units)?),
        })
    }

    pub fn mi(&self, pair: Pair) -> f64 {
        self.mi[pair.index()]
    }

    pub fn cmi(&self, pair: Pair) -> f64 {
        self.cmi[pair.index()]
    }

    /// `I(Xa Xb; Xt)` by the chain rule.
    pub fn joint_mi(&self, a: usize, b: usize, target: usize) -> Result<f64> {
        Ok(self.mi(Pair::of(a, target)?) + self.cmi(Pair::of(b, target)?))
    }

    /// Feasible interval `[c1, c2]` for the shared information.
    pub fn shared_bounds(&self) -> (f64, f64) {
        let c1 = self.co_information.max(0.0);
        let c2 = self.mi.iter().copied().fold(f64::INFINITY, f64::min);
        (c1, c2)
    }

    /// Feasible interval for the synergy, `[[-coI]^+, min CMI]`.
    pub fn synergy_bounds(&self) -> (f64, f64) {
        let lo = (-self.co_information).max(0.0);
        let hi = self.cmi.iter().copied().fold(f64::INFINITY, f64::min);
        (lo, hi)
    }
}

fn require_three(p: &JointPmf) -> Result<()> {
    if p.num_vars() != 3 {
        return Err(Error::UnsupportedSize(format!(
            "the decomposition needs exactly 3 variables, got {}",
            p.num_vars()
        )));
    }
    Ok(())
}

/// Which of the six interval-width terms vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// `I(Xi;Xj) = 0`: the pair is independent.
    MutualInformation(Pair),
    /// `I(Xi;Xj|Xk) = 0`: `Xi - Xk - Xj` is a Markov chain.
    ConditionalMutualInformation(Pair),
}

impl Witness {
    pub fn describe(self) -> String {
        match self {
            Witness::MutualInformation(pair) => {
                let (i, j) = pair.vars();
                format!("I(X{};X{}) = 0", i + 1, j + 1)
            }
            Witness::ConditionalMutualInformation(pair) => {
                let (i, j) = pair.vars();
                format!("I(X{};X{}|X{}) = 0", i + 1, j + 1, pair.third() + 1)
            }
        }
    }
}

/// Outcome of the uniqueness test.
#[derive(Debug, Clone, PartialEq)]
pub struct Uniqueness {
    pub unique: bool,
    pub witness: Option<Witness>,
    /// `[c1, c2]` for the shared information.
    pub interval: (f64, f64),
    /// Smallest of the six terms; equals `c2 - c1`.
    pub width: f64,
}

impl Uniqueness {
    pub fn from_info(info: &TripleInfo) -> Self {
        let mut smallest = (f64::INFINITY, None);
        for pair in Pair::ALL {
            if info.mi(pair) < smallest.0 {
                smallest = (info.mi(pair), Some(Witness::MutualInformation(pair)));
            }
        }
        for pair in Pair::ALL {
            if info.cmi(pair) < smallest.0 {
                smallest = (
                    info.cmi(pair),
                    Some(Witness::ConditionalMutualInformation(pair)),
                );
            }
        }
        let unique = smallest.0 < ZERO_INFO_TOL;
        Uniqueness {
            unique,
            witness: if unique { smallest.1 } else { None },
            interval: info.shared_bounds(),
            width: smallest.0,
        }
    }
}

/// Decides whether the decomposition of `p` is unique.
pub fn uniqueness_status(p: &JointPmf, units: Units) -> Result<Uniqueness> {
    Ok(Uniqueness::from_info(&TripleInfo::from_pmf(p, units)?))
}

/// Shared, private and synergistic information of a three-variable system.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricDecomposition {
    pub red: f64,
    /// `Un(i,j|k)` indexed by [`Pair::index`].
    pub un: [f64; 3],
    pub syn: f64,
    pub unique: bool,
    pub witness: Option<Witness>,
    /// Feasible interval `[c1, c2]` for `red`.
    pub interval: (f64, f64),
    pub units: Units,
    /// Terms whose negative rounding residue was set to zero.
    pub clamped: Vec<&'static str>,
}

impl SymmetricDecomposition {
    pub fn un(&self, pair: Pair) -> f64 {
        self.un[pair.index()]
    }

    /// Builds every term from a shared-information value by the defining
    /// identities `Un = I - Red` and `Syn = I(X1;X2|X3) - Un(1,2|3)`.
    pub fn from_shared(info: &TripleInfo, red: f64) -> Result<Self> {
        let status = Uniqueness::from_info(info);
        let mut clamped = Vec::new();
        let red = clamp_term(red, "red", &mut clamped)?;
        let mut un = [0.0; 3];
        for pair in Pair::ALL {
            un[pair.index()] = clamp_term(info.mi(pair) - red, pair.label(), &mut clamped)?;
        }
        let syn = clamp_term(
            info.cmi(Pair::P12) - un[Pair::P12.index()],
            "syn",
            &mut clamped,
        )?;
        Ok(Self {
            red,
            un,
            syn,
            unique: status.unique,
            witness: status.witness,
            interval: status.interval,
            units: info.units,
            clamped,
        })
    }

    /// Checks the identities tying the terms to `info`.
    pub fn check_against(&self, info: &TripleInfo) -> Result<()> {
        if self.units != info.units {
            return Err(Error::Consistency(format!(
                "decomposition in {} but measures in {}",
                self.units, info.units
            )));
        }
        let co = self.red - self.syn - info.co_information;
        if co.abs() > IDENTITY_TOL {
            return Err(Error::Consistency(format!(
                "Red - Syn differs from the co-information by {co:e}"
            )));
        }
        for pair in Pair::ALL {
            let a = self.red + self.un(pair) - info.mi(pair);
            if a.abs() > IDENTITY_TOL {
                return Err(Error::Consistency(format!(
                    "Red + Un({}) differs from the mutual information by {a:e}",
                    pair.label()
                )));
            }
            let b = self.un(pair) + self.syn - info.cmi(pair);
            if b.abs() > IDENTITY_TOL {
                return Err(Error::Consistency(format!(
                    "Un({}) + Syn differs from the conditional mutual information by {b:e}",
                    pair.label()
                )));
            }
        }
        Ok(())
    }

    /// Sum of the three private terms.
    pub fn private_total(&self) -> f64 {
        self.un.iter().sum()
    }
}

fn clamp_term(value: f64, what: &'static str, clamped: &mut Vec<&'static str>) -> Result<f64> {
    if value < -SILENT_CLAMP {
        clamped.push(what);
    }
    clamp_nonneg(value, what)
}

fn other_two(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// `min{I(X1;X2), I(X2;X3), I(X1;X3)}`.
pub fn red_min_mi(p: &JointPmf, units: Units) -> Result<f64> {
    Ok(TripleInfo::from_pmf(p, units)?.shared_bounds().1)
}

/// The min-MI redundant predictability `min{I(Xa;Xt), I(Xb;Xt)}`.
pub fn predictability_min(
    p: &JointPmf,
    predictors: (usize, usize),
    target: usize,
    units: Units,
) -> Result<f64> {
    require_three(p)?;
    let (a, b) = predictors;
    if a == b || a == target || b == target {
        return Err(Error::InvalidSubset(
            "predictors and target must be three distinct variables".into(),
        ));
    }
    Ok(mutual_information(p, &[a], &[target], units)?
        .min(mutual_information(p, &[b], &[target], units)?))
}

/// A redundant-predictability measure: how much of `target` two predictors
/// predict in common.
pub trait RedundantPredictability {
    fn name(&self) -> &str;

    fn redundancy(
        &self,
        p: &JointPmf,
        predictors: (usize, usize),
        target: usize,
        units: Units,
    ) -> Result<f64>;
}

/// Redundancy as the smaller of the two predictor-target mutual informations.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinMiPredictability;

impl RedundantPredictability for MinMiPredictability {
    fn name(&self) -> &str {
        "min-mi"
    }

    fn redundancy(&self, p: &JointPmf, predictors: (usize, usize), target: usize, units: Units) -> Result<f64> {
        predictability_min(p, predictors, target, units)
    }
}

/// Any closure `(p, predictors, target, units) -> redundancy` with a name.
pub struct FnPredictability<F> {
    pub name: String,
    pub f: F,
}

impl<F> RedundantPredictability for FnPredictability<F>
where
    F: Fn(&JointPmf, (usize, usize), usize, Units) -> Result<f64>,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn redundancy(&self, p: &JointPmf, predictors: (usize, usize), target: usize, units: Units) -> Result<f64> {
        (self.f)(p, predictors, target, units)
    }
}

/// Checks non-negativity (1) and the total-predictability bound (3) for a
/// directed redundancy value; axiom (2) holds by construction of the unique
/// parts.
pub fn check_predictability_axioms(
    info: &TripleInfo,
    predictors: (usize, usize),
    target: usize,
    redundancy: f64,
) -> Result<()> {
    let (a, b) = predictors;
    let ia = info.mi(Pair::of(a, target)?);
    let ib = info.mi(Pair::of(b, target)?);
    let tol = IDENTITY_TOL;
    if redundancy < -tol {
        return Err(Error::InvalidPredictability {
            axiom: 1,
            detail: format!("redundancy {redundancy:e} is negative"),
        });
    }
    for (who, total) in [(a, ia), (b, ib)] {
        if total - redundancy < -tol {
            return Err(Error::InvalidPredictability {
                axiom: 1,
                detail: format!(
                    "unique predictability of X{} about X{} is {:e}",
                    who + 1,
                    target + 1,
                    total - redundancy
                ),
            });
        }
    }
    let slack = synergistic_predictability(info, predictors, target, redundancy)?;
    if slack < -tol {
        return Err(Error::InvalidPredictability {
            axiom: 3,
            detail: format!("redundant plus unique parts exceed I(XaXb;Xt) by {:e}", -slack),
        });
    }
    Ok(())
}

/// Slack of the total-predictability bound:
/// `I(XaXb;Xt) - R - Un(a) - Un(b)`.
pub fn synergistic_predictability(
    info: &TripleInfo,
    predictors: (usize, usize),
    target: usize,
    redundancy: f64,
) -> Result<f64> {
    let (a, b) = predictors;
    let ia = info.mi(Pair::of(a, target)?);
    let ib = info.mi(Pair::of(b, target)?);
    Ok(info.joint_mi(a, b, target)? - (ia - redundancy) - (ib - redundancy) - redundancy)
}

/// Checks axioms (1)-(3) for a candidate shared-information value in all
/// three predictor/target roles.
pub fn check_shared_axioms(info: &TripleInfo, red: f64) -> Result<()> {
    for target in 0..3 {
        check_predictability_axioms(info, other_two(target), target, red)?;
    }
    Ok(())
}

/// Symmetrizes a redundant-predictability measure by taking the minimum of
/// its three directed values.
pub fn canonical_symmetrization(
    d: &dyn RedundantPredictability,
    p: &JointPmf,
    units: Units,
) -> Result<SymmetricDecomposition> {
    let info = TripleInfo::from_pmf(p, units)?;
    let mut red = f64::INFINITY;
    for target in 0..3 {
        let (a, b) = other_two(target);
        let r = d.redundancy(p, (a, b), target, units)?;
        let swapped = d.redundancy(p, (b, a), target, units)?;
        if (r - swapped).abs() > IDENTITY_TOL {
            return Err(Error::InvalidPredictability {
                axiom: 4,
                detail: format!(
                    "{}: swapping predictors of X{} changes the redundancy by {:e}",
                    d.name(),
                    target + 1,
                    r - swapped
                ),
            });
        }
        check_predictability_axioms(&info, (a, b), target, r)?;
        red = red.min(r);
    }
    SymmetricDecomposition::from_shared(&info, red)
}

/// Closed form when `Xi` and `Xj` are independent: no shared information and
/// `Syn = I(Xi;Xj|Xk)`.
pub fn decompose_pairwise_independent(
    p: &JointPmf,
    independent: (usize, usize),
    units: Units,
) -> Result<SymmetricDecomposition> {
    let info = TripleInfo::from_pmf(p, units)?;
    pairwise_independent_from_info(&info, independent)
}

pub(crate) fn pairwise_independent_from_info(
    info: &TripleInfo,
    independent: (usize, usize),
) -> Result<SymmetricDecomposition> {
    let (i, j) = independent;
    let pair = Pair::of(i, j)?;
    if info.mi(pair) >= ZERO_INFO_TOL {
        return Err(Error::NotPairwiseIndependent {
            first: i,
            second: j,
            mi: info.mi(pair),
        });
    }
    let k = pair.third();
    let mut un = [0.0; 3];
    un[Pair::of(i, k)?.index()] = info.mi(Pair::of(i, k)?);
    un[Pair::of(j, k)?.index()] = info.mi(Pair::of(j, k)?);
    Ok(SymmetricDecomposition {
        red: 0.0,
        un,
        syn: info.cmi(pair),
        unique: true,
        witness: Some(Witness::MutualInformation(pair)),
        interval: info.shared_bounds(),
        units: info.units,
        clamped: Vec::new(),
    })
}

/// Closed form for a Markov chain `first - middle - last`: the shared
/// information is `I(X_first; X_last)` and there is no synergy.
pub fn decompose_markov(p: &JointPmf, middle: usize, units: Units) -> Result<SymmetricDecomposition> {
    let info = TripleInfo::from_pmf(p, units)?;
    markov_from_info(&info, middle)
}

pub(crate) fn markov_from_info(info: &TripleInfo, middle: usize) -> Result<SymmetricDecomposition> {
    if middle > 2 {
        return Err(Error::InvalidSubset(format!("no variable {middle}")));
    }
    let (first, last) = other_two(middle);
    let ends = Pair::of(first, last)?;
    if info.cmi(ends) >= ZERO_INFO_TOL {
        return Err(Error::NotMarkov {
            middle,
            cmi: info.cmi(ends),
        });
    }
    let red = info.mi(ends);
    let mut clamped = Vec::new();
    let mut un = [0.0; 3];
    for outer in [first, last] {
        let pair = Pair::of(outer, middle)?;
        un[pair.index()] = clamp_term(info.mi(pair) - red, pair.label(), &mut clamped)?;
    }
    Ok(SymmetricDecomposition {
        red,
        un,
        syn: 0.0,
        unique: true,
        witness: Some(Witness::ConditionalMutualInformation(ends)),
        interval: info.shared_bounds(),
        units: info.units,
        clamped,
    })
}

/// Decomposition from precomputed measures: the closed forms when the
/// decomposition is unique, otherwise the min-MI point with its interval.
pub fn decompose_info(info: &TripleInfo) -> Result<SymmetricDecomposition> {
    let status = Uniqueness::from_info(info);
    match status.witness {
        Some(Witness::MutualInformation(pair)) => pairwise_independent_from_info(info, pair.vars()),
        Some(Witness::ConditionalMutualInformation(pair)) => markov_from_info(info, pair.third()),
        None => SymmetricDecomposition::from_shared(info, info.shared_bounds().1),
    }
}

/// Default decomposition of a discrete triple.
pub fn decompose(p: &JointPmf, units: Units) -> Result<SymmetricDecomposition> {
    decompose_info(&TripleInfo::from_pmf(p, units)?)
}

/// Three-layer split of the joint entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layers {
    /// `H_(1)`: exclusive information.
    pub exclusive: f64,
    /// `ΔH_(2)`: sum of private information.
    pub private: f64,
    /// `ΔH_(3) = Red + 2 Syn`.
    pub triple: f64,
}

impl Layers {
    pub fn total(&self) -> f64 {
        self.exclusive + self.private + self.triple
    }
}

/// Splits `H(X1,X2,X3)` into `H_(1) + ΔH_(2) + ΔH_(3)` using `d`.
pub fn entropy_three_layer(p: &JointPmf, d: &SymmetricDecomposition) -> Result<Layers> {
    let info = TripleInfo::from_pmf(p, d.units)?;
    d.check_against(&info)?;
    let layers = Layers {
        exclusive: info.exclusive.unwrap_or_default(),
        private: d.private_total(),
        triple: d.red + 2.0 * d.syn,
    };
    let joint = info.joint_entropy.unwrap_or_default();
    if (layers.total() - joint).abs() > IDENTITY_TOL {
        return Err(Error::Consistency(format!(
            "layers sum to {} but H(X) = {joint}",
            layers.total()
        )));
    }
    Ok(layers)
}

/// Result of searching for the most synergistic function of two
/// independent uniform `K`-ary inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SynergySearch {
    pub k: usize,
    /// Whether every function table was evaluated.
    pub exhaustive: bool,
    /// Output for inputs `(n, m)` at position `n * K + m`.
    pub best_table: Vec<usize>,
    pub best_synergy: f64,
    /// All tables reaching the maximum (only the verified table when not exhaustive).
    pub maximizers: Vec<Vec<usize>>,
    /// Upper bound `log K`.
    pub bound: f64,
    pub units: Units,
}

/// Joint pmf of `(X1, X2, F(X1, X2))` with independent uniform inputs.
pub fn function_triple(k: usize, table: &[usize]) -> Result<JointPmf> {
    if table.len() != k * k || table.iter().any(|&z| z >= k) {
        return Err(Error::InvalidDistribution(format!(
            "a function table over {k}x{k} inputs needs {} outputs in 0..{k}",
            k * k
        )));
    }
    let mass = 1.0 / (k * k) as f64;
    JointPmf::from_fn(vec![k, k, k], |x| {
        if table[x[0] * k + x[1]] == x[2] {
            mass
        } else {
            0.0
        }
    })
}

/// Synergy of `F(X1, X2)` for independent uniform inputs.
pub fn function_synergy(k: usize, table: &[usize], units: Units) -> Result<f64> {
    Ok(decompose_pairwise_independent(&function_triple(k, table)?, (0, 1), units)?.syn)
}

/// Table of `F*(n, m) = n + m mod K`.
pub fn modular_sum_table(k: usize) -> Vec<usize> {
    (0..k * k).map(|idx| (idx / k + idx % k) % k).collect()
}

/// Maximal synergy over functions of two independent uniform `K`-ary inputs.
///
/// For `K = 2` all 16 tables are scanned; ties keep the lexicographically
/// first table. For `3 <= K <= 8` the modular sum is evaluated against the
/// `log K` bound.
pub fn max_synergy_search(k: usize, units: Units) -> Result<SynergySearch> {
    if !(2..=8).contains(&k) {
        return Err(Error::UnsupportedSize(format!(
            "synergy search supports 2 <= K <= 8, got {k}"
        )));
    }
    let bound = units.log(k as f64);
    if k == 2 {
        let mut best: Option<(Vec<usize>, f64)> = None;
        let mut scored = Vec::with_capacity(16);
        for code in 0..16usize {
            let table: Vec<usize> = (0..4).map(|bit| (code >> (3 - bit)) & 1).collect();
            let syn = function_synergy(2, &table, units)?;
            if best.as_ref().is_none_or(|(_, b)| syn > *b + ZERO_INFO_TOL) {
                best = Some((table.clone(), syn));
            }
            scored.push((table, syn));
        }
        let (best_table, best_synergy) = best.expect("16 candidates");
        let maximizers = scored
            .into_iter()
            .filter(|(_, s)| (s - best_synergy).abs() < ZERO_INFO_TOL)
            .map(|(t, _)| t)
            .collect();
        return Ok(SynergySearch {
            k,
            exhaustive: true,
            best_table,
            best_synergy,
            maximizers,
            bound,
            units,
        });
    }
    let table = modular_sum_table(k);
    let syn = function_synergy(k, &table, units)?;
    Ok(SynergySearch {
        k,
        exhaustive: false,
        best_table: table.clone(),
        best_synergy: syn,
        maximizers: vec![table],
        bound,
        units,
    })
}
