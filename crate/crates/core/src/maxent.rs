//! Maximum-entropy projections onto k-marginal constraints and the
//! external/internal entropy spectrum.
//!
//! `H^(k)` is the largest joint entropy compatible with all k-marginals of
//! a distribution; the increments `ΔH^(k) = H^(k-1) - H^(k)` add up to the
//! total correlation. Projections for `k >= 2` are fitted by iterative
//! proportional fitting (IPF).

use crate::decomposition::{decompose_info, Layers, SymmetricDecomposition, TripleInfo, Uniqueness};
use crate::distributions::JointPmf;
use crate::lp::{maximal_support, Support};
use crate::measures::{conditional_mutual_information, entropy, kl_divergence, total_correlation};
use crate::{Error, Result, Units};

/// Largest L1 deviation between a fitted and a target marginal that counts
/// as converged.
pub const IPF_TOLERANCE: f64 = 1e-10;

/// Sweep cap for one projection.
pub const IPF_MAX_SWEEPS: usize = 100_000;

/// Sweeps attempted from the uniform start before the feasible support is
/// computed explicitly.
const WARM_SWEEPS: usize = 2_000;

/// Agreement required between marginals that share variables.
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Largest number of variables the spectrum is computed for.
pub const MAX_SPECTRUM_VARS: usize = 4;

/// Target marginals on every k-subset of the variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalConstraintSet {
    cardinalities: Vec<usize>,
    order: usize,
    subsets: Vec<Vec<usize>>,
    marginals: Vec<JointPmf>,
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

impl MarginalConstraintSet {
    /// The k-marginals of `p`.
    pub fn from_pmf(p: &JointPmf, order: usize) -> Result<Self> {
        let n = p.num_vars();
        if order == 0 || order > n {
            return Err(Error::InvalidSubset(format!(
                "marginal order {order} outside 1..={n}"
            )));
        }
        let subsets = k_subsets(n, order);
        let marginals = subsets
            .iter()
            .map(|s| p.marginalize(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cardinalities: p.cardinalities().to_vec(),
            order,
            subsets,
            marginals,
        })
    }

    /// Constraint set from explicit marginals, one per k-subset in
    /// lexicographic order; each marginal lists its variables in increasing order.
    pub fn new(cardinalities: Vec<usize>, order: usize, marginals: Vec<JointPmf>) -> Result<Self> {
        let n = cardinalities.len();
        if order == 0 || order > n {
            return Err(Error::InvalidSubset(format!(
                "marginal order {order} outside 1..={n}"
            )));
        }
        let subsets = k_subsets(n, order);
        if subsets.len() != marginals.len() {
            return Err(Error::InfeasibleConstraints(format!(
                "expected {} marginals of order {order}, got {}",
                subsets.len(),
                marginals.len()
            )));
        }
        for (s, m) in subsets.iter().zip(&marginals) {
            let expect: Vec<usize> = s.iter().map(|&i| cardinalities[i]).collect();
            if m.cardinalities() != expect.as_slice() {
                return Err(Error::InfeasibleConstraints(format!(
                    "marginal on {s:?} has shape {:?}, expected {expect:?}",
                    m.cardinalities()
                )));
            }
        }
        let set = Self {
            cardinalities,
            order,
            subsets,
            marginals,
        };
        set.check_consistency()?;
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn marginals(&self) -> &[JointPmf] {
        &self.marginals
    }

    /// Every pair of marginals agrees on the variables they share.
    pub fn check_consistency(&self) -> Result<()> {
        for a in 0..self.subsets.len() {
            for b in a + 1..self.subsets.len() {
                let shared: Vec<usize> = self.subsets[a]
                    .iter()
                    .copied()
                    .filter(|i| self.subsets[b].contains(i))
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let pos = |s: &[usize]| -> Vec<usize> {
                    shared
                        .iter()
                        .map(|i| s.iter().position(|j| j == i).unwrap())
                        .collect()
                };
                let ma = self.marginals[a].marginalize(&pos(&self.subsets[a]))?;
                let mb = self.marginals[b].marginalize(&pos(&self.subsets[b]))?;
                let diff = ma.max_abs_diff(&mb);
                if diff > CONSISTENCY_TOL {
                    return Err(Error::InfeasibleConstraints(format!(
                        "marginals on {:?} and {:?} disagree on {shared:?} by {diff:e}",
                        self.subsets[a], self.subsets[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest L1 deviation of `q`'s marginals from the targets.
    pub fn residual(&self, q: &JointPmf) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (s, target) in self.subsets.iter().zip(&self.marginals) {
            let m = q.marginalize(s)?;
            let l1: f64 = m
                .probabilities()
                .iter()
                .zip(target.probabilities())
                .map(|(a, b)| (a - b).abs())
                .sum();
            worst = worst.max(l1);
        }
        Ok(worst)
    }
}

/// Fitting options for [`maxent_projection_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IpfOptions {
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for IpfOptions {
    fn default() -> Self {
        Self {
            tolerance: IPF_TOLERANCE,
            max_sweeps: IPF_MAX_SWEEPS,
        }
    }
}

/// Maximum-entropy distribution for a constraint set, with fit diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub pmf: JointPmf,
    /// Largest L1 marginal deviation at exit.
    pub residual: f64,
    pub sweeps: usize,
    pub converged: bool,
}

impl Projection {
    /// The fitted pmf, or a convergence error carrying the residual.
    pub fn into_converged(self) -> Result<JointPmf> {
        if self.converged {
            Ok(self.pmf)
        } else {
            Err(Error::ConvergenceFailure {
                sweeps: self.sweeps,
                residual: self.residual,
            })
        }
    }
}

/// Maximum-entropy distribution consistent with all constraints.
pub fn maxent_projection(c: &MarginalConstraintSet) -> Result<Projection> {
    maxent_projection_with(c, IpfOptions::default())
}

struct Fitter<'a> {
    c: &'a MarginalConstraintSet,
    // for each constraint, the marginal cell of every joint cell
    maps: Vec<Vec<usize>>,
    len: usize,
}

impl<'a> Fitter<'a> {
    fn new(c: &'a MarginalConstraintSet) -> Self {
        let cards = &c.cardinalities;
        let len: usize = cards.iter().product();
        let maps = c
            .subsets
            .iter()
            .map(|s| {
                let mut outcome = vec![0; cards.len()];
                (0..len)
                    .map(|_| {
                        let idx = s.iter().fold(0, |acc, &i| acc * cards[i] + outcome[i]);
                        crate::distributions::advance(&mut outcome, cards);
                        idx
                    })
                    .collect()
            })
            .collect();
        Self { c, maps, len }
    }

    fn marginal(&self, which: usize, q: &[f64]) -> Vec<f64> {
        let mut m = vec![0.0; self.c.marginals[which].len()];
        for (cell, &x) in self.maps[which].iter().zip(q) {
            m[*cell] += x;
        }
        m
    }

    fn residual(&self, q: &[f64]) -> f64 {
        (0..self.maps.len())
            .map(|w| {
                self.marginal(w, q)
                    .iter()
                    .zip(self.c.marginals[w].probabilities())
                    .map(|(a, b)| (a - b).abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    fn sweep(&self, q: &mut [f64]) {
        for w in 0..self.maps.len() {
            let m = self.marginal(w, q);
            let target = self.c.marginals[w].probabilities();
            let ratio: Vec<f64> = m
                .iter()
                .zip(target)
                .map(|(&cur, &t)| if cur > 0.0 { t / cur } else { 0.0 })
                .collect();
            for (x, cell) in q.iter_mut().zip(&self.maps[w]) {
                *x *= ratio[*cell];
            }
        }
    }

    /// Runs sweeps until the residual drops below tolerance or `budget` is spent.
    fn run(&self, q: &mut [f64], budget: usize, tolerance: f64) -> (usize, f64) {
        let mut residual = self.residual(q);
        let mut sweeps = 0;
        while residual >= tolerance && sweeps < budget {
            self.sweep(q);
            sweeps += 1;
            residual = self.residual(q);
        }
        (sweeps, residual)
    }

    fn support(&self) -> Result<Vec<bool>> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (w, target) in self.c.marginals.iter().enumerate() {
            for (cell, &t) in target.probabilities().iter().enumerate() {
                rows.push(
                    self.maps[w]
                        .iter()
                        .map(|&m| if m == cell { 1.0 } else { 0.0 })
                        .collect(),
                );
                rhs.push(t);
            }
        }
        match maximal_support(&rows, &rhs, self.len) {
            Support::Feasible { mask } => Ok(mask),
            Support::Infeasible { violation } => Err(Error::InfeasibleConstraints(format!(
                "no joint distribution has these marginals (phase-one residual {violation:e})"
            ))),
        }
    }
}

fn uniform_on(mask: &[bool]) -> Vec<f64> {
    let count = mask.iter().filter(|&&m| m).count().max(1);
    mask.iter()
        .map(|&m| if m { 1.0 / count as f64 } else { 0.0 })
        .collect()
}

/// [`maxent_projection`] with explicit tolerance and sweep cap.
///
/// Sweeps cycle through the k-subsets in lexicographic order, starting from
/// the uniform tensor. When the first [`WARM_SWEEPS`] sweeps do not reach the
/// tolerance, the largest support compatible with the constraints is computed
/// by linear programming and fitting restarts from the uniform tensor on that
/// support; this removes the slow approach to cells that the constraints
/// force to zero only jointly.
pub fn maxent_projection_with(c: &MarginalConstraintSet, opts: IpfOptions) -> Result<Projection> {
    let n = c.cardinalities.len();
    if c.order == 1 {
        let cards = c.cardinalities.clone();
        let unary: Vec<&[f64]> = c.marginals.iter().map(|m| m.probabilities()).collect();
        let mut outcome = vec![0; n];
        let len: usize = cards.iter().product();
        let probs = (0..len)
            .map(|_| {
                let v = outcome.iter().enumerate().map(|(i, &x)| unary[i][x]).product();
                crate::distributions::advance(&mut outcome, &cards);
                v
            })
            .collect();
        return Ok(Projection {
            pmf: JointPmf::from_parts_unchecked(cards, probs),
            residual: 0.0,
            sweeps: 0,
            converged: true,
        });
    }
    if c.order == n {
        return Ok(Projection {
            pmf: c.marginals[0].clone(),
            residual: 0.0,
            sweeps: 0,
            converged: true,
        });
    }
    c.check_consistency()?;
    let fitter = Fitter::new(c);
    let mut q = vec![1.0 / fitter.len as f64; fitter.len];
    let warm = opts.max_sweeps.min(WARM_SWEEPS);
    let (mut sweeps, mut residual) = fitter.run(&mut q, warm, opts.tolerance);
    if residual >= opts.tolerance && opts.max_sweeps > warm {
        let mask = fitter.support()?;
        q = uniform_on(&mask);
        let (more, r) = fitter.run(&mut q, opts.max_sweeps - warm, opts.tolerance);
        sweeps += more;
        residual = r;
    }
    Ok(Projection {
        pmf: JointPmf::from_parts_unchecked(c.cardinalities.clone(), q),
        residual,
        sweeps,
        converged: residual < opts.tolerance,
    })
}

/// External and internal entropy layers of a distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySpectrum {
    pub units: Units,
    /// `H^(1), ..., H^(N)`.
    pub external: Vec<f64>,
    /// `ΔH^(2), ..., ΔH^(N)` as entropy differences.
    pub external_increments: Vec<f64>,
    /// The same increments as `D(p^(k) || p^(k-1))`; `None` when the
    /// divergence is infinite.
    pub kl_increments: Vec<Option<f64>>,
    /// Marginal residual of each projection `k = 1..N`.
    pub residuals: Vec<f64>,
    /// Whether every projection met the IPF tolerance.
    pub converged: bool,
    /// `H_(1)`, then `H_(2)` and `H_(3)` when `N = 3`.
    pub internal: Vec<f64>,
    /// `ΔH_(2), ΔH_(3)` when `N = 3`.
    pub internal_increments: Vec<f64>,
    /// Decomposition behind the internal layers (`N = 3` only).
    pub decomposition: Option<SymmetricDecomposition>,
    pub joint_entropy: f64,
    pub tc: f64,
    pub dtc: f64,
    /// Increments that were slightly negative and set to zero.
    pub clamped: Vec<usize>,
}

/// Tolerance below zero accepted on an external increment before clamping.
pub const INCREMENT_CLAMP: f64 = 1e-8;

/// Computes the external layers `H^(k)` and, for three variables, the
/// internal layers from the default decomposition.
pub fn external_spectrum(p: &JointPmf, units: Units) -> Result<EntropySpectrum> {
    let n = p.num_vars();
    if n > MAX_SPECTRUM_VARS {
        return Err(Error::UnsupportedSize(format!(
            "entropy spectrum supports at most {MAX_SPECTRUM_VARS} variables, got {n}"
        )));
    }
    let all: Vec<usize> = (0..n).collect();
    let joint_entropy = entropy(p, &all, units)?;
    let mut projections = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    let mut converged = true;
    for k in 1..=n {
        let proj = maxent_projection(&MarginalConstraintSet::from_pmf(p, k)?)?;
        converged &= proj.converged;
        residuals.push(proj.residual);
        projections.push(proj.pmf);
    }
    let external: Vec<f64> = projections
        .iter()
        .map(|q| entropy(q, &all, units))
        .collect::<Result<_>>()?;
    let mut external_increments = Vec::with_capacity(n.saturating_sub(1));
    let mut kl_increments = Vec::with_capacity(n.saturating_sub(1));
    let mut clamped = Vec::new();
    for k in 1..n {
        let mut d = external[k - 1] - external[k];
        if d < 0.0 {
            if d < -INCREMENT_CLAMP && converged {
                return Err(Error::Consistency(format!(
                    "ΔH^({}) = {d:e} is negative",
                    k + 1
                )));
            }
            clamped.push(k + 1);
            d = 0.0;
        }
        external_increments.push(d);
        kl_increments.push(kl_divergence(&projections[k], &projections[k - 1], units).ok());
    }
    let tc = total_correlation(p, units)?;
    let exclusive = crate::measures::exclusive_information_sum(p, units)?;
    let dtc = crate::measures::dual_total_correlation(p, units)?;
    let (internal, internal_increments, decomposition) = if n == 3 {
        let info = TripleInfo::from_pmf(p, units)?;
        let d = decompose_info(&info)?;
        let layers = Layers {
            exclusive,
            private: d.private_total(),
            triple: d.red + 2.0 * d.syn,
        };
        (
            vec![
                layers.exclusive,
                layers.exclusive + layers.private,
                layers.total(),
            ],
            vec![layers.private, layers.triple],
            Some(d),
        )
    } else {
        (vec![exclusive], Vec::new(), None)
    };
    Ok(EntropySpectrum {
        units,
        external,
        external_increments,
        kl_increments,
        residuals,
        converged,
        internal,
        internal_increments,
        decomposition,
        joint_entropy,
        tc,
        dtc,
        clamped,
    })
}

/// Fraction of the total correlation not captured by the `k0`-marginals,
/// `D(p || p^(k0)) / TC`.
pub fn lost_tc_fraction(p: &JointPmf, k0: usize, units: Units) -> Result<f64> {
    let tc = total_correlation(p, units)?;
    if tc < 1e-12 {
        return Err(Error::UndefinedFraction(
            "total correlation is zero".into(),
        ));
    }
    let proj = maxent_projection(&MarginalConstraintSet::from_pmf(p, k0)?)?.into_converged()?;
    let lost = kl_divergence(p, &proj, units)?;
    Ok((lost / tc).clamp(0.0, 1.0))
}

/// Synergy of the pairwise maximum-entropy projection: exact when its
/// decomposition is unique, otherwise the feasible interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PmeSynergy {
    Exact(f64),
    Interval(f64, f64),
}

/// Split of the synergy into the part fixed by the pairwise marginals and
/// the part `ΔH^(3)` carried only by the full joint.
#[derive(Debug, Clone, PartialEq)]
pub struct SynergySplit {
    pub units: Units,
    /// `ΔH^(3) = H^(2) - H(X)`.
    pub delta_h3: f64,
    /// Synergy of the pairwise projection.
    pub pme_synergy: PmeSynergy,
    /// Synergy of the input itself when its decomposition is unique.
    pub synergy: Option<f64>,
    pub projection: Projection,
}

pub fn delta_h3_synergy_split(p: &JointPmf, units: Units) -> Result<SynergySplit> {
    if p.num_vars() != 3 {
        return Err(Error::UnsupportedSize(format!(
            "synergy split needs 3 variables, got {}",
            p.num_vars()
        )));
    }
    let projection = maxent_projection(&MarginalConstraintSet::from_pmf(p, 2)?)?;
    if !projection.converged {
        return Err(Error::ConvergenceFailure {
            sweeps: projection.sweeps,
            residual: projection.residual,
        });
    }
    let all = [0, 1, 2];
    let h2 = entropy(&projection.pmf, &all, units)?;
    let delta_h3 = crate::clamp_nonneg(h2 - entropy(p, &all, units)?, "ΔH^(3)")?;
    let pme_info = TripleInfo::from_pmf(&projection.pmf, units)?;
    let status = Uniqueness::from_info(&pme_info);
    let pme_synergy = if status.unique {
        PmeSynergy::Exact(decompose_info(&pme_info)?.syn)
    } else {
        let (lo, hi) = pme_info.synergy_bounds();
        PmeSynergy::Interval(lo, hi)
    };
    let info = TripleInfo::from_pmf(p, units)?;
    let synergy = if Uniqueness::from_info(&info).unique {
        Some(decompose_info(&info)?.syn)
    } else {
        None
    };
    Ok(SynergySplit {
        units,
        delta_h3,
        pme_synergy,
        synergy,
        projection,
    })
}

/// Joins `p12` over `(X1, X2)` and `p23` over `(X2, X3)` into the Markov
/// chain `p12 · p23 / p2`.
pub fn markov_join(p12: &JointPmf, p23: &JointPmf) -> Result<JointPmf> {
    if p12.num_vars() != 2 || p23.num_vars() != 2 {
        return Err(Error::InfeasibleConstraints(
            "markov_join takes two bivariate pmfs".into(),
        ));
    }
    let (n1, n2) = (p12.cardinalities()[0], p12.cardinalities()[1]);
    let n3 = p23.cardinalities()[1];
    if p23.cardinalities()[0] != n2 {
        return Err(Error::InfeasibleConstraints(format!(
            "middle alphabets differ: {n2} vs {}",
            p23.cardinalities()[0]
        )));
    }
    let m12 = p12.marginalize(&[1])?;
    let m23 = p23.marginalize(&[0])?;
    let diff = m12.max_abs_diff(&m23);
    if diff > CONSISTENCY_TOL {
        return Err(Error::InfeasibleConstraints(format!(
            "marginals of the middle variable disagree by {diff:e}"
        )));
    }
    let p2 = m12.probabilities();
    let joint = JointPmf::from_fn(vec![n1, n2, n3], |x| {
        if p2[x[1]] > 0.0 {
            p12.get(&[x[0], x[1]]) * p23.get(&[x[1], x[2]]) / p2[x[1]]
        } else {
            0.0
        }
    })?;
    Ok(joint)
}

/// `I(X1;X3|X2)` of a joined chain, exposed for diagnostics.
pub fn chain_residual(p: &JointPmf, units: Units) -> Result<f64> {
    conditional_mutual_information(p, &[0], &[2], &[1], units)
}
