//! Zero-mean trivariate Gaussians: closed-form measures, the latent
//! construction and the min-MI decomposition.
//!
//! Correlations follow the convention `alpha = corr(X1,X2)`,
//! `beta = corr(X1,X3)`, `gamma = corr(X2,X3)`. Variances never enter an
//! information quantity; they are kept for covariance reconstruction.

use serde::{Deserialize, Serialize};

use crate::decomposition::{Pair, SymmetricDecomposition, TripleInfo};
use crate::{Error, Result, Units};

/// Slack allowed on the positive-semidefiniteness condition.
const PSD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianTriple {
    pub sigma: [f64; 3],
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl GaussianTriple {
    pub fn new(sigma: [f64; 3], alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let g = Self {
            sigma,
            alpha,
            beta,
            gamma,
        };
        g.validate()?;
        Ok(g)
    }

    /// Unit variances.
    pub fn standard(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new([1.0; 3], alpha, beta, gamma)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.sigma.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::InvalidGaussian(format!(
                "standard deviations must be positive, got {s}"
            )));
        }
        for (name, r) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !(r.is_finite() && r.abs() <= 1.0) {
                return Err(Error::InvalidGaussian(format!(
                    "{name} = {r} is not a correlation"
                )));
            }
        }
        let d = self.correlation_determinant();
        if d < -PSD_TOL {
            return Err(Error::InvalidGaussian(format!(
                "covariance is not positive semidefinite (1 + 2abg - a^2 - b^2 - g^2 = {d:e})"
            )));
        }
        Ok(())
    }

    /// `1 + 2 alpha beta gamma - alpha^2 - beta^2 - gamma^2`, the determinant
    /// of the correlation matrix.
    pub fn correlation_determinant(&self) -> f64 {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        1.0 + 2.0 * a * b * g - a * a - b * b - g * g
    }

    /// Correlation of a pair.
    pub fn rho(&self, pair: Pair) -> f64 {
        match pair {
            Pair::P12 => self.alpha,
            Pair::P13 => self.beta,
            Pair::P23 => self.gamma,
        }
    }

    pub fn correlation_matrix(&self) -> [[f64; 3]; 3] {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        [[1.0, a, b], [a, 1.0, g], [b, g, 1.0]]
    }

    pub fn covariance(&self) -> [[f64; 3]; 3] {
        let mut c = self.correlation_matrix();
        for (i, row) in c.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x *= self.sigma[i] * self.sigma[j];
            }
        }
        c
    }
}

fn half_log(ratio: f64, units: Units) -> f64 {
    units.from_nats(0.5 * ratio.ln())
}

fn require_nonsingular(g: &GaussianTriple) -> Result<f64> {
    g.validate()?;
    let d = g.correlation_determinant();
    if d <= 0.0 {
        return Err(Error::InfiniteInformation(format!(
            "singular covariance (determinant {d:e})"
        )));
    }
    Ok(d)
}

/// `I(Xi;Xj) = 1/2 log 1/(1 - rho^2)`.
pub fn gaussian_mi(g: &GaussianTriple, pair: Pair, units: Units) -> Result<f64> {
    g.validate()?;
    let r = g.rho(pair);
    let gap = 1.0 - r * r;
    if gap <= 0.0 {
        return Err(Error::InfiniteInformation(format!(
            "|corr| = 1 on pair {}",
            pair.label()
        )));
    }
    Ok(half_log(1.0 / gap, units))
}

/// `I(Xi;Xj|Xk) = 1/2 log[(1 - rho_ik^2)(1 - rho_jk^2) / D]`, with `k` the
/// variable outside `pair`.
pub fn gaussian_cmi(g: &GaussianTriple, pair: Pair, units: Units) -> Result<f64> {
    let d = require_nonsingular(g)?;
    let (i, j) = pair.vars();
    let k = pair.third();
    let rik = g.rho(Pair::of(i, k)?);
    let rjk = g.rho(Pair::of(j, k)?);
    Ok(half_log((1.0 - rik * rik) * (1.0 - rjk * rjk) / d, units).max(0.0))
}

/// `I(X1;X2;X3) = 1/2 log[D / ((1 - alpha^2)(1 - beta^2)(1 - gamma^2))]`.
pub fn gaussian_coinformation(g: &GaussianTriple, units: Units) -> Result<f64> {
    let d = require_nonsingular(g)?;
    let (a, b, c) = (g.alpha, g.beta, g.gamma);
    Ok(half_log(d / ((1.0 - a * a) * (1.0 - b * b) * (1.0 - c * c)), units))
}

/// `I(Xt; Xa Xb)` where `a, b` are the other two variables:
/// `1/2 log[(1 - rho_ab^2) / D]`.
pub fn gaussian_joint_mi(g: &GaussianTriple, target: usize, units: Units) -> Result<f64> {
    let d = require_nonsingular(g)?;
    if target > 2 {
        return Err(Error::InvalidSubset(format!("no variable {target}")));
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != target).collect();
    let r = g.rho(Pair::of(others[0], others[1])?);
    Ok(half_log((1.0 - r * r) / d, units))
}

/// Shannon quantities of a Gaussian triple in the form the decomposition
/// consumes.
pub fn gaussian_info(g: &GaussianTriple, units: Units) -> Result<TripleInfo> {
    require_nonsingular(g)?;
    let mut mi = [0.0; 3];
    let mut cmi = [0.0; 3];
    for pair in Pair::ALL {
        mi[pair.index()] = gaussian_mi(g, pair, units)?;
        cmi[pair.index()] = gaussian_cmi(g, pair, units)?;
    }
    Ok(TripleInfo {
        units,
        mi,
        cmi,
        co_information: gaussian_coinformation(g, units)?,
        joint_entropy: None,
        exclusive: None,
    })
}

/// Weights of the independent standard Gaussians `W123, W12, W13, W1, W2, W3`
/// that reproduce a triple with `alpha >= beta >= gamma >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatentWeights {
    pub s123: f64,
    pub s12: f64,
    pub s13: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl LatentWeights {
    /// Covariance of `sigma_i` times the latent combinations.
    pub fn covariance(&self, sigma: [f64; 3]) -> [[f64; 3]; 3] {
        // loadings on W123, W12, W13, W1, W2, W3
        let l = [
            [self.s123, self.s12, self.s13, self.s1, 0.0, 0.0],
            [self.s123, self.s12, 0.0, 0.0, self.s2, 0.0],
            [self.s123, 0.0, self.s13, 0.0, 0.0, self.s3],
        ];
        let mut c = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = l[i].iter().zip(&l[j]).map(|(x, y)| x * y).sum();
                c[i][j] = sigma[i] * sigma[j] * dot;
            }
        }
        c
    }

    /// Largest entrywise deviation between the synthesized covariance and
    /// that of `g`.
    pub fn reconstruction_error(&self, g: &GaussianTriple) -> f64 {
        let a = self.covariance(g.sigma);
        let b = g.covariance();
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (a[i][j] - b[i][j]).abs())
            .fold(0.0, f64::max)
    }
}

/// Latent construction of a triple whose correlations are ordered
/// `alpha >= beta >= gamma >= 0`.
///
/// Otherwise returns [`Error::ReorderRequired`] with the permutation of the
/// variables that would order them, if one exists. Requires
/// `1 - alpha - beta + gamma >= 0` so that `s1` is real.
pub fn latent_decomposition(g: &GaussianTriple) -> Result<LatentWeights> {
    g.validate()?;
    let (a, b, c) = (g.alpha, g.beta, g.gamma);
    if !(a >= b && b >= c && c >= 0.0) {
        return Err(match ordering_permutation(g) {
            Some(permutation) => Error::ReorderRequired { permutation },
            None => Error::InfeasibleParameters(format!(
                "correlations ({a}, {b}, {c}) cannot be made non-negative and ordered"
            )),
        });
    }
    let radicand = 1.0 - a - b + c;
    if radicand < -PSD_TOL {
        return Err(Error::InfeasibleParameters(format!(
            "1 - alpha - beta + gamma = {radicand:e} is negative"
        )));
    }
    Ok(LatentWeights {
        s123: c.sqrt(),
        s12: (a - c).sqrt(),
        s13: (b - c).sqrt(),
        s1: radicand.max(0.0).sqrt(),
        s2: (1.0 - a).sqrt(),
        s3: (1.0 - b).sqrt(),
    })
}

/// Relabeling `[new X1, new X2, new X3]` (as old indices) under which the
/// correlations satisfy `alpha >= beta >= gamma >= 0`, when all are
/// non-negative.
pub fn ordering_permutation(g: &GaussianTriple) -> Option<[usize; 3]> {
    if g.alpha < 0.0 || g.beta < 0.0 || g.gamma < 0.0 {
        return None;
    }
    // X1 must be the variable common to the two strongest links,
    // X2 its stronger partner
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms.into_iter().find(|p| {
        let q = permuted(g, *p);
        q.alpha >= q.beta && q.beta >= q.gamma
    })
}

/// The same triple with variables relabeled: new `Xi` is old `X_perm[i]`.
pub fn permuted(g: &GaussianTriple, perm: [usize; 3]) -> GaussianTriple {
    let r = |i: usize, j: usize| g.rho(Pair::of(perm[i], perm[j]).expect("distinct indices"));
    GaussianTriple {
        sigma: [g.sigma[perm[0]], g.sigma[perm[1]], g.sigma[perm[2]]],
        alpha: r(0, 1),
        beta: r(0, 2),
        gamma: r(1, 2),
    }
}

/// Shared information equal to the smallest pairwise mutual information,
/// with the remaining terms from the defining identities.
pub fn gaussian_decomposition(g: &GaussianTriple, units: Units) -> Result<SymmetricDecomposition> {
    let info = gaussian_info(g, units)?;
    SymmetricDecomposition::from_shared(&info, info.shared_bounds().1)
}

/// Redundant predictability of the other two variables about `target`:
/// the smaller of their mutual informations with it.
pub fn gaussian_redundant_predictability(g: &GaussianTriple, target: usize, units: Units) -> Result<f64> {
    require_nonsingular(g)?;
    if target > 2 {
        return Err(Error::InvalidSubset(format!("no variable {target}")));
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != target).collect();
    let a = gaussian_mi(g, Pair::of(others[0], target)?, units)?;
    let b = gaussian_mi(g, Pair::of(others[1], target)?, units)?;
    Ok(a.min(b))
}
