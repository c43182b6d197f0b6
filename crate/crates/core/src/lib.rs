//! Multivariate information measures and the symmetric decomposition of
//! joint entropy into shared, private and synergistic information.
//!
//! The crate works on two kinds of systems:
//!
//! * finite discrete joint distributions ([`JointPmf`]), for which every
//!   measure is computed by direct summation and maximum-entropy
//!   projections are fitted by iterative proportional fitting;
//! * zero-mean trivariate Gaussians ([`GaussianTriple`]), for which all
//!   quantities have closed forms in terms of the three correlations.
//!
//! For three variables the joint entropy splits as
//! `H(X) = H_(1) + ΔH_(2) + ΔH_(3)`, where `H_(1)` is the exclusive
//! information, `ΔH_(2)` the sum of the three private terms and
//! `ΔH_(3) = Red + 2·Syn`. See [`decomposition`] for the details.

pub mod decomposition;
pub mod distributions;
mod error;
pub mod gallery;
pub mod gaussian;
mod lp;
pub mod maxent;
pub mod measures;
pub mod netinfo;
mod units;

pub use decomposition::{
    canonical_symmetrization, decompose, decompose_markov, decompose_pairwise_independent,
    entropy_three_layer, max_synergy_search, predictability_min, red_min_mi, uniqueness_status,
    Layers, MinMiPredictability, Pair, RedundantPredictability, SymmetricDecomposition,
    TripleInfo, Uniqueness,
};
pub use distributions::{JointPmf, VariableSubset};
pub use error::{Error, Result};
pub use gaussian::{GaussianTriple, LatentWeights};
pub use maxent::{EntropySpectrum, MarginalConstraintSet, Projection};
pub use units::Units;

/// Absolute tolerance on the normalization of a probability tensor.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Negative residues of non-negative quantities smaller than this are
/// rounded to zero; larger ones are reported as errors.
pub const CLAMP_TOL: f64 = 1e-10;

/// Below this value (in the working units) an information quantity is
/// treated as zero when deciding uniqueness and checking preconditions.
pub const ZERO_INFO_TOL: f64 = 1e-9;

/// Rounds a small negative residue of a non-negative quantity to zero.
pub(crate) fn clamp_nonneg(value: f64, what: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value > -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!(
            "{what} is negative ({value:e}) beyond rounding tolerance"
        )))
    }
}
