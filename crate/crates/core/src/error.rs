use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid variable subset: {0}")]
    InvalidSubset(String),

    #[error("conditioning event has zero probability")]
    DegenerateCondition,

    #[error("relative entropy is infinite: {0}")]
    AbsoluteContinuity(String),

    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("infeasible constraints: {0}")]
    InfeasibleConstraints(String),

    #[error("iterative fitting did not converge after {sweeps} sweeps (residual {residual:e})")]
    ConvergenceFailure { sweeps: usize, residual: f64 },

    #[error("undefined fraction: {0}")]
    UndefinedFraction(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("predictability measure violates axiom {axiom}: {detail}")]
    InvalidPredictability { axiom: u8, detail: String },

    #[error("variables {first} and {second} are not pairwise independent (I = {mi:e})")]
    NotPairwiseIndependent { first: usize, second: usize, mi: f64 },

    #[error("variables do not form a Markov chain through {middle} (conditional MI = {cmi:e})")]
    NotMarkov { middle: usize, cmi: f64 },

    #[error("information is infinite: {0}")]
    InfiniteInformation(String),

    #[error("invalid Gaussian parameters: {0}")]
    InvalidGaussian(String),

    #[error("correlations must satisfy alpha >= beta >= gamma >= 0; reorder variables by {permutation:?}")]
    ReorderRequired { permutation: [usize; 3] },

    #[error("infeasible latent parameters: {0}")]
    InfeasibleParameters(String),
}
