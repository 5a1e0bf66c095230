use thiserror::Error;

/// Errors surfaced by the numerical core and the operator-level routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The iterative singular value factorization did not converge.
    #[error("singular value iteration did not converge")]
    NonConvergence,

    /// An inversion was refused: the operand is singular or its condition
    /// estimate exceeds the configured ceiling.
    #[error("numerically singular: condition estimate {cond:.3e} exceeds {limit:.3e}")]
    Singular { cond: f64, limit: f64 },

    /// The two subspaces do not form a direct decomposition of the ambient space.
    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),

    /// The perturbation smallness gate a·‖T⁺‖ + b·‖TT⁺‖ < 1 is violated.
    #[error("perturbation gate failed: a·‖T⁺‖ + b·‖TT⁺‖ = {gate:.6} ≥ 1")]
    GateFailed { gate: f64 },

    /// The perturbed operator violates the range/null-space condition, so the
    /// closed-form perturbed pseudoinverse is not defined.
    #[error("perturbed pseudoinverse not produced by formula: R(T̄) ∩ N(T⁺) ≠ {{0}}")]
    ConditionFailed,

    /// Hypotheses of an approximate-solution request are violated.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Shape or dimension mismatch between operands.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A matrix file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
