use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not special unitary: {0}")]
    NotUnitary(String),

    #[error("state is not normalized (norm squared {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error(
        "classifier inconsistency: structural test says {class} (expects stabilizer dimension \
         {expected_dim}) but the stabilizer solver found dimension {solver_dim}"
    )]
    ClassifierInconsistency {
        class: String,
        expected_dim: usize,
        solver_dim: usize,
    },
}
