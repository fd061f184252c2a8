use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} must be a power of two and at least 8")]
    InvalidGrid(usize),

    #[error("grid mismatch: n = {0} vs n = {1}")]
    GridMismatch(usize, usize),

    #[error("coefficient array has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },

    #[error("field violates Hermitian symmetry (max asymmetry {0:e})")]
    SymmetryViolation(f64),

    #[error("Lebesgue exponent must lie in [1, inf], got {0}")]
    InvalidExponent(f64),

    #[error("shell index {q} outside [-1, {q_max}]")]
    ShellIndex { q: i32, q_max: i32 },

    #[error("invalid cutoff profile: {0}")]
    InvalidProfile(String),

    #[error("ratio undefined: zero denominator")]
    UndefinedRatio,

    #[error("CFL violation at t = {t}: Courant number {courant} exceeds 0.5")]
    Cfl { t: f64, courant: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("unknown {kind} '{name}' (available: {available})")]
    Unknown {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("snapshot format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the numerics rather than by I/O or usage.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SymmetryViolation(_)
                | Error::UndefinedRatio
                | Error::Cfl { .. }
                | Error::Inconsistency(_)
        )
    }
}
