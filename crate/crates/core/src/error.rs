use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {re}+{im}i is not inside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("not an SU(1,1) element: |alpha|^2 - |beta|^2 = {det}")]
    NotInGroup { det: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature under-resolved: successive refinements differ by {change:e} (limit {tolerance:e})")]
    QuadratureUnderResolved { change: f64, tolerance: f64 },

    #[error("spectral parameter {lambda} is a singular point of the c-function")]
    SpectralSingularity { lambda: f64 },

    #[error("field is not effectively supported inside the grid: outer-ring mass fraction {fraction:e}")]
    SupportOverflow { fraction: f64 },

    #[error("spectral field does not decay at the truncation edge: last-row mass fraction {fraction:e}")]
    SpectralTruncation { fraction: f64 },

    #[error("field is not K-invariant: angular variation {variation:e}")]
    NotRadial { variation: f64 },

    #[error("incompatible grids: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
