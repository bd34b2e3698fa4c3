use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division left a nonzero residue")]
    InexactDivision,
    #[error("unsupported root datum: {0}")]
    UnsupportedType(String),
    #[error("invalid Cartan data: {0}")]
    InvalidCartanData(String),
    #[error("point does not lie in the lattice: {0}")]
    LatticeMismatch(String),
    #[error("rational function has no expansion in the negative cone: {0}")]
    NonExpandable(String),
    #[error("q-exponent {0} is not representable with the configured root of q")]
    UnrepresentablePairing(String),
    #[error("not a minuscule or quasi-minuscule coweight: {0}")]
    NotSpecialCoweight(String),
    #[error("polynomial is not W0-invariant")]
    NotSymmetric,
    #[error("operator is not an invertible generator")]
    NotInvertible,
    #[error("eigenvalue collision between {0} and {1}")]
    SpectrumCollision(String, String),
    #[error("spectral point lies in the singular set")]
    SingularSpectralPoint,
    #[error("verification height {0} exceeds series height {1}")]
    HeightBudgetExceeded(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("lattice step lies outside the orthogonal complement: {0}")]
    StepOutsideXi(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::InexactDivision => "inexact_division",
            Error::UnsupportedType(_) => "unsupported_type",
            Error::InvalidCartanData(_) => "invalid_cartan_data",
            Error::LatticeMismatch(_) => "lattice_mismatch",
            Error::NonExpandable(_) => "non_expandable",
            Error::UnrepresentablePairing(_) => "unrepresentable_pairing",
            Error::NotSpecialCoweight(_) => "not_special_coweight",
            Error::NotSymmetric => "not_symmetric",
            Error::NotInvertible => "not_invertible",
            Error::SpectrumCollision(..) => "spectrum_collision",
            Error::SingularSpectralPoint => "singular_spectral_point",
            Error::HeightBudgetExceeded(..) => "height_budget_exceeded",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::StepOutsideXi(_) => "step_outside_xi",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
