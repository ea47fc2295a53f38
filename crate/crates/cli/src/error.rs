use sigstrength::charset::CharsetError;
use sigstrength::lattice::LatticeError;
use sigstrength::oracle::OracleError;
use sigstrength::schemes::SchemeError;
use sigstrength::strength::StrengthError;

/// Failure classes, one per exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Unsupported(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::TooManyPoints { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<CharsetError> for CliError {
    fn from(e: CharsetError) -> Self {
        match e {
            CharsetError::OrbitNotClosed(_) | CharsetError::NoTermination(_) => CliError::Resource(e.to_string()),
            CharsetError::RankingMismatch => CliError::Parse(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<StrengthError> for CliError {
    fn from(e: StrengthError) -> Self {
        match e {
            StrengthError::Charset(c) => c.into(),
            StrengthError::Lattice(l) => l.into(),
            StrengthError::System(s) => CliError::Parse(s.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::NoForm(..) | SchemeError::NotDerivable => CliError::Unsupported(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget(_) | OracleError::NoStabilization { .. } => CliError::Resource(e.to_string()),
            OracleError::Lattice(l) => l.into(),
            OracleError::Scheme(s) => s.into(),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}
