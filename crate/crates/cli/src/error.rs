use symfq::counting::CountError;
use symfq::fields::FieldError;
use symfq::literal::ParseError;
use symfq::patterns::PatternError;
use symfq::rscodes::RsError;
use symfq::systems::SystemError;
use symfq::unipoly::PolyError;
use symfq::multipoly::symmetric::SymError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Parse(p) => CliError::Parse(p.to_string()),
            FieldError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse(p) => CliError::Parse(p.to_string()),
            PolyError::Field(f) => f.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SymError> for CliError {
    fn from(e: SymError) -> Self {
        match e {
            SymError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SystemError> for CliError {
    fn from(e: SystemError) -> Self {
        match e {
            SystemError::Budget { .. } | SystemError::ExpansionCap { .. } => CliError::Budget(e.to_string()),
            SystemError::Parse(p) => CliError::Parse(p.to_string()),
            SystemError::Field(f) => f.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Budget { .. } => CliError::Budget(e.to_string()),
            CountError::Predicate(_) => CliError::Parse(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        match e {
            PatternError::Budget { .. } | PatternError::TooLarge { .. } => CliError::Budget(e.to_string()),
            PatternError::Parse(p) => CliError::Parse(p.to_string()),
            PatternError::Field(f) => f.into(),
            PatternError::Poly(p) => p.into(),
            PatternError::System(s) => s.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<RsError> for CliError {
    fn from(e: RsError) -> Self {
        match e {
            RsError::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
