use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("the trivial class has no primitive root")]
    TrivialClass,

    #[error("invalid surface presentation: {0}")]
    Surface(String),

    #[error("letter {letter} out of range for a surface with {generators} generators")]
    LetterOutOfRange { letter: char, generators: usize },

    #[error("coincident endpoints: rays agree beyond the comparison bound")]
    CoincidentEndpoints,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("class {0} is not primitive")]
    NotPrimitive(String),

    #[error("invalid holonomy: {0}")]
    Holonomy(String),

    #[error("element is not hyperbolic (trace {0})")]
    NotHyperbolic(f64),

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("enumeration radius insufficient: crossing set still changing at radius {0}")]
    RadiusInsufficient(usize),

    #[error("near-tangent crossing of {1} (|cos phi| = {0})")]
    NearTangent(f64, String),

    #[error("crossing lost along twist at t = {0}")]
    CrossingLost(f64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
