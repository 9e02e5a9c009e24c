use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("bad number {0}")]
    Number(String),
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("division by a non-constant expression")]
    NonConstantDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Unexpected(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BautinError {
    #[error("jet order {requested} outside 1..={max}")]
    OrderOutOfRange { requested: usize, max: usize },
    #[error("appendix identity for {identity} fails; residual {residual}")]
    TranscriptionMismatch { identity: String, residual: String },
    #[error("could not read transcribed formula {name}: {source}")]
    Transcription { name: &'static str, source: ParseError },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("imaginary part of the linear coefficient is zero; the origin is not a focus of the assumed form")]
    ZeroImaginaryPart,
    #[error("coefficients violate form {form}: {reason}")]
    InvalidForm { form: &'static str, reason: String },
    #[error("field is not in the form with A = 1")]
    FormMismatch,
    #[error("the singular set contains a line (singular field)")]
    Degenerate,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoincareError {
    #[error("denominator 1 + w g collapsed to {denominator:e} at theta = {theta}")]
    SingularCrossing { theta: f64, denominator: f64 },
    #[error("|w| reached {modulus:e} at theta = {theta}")]
    Escape { theta: f64, modulus: f64 },
    #[error("step size underflow ({step:e}) at theta = {theta}")]
    StepFailure { theta: f64, step: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("the trigonometric polynomial vanishes identically")]
    ZeroPolynomial,
    #[error("no sample point is at distance {alpha} from the roots")]
    EmptyRegion { alpha: f64 },
}
