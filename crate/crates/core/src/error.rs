use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{line}:{column}: non-ground program: `{name}` is a variable")]
    NonGround { line: usize, column: usize, name: String },

    #[error("layer {0} is not a segment")]
    NotASegment(u32),

    #[error("the semantic kernel is undefined: the semantics yields no models")]
    KernelUndefined,

    #[error("enumeration over {count} atoms exceeds the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },

    #[error("unknown semantics `{0}`")]
    UnknownSemantics(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown reduction system `{0}`")]
    UnknownSystem(String),

    #[error("invalid operation set: {0}")]
    InvalidOpSet(String),

    #[error("the program contains default literals")]
    NotPositive,

    #[error("{0}")]
    NotAWitness(String),

    #[error("{0} is not an affix stable model semantics")]
    NotAsm(String),

    #[error("{0} does not use hypotheses")]
    NotAffixBased(String),

    #[error("unknown operation `{0}`")]
    UnknownOperation(String),

    #[error("operation `{operation}` needs `{argument}`")]
    MissingArgument { operation: String, argument: String },

    #[error("inconsistent type vector for {semantics}: {pattern}")]
    TableInconsistent { semantics: String, pattern: String },
}
