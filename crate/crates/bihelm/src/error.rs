//! Error taxonomy for the symbolic engine, geometry layer, and solvers.

use thiserror::Error;

/// Failures surfaced by symbolic construction, simplification, and
/// evaluation.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum SymbolicError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("exponent out of supported range")]
    ExponentOverflow,

    #[error("jet order {0} outside 1..=4")]
    JetOrderOutOfRange(u8),

    #[error("coordinate index {index} outside chart of dimension {dim}")]
    CoordOutOfRange { index: usize, dim: usize },

    #[error("cannot differentiate an expression containing jet variables by a base coordinate")]
    DifferentiateJet,

    #[error("unbound symbol during evaluation: {0}")]
    UnboundSymbol(String),

    #[error("function {func} undefined at the given constant argument")]
    UndefinedValue { func: &'static str },

    #[error("evaluation produced a non-finite value")]
    NonFiniteResult,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Failures in metric handling and derived geometric data.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeometryError {
    #[error("metric description is not valid JSON: {0}")]
    Json(String),

    #[error("metric must be square and at least 1x1, got {rows} rows with row lengths {cols:?}")]
    BadShape { rows: usize, cols: Vec<usize> },

    #[error("name `{0}` is reserved or not a valid identifier")]
    ReservedName(String),

    #[error("name `{0}` is declared more than once")]
    DuplicateName(String),

    #[error("metric entry ({i},{j}) contains jet variables")]
    JetEntry { i: usize, j: usize },

    #[error("contravariant metric is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("metric determinant is identically zero")]
    Degenerate,

    #[error("metric entry ({i},{j}): {source}")]
    Entry {
        i: usize,
        j: usize,
        source: SymbolicError,
    },

    #[error("only 2-dimensional charts have a scalar curvature here, got dimension {0}")]
    CurvatureDimension(usize),

    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Failures in separation analysis and constraint handling.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum SeparationError {
    #[error("coordinate {0} has identically zero diagonal metric component; the lifted field is undefined")]
    NullCoordinate(usize),

    #[error("separation constant must be coordinate- and jet-free")]
    LambdaNotConstant,

    #[error("constraint target must be a single jet variable, got {0:?}")]
    BadConstraintTarget(String),

    #[error("constraint description is not valid JSON: {0}")]
    Json(String),

    #[error("constant name `{0}` is invalid or clashes with an existing name")]
    BadConstantName(String),

    #[error("constraint set defines `{0}` more than once")]
    DuplicateTarget(String),

    #[error("relation for `{0}` mentions its own target on the right-hand side")]
    SelfReference(String),

    #[error("constraint substitution did not reach a fixed point; relations are likely cyclic")]
    RestrictionDiverged,

    #[error("constraint relation for {target}: {source}")]
    Relation {
        target: String,
        source: SymbolicError,
    },

    #[error("constant {name} does not involve any jet variable to solve for")]
    ConstantWithoutJet { name: String },

    #[error("constant {name}: highest jet enters nonlinearly, cannot solve")]
    ConstantNotSolvable { name: String },

    #[error(
        "expression mixes coordinates {0:?} in a single term and does not split by coordinate"
    )]
    InvalidSplit(Vec<usize>),

    #[error("profile is not of the admissible second-order kind: {0}")]
    ProfileNotLiouville(String),

    #[error("reduction left an odd power of the first derivative")]
    OddDerivativePower,

    #[error("denominator depends on derivatives of the profile")]
    DerivativeInDenominator,

    #[error(transparent)]
    Geometry(#[from] GeometryError),

    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Failures in the plate solver and special-function layer.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum PlateError {
    #[error("angular index {0} outside supported range 0..=10")]
    OrderOutOfRange(i64),

    #[error("argument {0} outside supported range 0..=50")]
    ArgumentOutOfRange(f64),

    #[error("requested mode index {m} but only {found} frequency roots found in the search window")]
    RootNotFound { m: usize, found: usize },

    #[error("physical parameter {name} must be positive, got {value}")]
    BadParameter { name: &'static str, value: f64 },
}
