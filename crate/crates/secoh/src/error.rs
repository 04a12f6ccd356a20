use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors across validation, assembly and the CLI. Validation variants carry
/// the first witness found so diagnostics can name the offending data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("multiplication table row {row} has length {len}, expected {order}")]
    TableNotSquare { row: usize, len: usize, order: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    TableEntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: {axis} {index} repeats element {value}")]
    NotLatinSquare {
        axis: &'static str,
        index: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("claimed identity {claimed} differs from table identity {actual}")]
    WrongIdentity { claimed: usize, actual: usize },
    #[error("not associative at ({a}, {b}, {c}): ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },

    #[error("invariant factors not in canonical form: {0}")]
    NonCanonicalInvariants(String),
    #[error("module is not finite: {0}")]
    InfiniteModule(String),

    #[error("action has {got} matrices, group has order {expected}")]
    ActionCountMismatch { got: usize, expected: usize },
    #[error("action matrix for element {element} is {rows}x{cols}, expected {rank}x{rank}")]
    ActionMatrixShape {
        element: usize,
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("action of the identity element is not the identity map")]
    ActionIdentityNotIdentity,
    #[error("action is not a homomorphism at pair ({g}, {h})")]
    ActionNotHomomorphism { g: usize, h: usize },
    #[error("action of element {g} is not a well-defined automorphism on generator {generator}")]
    ActionNotWellDefined { g: usize, generator: usize },

    #[error("3-cocycle condition fails at quadruple ({g1}, {g2}, {g3}, {g4})")]
    CocycleConditionFails {
        g1: usize,
        g2: usize,
        g3: usize,
        g4: usize,
    },
    #[error("{what} table has {got} entries, expected {expected}")]
    ValueTableLength {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("required ambient rank {required} exceeds ceiling {ceiling}")]
    ScaleCeiling { required: usize, ceiling: usize },
    #[error("invalid degree: {0}")]
    Degree(String),
    #[error("variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("complex is not compatible: {0}")]
    IncompatibleComplex(String),

    #[error("kappa - kappa' differs from the coboundary of u at ({g1}, {g2}, {g3})")]
    PhiRelationFails { g1: usize, g2: usize, g3: usize },

    #[error("enumeration of {required} cochains exceeds guard {guard}")]
    EnumerationGuard { required: u128, guard: u64 },

    #[error("invalid problem document: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code class: 2 for scale-guard errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ScaleCeiling { .. } | Error::EnumerationGuard { .. } => 2,
            _ => 1,
        }
    }
}
