use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("table has {got} entries but the domain has {expected} elements")]
    TableLength { expected: usize, got: usize },
    #[error("table entry {index} is {value}, outside a codomain of {cod} elements")]
    TableOutOfRange {
        index: usize,
        value: usize,
        cod: usize,
    },
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("maps are not parallel: {0}")]
    NotParallel(String),
    #[error("refinement violated: {0}")]
    RefinementViolation(String),
    #[error("relation pair {0} lies outside dom x cod")]
    RelationOutOfRange(String),
    #[error("duplicate relation pair {0}")]
    DuplicatePair(String),
    #[error("order matrix must be {n}x{n}")]
    MatrixShape { n: usize },
    #[error("order is not reflexive: {x} <= {x} is missing (offending triple ({x}, {x}, {x}))")]
    NotReflexive { x: String },
    #[error("order is not transitive: offending triple ({x}, {y}, {z}): {x} <= {y} and {y} <= {z} but not {x} <= {z}")]
    NotTransitive { x: String, y: String, z: String },
    #[error("order is not antisymmetric: {x} <= {y} and {y} <= {x} with {x} != {y}")]
    NotAntisymmetric { x: String, y: String },
    #[error("map is not monotone: {x} <= {y} but f({x}) = {fx} is not <= f({y}) = {fy}")]
    NotMonotone {
        x: String,
        y: String,
        fx: String,
        fy: String,
    },
    #[error("functoriality fails: {0}")]
    NotFunctorial(String),
    #[error("naturality fails: {0}")]
    NotNatural(String),
    #[error("diagram does not commute: {0}")]
    NonCommuting(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("structure too large: {0}")]
    TooLarge(String),
    #[error("bound exceeded: {what} = {requested} exceeds the limit {limit} (search space ~ {estimate})")]
    BoundExceeded {
        what: String,
        requested: usize,
        limit: usize,
        estimate: String,
    },
    #[error("internal verification failed: {0}")]
    Defect(String),
}
