use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Instance document does not match the schema. `path` is a field path
    /// such as `omega.generators[2][0]`.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("pi: rank(pi) = {rank} < r = {r}")]
    RankDeficient { rank: usize, r: usize },

    #[error("omega.generators: generator list is empty")]
    EmptyGenerators,

    #[error("omega: cone(omega) has a {dim}-dimensional lineality space that was not declared")]
    UndeclaredLineality { dim: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("operation requires a nonempty polyhedron")]
    EmptyPolyhedron,

    #[error("fiber over {chi} contains no point of omega")]
    EmptyFiber { chi: String },

    #[error("enumeration budget of {budget} exceeded while {context}")]
    BudgetExceeded { budget: u64, context: String },

    #[error("character {chi} lies outside cone(sigma)")]
    OutsideSigma { chi: String },

    #[error("character {chi} lies on the boundary of cone(sigma); the quotient fan is not full-support")]
    BoundaryCharacter { chi: String },

    #[error("lambda {lambda} is outside the support cone: <lambda, {ray}> < 0 on the fiber recession cone")]
    Unbounded { lambda: String, ray: String },

    #[error("fans {first} and {second} have different supports")]
    MismatchedSupports { first: usize, second: usize },

    #[error("monoid sigma is not saturated in chamber {chamber}: Hilbert basis element {element} is not in sigma")]
    NonSaturated { chamber: usize, element: String },

    #[error("chamber {chamber} is not pointed; its monoid has no unique Hilbert basis")]
    NonPointedChamber { chamber: usize },

    #[error("no maximal chamber with index {0}")]
    NoSuchChamber(usize),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::Invariant(message.into())
    }
}
