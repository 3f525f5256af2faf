use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("composable pair ({g} . {f}) has no entry in the composition table")]
    MissingComposite { g: String, f: String },

    #[error("associativity fails for {h} . {g} . {f}: ({h} . {g}) . {f} = {left} but {h} . ({g} . {f}) = {right}")]
    AssociativityViolation {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },

    #[error("identity law fails at {arrow}: {detail}")]
    IdentityViolation { arrow: String, detail: String },

    #[error("malformed category: {0}")]
    InvalidCategory(String),

    #[error("malformed functor: {0}")]
    InvalidFunctor(String),

    #[error("malformed poset: {0}")]
    InvalidPoset(String),

    #[error("malformed presheaf: {0}")]
    InvalidPresheaf(String),

    #[error("malformed profunctor: {0}")]
    InvalidProfunctor(String),

    #[error("malformed natural transformation: {0}")]
    InvalidNatTrans(String),

    #[error("map is not monotone: {0}")]
    NotMonotone(String),

    #[error("size guard exceeded: {what} reached {count} (limit {limit})")]
    SizeGuardExceeded {
        what: String,
        count: u128,
        limit: u128,
    },

    #[error("not a lattice: {a} and {b} lack a {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: String,
    },

    #[error("generator subset is not join-dense: {element} is not the join of the generators below it")]
    NotJoinDense { element: String },

    #[error("adjunction fails: {0}")]
    AdjunctionViolation(String),

    #[error("functor is not fully faithful: {0}")]
    NotFullyFaithful(String),

    #[error("verification failed on sample {sample}: {detail}")]
    VerificationFailure { sample: String, detail: String },

    #[error("no interpolant for {x} << {y}")]
    InterpolationFailure { x: String, y: String },

    #[error("category is not graded by dimension")]
    NotGraded,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    pub(crate) fn guard(what: impl Into<String>, count: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::SizeGuardExceeded {
            what: what.into(),
            count: count.into(),
            limit: limit.into(),
        }
    }
}
