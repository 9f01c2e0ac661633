use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("measure space needs at least one atom")]
    NoAtoms,
    #[error("weight of atom {index} is negative")]
    NegativeWeight { index: usize },
    #[error("all weights are zero; at least one atom must carry positive measure")]
    AllWeightsZero,
    #[error("{atoms} atoms exceed the supported maximum of {max}")]
    TooManyAtoms { atoms: usize, max: usize },
    #[error("set {mask:#b} is not averageable (measure zero)")]
    NotAverageable { mask: u64 },
    #[error("set {mask:#b} has members outside the {atoms}-atom space")]
    SetOutOfRange { mask: u64, atoms: usize },
    #[error("transform table has {got} entries, expected {expected}")]
    TransformShape { got: usize, expected: usize },
    #[error("function has {got} values, expected {expected}")]
    FunctionShape { got: usize, expected: usize },
    #[error("transform is not a lower density: {0}")]
    NotLowerDensity(String),
    #[error("transform is not a lifting: {0}")]
    NotLifting(String),
    #[error("function is undefined at positive atom {atom}")]
    NotIntegrable { atom: usize },
    #[error("not a differentiation basis: {0}")]
    InvalidBasis(String),
    #[error("filter-kernel does not differentiate: {0}")]
    NotDifferentiating(String),

    #[error("filter base is empty")]
    EmptyBase,
    #[error("improper filter: the base has empty intersection")]
    ImproperFilter,
    #[error("point {point} is not in a ground set of size {ground}")]
    PointOutOfRange { point: usize, ground: usize },
    #[error("ground sets differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error(
        "family is not directed: members {0} and {1} have no common lower bound in the family"
    )]
    NotDirected(usize, usize),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("space is not Hausdorff")]
    NotHausdorff,
    #[error("filter is not an ultrafilter")]
    NotUltrafilter,

    #[error("operation table has {got} entries, expected {expected}")]
    TableShape { got: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range for {size} elements")]
    TableEntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("partial magma is not regular: {0}")]
    NotRegular(String),
    #[error("element {0} is not a unit")]
    NotAUnit(usize),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid homomorphism of functors: {0}")]
    InvalidNatHom(String),
    #[error("not a natural transformation: {0}")]
    NotNatural(String),
    #[error("functors do not compose: {0}")]
    FunctorMismatch(String),

    #[error("probe family has no space of size {0}")]
    MissingProbe(usize),
    #[error("invalid probe family: {0}")]
    InvalidProbes(String),
    #[error("candidate does not fit the probe family: {0}")]
    CandidateShape(String),
}
