use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("prime {p} exceeds the supported bound {bound}")]
    PrimeTooLarge { p: i64, bound: i64 },
    #[error("coefficient a_{index} = {value} vanishes mod {p}")]
    CoefficientVanishes { index: usize, value: i64, p: u64 },
    #[error("invalid family parameter: {0}")]
    InvalidParam(String),
    #[error("invalid node witness: {0}")]
    InvalidWitness(String),
    #[error("witness search inconclusive for {0}")]
    WitnessSearch(String),
    #[error("no subfamily pattern matches {0}")]
    NoPattern(String),
    #[error("partitions disagree for {tuple}: h12 values {values:?}")]
    PartitionConflict { tuple: String, values: Vec<i64> },
    #[error("bad reduction at p = {p} for {family}")]
    BadPrime { p: u64, family: String },
    #[error("fibre is singular mod {p}")]
    SingularFibre { p: u64 },
    #[error("trace window ambiguous at p = {p}; pass an assumed h11")]
    AmbiguousTrace { p: u64 },
    #[error("no h in the Weil window at p = {p}")]
    NoTraceWindow { p: u64 },
    #[error("Weil bound violated at p = {p}: trace {trace}")]
    WeilBound { p: u64, trace: i64 },
    #[error("unsupported bad-prime set {0:?}")]
    UnsupportedBadSet(Vec<u64>),
    #[error("small resolution unavailable: {0}")]
    NoSmallResolution(String),
    #[error("intersection data inconsistent: {0}")]
    Intersection(String),
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
