use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(String),

    #[error("no positive root selected for n={n}, order {order}")]
    NoPositiveRoot { n: u32, order: usize },

    #[error("root enclosure could not be certified: {0}")]
    Certification(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("cannot parse decimal {0:?}")]
    Decimal(String),

    #[error("Riccati residual is only defined for n in {{0, 1}}, got n={0}")]
    UnsupportedState(u32),

    #[error("superpotential evaluated at a node of H_{n} (x = {x})")]
    NodeSingularity { n: u32, x: f64 },

    #[error("wavefunction has not decayed at |x| = {half_width}: boundary/peak = {ratio:e}")]
    TailNotDecayed { half_width: f64, ratio: f64 },

    #[error("oracle eigenvalue {index} not converged: |E(dim) - E(2 dim)| = {delta:e}")]
    NotConverged { index: usize, delta: f64 },

    #[error("unknown reference table {0}")]
    UnknownTable(u8),
}

pub type Result<T> = std::result::Result<T, Error>;
