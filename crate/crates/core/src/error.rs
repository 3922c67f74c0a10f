use thiserror::Error;

/// Library-wide error type. Variants are grouped by the failure class the
/// CLI maps to exit codes: validation problems (exit 1) versus exhausted
/// budgets and timeouts (exit 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid augmenting path: {0}")]
    InvalidPath(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph is not regular (vertex {vertex} has degree {degree}, vertex 0 has degree {expected})")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("vertex {0} is isolated; the normalized adjacency matrix is undefined")]
    IsolatedVertex(usize),

    #[error("random regular graph generation failed after {attempts} pairing attempts")]
    GenerationFailed { attempts: u64 },

    #[error("eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("problem size {size} exceeds the exact-computation cap {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("sequence entry {index} is {value}, outside 1..={bound}")]
    InvalidSequence {
        index: usize,
        value: usize,
        bound: usize,
    },

    #[error("no augmenting path found after {retries} retries")]
    RetriesExhausted { retries: usize },

    #[error("no perfect matching reached within {steps} chain steps ({checkpoints} checkpoints); the graph may have no perfect matching")]
    Timeout { steps: u64, checkpoints: u64 },

    #[error("degenerate ratio estimate at level {level}: {side} matchings never observed; increase the sample budget")]
    DegenerateEstimate { level: usize, side: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for exhausted budgets/timeouts,
    /// 1 for everything else (validation and I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RetriesExhausted { .. }
            | Error::Timeout { .. }
            | Error::DegenerateEstimate { .. }
            | Error::NoConvergence { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
