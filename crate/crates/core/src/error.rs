use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty text")]
    EmptyText,
    #[error("malformed parse: {0}")]
    MalformedParse(String),
    #[error("phrase exceeds block length ({len} > {block_len})")]
    PhraseTooLong { len: usize, block_len: usize },
    #[error("range [{i}, {j}] out of bounds for length {n}")]
    OutOfRange { i: usize, j: usize, n: usize },
    #[error("fingerprint length underflow: {whole} < {part}")]
    LengthUnderflow { whole: usize, part: usize },
    #[error("empty interval ({0}, {1}]")]
    EmptyInterval(u64, u64),
    #[error("symbol {0} outside alphabet")]
    InvalidSymbol(u32),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot certify fingerprint function after {0} attempts")]
    Certification(usize),
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
