use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller supplied an argument outside its documented domain.
    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("frequency table has no nonzero counts")]
    EmptySource,

    #[error("code lengths are not realizable as a prefix code: {0}")]
    InvalidLengths(String),

    #[error("symbol {0} has no code in the code book")]
    UnknownSymbol(u16),

    /// The reader ran out of bits.
    #[error("truncated input: needed {needed} more bits at bit {position}")]
    Truncated { position: u64, needed: u64 },

    #[error("bad magic {0:02x?}, not a SARB container")]
    BadMagic([u8; 4]),

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),

    #[error("unknown codec mode {0}")]
    UnknownMode(u8),

    /// Structurally invalid data in an otherwise readable container.
    #[error("corrupt container: {0}")]
    Corrupt(String),

    #[error("compression ratio is undefined for an empty original")]
    UndefinedRatio,
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn corrupt(msg: impl Into<String>) -> Self {
        Error::Corrupt(msg.into())
    }
}
