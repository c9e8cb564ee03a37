use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {field} {reason}")]
    Config {
        field: &'static str,
        reason: &'static str,
    },

    #[error("register width {requested} is below the required {required} bits")]
    WidthTooSmall { requested: u32, required: u32 },

    #[error("register width {0} exceeds the supported maximum of 128 bits")]
    WidthUnsupported(u32),

    #[error("sample {value} does not fit in {bits}-bit signed range")]
    InputRange { value: i64, bits: u32 },

    #[error("frequency {value} outside {range}")]
    Domain { value: f64, range: &'static str },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("protocol violation: {0}")]
    Protocol(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cycle {cycle}: {source}")]
    Cycle {
        cycle: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
