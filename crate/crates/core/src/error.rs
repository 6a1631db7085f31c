use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid model configuration: {0}")]
    Config(String),

    #[error("checkpoint schedule is not strictly increasing at position {index}")]
    UnsortedSchedule { index: usize },

    #[error("schedule requests a checkpoint at n={requested} but the stream ended after {available} balls")]
    StreamExhausted { requested: u64, available: u64 },

    #[error("trajectory has no checkpoint at n={0}")]
    MissingCheckpoint(u64),

    #[error("R at n/2 is zero; the doubling estimator is undefined")]
    ZeroHalfCount,

    #[error("need at least {required} replicates, got {got}")]
    TooFewReplicates { required: usize, got: usize },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },

    #[error("empty token stream")]
    EmptyStream,

    #[error("malformed trajectory CSV: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "open interval (0, 1)",
        })
    }
}
