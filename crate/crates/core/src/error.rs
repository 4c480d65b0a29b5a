use thiserror::Error;

/// Errors raised when inputs violate a domain precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },

    #[error("{value} violates the bound {bound}")]
    OutOfRange { value: i64, bound: &'static str },

    #[error("ext_gcd(0, 0) is undefined")]
    ZeroGcd,

    #[error("({x}, {y}) is not one of the tabulated phi shapes")]
    UnknownPhiShape { x: i64, y: i64 },

    #[error("invalid braid K({w}, {b}, {t}): requires {bound}")]
    InvalidBraid {
        w: i64,
        b: i64,
        t: i64,
        bound: &'static str,
    },

    #[error("invalid slope {p}/{q}: requires {bound}")]
    InvalidSlope { p: i64, q: i64, bound: &'static str },

    #[error("5-tuple is not allowable: {clause}")]
    NotAllowable { clause: &'static str },

    #[error("max_w = {max_w} outside the supported range {min}..={max}")]
    Guard { max_w: i64, min: i64, max: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(max_w: i64, min: i64, max: i64) -> Result<()> {
    if (min..=max).contains(&max_w) {
        Ok(())
    } else {
        Err(Error::Guard { max_w, min, max })
    }
}
