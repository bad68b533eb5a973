use core::fmt;

/// Failure modes shared by every layer of the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the supported domain.
    Domain(&'static str),
    /// An iterative refinement did not settle.
    Convergence(&'static str),
    /// The argument sits on (or within the guard distance of) a pole.
    Pole(&'static str),
    /// Two independent evaluations of the same quantity disagree.
    CrossCheck {
        what: &'static str,
        first: f64,
        second: f64,
    },
    /// The requested tuple falls on the boundary of the open parameter domain.
    Degenerate { m: u32, n: u32 },
    /// A computed object failed its a-posteriori certificate.
    Certification {
        what: &'static str,
        measured: f64,
        threshold: f64,
    },
    /// The bracketed function does not change sign.
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    /// Level-set continuation lost the curve after `last_good` accepted points.
    Continuation { last_good: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "no convergence: {msg}"),
            Error::Pole(msg) => write!(f, "pole: {msg}"),
            Error::CrossCheck { what, first, second } => {
                write!(f, "cross-check failed for {what}: {first:e} vs {second:e}")
            }
            Error::Degenerate { m, n } => {
                write!(f, "degenerate tuple m = {m}, n = {n} lies outside 0 < m < n/2")
            }
            Error::Certification {
                what,
                measured,
                threshold,
            } => write!(
                f,
                "certification failed for {what}: measured {measured:e} against threshold {threshold:e}"
            ),
            Error::Bracket { lo, hi, f_lo, f_hi } => write!(
                f,
                "no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}"
            ),
            Error::Continuation { last_good } => {
                write!(f, "continuation failed after point {last_good}")
            }
        }
    }
}

impl core::error::Error for Error {}
