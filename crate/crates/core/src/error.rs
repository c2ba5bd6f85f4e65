use thiserror::Error;

use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("divisor does not divide the dividend exactly")]
    NonDivisible,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,

    #[error("too many interpolation nodes hit a degree drop ({skipped} skipped)")]
    DegreeDrop { skipped: usize },

    #[error("interpolation produced a non-integral coefficient")]
    NonIntegral,

    #[error("polynomial is not an exact {k}-th power")]
    NotAPower { k: u32 },

    #[error("orbit escaped the bound |g| > 4")]
    Overflow,

    #[error("found {found} of {expected} expected roots")]
    IncompleteEnumeration { found: usize, expected: usize },

    #[error("period {m} leaves no eigenvalues (dim Q_f = m - 2)")]
    DimensionTooSmall { m: usize },

    #[error("{} of {} roots failed to converge", unconverged.len(), roots.len())]
    NonConvergence { roots: Vec<C64>, unconverged: Vec<usize> },

    #[error("contributing points too close for contour radius {radius:e}")]
    ContourTooClose { radius: f64 },

    #[error("spectra cover {found} centers, expected {expected}")]
    IncompleteSurvey { found: usize, expected: usize },

    #[error("no center of period {0} validated near the anchor")]
    NoNearbyCenter(usize),

    #[error("unsupported anchor: {0}")]
    UnsupportedAnchor(String),

    #[error("(D={degree}, m={period}) exceeds the exact ceiling (deg S = {deg_s}); pass --force")]
    ExceedsExactCeiling { degree: u32, period: usize, deg_s: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Exact-arithmetic failures as opposed to numerical ones.
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            Error::NonDivisible
                | Error::ZeroInput
                | Error::DegreeDrop { .. }
                | Error::NonIntegral
                | Error::NotAPower { .. }
                | Error::ExceedsExactCeiling { .. }
        )
    }
}
