//! Weighted integral means of mixed areas and lengths of holomorphic images
//! of the unit disk.
//!
//! For a holomorphic map `f` on the unit disk and `0 < r < 1`, the library
//! computes the area `A(f,r)` of `f(rD)` and the length `L(f,r)` of its
//! boundary, the mixed ratios `Phi_{A,beta} = A/(pi r^2)^beta` and
//! `Phi_{L,beta} = L/(2 pi r)^beta`, and their weighted integral means
//! against the measure `d mu_alpha(t) = (1-t^2)^alpha dt^2`:
//!
//! ```text
//!   A_{alpha,beta}(f,r) = ( ∫_0^r Phi_{A,beta}(f,t) dmu_alpha(t) ) / nu_alpha(r)
//!   L_{alpha,beta}(f,r) = ( ∫_0^r Phi_{L,beta}(f,t) dmu_alpha(t) ) / nu_alpha(r)
//! ```
//!
//! On top of that sit log-log convexity diagnostics (numeric, analytic, and
//! exact-rational), certified polynomial sign-change isolation, and a suite
//! of runnable checks ([`verify`]) covering monotone growth, Schwarz-type
//! bounds, Lipschitz estimates, endpoint limits, univalence criteria, and
//! the convexity trichotomy in the weight exponent `alpha`.

pub mod convexity;
pub mod geometry;
pub mod quad;
pub mod rational;
pub mod series;
pub mod verify;
pub mod weights;

pub use geometry::{DiskMap, GeomMethod, GeomValue, Kind};
pub use quad::{QuadResult, QuadratureParams};
pub use series::PowerSeries;
pub use weights::{MeanMethod, MeanValue, WeightParams};

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("square root of a series requires a nonzero constant term")]
    ZeroConstantTerm,
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("quadrature tolerance not met: best estimate {best}, error bound {error}")]
    ToleranceNotMet { best: f64, error: f64 },
    #[error("cannot certify: {0}")]
    CannotCertify(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coefficients with modulus below this threshold are treated as zero when
/// classifying a series (monomial / linear / constant detection).
pub const COEFF_EPS: f64 = 1e-14;
