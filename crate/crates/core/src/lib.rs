//! Statistical depth functions and median sets for fuzzy-number-valued data.
//!
//! The crate works with fuzzy numbers through their support functions
//! `s_A(u, α)` for `u ∈ {-1, +1}` and `α ∈ [0, 1]`, and provides:
//!
//! - [`fuzzy`]: representation and validation of fuzzy numbers;
//! - [`metrics`]: the `ρ_r` distances, computed exactly;
//! - [`distribution`]: sample and analytic-CDF backends for a fuzzy random
//!   variable, with weighted medians and MADs;
//! - [`depth`]: r-natural, Tukey, projection and simplicial depths;
//! - [`median`]: the support-median band, Sinova and Grzegorzewski medians,
//!   the brute-force 1-median;
//! - [`certify`]: seeded numerical checks of the median equivalences;
//! - [`io`]: JSON/CSV document formats used by the command-line tool.

pub mod certify;
pub mod depth;
pub mod distribution;
pub mod error;
pub mod fuzzy;
pub mod io;
pub mod median;
pub mod metrics;

pub use certify::{certify_theorems, CertificationReport, CertifyOptions, Status};
pub use depth::{depth, depth_batch, DepthMethod, DepthReport, SimplicialVariant, Witness};
pub use distribution::{Backend, Breakpoint, FuzzySample, LawView, MedianInterval, ScalarCdf};
pub use error::{Error, Result};
pub use fuzzy::{AlphaGrid, Direction, FuzzyNumber};
pub use median::{
    band_contains, brute_force_one_median, median_gr, median_si, support_median_band, MedianBand,
};
pub use metrics::{rho, MetricOrder};
