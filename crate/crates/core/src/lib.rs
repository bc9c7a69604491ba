//! Exact-arithmetic laboratory for rigidity-type questions about increasing
//! integer sequences: finite-sum (IP) sets, summability groups `G_p(b)`,
//! continued fractions and Ostrowski digits, rank-one cutting-and-stacking
//! towers, dyadic-odometer cocycles and singular measures on the circle.
//!
//! Every quantity is either an exact `BigRat` or a [`CertifiedReal`]
//! interval that provably encloses the value it stands for; there are no
//! uncertified floating-point paths.

pub mod cfrac;
pub mod error;
pub mod exact;
pub mod gp;
pub mod ipset;
pub mod measure;
pub mod odometer;
pub mod rankone;
pub mod seq;
mod serde_util;

pub use error::Error;
pub use exact::{BigRat, CertifiedReal, UnitComplexApprox};

pub type Result<T> = std::result::Result<T, Error>;
