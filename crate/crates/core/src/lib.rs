//! E-polynomials of `SL(n,C)` and `PGL(n,C)` character varieties of free
//! groups for `n = 2, 3`, with finite-field point counts as an independent
//! check.

pub mod error;
pub mod ffgroups;
pub mod grpvar;
pub mod oracle;
pub mod qpoly;
pub mod repring;
pub mod sl2;
pub mod sl3;

pub use error::{Error, Result};
pub use grpvar::{group_epoly, GroupFamily, GroupKind, StratumEntry};
pub use qpoly::{poly, QPoly};
pub use repring::{Sigma3Class, Z2Class};
pub use sl2::RankParam;
pub use sl3::{EulerCharacteristics, Sl3Group, Sl3StrataReport};
