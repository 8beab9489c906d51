//! Levine-Tristram signatures of torus knots in exact arithmetic.
//!
//! The signature function `t -> sigma_t(T(p,q))` is computed by counting
//! lattice points ([`lattice`]), its maximum through the distance profile
//! and a maximal cyclic partial sum ([`maxsig`]), and both are checked
//! against a Seifert-matrix computation and a brute-force sweep
//! ([`oracle`]). [`identities`] instance-checks the known recursions.
//!
//! Signs follow the convention where positive torus knots have positive
//! signature: `sigma(T(2,3)) = 2`.
//!
//! ```
//! use torsig::{lattice, maxsig, RationalAngle, TorusKnot};
//!
//! let knot = TorusKnot::new(5, 12)?;
//! assert_eq!(lattice::classical_signature(&knot), 28);
//! assert_eq!(maxsig::max_signature(&knot), 30);
//! let t: RationalAngle = "1/4".parse()?;
//! assert_eq!(lattice::lt_signature(&TorusKnot::new(4, 7)?, &t), 10);
//! # Ok::<(), torsig::Error>(())
//! ```

pub mod cli;
pub mod domain;
mod error;
pub mod identities;
pub mod lattice;
pub mod maxsig;
pub mod oracle;
pub mod verify;

pub use domain::{RationalAngle, SignatureDatum, TorusKnot};
pub use error::{Error, Result};
