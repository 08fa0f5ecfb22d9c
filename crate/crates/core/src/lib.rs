//! Conformally flat spacetimes `X_f` realized as sections `{C = 0, f = 1}` of the
//! null cone in six-dimensional flat space of signature `(+,−,−,−,−,+)`, and
//! numerical checks of how the ambient wave operator restricts to them.
//!
//! Derivatives are carried as exact second-order jets ([`jet::Jet2`]); the only
//! finite differences live in [`oracle`], which serves as an independent check.
//!
//! ```
//! use xfield::chart::ChartPoint;
//! use xfield::embedding::Embedding;
//! use xfield::restriction::ricci_from_embedding;
//!
//! let x = ChartPoint::new([1.0, 0.2, -0.1, 0.3]).unwrap();
//! let r = ricci_from_embedding(&Embedding::desitter(1.0).unwrap(), &x).unwrap();
//! assert!((r + 12.0).abs() < 1e-9);
//! ```

#![no_std]

extern crate alloc;

pub mod ambient;
pub mod chart;
pub mod constraint;
pub mod embedding;
pub mod error;
pub mod fields;
pub mod jet;
pub(crate) mod math;
pub mod oracle;
pub mod report;
pub mod restriction;
pub mod sampling;

pub use ambient::AmbientPoint;
pub use chart::ChartPoint;
pub use constraint::{ConstraintCoefficients, CouplingParams};
pub use embedding::{Embedding, Family, ScaleFactor};
pub use error::{Error, Result};
pub use fields::ScalarField6;
pub use jet::Jet2;
pub use report::VerificationReport;
