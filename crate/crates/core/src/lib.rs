//! Vector-geometric evaluation of the Riemann zeta function in the critical
//! strip.
//!
//! The Dirichlet series terms 1/n^s are drawn as plane vectors; their partial
//! sums trace a spiral winding around the zeta value. That picture carries
//! the whole library:
//!
//! * [`spiral`] - term vectors, partial sums, angles, curvature, and the
//!   reverse/inflection indices where the winding flips.
//! * [`summation`] - the iterated-midpoint (Cesaro) regularization of the
//!   divergent series and an Euler-Maclaurin reference oracle for zeta.
//! * [`chi`] - the factor of the functional equation: exact via the oracle
//!   ratio, approximate via the closed form, with the Gabcke remainder mu(t)
//!   and the theta phase.
//! * [`afe`] - the second approximate equation as a finite vector system
//!   {X_n, Y_n, R}: symmetry axes, projections, invariants, remainder terms,
//!   and the empirical middle-vector fits.
//! * [`zeros`] - the Z function, base and Gram points, interval
//!   classification, zero scans, and the two counting formulas.
//!
//! Everything is plain binary64; the one place that needs more care, phases
//! of the form t ln n, runs through the double-double reduction in [`phase`].

pub mod afe;
pub mod chi;
pub mod error;
pub mod phase;
pub mod spiral;
pub mod summation;
pub mod types;
pub mod zeros;

pub use error::{Error, Result};
pub use types::{Method, PlaneVector, StripPoint, ZetaValue};
