//! Lattice-geometry toolkit for m-primary monomial ideals in a power-series
//! ring, built around the Newton polyhedron: integral closures of powers,
//! normal Hilbert coefficients, adjoint (multiplier) ideals, verifiers for
//! the chain conditions relating them, and an exact Boij–Söderberg
//! cohomology-table calculus on the projective plane.
//!
//! All arithmetic is exact: big integers for lattice data, big rationals for
//! polyhedral membership and table coefficients. Every value is immutable
//! after construction and every operation is a pure function, so the whole
//! API is safe to drive from multiple threads.

pub mod adjoint;
pub mod bs;
pub mod error;
pub mod hilbert;
pub mod monomial;
pub mod newton;
pub mod report;
pub mod verifiers;

pub use error::{Error, Result};
pub use monomial::{ExponentVector, MonomialIdeal};
pub use newton::NewtonPolyhedron;
