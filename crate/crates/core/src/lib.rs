//! Symbolic dynamics of quadratic kneading sequences: exact word
//! combinatorics, rational external angles, precritical-point censuses,
//! core entropy, renormalization and Hölder-continuity experiments.

pub mod address;
pub mod angle;
pub mod branch;
pub mod cli;
pub mod corpus;
pub mod depth;
pub mod entropy;
pub mod error;
pub mod holder;
pub mod metric;
pub mod par;
pub mod renorm;
pub mod sequence;

pub use address::{address_to_kneading, internal_address, is_bifurcation, upper_lower, InternalAddress};
pub use angle::{kneading_of_angle, Angle};
pub use depth::Depth;
pub use error::{Error, Result};
pub use sequence::{Itinerary, KneadingSequence, Symbol, SymbolStream};
