//! Kauffman brackets and n-skein relations for knot projections built from
//! multi-crossings, plus the single-crossing census used to read off crossing spectra.

pub mod census;
pub mod diagram;
pub mod laurent;
pub mod laws;
pub mod skein;
pub mod splits;

pub use laurent::LaurentPoly;
pub use splits::{OverstrandPos, Split};
