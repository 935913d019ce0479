//! Exact engine for quantized Coulomb branches of quiver gauge theories:
//! rational-function arithmetic, ħ-difference operators, monopole
//! operators, GKLO images of shifted Yangians and monopole-formula
//! Hilbert series.

pub mod classical;
pub mod error;
pub mod monopole;
pub mod monops;
pub mod quiverdata;
pub mod ratfield;
pub mod shiftalg;
pub mod yangian;

pub use error::{CbxError, Result};
