//! Construction and analysis of MDS codes over arbitrary alphabets.
//!
//! Codes are explicit word sets ([`Code`]). The crate builds the standard
//! families (trivial binary codes, Reed-Solomon variants, codes from
//! mutually orthogonal Latin squares), computes weight, partition and
//! distance spectra both by scanning and by the closed-form MDS
//! enumerators, applies equivalence moves and residual-code extraction, and
//! searches exhaustively for MDS codes with tiny parameters.

pub mod cli;
pub mod code;
pub mod codefile;
pub mod constructions;
pub mod galois;
pub mod search;
pub mod spectra;
pub mod transforms;

pub use code::{
    hamming_distance, information_set_check, is_mds, min_distance, weight, Code, CodeError, Codeword, MdsReport,
};
pub use galois::{Field, FieldElement, FieldError};
