//! Monomial evaluation codes over finite fields whose Schur squares keep a
//! designed minimum distance.
//!
//! Exponent sets are built by [`families`], bounded by [`bounds`], proved
//! exact by [`certify`] and checked by brute force in [`evalcode`].

pub mod bounds;
pub mod certify;
pub mod cli;
pub mod error;
pub mod evalcode;
pub mod expsets;
pub mod families;
pub mod gf;

pub use error::{Error, Result};
pub use expsets::{minkowski_sum, square_support, ExpVec, MonomialSet};
pub use gf::{Elem, Field};
