//! Υ and Υ^K polynomial representatives for the closures of K-orbits on the
//! type A flag variety, for the symmetric pairs (GL_n, O_n) and
//! (GL_2n, Sp_2n).
//!
//! The closed orbit gets an explicit product formula; every other orbit is
//! reached by divided difference, half divided difference or Demazure
//! operators along the labeled weak-order graph. Around that core sit
//! Schubert and Grothendieck bases, normal forms in the Borel presentation,
//! and a localization verifier.

pub mod error;
pub mod localize;
pub mod ops;
pub mod par;
pub mod perm;
pub mod poly;
pub mod quotient;
pub mod schub;
pub mod upsilon;
pub mod weakorder;

pub use error::{Error, Result};
pub use par::Strategy;
pub use perm::{EdgeStyle, FpfInvolution, Involution, Permutation, SignedPermutation};
pub use poly::{Polynomial, Rational};
pub use upsilon::Theory;
pub use weakorder::Pair;
