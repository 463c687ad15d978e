//! Exact arithmetic over `F_q` and `F_q(t)`, classical matrix groups over
//! these rings, their automorphisms, and twisted conjugacy computations.

pub mod auts;
pub mod error;
pub mod gf;
pub mod groups;
pub mod matrix;
pub mod polyring;
pub mod scalar;
mod text;
pub mod twist;
pub mod witness;

pub use auts::{GraphAut, GroupAut};
pub use error::{Error, Result};
pub use gf::{fq_make, FqDescriptor, FqElem};
pub use groups::{Family, GroupCtx, GroupKind, GrpElem};
pub use matrix::Matrix;
pub use polyring::{Poly, RatFrac, RingAut, RingDesc};
pub use scalar::{Scalar, ScalarDomain};
