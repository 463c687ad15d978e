//! Scalar abstractions shared by the field and function-field layers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use crate::error::Result;
use crate::gf::{FqDescriptor, FqElem};
use crate::polyring::RingAut;

/// An element of a field (`F_q` or `F_q(t)`), carrying enough context to
/// produce the constants `0` and `1` of its own field.
///
/// Binary operations assume both operands share a field; mixing fields is a
/// logic error and is caught by debug assertions.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse in the ambient field; `None` only for zero.
    fn inv(&self) -> Option<Self>;
    /// Fixed total order used for canonical representatives.
    fn total_cmp(&self, other: &Self) -> Ordering;
    fn from_int_like(&self, n: i64) -> Self;
}

/// The coefficient ring of a matrix group: either a finite field or a
/// localization `R` of `F_q[t]`.
pub trait ScalarDomain: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Scalar;

    /// The constant field `F_q`.
    fn field(&self) -> &FqDescriptor;
    fn constant(&self, c: &FqElem) -> Self::Elem;
    fn contains(&self, x: &Self::Elem) -> bool;
    /// Whether `x` is invertible inside the domain.
    fn is_unit(&self, x: &Self::Elem) -> bool;
    /// All elements if the domain is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn stabilized_by(&self, rho: &RingAut) -> bool;
    fn apply_ring_aut(&self, rho: &RingAut, x: &Self::Elem) -> Result<Self::Elem>;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn describe(&self) -> String;

    fn zero(&self) -> Self::Elem {
        self.constant(&self.field().zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(&self.field().one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(&self.field().from_int(n))
    }

    fn is_finite(&self) -> bool {
        self.elements().is_some()
    }

    fn characteristic(&self) -> u32 {
        self.field().p()
    }
}
