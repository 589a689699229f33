//! Exact computation in finite-dimensional group-graded algebras.
//!
//! The crate covers group arithmetic for finite, free abelian and infinite
//! dihedral groups ([`groups`]), structure-constant algebras over `Q` and
//! `F_p` ([`coeff`]), graded algebras with support and centrality checks
//! ([`graded`]), group rings and crossed products ([`group_ring`]), the
//! structural constructions relating them ([`constructions`]), and a
//! verification harness that enumerates central idempotents and checks the
//! support-group theorems on concrete instances ([`harness`]).

pub mod coeff;
pub mod constructions;
pub mod graded;
pub mod group_ring;
pub mod groups;
pub mod harness;
pub mod linalg;
pub mod scalar;

pub use coeff::{Algebra, BuiltinAlgebra, Vector};
pub use graded::{GradedAlgebra, GradedElement};
pub use group_ring::{GroupRing, GroupRingElement};

pub use groups::{Closure, ElementOrder, Group, GroupElement};
pub use scalar::{Field, Scalar};
