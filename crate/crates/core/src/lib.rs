//! Exact finite models of torus actions on Deligne–Mumford stacks.
//!
//! The crate computes the invariants attached to a torus acting on a stack
//! whose coarse space carries the trivial action: the divisor chain
//! `r = (r_1 | ... | r_n)`, the extension data `1 -> G -> Gamma -> G_m^n -> 1`,
//! rigidifications of finite groupoid models, fixed-locus graphs of stable
//! maps to projective space, and root gerbe classes.
//!
//! Tori are modeled by their finite subgroups `(Z/M)^n`; every claim about
//! the infinite objects becomes an exhaustive finite check.

pub mod corpus;
pub mod extension;
pub mod gerbe;
pub mod graphs;
pub mod groupoid;
pub mod groups;
pub mod lattice;

pub use groups::{FiniteGroup, GroupHom, GroupSpec, Subgroup};
pub use lattice::{DivisorChain, FinAbGroup, IntMatrix, SmithDecomposition};
