//! Hamilton cycle certification for vertex-transitive graphs of order `pq`.
//!
//! The crate is `no_std` with `alloc`. It covers prime-field arithmetic, the quartic
//! residue machinery, graph construction for the imprimitive and primitive families,
//! suborbit computation for coset actions, quotient graphs and the lifting of quotient
//! cycles, and a dispatcher that produces independently checkable Hamilton certificates.
#![no_std]

extern crate alloc;

pub mod dihedral;
pub mod engine;
pub mod error;
pub mod families;
pub mod field;
pub mod gp;
pub mod graph;
pub mod omega;
pub mod perm;
pub mod psl2;
pub mod quotient;
pub mod residue;
pub mod search;

pub use error::{Error, Result};
