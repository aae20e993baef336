//! Place/transition nets, their reachability graphs, and the machinery
//! around persistence: permutation and Parikh equivalence of firing
//! sequences, the SPE family of properties, LTS patterns and fairness of
//! eventually periodic runs.

#![no_std]

extern crate alloc;

pub mod error;
pub mod fairness;
pub mod lab;
pub mod limits;
pub mod lts;
pub mod net;
pub mod patterns;
pub mod sequences;

#[cfg(test)]
mod testnets;

pub use error::{Error, Result};
pub use fairness::Lasso;
pub use limits::Limits;
pub use lts::Lts;
pub use net::{Marking, Net, NetBuilder, PlaceId, Run, TransId};
pub use sequences::{FiringSequence, ParikhVector};
