//! Symbolic workbench for integral group rings of free groups.
//!
//! The crate is `no_std` (with `alloc`): every computation here is pure and
//! deterministic. File formats, the scenario language and the command line
//! live in the companion `fgring` crate.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod abelfun;
pub mod abelhom;
pub mod error;
pub mod grring;
pub mod idealeng;
pub mod intlat;
pub mod magnus;
pub mod num;
pub mod parse;
pub mod quotlab;
pub mod subgroup;
pub mod words;

pub use error::{Error, Result};
pub use grring::RingElement;
pub use intlat::IntLattice;
pub use magnus::TruncatedSeries;
pub use num::Int;
pub use subgroup::{Quotient, SubgroupHandle, Transversal};
pub use words::Word;
