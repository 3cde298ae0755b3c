//! Exact lattice computations for rank-two numerical Kuznetsov components of
//! Fano threefolds, with emphasis on the cubic threefold.
//!
//! All arithmetic is integral or rational. Coordinates are `i64`; every
//! product that can exceed that width is carried in `i128`, and lattice
//! operations that could overflow are checked.

pub mod birgraph;
pub mod catalog;
pub mod certifier;
pub mod chern;
pub mod cubic;
pub mod error;
pub mod euler_forms;
pub mod lattice;
pub mod oracles;
pub mod render;

pub use catalog::{lookup, EntryLabel, FanoKuEntry};
pub use certifier::{certify, certify_all, verify, Certificate};
pub use chern::{euler_pairing, hilbert_character, ChernCharacterY3};
pub use cubic::{KuClass, LiftedClass};
pub use error::{Error, Result};
pub use euler_forms::{classify_form, CanonicalForm, EulerForm, Family, SerreIsometry};
pub use lattice::{cross, norm_sq, pick_decompose, LatticeVector, Mat2};
