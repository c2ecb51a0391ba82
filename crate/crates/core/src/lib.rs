//! A workbench for finite multimodal Kripke semantics.
//!
//! The crate covers modal formulas over a named modality signature, finite
//! frames and models, brute-force validity checking, direct checkers for
//! first-order frame conditions (the correspondents of the 5n, Un, In and
//! related axioms), achronal width, finite boolean algebras with operators
//! and their duality with finite frames, and generators for the frame and
//! formula families used by the claim ledger.

pub mod algebra;
pub mod cli;
pub mod clique;
pub mod corpus;
pub mod correspondents;
mod error;
pub mod formula;
pub mod frames;
pub mod semantics;
mod worldset;

pub use error::{Error, Result};
pub use formula::{Formula, Signature};
pub use frames::{Frame, Model, Relation};
pub use semantics::{ValidityVerdict, DEFAULT_BUDGET};
pub use worldset::WorldSet;
