//! Girth-8 QC-LDPC exponent matrices with vertical symmetry.
//!
//! A `J x L` exponent matrix `E` lifted by circulant size `P` gives a
//! `JP x LP` parity-check matrix. The crate builds such matrices from
//! explicit sequences and closed forms, searches for small `P` over
//! structured families, and checks girth with two independent engines.

pub mod arith;
pub mod codec;
pub mod constructions;
pub mod error;
pub mod equivalence;
pub mod girth;
pub mod matrix;
pub mod search;
pub mod sequences;
pub mod table4;

pub use codec::{SimConfig, SimStats};
pub use constructions::{ConstructionResult, Method, Provenance};
pub use error::{Error, Result};
pub use girth::{girth_bfs, girth_exponent, is_girth8, lift, Girth, GirthReport, LiftedCode};
pub use matrix::{is_vs, BlockMask, CycleWitness, ExponentMatrix, MatrixDocument, StructureTag};
pub use search::{SearchHit, SearchOutcome, SearchSpec, StopRule};
pub use sequences::SequenceKind;
