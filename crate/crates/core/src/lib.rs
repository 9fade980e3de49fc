//! Linear Nakayama algebras, their derived categories, and certificates that
//! an algebra is not piecewise hereditary.
//!
//! Relations, Kupisch series and enumeration live in [`algebra`]; the exact
//! complex engine (resolutions, minimal complexes, the Auslander–Reiten
//! translate) in [`engine`]; relation rewrites in [`moves`]; and the one-sided
//! tests with their replayable certificates in [`obstructions`].

pub mod algebra;
pub mod complex;
pub mod coxeter;
pub mod engine;
pub mod linalg;
pub mod moves;
pub mod obstructions;
pub mod scalar;

pub use algebra::{enumerate_algebras, AlgebraError, KupischSeries, NakayamaAlgebra, Relation};
pub use complex::{EngineError, IntervalModule, ModuleComplex, PerfectComplex};
pub use coxeter::{coxeter, CoxeterData};
pub use moves::{apply_chain, parse_chain, Extension, Move, MoveError, MoveRecord};
pub use obstructions::certificate::{Certificate, Evidence, VerifyError};
pub use obstructions::{battery, BatteryConfig, Verdict};
pub use scalar::Scalar;
