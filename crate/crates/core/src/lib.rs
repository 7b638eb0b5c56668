pub mod algebra;
pub mod engine;
pub mod error;
pub mod homological;
pub mod invariants;
pub mod iso;
pub mod linkage;
pub mod module;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use module::Module;
pub use resolution::{BettiTable, Resolution};
pub use ring::{Budget, Ring, RingInvariants};
pub mod harness;

pub use engine::{Config, Engine, Faults, MemoryCache, ResolutionCache};
pub use harness::{
    check, run_suite, Instance, SuiteResult, SuiteSummary, TheoremId, TheoremReport, Verdict,
};
pub use invariants::{BoundedIndex, BoundedVerdict, GcDimVerdict, ProbePrime};
pub use iso::IsoVerdict;
pub use linkage::{IdealLinkage, LinkageReport};
