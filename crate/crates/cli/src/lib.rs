//! Script language, runner, reporters and on-disk resolution cache behind `linkage-lab`.

pub mod ast;
pub mod cache;
pub mod exec;
pub mod parse;

pub use ast::Script;
pub use cache::DiskCache;
pub use exec::{run, RunConfig, RunReport, Status};
pub use parse::{parse, ParseError};
