pub mod cli;
pub mod explain;
pub mod output;
pub mod pipeline;
pub mod registry;
pub mod runtime;
pub mod semantics;
pub mod solver;
pub mod syntax;
pub mod value;
