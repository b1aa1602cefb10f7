//! Source text to solved configuration.

use thiserror::Error;

use crate::cli::{EXIT_DETERMINATION, EXIT_INPUT, EXIT_UNSOLVABLE};
use crate::registry::{seed_registry, Registry};
use crate::semantics::{check_determination, translate, Diagnostic, ObjectNode, SemanticError, SymbolTables};
use crate::solver::{SolverStats, Solver, SolverOutcome, Unsolvable};
use crate::syntax::{parse_source, AstNode, SyntaxError};

#[derive(Debug, Error)]
pub enum CompileError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantic(#[from] SemanticError),
    #[error("{} determination problem(s)", .0.len())]
    Determination(Vec<Diagnostic>),
    #[error("{0}")]
    Unsolvable(Unsolvable),
}

impl CompileError {
    /// 1 for malformed input, 2 for over- or underdetermined models and 3
    /// when no configuration satisfies the constraints.
    pub fn exit_code(&self) -> i32 {
        match self {
            CompileError::Syntax(_) | CompileError::Semantic(_) => EXIT_INPUT,
            CompileError::Determination(_) => EXIT_DETERMINATION,
            CompileError::Unsolvable(_) => EXIT_UNSOLVABLE,
        }
    }
}

/// Every intermediate product of a successful compile.
#[derive(Debug, Clone)]
pub struct Compilation {
    pub ast: AstNode,
    pub translated: ObjectNode,
    pub solved: ObjectNode,
    pub stats: SolverStats,
}

/// A registry with its symbol tables, ready to compile sources.
#[derive(Debug, Clone)]
pub struct Compiler {
    registry: Registry,
    tables: SymbolTables,
}

impl Compiler {
    pub fn new(registry: Registry) -> Compiler {
        let tables = SymbolTables::build(&registry);
        Compiler { registry, tables }
    }

    /// Compiler over the built-in component library.
    pub fn seeded() -> Compiler {
        Compiler::new(seed_registry().expect("built-in library passes the audit"))
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn tables(&self) -> &SymbolTables {
        &self.tables
    }

    /// Parses and translates, then reports determination problems.
    pub fn check(&self, source: &str) -> Result<(AstNode, ObjectNode), CompileError> {
        let ast = parse_source(source)?;
        let translated = translate(&ast, &self.registry, &self.tables)?;
        let diagnostics = check_determination(&translated, &self.registry);
        if !diagnostics.is_empty() {
            return Err(CompileError::Determination(diagnostics));
        }
        Ok((ast, translated))
    }

    pub fn compile(&self, source: &str) -> Result<Compilation, CompileError> {
        let (ast, translated) = self.check(source)?;
        let (outcome, stats) = Solver::new(&self.registry).solve(&translated);
        match outcome {
            SolverOutcome::Solved(solved) => Ok(Compilation {
                ast,
                translated,
                solved,
                stats,
            }),
            SolverOutcome::Unsolvable(failure) => Err(CompileError::Unsolvable(failure)),
        }
    }
}
