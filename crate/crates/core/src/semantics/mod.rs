//! Semantic analysis: symbol tables, translation into the build hierarchy,
//! and determination checks.

pub mod determination;
pub mod object;
pub mod tables;
pub mod translate;

pub use determination::{check_determination, Diagnostic, DiagnosticKind};
pub use object::{ListNode, MapNode, ObjectNode, Origin, PrimitiveNode, SlotPath};
pub use tables::{InstantiableTable, IstId, ResolvingTable, RstId, SlotEntry, SlotTable, SymbolTables};
pub use translate::{translate, SemanticError, Translator};
