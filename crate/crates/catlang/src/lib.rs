//! A small text language for describing finite categories, functors,
//! natural transformations, and presheaves, plus task requests against
//! them. The pipeline is `lex` → `parse` → `elaborate`, and `serialize` /
//! `dump_category` go the other way.

pub mod ast;
pub mod dump;
pub mod elaborate;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod serializer;
pub mod token;

pub use ast::{Decl, SourceDocument, TaskKind};
pub use dump::dump_category;
pub use elaborate::{elaborate, WorkRequest, WorkTask, Workspace};
pub use error::CatlangError;
pub use lexer::lex;
pub use parser::parse;
pub use serializer::serialize;
pub use token::{Span, Tok, Token};

use cathedra::Caps;

/// Parse and elaborate in one step.
pub fn load(text: &str, caps: &Caps) -> Result<Workspace, CatlangError> {
    elaborate(&parse(text)?, caps)
}
