//! Document formats, report emission, and the built-in verification suite
//! behind the `clutters` command-line tool.

pub mod document;
pub mod report;
pub mod verify;

pub use document::{parse_document, serialize_document, ClutterDocument, ParsedDocument};
pub use report::{digest, Report};
