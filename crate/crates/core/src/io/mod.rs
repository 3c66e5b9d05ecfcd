//! JSON literals and reports; DOT diagrams.

pub mod dot;
pub mod json;
