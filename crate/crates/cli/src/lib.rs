//! Command-line front end: enumeration runs, verification against the
//! published tables, catalog files and SVG rendering.

pub mod commands;
pub mod render;
