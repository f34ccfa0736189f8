//! Command-line front end for foldkit: gallery documents, operator
//! application, verification suites and SVG output.

pub mod commands;
pub mod document;
pub mod render;
pub mod verify;

pub use commands::{run, Cli};
pub use document::{GalleryDocument, ParseError};
