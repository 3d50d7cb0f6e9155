//! File formats, emitters and the command-line front end for `lotus-core`.

pub mod cli;
pub mod dot;
pub mod json;
pub mod svg;
pub mod text;
