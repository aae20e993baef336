//! Text formats, DOT export, the figure corpus and the command-line surface
//! for `persinet-core`.

pub mod dot;
pub mod format;
pub mod cli;
pub mod corpus;
