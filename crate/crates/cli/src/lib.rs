//! Batch front end for the liftlab verification pipelines.
//!
//! Input documents are parsed in [`input`], each subcommand builds a
//! [`report::Report`] in [`commands`], and [`suite`] holds the exhaustive
//! sweeps behind `liftlab report`.

pub mod commands;
pub mod input;
pub mod report;
pub mod suite;

/// Flags shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub max_atoms: usize,
    pub max_elems: usize,
    pub parallel: bool,
}

impl RunOptions {
    pub const DEFAULT_MAX_ATOMS: usize = 12;
    pub const DEFAULT_MAX_ELEMS: usize = 8;
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            max_atoms: Self::DEFAULT_MAX_ATOMS,
            max_elems: Self::DEFAULT_MAX_ELEMS,
            parallel: false,
        }
    }
}
