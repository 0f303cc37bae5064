//! Sweep, figure and check drivers for the `ncsec` command.

pub mod checks;
pub mod figures;
pub mod spec;
pub mod sweep;
