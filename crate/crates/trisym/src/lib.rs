//! File formats, the fixture gallery, seeded sampling and the command
//! implementations behind the `trisym` binary.

pub mod commands;
pub mod fixtures;
pub mod format;
pub mod sampling;
