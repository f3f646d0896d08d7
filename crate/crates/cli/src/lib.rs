//! File formats, reports and plots behind the `comhnn` executable.

pub mod commands;
pub mod files;
pub mod svg;
