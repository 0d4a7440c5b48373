//! Report-building layer for the `wedgemap` command-line tool:
//! classification tables, the dual-route verification sweep, and the list
//! of known discrepancies the sweep annotates.

pub mod manifest;
pub mod sweep;
pub mod table;
