//! Chain-level operads of cacti and moduli-space cell complexes.

pub mod cells;
pub mod ops;
pub mod trees;
