//! Levelwise construction of single cylindrical cells around a sample point,
//! with a proof-system view that records every derivation.

pub mod poly;
pub mod realalg;
pub mod cells;
pub mod proofsys;
pub mod levelwise;
pub mod random;
pub mod explain;
