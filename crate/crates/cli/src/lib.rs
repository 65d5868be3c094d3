//! Command line front end for levelcell: an SMT-LIB subset parser, a
//! conjunction solver driven by conflict explanations, and run statistics.

pub mod app;
pub mod compare;
pub mod smtlib;
pub mod solve;
pub mod stats;

pub use app::run;
