pub mod classify;
pub mod eval;
pub mod region;
pub mod repro;
pub mod solve;
