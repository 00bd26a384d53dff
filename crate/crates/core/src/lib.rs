pub mod cli;
pub mod commutator;
pub mod constants;
pub mod field;
pub mod linalg;
pub mod rootsys;
pub mod signcalc;
pub mod liealg;
pub mod unipotent;
pub mod rootgraph;
pub mod tablesio;
