pub mod cli;
pub mod conditions;
pub mod decision;
pub mod logic;
pub mod proofs;
pub mod random;
pub mod semantics;
pub mod solver;
pub mod syntax;
