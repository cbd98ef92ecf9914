pub mod graph;
pub mod tree;
pub mod formulas;
pub mod search;
pub mod witness;
pub mod constructions;
pub mod extract;
pub mod notation;
pub mod campaign;
