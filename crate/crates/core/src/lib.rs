pub mod error;
pub mod expr;
pub mod monoid;
pub mod semiring;
pub mod series;
pub mod automaton;
pub mod standard;
pub mod derived;
pub mod derivation;
pub mod cli;
