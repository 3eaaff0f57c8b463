//! Polynomial systems and numerics for dependency and conditional-independence
//! equilibria of normal-form games.

pub mod chow;
pub mod cli;
pub mod cimodel;
pub mod error;
pub mod game;
pub mod graph;
pub mod numeric;
pub mod polyring;
pub mod spohnci;
pub mod universality;

pub use error::{Error, Result};
pub use game::{Distribution, Game, Shape};
pub use graph::{CIStatement, Graph, Partition, VertexSet};
pub use polyring::{Monomial, Polynomial, Rational, VarTable};
