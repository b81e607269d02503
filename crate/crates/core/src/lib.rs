//! Edge-probe evasiveness games: boards, properties, players and solvers.

pub mod algo;
pub mod canon;
pub mod dot;
pub mod engine;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod omega;
pub mod properties;
pub mod solver;
pub mod strategies;
pub mod verify;
pub mod wfunc;

pub use error::{Error, Result};
pub use graph::{Answer, FiniteGraph, FinitePregraph, Pair, PairStatus, Vertex};
pub use properties::{Property, TerminalStatus};
