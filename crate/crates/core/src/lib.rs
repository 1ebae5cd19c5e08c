//! Short directed cycles in digraphs of large minimum outdegree.
//!
//! The crate computes and certifies the constants of Caccetta-Häggkvist-type
//! bounds ([`constants`]), finds short cycles constructively by layered
//! neighborhood expansion ([`cycles`]), and audits the per-edge and
//! per-vertex counting inequalities behind those bounds ([`stats`],
//! [`fas`]) on concrete digraphs ([`graph`]).

pub mod cli;
pub mod constants;
pub mod cycles;
pub mod fas;
pub mod graph;
pub mod report;
pub mod stats;

pub use cycles::{girth, is_m_free, shortest_cycle, CycleWitness};
pub use graph::{Digraph, GraphError};
