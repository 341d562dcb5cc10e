//! De Bruijn sequences, de Bruijn digraphs and the directed watchman's
//! walk problem.
//!
//! * [`seq`]: alphabets, cyclic sequences, left shifts, k-tours and de
//!   Bruijn sequence generators.
//! * [`graph`]: de Bruijn digraphs, subdigraphs generated by a sequence,
//!   domination, Eulerian circuits, DOT and JSON.
//! * [`watchman`]: the closed-form watchman number, the constructive
//!   walk on a lower-order de Bruijn sequence, and an exact solver.
//! * [`analysis`]: certificates deciding whether a generating sequence
//!   induces a watchman's walk, plus an exhaustive sweep harness.
//! * [`cli`]: the `dbwalk` command line.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod graph;
pub mod limits;
pub mod seq;
pub mod watchman;

pub use analysis::{classify, sweep, verify, Classification, Reason, Verdict, VerificationRecord};
pub use error::{Error, Result};
pub use graph::{build_de_bruijn_graph, gen_eulerian, generated_subdigraph, Digraph, Walk};
pub use limits::Limits;
pub use seq::{gen_fkm, gen_greedy, parse_sequence, Alphabet, CyclicSequence, Generator, KString};
pub use watchman::{
    enumerate_min_walks, induced_walk, solve_min_walk, theorem_walk, watchman_number_formula,
    SolveResult,
};
