//! Hyperbolic toral automorphisms of the 2-torus: exact quadratic
//! arithmetic, carry automata and sofic kernels of symbolic codings.

mod carry;
mod golden;
mod kernel;
mod quadratic;

pub use carry::{carry_automaton, CarryAutomaton};
pub use golden::{
    closure_kl, closure_kr, golden_mean, golden_pipeline, golden_relations, multiplication_table, swap_relation_from_tails,
    GoldenPipeline,
    MultiplicationTable,
};
pub use kernel::{toral_kernel, ToralSpec};
pub use quadratic::{squarefree_part, QuadraticNumber};
