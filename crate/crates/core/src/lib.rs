//! Power graphs of finite groups: construction, clique and chromatic numbers
//! via the recursive psi function, stable colorings, Berge certification, and
//! independent exact oracles for cross-checking.

pub mod arith;
pub mod coloring;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod perfectness;
pub mod verification;

pub use arith::{ashrafi_value, euler_phi, factorize, psi, psi_closed_form, ArithError, FactoredInt};
pub use coloring::{
    chi, color_group, extend_prime_step, extend_stable, stable_color_cyclic,
    verify_weak_stability, wall_target, Coloring, ColoringError, CyclicColoring,
};
pub use graph::{build_power_graph, BitGraph, Bitset, CliqueWitness, ExportFormat, PowerGraph};
pub use group::{FiniteGroup, GroupError};
pub use oracle::{chromatic_number_exact, max_clique_exact, OracleError};
pub use perfectness::{
    certify_berge, find_odd_antihole, find_odd_hole, BergeError, BergeReport, BergeWitness,
    WitnessKind,
};
pub use verification::{corpus, run_all, CheckReport};
