//! Exact solvers for monotone ratio problems on graphs.
//!
//! The densest subgraph problem (maximize `C(S,S)/q(S)`) and conductance*
//! (minimize `C(S, V∖S)/q(S)` away from a seed set) are both solved by a
//! sequence of parametric minimum cuts. [`ipc`] walks only the handful of
//! breakpoints needed to reach the optimum; [`parametric`] recovers the whole
//! envelope. Greedy peeling baselines live in [`peel`].

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ipc;
pub mod network;
pub mod parametric;
pub mod peel;
pub mod rational;
pub mod solver;
pub mod subset;

pub use error::{Error, Result};
pub use graph::{load_edge_list, Edge, InputGraph};
pub use ipc::{
    brute_force_best_ratio, ipc_maximize, ipc_minimize, solve_lambda_problem, verify_certificate,
    IpcOptions, RatioResult, TraceStep,
};
pub use network::{
    build_conductance_network, build_dsp_network, build_s_excess_network, InstantiatedNetwork,
    ParametricNetwork, Sense,
};
pub use parametric::{fully_parametric, leftmost_breakpoint, simple_parametric, Breakpoint, Envelope};
pub use peel::{charikar_greedy, greedy_pp, PeelTrace};
pub use rational::Rational;
pub use solver::{solve_mincut, solve_mincut_with, CutSolution, Extremal, SolverState, Sweep};
pub use subset::NodeSubset;
