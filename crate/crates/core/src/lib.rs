//! Solver for the quantized inspection game.
//!
//! An employer (row player, inspect `I` / not `N`) and a worker (column
//! player, work `W` / shirk `S`) share a two-qubit state
//! `a|IW> + b|IS> + c|NW> + d|NS>`. Each player leaves their qubit alone with
//! probability `p` (resp. `q`) and flips it otherwise; payoffs are the trace
//! of a diagonal payoff operator against the resulting density matrix.
//!
//! * [`game`] holds the classical 2x2 game and its mixed equilibrium.
//! * [`quantum`] builds density matrices and reduces payoffs to bilinear form.
//! * [`equilibrium`] enumerates every Nash equilibrium of the bilinear game.
//! * [`polytope`] solves the small exact linear programs over the
//!   probability simplex and estimates interior-equilibrium payoff ranges.
//! * [`scenario`] wires everything into JSON configs and reports.

pub mod equilibrium;
pub mod error;
pub mod game;
pub mod polytope;
pub mod quantum;
pub mod rational;
pub mod scenario;

pub use error::{Error, Result};
pub use game::{BilinearPayoff, InspectionParams, Outcome, PayoffMatrix2x2, Player, StrategyProfile};
pub use quantum::{DensityMatrix, PayoffOperator, QuantumState};
