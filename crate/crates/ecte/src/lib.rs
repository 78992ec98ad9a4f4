//! Energy-constrained exploration of edge-weighted rooted trees.
//!
//! A tree must be covered by closed walks ("routes") that start and end at
//! the root, each of length at most a budget `B`; the tree is no deeper than
//! `B/2`. This crate implements:
//!
//! - piecemeal depth-first search: greedy decomposition of a DFS traversal
//!   into budget-bounded routes ([`piecemeal`]);
//! - the adversarial variant, where the first route is capped at `B' <= B`
//!   and the cap is chosen to maximize total cost ([`piecemeal`]);
//! - exact brute-force optima for cost and route count over leaf-set
//!   partitions, plus an independent potential-strategy enumeration
//!   ([`oracle`]);
//! - heavy-path certificates: the sequence and decomposition quantities
//!   behind the constant-factor cost bound, evaluated as runtime checks
//!   ([`certificates`]);
//! - tree rearrangement that splits bunched light edges apart so all light
//!   potentials along a heavy path become distinct ([`rearrange`]);
//! - online simulation of an agent exploring an initially unknown tree
//!   through a reveal gate ([`online`]);
//! - instance generators, a plain-text file format and committed fixtures
//!   ([`generator`], [`format`], [`fixtures`]).
//!
//! All arithmetic is exact: weights are arbitrary-precision rationals and
//! every comparison in the stop rules and checks is decided without
//! rounding.
//!
//! Start with the runnable examples (`cargo run -p ecte --example explore`)
//! or the `ecte` binary, a thin command-line front end over this library.

pub mod certificates;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod generator;
pub mod online;
pub mod oracle;
pub mod piecemeal;
pub mod rearrange;
pub mod report;
pub mod route;
pub mod traversal;
pub mod tree;
pub mod weight;

pub use error::{Error, Result};
pub use piecemeal::{adversarial_dfs, adversarial_pdfs, pdfs, thresholds, PdfsTrace};
pub use route::{restricted_cost, route_length, validate_strategy, Route, Strategy, Verdict};
pub use traversal::{dfs_tour, steiner_route, ChildOrder, EulerTour};
pub use tree::{Classification, EdgeId, Instance, NodeId};
pub use weight::Weight;
