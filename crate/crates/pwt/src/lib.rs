//! Solvers for the packing-while-traveling (PWT) nonlinear knapsack problem.
//!
//! A vehicle drives a fixed route of `n + 1` cities. Each of the first `n`
//! cities holds items with a profit and a weight. Selected items add their
//! profit to the reward but slow the vehicle down, which raises the rented
//! travel time and hence the transport cost. The goal is a subset of items
//! maximizing profit minus transport cost, subject to a knapsack capacity.
//!
//! The crate provides:
//! * [`problem`]: instance model, exact objective evaluation, feasibility;
//! * [`preprocess`]: detection of compulsory and unprofitable items;
//! * [`sequencing`]: static item dominance pairs and pending pairs;
//! * [`bounds`]: piecewise-linear lower/upper bound models;
//! * [`lp`]: a bounded-variable simplex and a small branch-and-bound MIP;
//! * [`mipexport`]: an exact linearized model emitted in LP text format;
//! * [`bib`]: the exact branch-infer-and-bound solver;
//! * [`oracle`]: brute-force ground truth for small instances;
//! * [`generator`]: reproducible benchmark-style instance generators;
//! * [`io`]: instance/tour/solution file formats.

pub mod bib;
pub mod bounds;
pub mod generator;
pub mod io;
pub mod lp;
pub mod mipexport;
pub mod oracle;
pub mod preprocess;
pub mod problem;
pub mod sequencing;

mod error;
pub mod numfmt;
pub use error::Error;
