//! Exact-arithmetic toolkit for sequentially lifted cover inequalities (LCIs)
//! over 0-1 knapsack sets.
//!
//! The crate provides:
//!
//! * [`knapsack`] — knapsack sets, covers, partitions, restrictions, and the
//!   exact 0-1 maximization kernel every lifting subproblem reduces to;
//! * [`lifting`] — up-lifting, down-lifting, and the sequential lifting driver;
//! * [`verify`] — brute-force validity, dimension, and facet checks plus an
//!   enumeration-based lifting oracle;
//! * [`gu`] — the Fibonacci-like coefficient family with exponential lifting
//!   coefficients, and its constructive subset-sum representation;
//! * [`hardness`] — the restricted partition problem (RPP) and the reduction
//!   that encodes an RPP answer into a single lifted coefficient;
//! * [`io`] — the JSON file formats consumed and produced by the CLI.
//!
//! All arithmetic is exact big-integer arithmetic; nothing in the crate uses
//! floating point.

pub mod gu;
pub mod hardness;
pub mod io;
pub mod knapsack;
pub mod lifting;
pub mod verify;

pub use knapsack::{KnapsackSet, Partition, Restriction};
pub use lifting::{LiftedCoverInequality, LiftingTask};
