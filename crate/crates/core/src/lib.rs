//! Exact solvers for finite sequential decision problems under
//! non-probabilistic uncertainty.
//!
//! Uncertainty is described by a capacity on a finite set of elementary
//! events (belief functions given by Möbius masses, lower envelopes of
//! probability sets, or explicit tables). Strategies in a decision tree are
//! evaluated by Choquet expected utility, and the [`solve`] module provides
//! sophisticated (backward induction), justifiable and resolute strategy
//! selection together with a dominance oracle and rationality audits.
//!
//! All arithmetic is exact ([`Rational`]).

pub mod criteria;
pub mod error;
pub mod fixtures;
pub mod model;
mod par;
pub mod random;
pub mod rational;
pub mod solve;
pub mod tree;
pub mod uncertainty;

pub use criteria::{
    choquet_value, linear_value, local_value, seu_value, CriterionConfig, CriterionKind, Utility,
};
pub use error::{Error, Result};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use tree::{
    enumerate_strategies, gain_mapping, path_event, restrict, validate_tree, DecisionTree, EdgeRef,
    GainMapping, NodeId, NodeSpec, Strategy, SubtreeMask, TreeReport, TreeViolation,
};
pub use uncertainty::{
    core_extreme_points, lower_probability, min_envelope, mobius_inversion, validate_capacity,
    Capacity, CapacityReport, CapacityViolation, EventSet, EventSpace, MassAssignment,
    MobiusTransform, ProbabilityVector,
};

/// Default limit on the number of strategies the enumeration-based
/// procedures will materialize.
pub const DEFAULT_STRATEGY_CAP: u128 = 1_000_000;
