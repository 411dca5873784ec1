//! Event algebra, capacities and their transforms.

mod capacity;
mod events;
mod extreme;
mod probability;

pub use capacity::{
    capacity_from_masses, lower_probability, min_envelope, mobius_inversion, validate_capacity,
    Capacity, CapacityReport, CapacityViolation, MassAssignment, MobiusTransform,
};
pub use events::{EventSet, EventSpace, MAX_EVENTS};
pub use extreme::core_extreme_points;
pub use probability::ProbabilityVector;
