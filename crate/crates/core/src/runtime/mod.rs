//! Discrete-event simulation over a lattice layer.
//!
//! Events are polled from the schedule in time order; each runs a callback
//! that changes the world through the agent's locale and may queue further
//! events. Runs end when the queue is empty, the model's terminate
//! condition holds, or a time limit is hit.

pub mod agent;
pub mod build;
pub mod layer;
pub mod rng;
pub mod schedule;
mod world;

pub use agent::{
    wander, Action, Agent, AgentDescriptor, AgentId, BehaviorSpec, Collision, CollisionRule, Destination, Locale,
    RuleCondition, Trigger, WanderOutcome,
};
pub use build::{InstantiateError, ModelConfig, OutputKind, SetupAction};
pub use layer::{ArenaShape, BoundaryRule, Coord, LatticeKind, Layer, LayerError, LayerSpec, Neighbor, Target};
pub use rng::SimRng;
pub use schedule::{Schedule, ScheduleError, Scheduled};
pub use world::{instantiate, Event, Execution, RuntimeError, StepResult, StopReason, World};

#[cfg(test)]
mod tests;
