//! Agents and their behaviours.
//!
//! An agent sees the world only through a [`Locale`]: its own neighbourhood,
//! a random stream and requests to move or leave. It has no access to the
//! clock or to other agents.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use super::layer::{Coord, Neighbor, Target};
use super::rng::SimRng;
use crate::value::Predicate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AgentId(pub u32);

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Destination {
    VacantNeighbors,
    AllNeighbors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionRule {
    /// A move onto an occupied site is skipped.
    IgnoreOccupied,
    ErrorOnCollision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Action {
    Wander {
        destination: Destination,
        collision: CollisionRule,
    },
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Wander { .. } => "wander",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorSpec {
    pub action: Action,
    pub every: f64,
    pub until: Predicate,
}

/// Prototype shared by every agent a setup action creates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AgentDescriptor {
    pub behaviors: Vec<BehaviorSpec>,
}

/// Conditions an agent's rule table can react to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleCondition {
    /// An adjacent site gained or lost an occupant.
    NeighborhoodChanged,
}

/// What a rule fires: one immediate execution of a behaviour's action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Trigger {
    pub behavior: usize,
}

#[derive(Debug, Clone)]
pub struct Agent {
    pub id: AgentId,
    /// 1-based index of the setup action that created the agent.
    pub class: u8,
    behaviors: Vec<(String, BehaviorSpec)>,
    rules: Vec<(RuleCondition, Trigger)>,
    displacement: (i64, i64),
    moves: u64,
}

impl Agent {
    pub fn new(id: AgentId, class: u8, descriptor: &AgentDescriptor) -> Agent {
        let behaviors = descriptor
            .behaviors
            .iter()
            .enumerate()
            .map(|(i, b)| (format!("{}.{i}", b.action.name()), b.clone()))
            .collect();
        Agent {
            id,
            class,
            behaviors,
            rules: Vec::new(),
            displacement: (0, 0),
            moves: 0,
        }
    }

    pub fn behaviors(&self) -> impl Iterator<Item = (&str, &BehaviorSpec)> {
        self.behaviors.iter().map(|(n, b)| (n.as_str(), b))
    }

    pub fn behavior(&self, index: usize) -> Option<&BehaviorSpec> {
        self.behaviors.get(index).map(|(_, b)| b)
    }

    /// Looks a behaviour up by its table name, such as `wander.0`.
    pub fn behavior_named(&self, name: &str) -> Option<usize> {
        self.behaviors.iter().position(|(n, _)| n == name)
    }

    pub fn add_rule(&mut self, condition: RuleCondition, trigger: Trigger) {
        self.rules.push((condition, trigger));
    }

    pub fn triggers_for(&self, condition: RuleCondition) -> impl Iterator<Item = Trigger> + '_ {
        self.rules.iter().filter(move |(c, _)| *c == condition).map(|(_, t)| *t)
    }

    /// Net lattice displacement since creation, ignoring wrap-around.
    pub fn displacement(&self) -> (i64, i64) {
        self.displacement
    }

    pub fn moves(&self) -> u64 {
        self.moves
    }

    pub(super) fn record_move(&mut self, delta: (i64, i64)) {
        self.displacement.0 += delta.0;
        self.displacement.1 += delta.1;
        self.moves += 1;
    }
}

/// The agent's window on the world.
pub trait Locale {
    fn position(&self) -> Coord;
    fn neighbors(&self) -> Vec<Neighbor>;
    fn is_occupied(&self, site: Coord) -> bool;
    fn rng(&mut self) -> &mut SimRng;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum WanderOutcome {
    Stayed,
    Moved { from: Coord, to: Coord, delta: (i64, i64) },
    /// Stepped off an absorbing boundary.
    Left { from: Coord },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("collision moving from {from} to {to}")]
pub struct Collision {
    pub from: Coord,
    pub to: Coord,
}

/// Picks one neighbour uniformly among those the destination rule allows
/// and resolves collisions with the collision rule. The caller applies the
/// returned outcome.
pub fn wander(
    locale: &mut dyn Locale,
    destination: Destination,
    collision: CollisionRule,
) -> Result<WanderOutcome, Collision> {
    let from = locale.position();
    let candidates: Vec<Neighbor> = locale
        .neighbors()
        .into_iter()
        .filter(|n| match (destination, n.target) {
            (Destination::AllNeighbors, _) | (_, Target::Outside) => true,
            (Destination::VacantNeighbors, Target::Site(s)) => !locale.is_occupied(s),
        })
        .collect();
    if candidates.is_empty() {
        return Ok(WanderOutcome::Stayed);
    }
    let choice = candidates[locale.rng().gen_range(0..candidates.len())];
    match choice.target {
        Target::Outside => Ok(WanderOutcome::Left { from }),
        Target::Site(to) if locale.is_occupied(to) => match collision {
            CollisionRule::IgnoreOccupied => Ok(WanderOutcome::Stayed),
            CollisionRule::ErrorOnCollision => Err(Collision { from, to }),
        },
        Target::Site(to) => Ok(WanderOutcome::Moved {
            from,
            to,
            delta: choice.delta,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::layer::{ArenaShape, BoundaryRule, LatticeKind, Layer, LayerSpec};

    struct Fixture {
        layer: Layer,
        rng: SimRng,
        at: Coord,
    }

    impl Locale for Fixture {
        fn position(&self) -> Coord {
            self.at
        }
        fn neighbors(&self) -> Vec<Neighbor> {
            self.layer.neighbors(self.at)
        }
        fn is_occupied(&self, site: Coord) -> bool {
            self.layer.occupant(site).is_some()
        }
        fn rng(&mut self) -> &mut SimRng {
            &mut self.rng
        }
    }

    fn fixture(boundary: BoundaryRule, at: Coord) -> Fixture {
        let layer = Layer::new(LayerSpec {
            lattice: LatticeKind::Rectangular,
            width: 32,
            height: 32,
            arena: ArenaShape::Rectangular,
            boundary,
        })
        .unwrap();
        Fixture {
            layer,
            rng: SimRng::seeded(3),
            at,
        }
    }

    #[test]
    fn surrounded_agent_stays_under_vacant_rule() {
        let mut f = fixture(BoundaryRule::Periodic, Coord::new(5, 5));
        for (i, n) in f.layer.neighbors(f.at).into_iter().enumerate() {
            if let Target::Site(s) = n.target {
                f.layer.place(AgentId(i as u32 + 10), s).unwrap();
            }
        }
        let outcome = wander(&mut f, Destination::VacantNeighbors, CollisionRule::IgnoreOccupied).unwrap();
        assert_eq!(outcome, WanderOutcome::Stayed);
        let outcome = wander(&mut f, Destination::AllNeighbors, CollisionRule::IgnoreOccupied).unwrap();
        assert_eq!(outcome, WanderOutcome::Stayed);
        assert!(wander(&mut f, Destination::AllNeighbors, CollisionRule::ErrorOnCollision).is_err());
    }

    #[test]
    fn lone_agent_always_moves_one_step() {
        let mut f = fixture(BoundaryRule::Periodic, Coord::new(5, 5));
        for _ in 0..100 {
            match wander(&mut f, Destination::VacantNeighbors, CollisionRule::IgnoreOccupied).unwrap() {
                WanderOutcome::Moved { delta, .. } => assert_eq!(delta.0.abs() + delta.1.abs(), 1),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn neighbour_choice_is_uniform() {
        // Chi-square against the uniform distribution over four moves, 3
        // degrees of freedom, 0.001 critical value 16.27.
        let mut f = fixture(BoundaryRule::Periodic, Coord::new(5, 5));
        let mut counts = std::collections::HashMap::new();
        let trials = 10_000;
        for _ in 0..trials {
            if let WanderOutcome::Moved { delta, .. } =
                wander(&mut f, Destination::VacantNeighbors, CollisionRule::IgnoreOccupied).unwrap()
            {
                *counts.entry(delta).or_insert(0u32) += 1;
            }
        }
        assert_eq!(counts.len(), 4);
        let expected = trials as f64 / 4.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 16.27, "chi2 = {chi2}");
    }

    #[test]
    fn corner_agent_can_leave() {
        let mut left = 0;
        for seed in 0..200 {
            let mut f = fixture(BoundaryRule::Absorbing, Coord::new(0, 0));
            f.rng = SimRng::seeded(seed);
            if let WanderOutcome::Left { from } =
                wander(&mut f, Destination::VacantNeighbors, CollisionRule::IgnoreOccupied).unwrap()
            {
                assert_eq!(from, Coord::new(0, 0));
                left += 1;
            }
        }
        // Half the corner's four steps lead off the arena.
        assert!((70..=130).contains(&left), "{left}");
    }

    #[test]
    fn behaviour_table_names() {
        let spec = BehaviorSpec {
            action: Action::Wander {
                destination: Destination::VacantNeighbors,
                collision: CollisionRule::IgnoreOccupied,
            },
            every: 1.0,
            until: Predicate::never(),
        };
        let agent = Agent::new(
            AgentId(0),
            1,
            &AgentDescriptor {
                behaviors: vec![spec.clone(), spec],
            },
        );
        assert_eq!(agent.behavior_named("wander.1"), Some(1));
        assert_eq!(agent.behaviors().count(), 2);
    }
}
