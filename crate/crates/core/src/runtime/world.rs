use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::Serialize;
use thiserror::Error;

use super::agent::{wander, Action, Agent, AgentId, Locale, RuleCondition, Trigger, WanderOutcome};
use super::build::{InstantiateError, ModelConfig, OutputKind, SetupAction};
use super::layer::{Coord, Layer, LayerError, Neighbor};
use super::rng::SimRng;
use super::schedule::{Schedule, ScheduleError};
use crate::output::{capture_frame, FrameSink, OutputError, RunSummary};
use crate::registry::Registry;
use crate::semantics::ObjectNode;

#[derive(Debug, Error)]
pub enum RuntimeError {
    #[error("collision at time {time}: agent {agent} moving from {from} to {to}")]
    Collision {
        time: f64,
        agent: AgentId,
        from: Coord,
        to: Coord,
    },
    #[error("cannot scatter {requested} agents: only {vacant} vacant sites")]
    ScatterOverflow { requested: usize, vacant: usize },
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
    #[error(transparent)]
    Layer(#[from] LayerError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Output(#[from] OutputError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Setup(usize),
    Behavior { agent: AgentId, behavior: usize },
    /// Immediate execution requested by an agent's rule table.
    Rule { agent: AgentId, trigger: Trigger },
    /// Frame observer.
    Frame,
}

impl Event {
    fn agent(&self) -> Option<AgentId> {
        match self {
            Event::Behavior { agent, .. } | Event::Rule { agent, .. } => Some(*agent),
            Event::Setup(_) | Event::Frame => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// No events remain.
    Depleted,
    /// The model's terminate condition holds.
    Terminated,
    /// The next event lies beyond the time limit.
    MaxTime,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Depleted => "depleted",
            StopReason::Terminated => "terminated",
            StopReason::MaxTime => "max_time",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepResult {
    Advanced(f64),
    Depleted,
    Terminated(StopReason),
}

/// One executed behaviour, recorded when tracing is on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Execution {
    pub time: f64,
    pub agent: AgentId,
    pub behavior: usize,
    pub outcome: WanderOutcome,
}

struct AgentLocale<'w> {
    layer: &'w Layer,
    rng: &'w mut SimRng,
    at: Coord,
}

impl Locale for AgentLocale<'_> {
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
        self.rng
    }
}

/// A running simulation.
pub struct World {
    config: ModelConfig,
    layer: Layer,
    schedule: Schedule<Event>,
    agents: BTreeMap<AgentId, Agent>,
    rng: SimRng,
    next_agent: u32,
    events_executed: u64,
    agents_absorbed: u64,
    max_time: f64,
    stopped: Option<StopReason>,
    trace: Option<Vec<Execution>>,
}

/// Builds a world from a solved tree.
pub fn instantiate(tree: &ObjectNode, registry: &Registry, seed: u64) -> Result<World, RuntimeError> {
    World::new(ModelConfig::from_tree(tree, registry)?, seed)
}

impl World {
    /// Queues the setup actions at time 0 in declaration order, followed by
    /// the frame observer when the model writes images.
    pub fn new(config: ModelConfig, seed: u64) -> Result<World, RuntimeError> {
        let layer = Layer::new(config.layer)?;
        let mut schedule = Schedule::new();
        for i in 0..config.setup.len() {
            schedule.at(0.0, Event::Setup(i))?;
        }
        if config.outputs.contains(&OutputKind::ImageSequence) {
            schedule.at(0.0, Event::Frame)?;
        }
        Ok(World {
            config,
            layer,
            schedule,
            agents: BTreeMap::new(),
            rng: SimRng::seeded(seed),
            next_agent: 0,
            events_executed: 0,
            agents_absorbed: 0,
            max_time: f64::INFINITY,
            stopped: None,
            trace: None,
        })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn layer(&self) -> &Layer {
        &self.layer
    }

    pub fn clock(&self) -> f64 {
        self.schedule.clock()
    }

    pub fn pending_events(&self) -> usize {
        self.schedule.len()
    }

    pub fn agent(&self, id: AgentId) -> Option<&Agent> {
        self.agents.get(&id)
    }

    pub fn agents(&self) -> impl Iterator<Item = &Agent> {
        self.agents.values()
    }

    /// Mutable access for wiring rule tables before a run.
    pub fn agent_mut(&mut self, id: AgentId) -> Option<&mut Agent> {
        self.agents.get_mut(&id)
    }

    /// Number of agent classes, one per setup action.
    pub fn agent_classes(&self) -> u8 {
        self.config.setup.len().min(u8::MAX as usize) as u8
    }

    pub fn set_max_time(&mut self, max_time: f64) {
        self.max_time = max_time;
    }

    pub fn enable_trace(&mut self) {
        self.trace.get_or_insert_with(Vec::new);
    }

    pub fn trace(&self) -> &[Execution] {
        self.trace.as_deref().unwrap_or_default()
    }

    pub fn summary(&self) -> RunSummary {
        RunSummary {
            final_time: self.clock(),
            events_executed: self.events_executed,
            agents_alive: self.agents.len() as u64,
            agents_absorbed: self.agents_absorbed,
        }
    }

    /// Runs until the queue empties, the terminate condition holds or the
    /// time limit is reached.
    pub fn run(&mut self, sink: &mut dyn FrameSink) -> Result<StopReason, RuntimeError> {
        loop {
            match self.step(sink)? {
                StepResult::Advanced(_) => {}
                StepResult::Depleted => return Ok(StopReason::Depleted),
                StepResult::Terminated(reason) => return Ok(reason),
            }
        }
    }

    /// Executes the next event.
    pub fn step(&mut self, sink: &mut dyn FrameSink) -> Result<StepResult, RuntimeError> {
        if let Some(reason) = self.stopped {
            return Ok(match reason {
                StopReason::Depleted => StepResult::Depleted,
                other => StepResult::Terminated(other),
            });
        }
        let Some(next) = self.schedule.peek_time() else {
            self.stopped = Some(StopReason::Depleted);
            return Ok(StepResult::Depleted);
        };
        if next > self.max_time {
            self.stopped = Some(StopReason::MaxTime);
            return Ok(StepResult::Terminated(StopReason::MaxTime));
        }
        let before = self.clock();
        let event = self.schedule.pop().expect("peeked").event;
        debug_assert!(self.clock() >= before, "event times must not decrease");
        self.events_executed += 1;
        self.dispatch(event, sink)?;
        debug_assert_eq!(self.layer.occupied_count(), self.agents.len());

        if self.config.terminate.holds_at(self.clock()) {
            self.stopped = Some(StopReason::Terminated);
            return Ok(StepResult::Terminated(StopReason::Terminated));
        }
        Ok(StepResult::Advanced(self.clock()))
    }

    fn dispatch(&mut self, event: Event, sink: &mut dyn FrameSink) -> Result<(), RuntimeError> {
        match event {
            Event::Setup(i) => match self.config.setup[i].clone() {
                SetupAction::Scatter { count, descriptor } => {
                    self.scatter(count, &descriptor, i as u8 + 1)?;
                }
            },
            Event::Behavior { agent, behavior } => {
                let Some(spec) = self.agents.get(&agent).and_then(|a| a.behavior(behavior)).cloned() else {
                    return Ok(());
                };
                if spec.until.holds_at(self.clock()) {
                    return Ok(());
                }
                self.execute(agent, behavior, spec.action)?;
                if self.agents.contains_key(&agent) {
                    self.schedule.after(spec.every, Event::Behavior { agent, behavior })?;
                }
            }
            Event::Rule { agent, trigger } => {
                let Some(spec) = self.agents.get(&agent).and_then(|a| a.behavior(trigger.behavior)).cloned() else {
                    return Ok(());
                };
                if !spec.until.holds_at(self.clock()) {
                    self.execute(agent, trigger.behavior, spec.action)?;
                }
            }
            Event::Frame => {
                sink.accept(&capture_frame(self))?;
                if self.schedule.any(|e| *e != Event::Frame) {
                    self.schedule.at(self.clock().floor() + 1.0, Event::Frame)?;
                }
            }
        }
        Ok(())
    }

    /// Places `count` agents on distinct vacant sites chosen uniformly, and
    /// queues each agent's first behaviour firings one interval later.
    pub fn scatter(
        &mut self,
        count: usize,
        descriptor: &super::agent::AgentDescriptor,
        class: u8,
    ) -> Result<Vec<AgentId>, RuntimeError> {
        let mut sites = self.layer.vacant_sites();
        if count > sites.len() {
            return Err(RuntimeError::ScatterOverflow {
                requested: count,
                vacant: sites.len(),
            });
        }
        let (chosen, _) = sites.partial_shuffle(&mut self.rng, count);
        let chosen = chosen.to_vec();
        let mut ids = Vec::with_capacity(count);
        for site in chosen {
            let id = AgentId(self.next_agent);
            self.next_agent += 1;
            self.layer.place(id, site)?;
            let agent = Agent::new(id, class, descriptor);
            for (i, (_, spec)) in agent.behaviors().enumerate() {
                self.schedule.after(spec.every, Event::Behavior { agent: id, behavior: i })?;
            }
            self.agents.insert(id, agent);
            ids.push(id);
        }
        Ok(ids)
    }

    fn execute(&mut self, id: AgentId, behavior: usize, action: Action) -> Result<(), RuntimeError> {
        let Some(at) = self.layer.position(id) else {
            return Ok(());
        };
        let Action::Wander {
            destination,
            collision,
        } = action;
        let mut locale = AgentLocale {
            layer: &self.layer,
            rng: &mut self.rng,
            at,
        };
        let outcome = wander(&mut locale, destination, collision).map_err(|c| RuntimeError::Collision {
            time: self.schedule.clock(),
            agent: id,
            from: c.from,
            to: c.to,
        })?;
        if let Some(trace) = &mut self.trace {
            trace.push(Execution {
                time: self.schedule.clock(),
                agent: id,
                behavior,
                outcome,
            });
        }
        match outcome {
            WanderOutcome::Stayed => {}
            WanderOutcome::Moved { from, to, delta } => {
                self.layer.place(id, to)?;
                if let Some(agent) = self.agents.get_mut(&id) {
                    agent.record_move(delta);
                }
                self.notify(id, &[from, to])?;
            }
            WanderOutcome::Left { from } => {
                self.layer.remove(id)?;
                self.agents.remove(&id);
                self.agents_absorbed += 1;
                self.schedule.retain(|e| e.agent() != Some(id));
                self.notify(id, &[from])?;
            }
        }
        Ok(())
    }

    /// Tells agents next to the changed sites to consult their rule tables;
    /// matching rules fire at the current time.
    fn notify(&mut self, mover: AgentId, sites: &[Coord]) -> Result<(), RuntimeError> {
        let mut affected: Vec<AgentId> = Vec::new();
        for site in sites {
            for a in self.layer.adjacent_agents(*site) {
                if a != mover && !affected.contains(&a) {
                    affected.push(a);
                }
            }
        }
        for agent in affected {
            let triggers: Vec<Trigger> = self
                .agents
                .get(&agent)
                .map(|a| a.triggers_for(RuleCondition::NeighborhoodChanged).collect())
                .unwrap_or_default();
            for trigger in triggers {
                self.schedule.after(0.0, Event::Rule { agent, trigger })?;
            }
        }
        Ok(())
    }
}
