use super::*;
use crate::output::{MemorySink, NullSink};
use crate::pipeline::Compiler;
use crate::value::Predicate;

const LISTING: &str = include_str!("../../examples/models/single_agent.nano");
const STUPID: &str = include_str!("../../examples/models/stupid_model_1.nano");

fn world(src: &str, seed: u64) -> World {
    let compiler = Compiler::seeded();
    let solved = compiler.compile(src).unwrap().solved;
    instantiate(&solved, compiler.registry(), seed).unwrap()
}

fn wander_spec(every: f64, until: Predicate) -> BehaviorSpec {
    BehaviorSpec {
        action: Action::Wander {
            destination: Destination::VacantNeighbors,
            collision: CollisionRule::IgnoreOccupied,
        },
        every,
        until,
    }
}

fn bare_config(boundary: BoundaryRule, setup: Vec<SetupAction>) -> ModelConfig {
    ModelConfig {
        layer: LayerSpec {
            lattice: LatticeKind::Rectangular,
            width: 32,
            height: 32,
            arena: ArenaShape::Rectangular,
            boundary,
        },
        setup,
        outputs: vec![OutputKind::ImageSequence],
        terminate: Predicate::never(),
    }
}

fn scatter(count: usize, behaviors: Vec<BehaviorSpec>) -> SetupAction {
    SetupAction::Scatter {
        count,
        descriptor: AgentDescriptor { behaviors },
    }
}

#[test]
fn listing_world_before_the_first_event() {
    let w = world(LISTING, 0);
    let spec = w.layer().spec();
    assert_eq!((spec.width, spec.height), (32, 32));
    assert_eq!(spec.lattice, LatticeKind::Rectangular);
    assert_eq!(spec.boundary, BoundaryRule::Absorbing);
    assert_eq!(w.layer().occupied_count(), 0);
    // The scatter and the frame observer.
    assert_eq!(w.pending_events(), 2);
}

#[test]
fn stupid_model_world() {
    let w = world(STUPID, 0);
    assert_eq!((w.layer().width(), w.layer().height()), (100, 100));
    assert_eq!(w.config().setup.len(), 1);
    let SetupAction::Scatter { count, .. } = &w.config().setup[0];
    assert_eq!(*count, 100);
}

#[test]
fn empty_model_stops_after_one_frame() {
    let mut w = world("", 0);
    let mut sink = MemorySink::default();
    assert_eq!(w.run(&mut sink).unwrap(), StopReason::Depleted);
    assert_eq!(sink.frames.len(), 1);
    assert_eq!(sink.frames[0].occupied(), 0);
    let summary = w.summary();
    assert_eq!(summary.events_executed, 1);
    assert_eq!(summary.final_time, 0.0);
}

#[test]
fn single_scatter_queues_one_behaviour_at_one() {
    let mut w = World::new(
        bare_config(BoundaryRule::Periodic, vec![scatter(1, vec![wander_spec(1.0, Predicate::never())])]),
        5,
    )
    .unwrap();
    assert!(matches!(w.step(&mut NullSink).unwrap(), StepResult::Advanced(t) if t == 0.0));
    assert_eq!(w.layer().occupied_count(), 1);
    // Frame observer at 0 and the first wander at 1.
    assert_eq!(w.pending_events(), 2);
    w.step(&mut NullSink).unwrap();
    assert!(matches!(w.step(&mut NullSink).unwrap(), StepResult::Advanced(t) if t == 1.0));
}

#[test]
fn zero_count_scatter_creates_nothing() {
    let mut w = World::new(bare_config(BoundaryRule::Periodic, vec![scatter(0, vec![wander_spec(1.0, Predicate::never())])]), 0)
        .unwrap();
    w.run(&mut NullSink).unwrap();
    assert_eq!(w.summary().agents_alive, 0);
    assert_eq!(w.summary().events_executed, 2);
}

#[test]
fn overfull_scatter_overflows() {
    let mut w = World::new(bare_config(BoundaryRule::Periodic, vec![scatter(1025, Vec::new())]), 0).unwrap();
    let err = w.step(&mut NullSink).unwrap_err();
    assert!(matches!(err, RuntimeError::ScatterOverflow { requested: 1025, vacant: 1024 }));
}

#[test]
fn until_halts_at_the_inclusive_boundary() {
    // Hand trace: firings at 1, 2, ..., 100; the one at 100 sees
    // `time >= 100` and stops, leaving 99 executions.
    let until = Predicate::from_ast(&crate::syntax::parse_source("time >= 100.0;").unwrap().children()[0]).unwrap();
    let mut w = World::new(bare_config(BoundaryRule::Periodic, vec![scatter(1, vec![wander_spec(1.0, until)])]), 9).unwrap();
    w.enable_trace();
    let mut sink = MemorySink::default();
    assert_eq!(w.run(&mut sink).unwrap(), StopReason::Depleted);
    let times: Vec<f64> = w.trace().iter().map(|e| e.time).collect();
    assert_eq!(times, (1..=99).map(f64::from).collect::<Vec<_>>());
    assert_eq!(sink.frames.len(), 101);
    assert_eq!(w.summary().final_time, 100.0);
}

#[test]
fn every_two_and_a_half_fires_after_one_interval() {
    let until = Predicate::from_ast(&crate::syntax::parse_source("time > 10.0;").unwrap().children()[0]).unwrap();
    let mut w = World::new(bare_config(BoundaryRule::Periodic, vec![scatter(1, vec![wander_spec(2.5, until)])]), 1).unwrap();
    w.enable_trace();
    w.run(&mut NullSink).unwrap();
    let times: Vec<f64> = w.trace().iter().map(|e| e.time).collect();
    assert_eq!(times, vec![2.5, 5.0, 7.5, 10.0]);
}

#[test]
fn max_time_bounds_endless_behaviour() {
    let mut w = World::new(bare_config(BoundaryRule::Periodic, vec![scatter(1, vec![wander_spec(1.0, Predicate::never())])]), 0)
        .unwrap();
    w.set_max_time(20.0);
    let mut sink = MemorySink::default();
    assert_eq!(w.run(&mut sink).unwrap(), StopReason::MaxTime);
    assert_eq!(w.clock(), 20.0);
    assert_eq!(sink.frames.len(), 21);
}

#[test]
fn absorbed_agents_leave_no_events_behind() {
    let mut absorbed = 0;
    for seed in 0..30 {
        let mut w = world(LISTING, seed);
        let mut sink = MemorySink::default();
        w.run(&mut sink).unwrap();
        let s = w.summary();
        assert_eq!(s.agents_alive + s.agents_absorbed, 1);
        // Frames stop once only the observer is left.
        assert_eq!(sink.frames.len() as f64, s.final_time.floor() + 1.0);
        for f in &sink.frames {
            assert!(f.occupied() <= 1);
        }
        if s.agents_absorbed == 1 {
            absorbed += 1;
            assert_eq!(sink.frames.last().unwrap().occupied(), 0);
            assert_eq!(w.pending_events(), 0);
        }
    }
    assert!(absorbed > 0);
}

#[test]
fn occupancy_is_conserved_under_periodic_boundary() {
    let mut w = world(&STUPID.replace("width: 100", "width: 20").replace("height: 100", "height: 20"), 3);
    let mut sink = MemorySink::default();
    loop {
        let step = w.step(&mut sink).unwrap();
        assert_eq!(w.layer().occupied_count(), w.agents().count());
        for (_, c) in w.layer().agents() {
            assert!(w.layer().in_arena(c));
        }
        if !matches!(step, StepResult::Advanced(_)) {
            break;
        }
    }
    assert!(sink.frames.iter().all(|f| f.occupied() == 100));
}

#[test]
fn displacement_is_bounded_by_moves() {
    let mut w = world(&STUPID.replace("count: 100", "count: 5"), 11);
    w.run(&mut NullSink).unwrap();
    for agent in w.agents() {
        let (dx, dy) = agent.displacement();
        assert!((dx.abs() + dy.abs()) as u64 <= agent.moves());
        assert!(agent.moves() <= 99);
    }
}

#[test]
fn same_seed_same_frames() {
    let run = |seed| {
        let mut w = world(STUPID, seed);
        let mut sink = MemorySink::default();
        w.run(&mut sink).unwrap();
        (sink.frames, w.summary())
    };
    assert_eq!(run(4), run(4));
    assert_ne!(run(4).0, run(5).0);
}

#[test]
fn error_on_collision_aborts_with_coordinates() {
    let src = "geometry: rectangular { width: 3; height: 3; };\nboundary: periodic;\n\
               initially: scatter { count: 8; description: Agent: do: Behavior { action: wander { \
               destination: all_neighbors; collision: error_on_collision; }; }; };";
    let mut w = world(src, 0);
    match w.run(&mut NullSink) {
        Err(RuntimeError::Collision { time, from, to, .. }) => {
            assert_eq!(time, 1.0);
            assert_ne!(from, to);
        }
        other => panic!("expected a collision, got {other:?}"),
    }
}

#[test]
fn crowded_model_ignores_collisions_and_stops_on_terminate() {
    let mut w = world(include_str!("../../examples/models/crowded_collisions.nano"), 2);
    let mut sink = MemorySink::default();
    assert_eq!(w.run(&mut sink).unwrap(), StopReason::Terminated);
    assert_eq!(w.clock(), 50.0);
    assert!(sink.frames.is_empty());
    assert_eq!(w.summary().agents_alive, 40);
}

#[test]
fn rule_tables_fire_on_neighbourhood_changes() {
    let config = bare_config(
        BoundaryRule::Periodic,
        vec![scatter(2, vec![wander_spec(1.0, Predicate::never())])],
    );
    let mut w = World::new(config, 0).unwrap();
    w.set_max_time(30.0);
    w.enable_trace();
    w.step(&mut NullSink).unwrap();
    let ids: Vec<AgentId> = w.agents().map(|a| a.id).collect();
    w.agent_mut(ids[0]).unwrap().add_rule(RuleCondition::NeighborhoodChanged, Trigger { behavior: 0 });
    w.run(&mut NullSink).unwrap();
    // Agent 0 executes once per scheduled firing plus once per notification.
    let scheduled = 30;
    let own = w.trace().iter().filter(|e| e.agent == ids[0]).count();
    assert!(own >= scheduled);
    let other = w.trace().iter().filter(|e| e.agent == ids[1]).count();
    assert_eq!(other, scheduled);
}

#[test]
fn hexagonal_arena_keeps_agents_inside() {
    let mut w = world(include_str!("../../examples/models/hexagonal_arena.nano"), 8);
    assert_eq!(w.layer().spec().lattice, LatticeKind::Triangular);
    let mut sink = MemorySink::default();
    w.run(&mut sink).unwrap();
    for (_, c) in w.layer().agents() {
        assert!(w.layer().in_arena(c));
    }
    let s = w.summary();
    assert_eq!(s.agents_alive + s.agents_absorbed, 20);
    let counts: Vec<usize> = sink.frames.iter().map(|f| f.occupied()).collect();
    assert!(counts.windows(2).all(|p| p[1] <= p[0]));
}
