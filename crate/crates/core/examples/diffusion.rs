//! Mean squared displacement of a lone random walker on a periodic lattice.
//! An unbiased walk of n unit steps has an expected MSD of n.

use nanoccs::output::NullSink;
use nanoccs::runtime::{
    Action, AgentDescriptor, ArenaShape, BehaviorSpec, BoundaryRule, CollisionRule, Destination, LatticeKind,
    LayerSpec, ModelConfig, SetupAction, World,
};
use nanoccs::value::Predicate;

const STEPS: f64 = 100.0;

fn walker() -> ModelConfig {
    ModelConfig {
        layer: LayerSpec {
            lattice: LatticeKind::Rectangular,
            width: 32,
            height: 32,
            arena: ArenaShape::Rectangular,
            boundary: BoundaryRule::Periodic,
        },
        setup: vec![SetupAction::Scatter {
            count: 1,
            descriptor: AgentDescriptor {
                behaviors: vec![BehaviorSpec {
                    action: Action::Wander {
                        destination: Destination::VacantNeighbors,
                        collision: CollisionRule::IgnoreOccupied,
                    },
                    every: 1.0,
                    until: Predicate::never(),
                }],
            },
        }],
        outputs: Vec::new(),
        terminate: Predicate::never(),
    }
}

fn main() {
    let runs: u64 = std::env::args().nth(1).map_or(2000, |s| s.parse().expect("run count"));
    let mut total = 0.0;
    for seed in 0..runs {
        let mut world = World::new(walker(), seed).unwrap();
        world.set_max_time(STEPS);
        world.run(&mut NullSink).unwrap();
        let agent = world.agents().next().expect("periodic walls keep the walker");
        let (dx, dy) = agent.displacement();
        total += (dx * dx + dy * dy) as f64;
    }
    let msd = total / runs as f64;
    println!("{runs} walks of {STEPS} steps: MSD {msd:.2} (expected {STEPS})");
}
