//! The built-in component library.

use super::{AuditError, Condition, Constraint, DefaultCandidate, Registry, RegistryBuilder, SlotSpec};
use crate::value::{Literal, NumericRange, Predicate, PrimitiveKind};

/// Class names the runtime links against.
pub mod names {
    pub const PROJECT: &str = "Project";
    pub const GEOMETRY: &str = "Geometry";
    pub const RECTANGULAR_LATTICE: &str = "RectangularLattice";
    pub const TRIANGULAR_LATTICE: &str = "TriangularLattice";
    pub const HEXAGONAL_LATTICE: &str = "HexagonalLattice";
    pub const BOUNDARY: &str = "Boundary";
    pub const ABSORBING: &str = "Absorbing";
    pub const PERIODIC: &str = "Periodic";
    pub const ARENA_SHAPE: &str = "ArenaShape";
    pub const RECTANGULAR_ARENA: &str = "RectangularArena";
    pub const HEXAGONAL_ARENA: &str = "HexagonalArena";
    pub const SETUP_ACTION: &str = "SetupAction";
    pub const SCATTER: &str = "Scatter";
    pub const AGENT_DESCRIPTOR: &str = "AgentDescriptor";
    pub const BEHAVIOR: &str = "Behavior";
    pub const BEHAVIOR_ACTION: &str = "BehaviorAction";
    pub const WANDER: &str = "Wander";
    pub const DESTINATION_RULE: &str = "DestinationRule";
    pub const VACANT_NEIGHBORS: &str = "VacantNeighbors";
    pub const ALL_NEIGHBORS: &str = "AllNeighbors";
    pub const COLLISION_RULE: &str = "CollisionRule";
    pub const IGNORE_OCCUPIED: &str = "IgnoreOccupied";
    pub const ERROR_ON_COLLISION: &str = "ErrorOnCollision";
    pub const OUTPUT_SINK: &str = "OutputSink";
    pub const IMAGE_SEQUENCE: &str = "ImageSequence";
}

/// Side length of the lattice when none is given.
pub const DEFAULT_LATTICE_SIZE: i64 = 32;

/// Builds and audits the built-in library.
///
/// Slot order within each class is the order the solver fills slots in.
pub fn seed_registry() -> Result<Registry, AuditError> {
    use names::*;
    let mut b = RegistryBuilder::new();

    let project = b.component(PROJECT, None, None);

    let geometry = b.abstract_class(GEOMETRY, None);
    let rect_lattice = b.component(RECTANGULAR_LATTICE, Some("rectangular"), Some(geometry));
    let tri_lattice = b.component(TRIANGULAR_LATTICE, Some("triangular"), Some(geometry));
    let hex_lattice = b.component(HEXAGONAL_LATTICE, Some("hexagonal"), Some(geometry));
    for lattice in [rect_lattice, tri_lattice, hex_lattice] {
        for side in ["width", "height"] {
            b.slot(
                lattice,
                SlotSpec::primitive(side, PrimitiveKind::Integer)
                    .within(NumericRange::Positive)
                    .default(DefaultCandidate::primitive(Literal::Integer(DEFAULT_LATTICE_SIZE))),
            );
        }
    }

    let boundary = b.abstract_class(BOUNDARY, None);
    let absorbing = b.component(ABSORBING, Some("absorbing"), Some(boundary));
    let periodic = b.component(PERIODIC, Some("periodic"), Some(boundary));

    let arena = b.abstract_class(ARENA_SHAPE, None);
    let rect_arena = b.component(RECTANGULAR_ARENA, Some("rectangular"), Some(arena));
    let hex_arena = b.component(HEXAGONAL_ARENA, Some("hexagonal"), Some(arena));

    let setup = b.abstract_class(SETUP_ACTION, None);
    let scatter = b.component(SCATTER, Some("scatter"), Some(setup));
    let descriptor = b.component(AGENT_DESCRIPTOR, Some("Agent"), None);
    let behavior = b.component(BEHAVIOR, Some("Behavior"), None);
    let action = b.abstract_class(BEHAVIOR_ACTION, None);
    let wander = b.component(WANDER, Some("wander"), Some(action));

    let destination = b.abstract_class(DESTINATION_RULE, None);
    let vacant = b.component(VACANT_NEIGHBORS, Some("vacant_neighbors"), Some(destination));
    let all = b.component(ALL_NEIGHBORS, Some("all_neighbors"), Some(destination));

    let collision = b.abstract_class(COLLISION_RULE, None);
    let ignore = b.component(IGNORE_OCCUPIED, Some("ignore_occupied"), Some(collision));
    let error = b.component(ERROR_ON_COLLISION, Some("error_on_collision"), Some(collision));

    let sink = b.abstract_class(OUTPUT_SINK, None);
    let images = b.component(IMAGE_SEQUENCE, Some("image_sequence"), Some(sink));

    b.slot(
        project,
        SlotSpec::component("geometry", geometry).defaults(
            [rect_lattice, tri_lattice, hex_lattice].map(DefaultCandidate::component),
        ),
    )
    .slot(
        project,
        SlotSpec::component("boundary", boundary)
            .defaults([absorbing, periodic].map(DefaultCandidate::component)),
    )
    .slot(
        project,
        SlotSpec::component("arena", arena)
            .defaults([rect_arena, hex_arena].map(DefaultCandidate::component)),
    )
    .slot(
        project,
        SlotSpec::list("initially", setup).default(DefaultCandidate::list(Vec::new())),
    )
    .slot(
        project,
        SlotSpec::list("output", sink).default(DefaultCandidate::list(vec![images])),
    )
    .slot(
        project,
        SlotSpec::primitive("terminate", PrimitiveKind::Predicate)
            .default(DefaultCandidate::primitive(Literal::Predicate(Predicate::never()))),
    )
    .constraint(
        project,
        Constraint::implies(
            "C1",
            "a hexagonal arena cannot use a periodic boundary",
            Condition::is("arena", hex_arena),
            Condition::is_not("boundary", periodic),
        ),
    )
    .constraint(
        project,
        Constraint::implies(
            "C2",
            "a rectangular lattice cannot use a hexagonal arena",
            Condition::is("geometry", rect_lattice),
            Condition::is_not("arena", hex_arena),
        ),
    );

    b.slot(
        scatter,
        SlotSpec::primitive("count", PrimitiveKind::Integer)
            .within(NumericRange::NonNegative)
            .default(DefaultCandidate::primitive(Literal::Integer(1))),
    )
    .slot(scatter, SlotSpec::component("description", descriptor).required());

    b.slot(
        descriptor,
        SlotSpec::list("do", behavior).default(DefaultCandidate::list(Vec::new())),
    );

    b.slot(behavior, SlotSpec::component("action", action).required())
        .slot(
            behavior,
            SlotSpec::primitive("every", PrimitiveKind::Decimal)
                .within(NumericRange::Positive)
                .default(DefaultCandidate::primitive(Literal::Decimal(1.0))),
        )
        .slot(
            behavior,
            SlotSpec::primitive("until", PrimitiveKind::Predicate)
                .default(DefaultCandidate::primitive(Literal::Predicate(Predicate::never()))),
        );

    b.slot(
        wander,
        SlotSpec::component("destination", destination)
            .defaults([vacant, all].map(DefaultCandidate::component)),
    )
    .slot(
        wander,
        SlotSpec::component("collision", collision)
            .defaults([ignore, error].map(DefaultCandidate::component)),
    )
    .constraint(
        wander,
        Constraint::implies(
            "C3",
            "destinations that include occupied sites need a collision rule",
            Condition::is("destination", all),
            Condition::bound("collision"),
        ),
    );

    b.build(project)
}
