use super::*;
use crate::registry::seed::names;
use crate::registry::seed_registry;
use crate::semantics::{check_determination, translate, SymbolTables};
use crate::syntax::parse_source;

const LISTING: &str = include_str!("../../examples/models/single_agent.nano");

fn tree(src: &str, registry: &Registry) -> ObjectNode {
    let tables = SymbolTables::build(registry);
    let root = translate(&parse_source(src).unwrap(), registry, &tables).unwrap();
    assert!(check_determination(&root, registry).is_empty());
    root
}

fn solve(src: &str) -> (Registry, SolverOutcome) {
    let registry = seed_registry().unwrap();
    let outcome = interpolate(&tree(src, &registry), &registry);
    (registry, outcome)
}

fn class_at(registry: &Registry, tree: &ObjectNode, path: &str) -> String {
    let class = tree.get(path).and_then(ObjectNode::class).unwrap();
    registry.class(class).name.clone()
}

#[test]
fn listing_gets_the_documented_defaults() {
    let (registry, outcome) = solve(LISTING);
    let solved = outcome.solved().expect("listing solves");
    assert_eq!(class_at(&registry, solved, "geometry"), names::RECTANGULAR_LATTICE);
    assert_eq!(solved.get("geometry/width").unwrap().as_literal(), Some(&Literal::Integer(32)));
    assert_eq!(solved.get("geometry/height").unwrap().as_literal(), Some(&Literal::Integer(32)));
    assert_eq!(class_at(&registry, solved, "boundary"), names::ABSORBING);
    assert_eq!(class_at(&registry, solved, "arena"), names::RECTANGULAR_ARENA);
    assert_eq!(solved.get("initially/0/count").unwrap().as_literal(), Some(&Literal::Integer(1)));
    let wander = "initially/0/description/do/0/action";
    assert_eq!(class_at(&registry, solved, wander), names::WANDER);
    assert_eq!(class_at(&registry, solved, &format!("{wander}/destination")), names::VACANT_NEIGHBORS);
    assert_eq!(class_at(&registry, solved, &format!("{wander}/collision")), names::IGNORE_OCCUPIED);
    assert_eq!(class_at(&registry, solved, "output/0"), names::IMAGE_SEQUENCE);
    assert_eq!(solved.get("geometry").unwrap().origin(), Origin::Default(0));
    assert_eq!(solved.get("initially").unwrap().origin(), Origin::User);
}

#[test]
fn hexagonal_arena_with_periodic_boundary_fails_on_c1() {
    let (_, outcome) = solve("arena: hexagonal;\nboundary: periodic;");
    let SolverOutcome::Unsolvable(failure) = outcome else {
        panic!("expected failure");
    };
    assert_eq!(failure.path.to_string(), "Project/boundary");
    assert_eq!(failure.violated_ids(), vec!["C1"]);
    assert!(failure.overdetermined);
    assert_eq!(
        failure.to_string(),
        "cannot satisfy Project/boundary: tried periodic (user); \
         violated: C1 (a hexagonal arena cannot use a periodic boundary) \
         [overdetermined: the user-specified value conflicts]"
    );
    let json = failure.to_json();
    assert_eq!(json["path"], "Project/boundary");
    assert_eq!(json["violated"][0]["id"], "C1");
    assert_eq!(json["tried"][0]["origin"], "user");
}

#[test]
fn hexagonal_arena_alone_falls_back_on_geometry() {
    let (registry, outcome) = solve("arena: hexagonal;");
    let solved = outcome.solved().unwrap();
    assert_eq!(class_at(&registry, solved, "boundary"), names::ABSORBING);
    assert_eq!(class_at(&registry, solved, "geometry"), names::TRIANGULAR_LATTICE);
    assert_eq!(solved.get("geometry").unwrap().origin(), Origin::Default(1));
}

#[test]
fn rectangular_lattice_with_hexagonal_arena_fails_on_c2() {
    let (_, outcome) = solve("geometry: rectangular;\narena: hexagonal;");
    let failure = outcome.into_result().unwrap_err();
    assert_eq!(failure.path.to_string(), "Project/geometry");
    assert_eq!(failure.violated_ids(), vec!["C2"]);
}

#[test]
fn user_values_are_never_replaced() {
    let (registry, outcome) = solve(&format!("{LISTING}\nboundary: periodic;"));
    let solved = outcome.solved().unwrap();
    assert_eq!(class_at(&registry, solved, "boundary"), names::PERIODIC);
    assert_eq!(solved.get("boundary").unwrap().origin(), Origin::User);
}

fn unbound_slots(node: &ObjectNode, registry: &Registry, path: String, out: &mut Vec<String>) {
    match node {
        ObjectNode::Map(m) => {
            for spec in &registry.class(m.class).slots {
                match m.slot(&spec.name) {
                    Some(child) => unbound_slots(child, registry, format!("{path}/{}", spec.name), out),
                    None => out.push(format!("{path}/{}", spec.name)),
                }
            }
        }
        ObjectNode::List(l) => {
            for (i, item) in l.items.iter().enumerate() {
                unbound_slots(item, registry, format!("{path}/{i}"), out);
            }
        }
        ObjectNode::Primitive(_) => {}
    }
}

#[test]
fn solved_trees_are_complete() {
    for src in [
        LISTING,
        "",
        "arena: hexagonal;",
        include_str!("../../examples/models/stupid_model_1.nano"),
        include_str!("../../examples/models/crowded_collisions.nano"),
    ] {
        let (registry, outcome) = solve(src);
        let mut missing = Vec::new();
        unbound_slots(outcome.solved().unwrap(), &registry, "Project".into(), &mut missing);
        assert!(missing.is_empty(), "{missing:?}");
    }
}

#[test]
fn solve_order_follows_declaration_order() {
    let registry = seed_registry().unwrap();
    let root = tree(LISTING, &registry);
    let order = solve_order(&root, &SlotPath::root("Project"), &registry);
    let names: Vec<String> = order.iter().map(|s| s.path.to_string()).collect();
    assert_eq!(
        names,
        ["geometry", "boundary", "arena", "initially", "output", "terminate"].map(|n| format!("Project/{n}"))
    );
    assert_eq!(order[3].source, SlotSource::User);
    assert_eq!(order[0].source, SlotSource::Interpolatable);

    let wander = root.get("initially/0/description/do/0/action").unwrap();
    let order = solve_order(wander, &SlotPath::root("W"), &registry);
    let names: Vec<String> = order.iter().map(|s| s.path.to_string()).collect();
    assert_eq!(names, ["W/destination", "W/collision"]);

    let leaf = root.get("initially/0/description/do/0/every").unwrap();
    assert!(solve_order(leaf, &SlotPath::root("x"), &registry).is_empty());
}

#[test]
fn validate_candidate_examples() {
    let registry = seed_registry().unwrap();
    let id = |n: &str| registry.lookup(n).unwrap();
    let project = registry.class(registry.root());

    let mut cfg = PartialConfiguration::new(&registry, project.constraints.clone());
    let absorbing = DefaultCandidate::component(id(names::ABSORBING));
    assert!(validate_candidate(&absorbing, "boundary", &cfg).is_ok());

    cfg.bind("arena", Binding::Component(id(names::HEXAGONAL_ARENA)), Vec::new());
    let periodic = DefaultCandidate::component(id(names::PERIODIC));
    let violated = validate_candidate(&periodic, "boundary", &cfg).unwrap_err();
    assert_eq!(violated.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), vec!["C1"]);

    let wander = registry.class(id(names::WANDER));
    let mut cfg = PartialConfiguration::new(&registry, wander.constraints.clone());
    cfg.bind("destination", Binding::Component(id(names::VACANT_NEIGHBORS)), Vec::new());
    let error = DefaultCandidate::component(id(names::ERROR_ON_COLLISION));
    assert!(validate_candidate(&error, "collision", &cfg).is_ok());
}

#[test]
fn failure_reports_are_deterministic() {
    let src = "arena: hexagonal;\nboundary: periodic;";
    assert_eq!(solve(src).1, solve(src).1);
}

#[test]
fn listing_search_never_backtracks() {
    let registry = seed_registry().unwrap();
    let (outcome, stats) = Solver::new(&registry).solve(&tree(LISTING, &registry));
    assert!(outcome.solved().is_some());
    // One binding per slot of every instantiated component.
    let solved = outcome.solved().unwrap();
    let mut slots = 0;
    count_slots(solved, &mut slots);
    assert_eq!(stats.bindings_tried, slots);
}

fn count_slots(node: &ObjectNode, total: &mut u64) {
    match node {
        ObjectNode::Map(m) => {
            *total += m.slots.len() as u64;
            for (_, child) in &m.slots {
                count_slots(child, total);
            }
        }
        ObjectNode::List(l) => l.items.iter().for_each(|i| count_slots(i, total)),
        ObjectNode::Primitive(_) => {}
    }
}

#[test]
fn candidate_implied_constraints_apply_to_matching_user_values() {
    use crate::registry::{Condition, RegistryBuilder};
    let mut b = RegistryBuilder::new();
    let root = b.component("Root", None, None);
    let shape = b.abstract_class("Shape", None);
    let round = b.component("Round", Some("round"), Some(shape));
    let square = b.component("Square", Some("square"), Some(shape));
    let fill = b.abstract_class("Fill", None);
    let solid = b.component("Solid", Some("solid"), Some(fill));
    let hatched = b.component("Hatched", Some("hatched"), Some(fill));
    b.slot(
        root,
        SlotSpec::component("shape", shape).defaults([
            DefaultCandidate::component(square).implying(Constraint::implies(
                "K1",
                "squares are never solid",
                Condition::bound("shape"),
                Condition::is_not("fill", solid),
            )),
            DefaultCandidate::component(round),
        ]),
    )
    .slot(
        root,
        SlotSpec::component("fill", fill).defaults([solid, hatched].map(DefaultCandidate::component)),
    );
    let registry = b.build(root).unwrap();

    let solved = interpolate(&tree("", &registry), &registry);
    let fill_class = solved.solved().unwrap().get("fill").unwrap().class().unwrap();
    assert_eq!(fill_class, hatched);

    let failure = interpolate(&tree("shape: square; fill: solid;", &registry), &registry)
        .into_result()
        .unwrap_err();
    assert_eq!(failure.path.to_string(), "Root/shape");
    assert_eq!(failure.violated_ids(), vec!["K1"]);
}
