//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use nanoccs::registry::{
    Binding, ClassId, Condition, ConfigurationView, Constraint, DefaultCandidate, Registry, RegistryBuilder,
    SlotSpec, Verdict,
};
use nanoccs::semantics::{MapNode, ObjectNode, Origin};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random flat configuration problem: up to four component slots on the
/// root, each with up to three candidate classes, pairwise exclusions
/// between slots and optional constraints implied by candidates.
#[derive(Debug, Clone)]
pub struct MiniProblem {
    pub registry: Registry,
    pub slots: Vec<MiniSlot>,
    pub root: ClassId,
}

#[derive(Debug, Clone)]
pub struct MiniSlot {
    pub name: String,
    /// Candidate classes in preference order.
    pub defaults: Vec<ClassId>,
    pub user: Option<ClassId>,
}

impl MiniProblem {
    pub fn generate(seed: u64) -> MiniProblem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = RegistryBuilder::new();
        let root = b.component("Root", None, None);
        let n = rng.gen_range(1..=4);

        let mut classes = Vec::new();
        for i in 0..n {
            let base = b.abstract_class(&format!("Kind{i}"), None);
            let m = rng.gen_range(1..=3);
            let members: Vec<ClassId> = (0..m)
                .map(|j| b.component(&format!("Kind{i}V{j}"), Some(&format!("v{j}")), Some(base)))
                .collect();
            classes.push((base, members));
        }

        let pick = |rng: &mut ChaCha8Rng, slot: usize| -> (String, ClassId) {
            (format!("s{slot}"), *classes[slot].1.choose(rng).unwrap())
        };
        let mut counter = 0;
        let mut next_id = || {
            counter += 1;
            format!("R{counter}")
        };

        let mut slots = Vec::new();
        for (i, (base, members)) in classes.iter().enumerate() {
            let mut order = members.clone();
            order.shuffle(&mut rng);
            order.truncate(rng.gen_range(1..=members.len()));
            let mut candidates = Vec::new();
            for &class in &order {
                let mut candidate = DefaultCandidate::component(class);
                if n > 1 && rng.gen_bool(0.2) {
                    let other = loop {
                        let o = rng.gen_range(0..n);
                        if o != i {
                            break o;
                        }
                    };
                    let (slot, excluded) = pick(&mut rng, other);
                    candidate = candidate.implying(Constraint::implies(
                        next_id(),
                        "implied exclusion",
                        Condition::bound(format!("s{i}")),
                        Condition::is_not(slot, excluded),
                    ));
                }
                candidates.push(candidate);
            }
            b.slot(root, SlotSpec::component(format!("s{i}"), *base).defaults(candidates));
            let user = rng.gen_bool(0.25).then(|| *members.choose(&mut rng).unwrap());
            slots.push(MiniSlot {
                name: format!("s{i}"),
                defaults: order,
                user,
            });
        }

        if n > 1 {
            for _ in 0..rng.gen_range(0..=5) {
                let a = rng.gen_range(0..n);
                let mut c = rng.gen_range(0..n);
                while c == a {
                    c = rng.gen_range(0..n);
                }
                let left = pick(&mut rng, a);
                let right = pick(&mut rng, c);
                b.constraint(
                    root,
                    Constraint::forbid_pair(next_id(), (&left.0, left.1), (&right.0, right.1)),
                );
            }
        }

        MiniProblem {
            registry: b.build(root).expect("generated registry passes the audit"),
            slots,
            root,
        }
    }

    /// The translated tree holding only the user-specified slots.
    pub fn user_tree(&self) -> ObjectNode {
        let slots = self
            .slots
            .iter()
            .filter_map(|s| {
                s.user.map(|class| {
                    (
                        s.name.clone(),
                        ObjectNode::Map(MapNode {
                            class,
                            slots: Vec::new(),
                            span: None,
                            origin: Origin::User,
                        }),
                    )
                })
            })
            .collect();
        ObjectNode::Map(MapNode {
            class: self.root,
            slots,
            span: None,
            origin: Origin::User,
        })
    }

    /// Brute force: the first candidate tuple, in preference-lexicographic
    /// order, that satisfies every class constraint and every constraint
    /// implied by a chosen candidate.
    pub fn oracle(&self) -> Option<Vec<ClassId>> {
        let domains: Vec<Vec<ClassId>> = self
            .slots
            .iter()
            .map(|s| s.user.map_or_else(|| s.defaults.clone(), |c| vec![c]))
            .collect();
        let mut cursor = vec![0; domains.len()];
        loop {
            let tuple: Vec<ClassId> = cursor.iter().zip(&domains).map(|(&k, d)| d[k]).collect();
            if self.satisfies(&tuple) {
                return Some(tuple);
            }
            // Odometer with the first slot most significant.
            let mut i = domains.len();
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                cursor[i] += 1;
                if cursor[i] < domains[i].len() {
                    break;
                }
                cursor[i] = 0;
            }
        }
    }

    fn satisfies(&self, tuple: &[ClassId]) -> bool {
        let view = Tuple(self, tuple);
        let root = self.registry.class(self.root);
        let implied = root.slots.iter().zip(tuple).flat_map(|(spec, class)| {
            spec.candidate_for(*class).map(|c| c.implied.clone()).unwrap_or_default()
        });
        root.constraints
            .iter()
            .cloned()
            .chain(implied)
            .all(|c| c.evaluate(&self.registry, &view) == Verdict::Satisfied)
    }
}

struct Tuple<'a>(&'a MiniProblem, &'a [ClassId]);

impl ConfigurationView for Tuple<'_> {
    fn binding(&self, slot: &str) -> Binding {
        self.0
            .slots
            .iter()
            .position(|s| s.name == slot)
            .map_or(Binding::Unbound, |i| Binding::Component(self.1[i]))
    }
}

/// Classes the solver chose for the root slots, if it solved.
pub fn solver_choice(problem: &MiniProblem) -> Option<Vec<ClassId>> {
    let tree = nanoccs::solver::interpolate(&problem.user_tree(), &problem.registry)
        .into_result()
        .ok()?;
    Some(
        problem
            .slots
            .iter()
            .map(|s| tree.get(&s.name).and_then(ObjectNode::class).expect("slot bound"))
            .collect(),
    )
}
