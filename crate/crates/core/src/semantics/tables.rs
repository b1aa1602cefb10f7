//! Resolving and instantiable symbol tables.
//!
//! A resolving table (RST) narrows a source identifier to the instantiable
//! table of a concrete subclass of its expected class. An instantiable table
//! (IST) knows how to translate one node: map tables hold named slots, list
//! tables hold one member RST shared by every element, and primitive
//! instantiators accept a single literal kind.

use std::collections::BTreeMap;

use indexmap::IndexMap;

use crate::registry::{ClassId, Registry, SlotKind};
use crate::value::{NumericRange, PrimitiveKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RstId(usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IstId(usize);

#[derive(Debug, Clone)]
pub struct ResolvingTable {
    pub expected: ClassId,
    pub members: BTreeMap<String, IstId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotTable {
    /// A single component, chosen by resolving the value's identifier.
    Resolve(RstId),
    List(IstId),
    Primitive(IstId),
}

#[derive(Debug, Clone)]
pub struct SlotEntry {
    pub table: SlotTable,
    pub required: bool,
}

#[derive(Debug, Clone)]
pub enum InstantiableTable {
    Map {
        class: ClassId,
        slots: IndexMap<String, SlotEntry>,
    },
    List {
        member_class: ClassId,
        member: RstId,
    },
    Primitive {
        kind: PrimitiveKind,
        range: Option<NumericRange>,
    },
}

#[derive(Debug, Clone)]
pub struct SymbolTables {
    rsts: Vec<ResolvingTable>,
    ists: Vec<InstantiableTable>,
    class_tables: BTreeMap<ClassId, IstId>,
    root: IstId,
}

impl SymbolTables {
    /// Materializes one map table per concrete class, one list table per list
    /// slot, one primitive instantiator per primitive slot and one resolving
    /// table per component or list slot.
    ///
    /// The registry audit guarantees every class reference resolves.
    pub fn build(registry: &Registry) -> SymbolTables {
        let mut tables = SymbolTables {
            rsts: Vec::new(),
            ists: Vec::new(),
            class_tables: BTreeMap::new(),
            root: IstId(0),
        };
        // Map tables first so resolving tables can point at them.
        for class in registry.class_ids().filter(|&c| !registry.class(c).is_abstract) {
            let id = tables.push_ist(InstantiableTable::Map {
                class,
                slots: IndexMap::new(),
            });
            tables.class_tables.insert(class, id);
        }
        for (&class, &ist) in &tables.class_tables.clone() {
            let mut slots = IndexMap::new();
            for slot in &registry.class(class).slots {
                let table = match &slot.kind {
                    SlotKind::Component(expected) => {
                        SlotTable::Resolve(tables.push_rst(registry, *expected))
                    }
                    SlotKind::List(member_class) => {
                        let member = tables.push_rst(registry, *member_class);
                        SlotTable::List(tables.push_ist(InstantiableTable::List {
                            member_class: *member_class,
                            member,
                        }))
                    }
                    SlotKind::Primitive { kind, range } => {
                        SlotTable::Primitive(tables.push_ist(InstantiableTable::Primitive {
                            kind: *kind,
                            range: *range,
                        }))
                    }
                };
                slots.insert(
                    slot.name.clone(),
                    SlotEntry {
                        table,
                        required: slot.required,
                    },
                );
            }
            if let InstantiableTable::Map { slots: s, .. } = &mut tables.ists[ist.0] {
                *s = slots;
            }
        }
        tables.root = tables.class_tables[&registry.root()];
        tables
    }

    fn push_ist(&mut self, ist: InstantiableTable) -> IstId {
        self.ists.push(ist);
        IstId(self.ists.len() - 1)
    }

    fn push_rst(&mut self, registry: &Registry, expected: ClassId) -> RstId {
        let members = registry
            .concrete_subclasses(expected)
            .into_iter()
            .filter_map(|c| {
                let keyword = registry.class(c).keyword.clone()?;
                Some((keyword, self.class_tables[&c]))
            })
            .collect();
        self.rsts.push(ResolvingTable { expected, members });
        RstId(self.rsts.len() - 1)
    }

    pub fn root(&self) -> IstId {
        self.root
    }

    pub fn ist(&self, id: IstId) -> &InstantiableTable {
        &self.ists[id.0]
    }

    pub fn rst(&self, id: RstId) -> &ResolvingTable {
        &self.rsts[id.0]
    }

    pub fn class_table(&self, class: ClassId) -> Option<IstId> {
        self.class_tables.get(&class).copied()
    }

    /// Classes reachable from the root table, in discovery order.
    pub fn reachable_classes(&self) -> Vec<ClassId> {
        let mut seen = vec![false; self.ists.len()];
        let mut stack = vec![self.root];
        let mut classes = Vec::new();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id.0], true) {
                continue;
            }
            match self.ist(id) {
                InstantiableTable::Map { class, slots } => {
                    classes.push(*class);
                    for entry in slots.values() {
                        match entry.table {
                            SlotTable::Resolve(rst) => {
                                stack.extend(self.rst(rst).members.values().copied())
                            }
                            SlotTable::List(ist) | SlotTable::Primitive(ist) => stack.push(ist),
                        }
                    }
                }
                InstantiableTable::List { member, .. } => {
                    stack.extend(self.rst(*member).members.values().copied())
                }
                InstantiableTable::Primitive { .. } => {}
            }
        }
        classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::seed::names;
    use crate::registry::seed_registry;

    fn map_slots(tables: &SymbolTables, ist: IstId) -> &IndexMap<String, SlotEntry> {
        match tables.ist(ist) {
            InstantiableTable::Map { slots, .. } => slots,
            other => panic!("expected map table, got {other:?}"),
        }
    }

    fn keywords(tables: &SymbolTables, entry: &SlotEntry) -> Vec<String> {
        let rst = match entry.table {
            SlotTable::Resolve(rst) => rst,
            SlotTable::List(list) => match tables.ist(list) {
                InstantiableTable::List { member, .. } => *member,
                _ => unreachable!(),
            },
            SlotTable::Primitive(_) => panic!("primitive slot"),
        };
        tables.rst(rst).members.keys().cloned().collect()
    }

    #[test]
    fn root_initially_lists_scatter() {
        let registry = seed_registry().unwrap();
        let tables = SymbolTables::build(&registry);
        let root = map_slots(&tables, tables.root());
        let initially = &root["initially"];
        assert!(matches!(initially.table, SlotTable::List(_)));
        assert_eq!(keywords(&tables, initially), vec!["scatter"]);
    }

    #[test]
    fn behavior_action_resolves_wander() {
        let registry = seed_registry().unwrap();
        let tables = SymbolTables::build(&registry);
        let behavior = tables.class_table(registry.lookup(names::BEHAVIOR).unwrap()).unwrap();
        let action = &map_slots(&tables, behavior)["action"];
        assert!(action.required);
        assert_eq!(keywords(&tables, action), vec!["wander"]);
    }

    #[test]
    fn boundary_table_lists_both_rules() {
        let registry = seed_registry().unwrap();
        let tables = SymbolTables::build(&registry);
        let boundary = &map_slots(&tables, tables.root())["boundary"];
        assert_eq!(keywords(&tables, boundary), vec!["absorbing", "periodic"]);
    }

    #[test]
    fn every_reachable_class_is_registered_and_concrete() {
        let registry = seed_registry().unwrap();
        let tables = SymbolTables::build(&registry);
        let reachable = tables.reachable_classes();
        for class in &reachable {
            assert!(!registry.class(*class).is_abstract);
        }
        // Every concrete class in the seed library is reachable from the root.
        let concrete = registry.class_ids().filter(|&c| !registry.class(c).is_abstract).count();
        assert_eq!(reachable.len(), concrete);
    }
}
