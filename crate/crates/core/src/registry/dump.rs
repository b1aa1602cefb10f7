use std::fmt;

use serde::Serialize;

use super::{DefaultValue, Registry, SlotKind};

/// Name-resolved, serializable view of a registry.
#[derive(Debug, Clone, Serialize)]
pub struct RegistryDump {
    pub root: String,
    pub classes: Vec<ClassDump>,
    pub constraints: Vec<ConstraintDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassDump {
    pub name: String,
    pub keyword: Option<String>,
    pub parent: Option<String>,
    #[serde(rename = "abstract")]
    pub is_abstract: bool,
    pub slots: Vec<SlotDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlotDump {
    pub name: String,
    /// `component <Class>`, `list <Class>` or the primitive kind.
    pub kind: String,
    pub required: bool,
    pub defaults: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintDump {
    pub id: String,
    pub scope: String,
    pub rule: String,
    pub label: String,
}

impl RegistryDump {
    pub fn new(registry: &Registry) -> Self {
        let name = |id| registry.class(id).name.clone();
        let classes = registry
            .class_ids()
            .map(|id| {
                let class = registry.class(id);
                ClassDump {
                    name: class.name.clone(),
                    keyword: class.keyword.clone(),
                    parent: class.parent.map(name),
                    is_abstract: class.is_abstract,
                    slots: class
                        .slots
                        .iter()
                        .map(|slot| SlotDump {
                            name: slot.name.clone(),
                            kind: match &slot.kind {
                                SlotKind::Component(c) => format!("component {}", name(*c)),
                                SlotKind::List(c) => format!("list {}", name(*c)),
                                SlotKind::Primitive { kind, range } => match range {
                                    Some(r) => format!("{kind} ({})", r.describe()),
                                    None => kind.to_string(),
                                },
                            },
                            required: slot.required,
                            defaults: slot
                                .defaults
                                .iter()
                                .map(|d| match &d.value {
                                    DefaultValue::Component(c) => name(*c),
                                    DefaultValue::List(members) => format!(
                                        "[{}]",
                                        members.iter().map(|m| name(*m)).collect::<Vec<_>>().join(", ")
                                    ),
                                    DefaultValue::Primitive(v) => v.to_string(),
                                })
                                .collect(),
                        })
                        .collect(),
                }
            })
            .collect();
        let constraints = registry
            .compatibility_constraints()
            .into_iter()
            .map(|(scope, c)| ConstraintDump {
                id: c.id.clone(),
                scope: name(scope),
                rule: c.render(registry),
                label: c.label.clone(),
            })
            .collect();
        RegistryDump {
            root: name(registry.root()),
            classes,
            constraints,
        }
    }
}

impl fmt::Display for RegistryDump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root: {}", self.root)?;
        for class in &self.classes {
            write!(f, "{}{}", if class.is_abstract { "abstract " } else { "" }, class.name)?;
            if let Some(parent) = &class.parent {
                write!(f, " : {parent}")?;
            }
            if let Some(keyword) = &class.keyword {
                write!(f, " [{keyword}]")?;
            }
            writeln!(f)?;
            for slot in &class.slots {
                write!(f, "    {}: {}", slot.name, slot.kind)?;
                if slot.required {
                    write!(f, " (required)")?;
                } else {
                    write!(f, " defaults {}", slot.defaults.join(" > "))?;
                }
                writeln!(f)?;
            }
        }
        writeln!(f, "constraints:")?;
        for c in &self.constraints {
            writeln!(f, "    [{}] {}", c.scope, c.rule)?;
        }
        Ok(())
    }
}
