use std::fmt;

use serde::Serialize;

use crate::registry::ClassId;
use crate::syntax::SourceSpan;
use crate::value::Literal;

/// Where a value in the build hierarchy came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    User,
    /// Interpolated from the default candidate at this preference index.
    Default(usize),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::User => f.write_str("user"),
            Origin::Default(k) => write!(f, "default[{k}]"),
        }
    }
}

impl Serialize for Origin {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Node of the build hierarchy.
#[derive(Debug, Clone, PartialEq)]
pub enum ObjectNode {
    Map(MapNode),
    List(ListNode),
    Primitive(PrimitiveNode),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapNode {
    pub class: ClassId,
    /// Named children in source order. Translation keeps duplicate slot
    /// names so determination can report them.
    pub slots: Vec<(String, ObjectNode)>,
    pub span: Option<SourceSpan>,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ListNode {
    pub member_class: ClassId,
    pub items: Vec<ObjectNode>,
    pub span: Option<SourceSpan>,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveNode {
    pub value: Literal,
    pub span: Option<SourceSpan>,
    pub origin: Origin,
}

impl MapNode {
    pub fn slot(&self, name: &str) -> Option<&ObjectNode> {
        self.slots.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl ObjectNode {
    pub fn origin(&self) -> Origin {
        match self {
            ObjectNode::Map(n) => n.origin,
            ObjectNode::List(n) => n.origin,
            ObjectNode::Primitive(n) => n.origin,
        }
    }

    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            ObjectNode::Map(n) => n.span,
            ObjectNode::List(n) => n.span,
            ObjectNode::Primitive(n) => n.span,
        }
    }

    pub fn as_map(&self) -> Option<&MapNode> {
        match self {
            ObjectNode::Map(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&ListNode> {
        match self {
            ObjectNode::List(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            ObjectNode::Primitive(p) => Some(&p.value),
            _ => None,
        }
    }

    /// Component class of a map node.
    pub fn class(&self) -> Option<ClassId> {
        self.as_map().map(|m| m.class)
    }

    /// Follows a `/`-separated path of slot names and list indices.
    pub fn get(&self, path: &str) -> Option<&ObjectNode> {
        path.split('/')
            .filter(|s| !s.is_empty())
            .try_fold(self, |node, segment| match node {
                ObjectNode::Map(m) => m.slot(segment),
                ObjectNode::List(l) => segment.parse::<usize>().ok().and_then(|i| l.items.get(i)),
                ObjectNode::Primitive(_) => None,
            })
    }

    pub fn node_count(&self) -> usize {
        1 + match self {
            ObjectNode::Map(m) => m.slots.iter().map(|(_, v)| v.node_count()).sum(),
            ObjectNode::List(l) => l.items.iter().map(ObjectNode::node_count).sum(),
            ObjectNode::Primitive(_) => 0,
        }
    }
}

/// Location of a slot in the build hierarchy, such as
/// `Project/initially/0/description`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotPath(Vec<String>);

impl SlotPath {
    pub fn root(name: impl Into<String>) -> Self {
        SlotPath(vec![name.into()])
    }

    pub fn child(&self, segment: impl fmt::Display) -> Self {
        let mut segments = self.0.clone();
        segments.push(segment.to_string());
        SlotPath(segments)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn segments(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Display for SlotPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("/"))
    }
}

impl Serialize for SlotPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
