//! Decision trees, strategies and the strategy → gain mapping.

mod mask;
mod strategy;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::uncertainty::{EventSet, EventSpace};

pub use mask::{restrict, EdgeRef, SubtreeMask};
pub(crate) use mask::EdgeFilter;
pub(crate) use strategy::Plan;
pub use strategy::{
    count_strategies, enumerate_strategies, enumerate_substrategies, gain_mapping, path_event,
    GainMapping, Strategy,
};
pub use validate::{validate_tree, TreeReport, TreeViolation};

/// Identifier of a decision or chance node.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(Arc<str>);

impl NodeId {
    pub fn new(id: impl AsRef<str>) -> Self {
        Self(Arc::from(id.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for NodeId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for NodeId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Text(s) => NodeId::new(s),
            Raw::Int(n) => NodeId::new(n.to_string()),
        })
    }
}

/// Owned, nested description of a tree; the input to [`DecisionTree::new`].
///
/// Gains live on leaves only. Payments made along the way are folded into
/// the downstream leaf gains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeSpec {
    Decision {
        id: NodeId,
        edges: Vec<(String, NodeSpec)>,
    },
    Chance {
        id: NodeId,
        edges: Vec<(EventSet, NodeSpec)>,
    },
    Leaf {
        gain: Rational,
    },
}

impl NodeSpec {
    pub fn decision<S: Into<String>>(id: &str, edges: Vec<(S, NodeSpec)>) -> Self {
        Self::Decision {
            id: NodeId::new(id),
            edges: edges.into_iter().map(|(a, n)| (a.into(), n)).collect(),
        }
    }

    pub fn chance(id: &str, edges: Vec<(EventSet, NodeSpec)>) -> Self {
        Self::Chance {
            id: NodeId::new(id),
            edges,
        }
    }

    pub fn leaf(gain: Rational) -> Self {
        Self::Leaf { gain }
    }

    pub fn id(&self) -> Option<&NodeId> {
        match self {
            Self::Decision { id, .. } | Self::Chance { id, .. } => Some(id),
            Self::Leaf { .. } => None,
        }
    }

    /// Same tree with every leaf gain mapped through `f` and every node id
    /// passed through `rename`.
    pub fn map(&self, f: &dyn Fn(&Rational) -> Rational, rename: &dyn Fn(&NodeId) -> NodeId) -> Self {
        match self {
            Self::Decision { id, edges } => Self::Decision {
                id: rename(id),
                edges: edges
                    .iter()
                    .map(|(a, n)| (a.clone(), n.map(f, rename)))
                    .collect(),
            },
            Self::Chance { id, edges } => Self::Chance {
                id: rename(id),
                edges: edges.iter().map(|(e, n)| (*e, n.map(f, rename))).collect(),
            },
            Self::Leaf { gain } => Self::Leaf { gain: f(gain) },
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Kind {
    Decision(Vec<(String, usize)>),
    Chance(Vec<(EventSet, usize)>),
    Leaf(Rational),
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub(crate) id: Option<NodeId>,
    pub(crate) kind: Kind,
    /// Chance-edge events intersected along the path from the root.
    pub(crate) path: EventSet,
}

/// A finite decision tree over an event space, stored as an arena in
/// pre-order (children always have larger indices than their parent).
#[derive(Clone, Debug)]
pub struct DecisionTree {
    space: EventSpace,
    pub(crate) nodes: Vec<Node>,
    index: HashMap<NodeId, usize>,
    duplicates: Vec<NodeId>,
}

impl DecisionTree {
    /// Builds the arena. Only event sets from another space are rejected
    /// here; structural problems are reported by [`validate_tree`].
    pub fn new(space: EventSpace, root: NodeSpec) -> Result<Self> {
        let mut t = DecisionTree {
            space,
            nodes: Vec::new(),
            index: HashMap::new(),
            duplicates: Vec::new(),
        };
        let full = t.space.full();
        t.push(&root, full)?;
        Ok(t)
    }

    fn push(&mut self, spec: &NodeSpec, path: EventSet) -> Result<usize> {
        let ix = self.nodes.len();
        if let Some(id) = spec.id() {
            if self.index.contains_key(id) {
                self.duplicates.push(id.clone());
            } else {
                self.index.insert(id.clone(), ix);
            }
        }
        self.nodes.push(Node {
            id: spec.id().cloned(),
            kind: Kind::Leaf(Rational::default()),
            path,
        });
        let kind = match spec {
            NodeSpec::Leaf { gain } => Kind::Leaf(gain.clone()),
            NodeSpec::Decision { edges, .. } => {
                let mut out = Vec::with_capacity(edges.len());
                for (action, child) in edges {
                    out.push((action.clone(), self.push(child, path)?));
                }
                Kind::Decision(out)
            }
            NodeSpec::Chance { edges, .. } => {
                let mut out = Vec::with_capacity(edges.len());
                for (event, child) in edges {
                    self.space.check(*event)?;
                    out.push((*event, self.push(child, path & *event)?));
                }
                Kind::Chance(out)
            }
        };
        self.nodes[ix].kind = kind;
        Ok(ix)
    }

    pub fn space(&self) -> &EventSpace {
        &self.space
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Id of the root, `None` when the tree is a single leaf.
    pub fn root_id(&self) -> Option<&NodeId> {
        self.nodes[0].id.as_ref()
    }

    pub(crate) fn ix(&self, id: &NodeId) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub(crate) fn id_of(&self, ix: usize) -> &NodeId {
        self.nodes[ix].id.as_ref().expect("decision and chance nodes carry ids")
    }

    pub fn contains(&self, id: &NodeId) -> bool {
        self.index.contains_key(id)
    }

    pub fn is_decision(&self, id: &NodeId) -> bool {
        self.ix(id)
            .map(|ix| matches!(self.nodes[ix].kind, Kind::Decision(_)))
            .unwrap_or(false)
    }

    pub fn is_chance(&self, id: &NodeId) -> bool {
        self.ix(id)
            .map(|ix| matches!(self.nodes[ix].kind, Kind::Chance(_)))
            .unwrap_or(false)
    }

    /// Ids of all decision nodes, in pre-order.
    pub fn decision_ids(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, Kind::Decision(_)))
            .filter_map(|n| n.id.clone())
            .collect()
    }

    /// Outgoing edge count of a decision or chance node.
    pub fn edge_count(&self, id: &NodeId) -> Result<usize> {
        Ok(match &self.nodes[self.ix(id)?].kind {
            Kind::Decision(e) => e.len(),
            Kind::Chance(e) => e.len(),
            Kind::Leaf(_) => 0,
        })
    }

    /// Action label of a decision edge.
    pub fn action(&self, id: &NodeId, edge: usize) -> Result<&str> {
        match &self.nodes[self.ix(id)?].kind {
            Kind::Decision(e) => e.get(edge).map(|(a, _)| a.as_str()).ok_or(Error::UnknownEdge {
                node: id.to_string(),
                edge,
            }),
            _ => Err(Error::UnknownEdge {
                node: id.to_string(),
                edge,
            }),
        }
    }

    /// Index of the decision edge labelled `action` at node `id`.
    pub fn edge_by_action(&self, id: &NodeId, action: &str) -> Result<usize> {
        match &self.nodes[self.ix(id)?].kind {
            Kind::Decision(e) => e.iter().position(|(a, _)| a == action).ok_or_else(|| {
                Error::InvalidStrategy(format!("node `{id}` has no action `{action}`"))
            }),
            _ => Err(Error::InvalidStrategy(format!("`{id}` is not a decision node"))),
        }
    }

    /// Reconstructs the nested description.
    pub fn to_spec(&self) -> NodeSpec {
        self.spec_of(0)
    }

    pub(crate) fn spec_of(&self, ix: usize) -> NodeSpec {
        let node = &self.nodes[ix];
        match &node.kind {
            Kind::Leaf(g) => NodeSpec::Leaf { gain: g.clone() },
            Kind::Decision(e) => NodeSpec::Decision {
                id: node.id.clone().unwrap(),
                edges: e.iter().map(|(a, c)| (a.clone(), self.spec_of(*c))).collect(),
            },
            Kind::Chance(e) => NodeSpec::Chance {
                id: node.id.clone().unwrap(),
                edges: e.iter().map(|(ev, c)| (*ev, self.spec_of(*c))).collect(),
            },
        }
    }

    pub(crate) fn children(&self, ix: usize) -> Vec<usize> {
        match &self.nodes[ix].kind {
            Kind::Decision(e) => e.iter().map(|(_, c)| *c).collect(),
            Kind::Chance(e) => e.iter().map(|(_, c)| *c).collect(),
            Kind::Leaf(_) => Vec::new(),
        }
    }

    pub(crate) fn duplicates(&self) -> &[NodeId] {
        &self.duplicates
    }
}
