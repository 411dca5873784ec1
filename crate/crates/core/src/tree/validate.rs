use super::{DecisionTree, Kind, NodeId};
use crate::uncertainty::EventSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeViolation {
    EmptyDecision { node: NodeId },
    EmptyChance { node: NodeId },
    EmptyChanceEvent { node: NodeId, edge: usize },
    /// Edge event reaches outside the node's path event.
    EventOutsidePath { node: NodeId, edge: usize, outside: EventSet },
    OverlappingEvents { node: NodeId, first: usize, second: usize, overlap: EventSet },
    /// Part of the path event is covered by no edge.
    NotCovering { node: NodeId, missing: EventSet },
    DuplicateId { node: NodeId },
}

impl TreeViolation {
    pub fn node(&self) -> &NodeId {
        match self {
            Self::EmptyDecision { node }
            | Self::EmptyChance { node }
            | Self::EmptyChanceEvent { node, .. }
            | Self::EventOutsidePath { node, .. }
            | Self::OverlappingEvents { node, .. }
            | Self::NotCovering { node, .. }
            | Self::DuplicateId { node } => node,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::EmptyDecision { .. } => "empty-decision",
            Self::EmptyChance { .. } => "empty-chance",
            Self::EmptyChanceEvent { .. } => "empty-chance-event",
            Self::EventOutsidePath { .. }
            | Self::OverlappingEvents { .. }
            | Self::NotCovering { .. } => "partition",
            Self::DuplicateId { .. } => "duplicate-id",
        }
    }

    pub fn describe(&self, t: &DecisionTree) -> String {
        let s = t.space();
        match self {
            Self::EmptyDecision { node } => format!("decision node `{node}` has no edge"),
            Self::EmptyChance { node } => format!("chance node `{node}` has no edge"),
            Self::EmptyChanceEvent { node, edge } => {
                format!("chance node `{node}` edge {edge} carries the empty event")
            }
            Self::EventOutsidePath { node, edge, outside } => format!(
                "chance node `{node}` edge {edge} includes {} outside the node's path event",
                s.describe(*outside)
            ),
            Self::OverlappingEvents { node, first, second, overlap } => format!(
                "chance node `{node}` edges {first} and {second} overlap on {}",
                s.describe(*overlap)
            ),
            Self::NotCovering { node, missing } => format!(
                "chance node `{node}` edges do not cover {}",
                s.describe(*missing)
            ),
            Self::DuplicateId { node } => format!("node id `{node}` is used more than once"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeReport {
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural checks: decision nodes have an edge, chance-edge events
/// partition the node's path event, node ids are unique.
pub fn validate_tree(t: &DecisionTree) -> TreeReport {
    let mut violations: Vec<TreeViolation> = t
        .duplicates()
        .iter()
        .map(|id| TreeViolation::DuplicateId { node: id.clone() })
        .collect();
    for node in &t.nodes {
        match &node.kind {
            Kind::Leaf(_) => {}
            Kind::Decision(edges) => {
                if edges.is_empty() {
                    violations.push(TreeViolation::EmptyDecision {
                        node: node.id.clone().unwrap(),
                    });
                }
            }
            Kind::Chance(edges) => {
                let id = node.id.clone().unwrap();
                if edges.is_empty() {
                    violations.push(TreeViolation::EmptyChance { node: id });
                    continue;
                }
                let mut covered = EventSet::empty(t.space().len());
                for (k, (event, _)) in edges.iter().enumerate() {
                    if event.is_empty() {
                        violations.push(TreeViolation::EmptyChanceEvent {
                            node: id.clone(),
                            edge: k,
                        });
                    }
                    let outside = *event - node.path;
                    if !outside.is_empty() {
                        violations.push(TreeViolation::EventOutsidePath {
                            node: id.clone(),
                            edge: k,
                            outside,
                        });
                    }
                    for (j, (other, _)) in edges.iter().enumerate().skip(k + 1) {
                        let overlap = *event & *other;
                        if !overlap.is_empty() {
                            violations.push(TreeViolation::OverlappingEvents {
                                node: id.clone(),
                                first: k,
                                second: j,
                                overlap,
                            });
                        }
                    }
                    covered = covered | *event;
                }
                let missing = node.path - covered;
                if !missing.is_empty() {
                    violations.push(TreeViolation::NotCovering { node: id, missing });
                }
            }
        }
    }
    TreeReport { violations }
}
