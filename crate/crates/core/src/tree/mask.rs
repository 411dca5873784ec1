use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::strategy::Plan;
use super::{DecisionTree, Kind, NodeId, NodeSpec, Strategy};
use crate::error::{Error, Result};

/// An outgoing edge of a decision or chance node, by position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub node: NodeId,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(node: &str, edge: usize) -> Self {
        Self {
            node: NodeId::new(node),
            edge,
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.node, self.edge)
    }
}

/// A set of retained edges of a parent tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeMask {
    pub edges: BTreeSet<EdgeRef>,
}

/// Per-node edge flags compiled from a mask.
#[derive(Clone, Debug)]
pub(crate) struct EdgeFilter(Vec<Vec<bool>>);

impl EdgeFilter {
    pub(crate) fn allows(&self, node: usize, edge: usize) -> bool {
        self.0[node][edge]
    }
}

impl SubtreeMask {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every edge of `t`.
    pub fn full(t: &DecisionTree) -> Self {
        let mut m = Self::new();
        for (ix, node) in t.nodes.iter().enumerate() {
            let n = match &node.kind {
                Kind::Decision(e) => e.len(),
                Kind::Chance(e) => e.len(),
                Kind::Leaf(_) => 0,
            };
            for k in 0..n {
                m.edges.insert(EdgeRef {
                    node: t.id_of(ix).clone(),
                    edge: k,
                });
            }
        }
        m
    }

    pub fn contains(&self, e: &EdgeRef) -> bool {
        self.edges.contains(e)
    }

    pub fn insert(&mut self, e: EdgeRef) -> bool {
        self.edges.insert(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub(crate) fn compile(&self, t: &DecisionTree) -> Result<EdgeFilter> {
        let mut flags: Vec<Vec<bool>> = t
            .nodes
            .iter()
            .map(|n| match &n.kind {
                Kind::Decision(e) => vec![false; e.len()],
                Kind::Chance(e) => vec![false; e.len()],
                Kind::Leaf(_) => Vec::new(),
            })
            .collect();
        for e in &self.edges {
            let ix = t.ix(&e.node)?;
            let slot = flags[ix].get_mut(e.edge).ok_or_else(|| Error::UnknownEdge {
                node: e.node.to_string(),
                edge: e.edge,
            })?;
            *slot = true;
        }
        Ok(EdgeFilter(flags))
    }

    /// Checks that the retained edges span a tree from the root.
    pub(crate) fn compile_spanning(&self, t: &DecisionTree) -> Result<EdgeFilter> {
        let filter = self.compile(t)?;
        let mut stack = vec![0usize];
        while let Some(ix) = stack.pop() {
            match &t.nodes[ix].kind {
                Kind::Leaf(_) => {}
                Kind::Decision(edges) => {
                    let kept: Vec<usize> = (0..edges.len()).filter(|k| filter.allows(ix, *k)).collect();
                    if kept.is_empty() {
                        return Err(Error::InvalidMask(format!(
                            "decision node `{}` keeps no edge",
                            t.id_of(ix)
                        )));
                    }
                    stack.extend(kept.into_iter().map(|k| edges[k].1));
                }
                Kind::Chance(edges) => {
                    if let Some(k) = (0..edges.len()).find(|k| !filter.allows(ix, *k)) {
                        return Err(Error::InvalidMask(format!(
                            "chance node `{}` drops edge {k}",
                            t.id_of(ix)
                        )));
                    }
                    stack.extend(edges.iter().map(|(_, c)| *c));
                }
            }
        }
        Ok(filter)
    }

    /// Adds the edges on every root-to-leaf path consistent with `plan`.
    pub(crate) fn add_plan(&mut self, t: &DecisionTree, plan: &Plan) {
        let mut stack = vec![0usize];
        while let Some(ix) = stack.pop() {
            match &t.nodes[ix].kind {
                Kind::Leaf(_) => {}
                Kind::Decision(edges) => {
                    let k = plan.get(ix).expect("plan covers reachable nodes");
                    self.edges.insert(EdgeRef {
                        node: t.id_of(ix).clone(),
                        edge: k,
                    });
                    stack.push(edges[k].1);
                }
                Kind::Chance(edges) => {
                    for (k, (_, c)) in edges.iter().enumerate() {
                        self.edges.insert(EdgeRef {
                            node: t.id_of(ix).clone(),
                            edge: k,
                        });
                        stack.push(*c);
                    }
                }
            }
        }
    }

    /// Maps a strategy of `restrict(t, self)` back to edge indices of `t`.
    pub fn lift(&self, t: &DecisionTree, restricted: &Strategy) -> Result<Strategy> {
        let filter = self.compile(t)?;
        let mut out = Strategy::new();
        for (id, k) in &restricted.choices {
            let ix = t.ix(id)?;
            let n = filter.0[ix].len();
            let original = (0..n)
                .filter(|e| filter.allows(ix, *e))
                .nth(*k)
                .ok_or_else(|| Error::InvalidStrategy(format!("node `{id}` has no retained edge {k}")))?;
            out.choices.insert(id.clone(), original);
        }
        Ok(out)
    }

    /// Inverse of [`lift`](Self::lift) for strategies that only use retained
    /// edges.
    pub fn project(&self, t: &DecisionTree, s: &Strategy) -> Result<Strategy> {
        let filter = self.compile(t)?;
        let mut out = Strategy::new();
        for (id, k) in &s.choices {
            let ix = t.ix(id)?;
            if !filter.0[ix].get(*k).copied().unwrap_or(false) {
                return Err(Error::InvalidStrategy(format!("edge {id}#{k} is not retained")));
            }
            let pos = (0..*k).filter(|e| filter.allows(ix, *e)).count();
            out.choices.insert(id.clone(), pos);
        }
        Ok(out)
    }
}

/// The tree containing exactly the retained edges. Node ids are preserved;
/// decision edges are renumbered densely in their original order.
pub fn restrict(t: &DecisionTree, mask: &SubtreeMask) -> Result<DecisionTree> {
    let filter = mask.compile_spanning(t)?;
    fn build(t: &DecisionTree, f: &EdgeFilter, ix: usize) -> NodeSpec {
        let node = &t.nodes[ix];
        match &node.kind {
            Kind::Leaf(g) => NodeSpec::Leaf { gain: g.clone() },
            Kind::Decision(edges) => NodeSpec::Decision {
                id: node.id.clone().unwrap(),
                edges: edges
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| f.allows(ix, *k))
                    .map(|(_, (a, c))| (a.clone(), build(t, f, *c)))
                    .collect(),
            },
            Kind::Chance(edges) => NodeSpec::Chance {
                id: node.id.clone().unwrap(),
                edges: edges.iter().map(|(e, c)| (*e, build(t, f, *c))).collect(),
            },
        }
    }
    DecisionTree::new(t.space().clone(), build(t, &filter, 0))
}
