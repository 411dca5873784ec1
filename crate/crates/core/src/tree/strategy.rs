use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DecisionTree, EdgeFilter, Kind, NodeId};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::uncertainty::{EventSet, EventSpace};

/// Choice of an edge index at every decision node reachable under the
/// strategy's own choices, and nowhere else.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strategy {
    pub choices: BTreeMap<NodeId, usize>,
}

impl Strategy {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style insertion, handy in tests and fixtures.
    pub fn with(mut self, node: &str, edge: usize) -> Self {
        self.choices.insert(NodeId::new(node), edge);
        self
    }

    pub fn choice(&self, node: &NodeId) -> Option<usize> {
        self.choices.get(node).copied()
    }
}

/// Gain received under each elementary event.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GainMapping {
    space: EventSpace,
    values: Vec<Rational>,
}

impl GainMapping {
    pub fn new(space: EventSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { space, values })
    }

    pub fn constant(space: &EventSpace, gain: Rational) -> Self {
        Self {
            values: vec![gain; space.len()],
            space: space.clone(),
        }
    }

    pub fn space(&self) -> &EventSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, event: usize) -> &Rational {
        &self.values[event]
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

/// Sparse choice list sorted by arena index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Plan(pub(crate) Vec<(u32, u32)>);

impl Plan {
    pub(crate) fn get(&self, ix: usize) -> Option<usize> {
        self.0
            .binary_search_by_key(&(ix as u32), |(n, _)| *n)
            .ok()
            .map(|k| self.0[k].1 as usize)
    }

    fn choose(&self, ix: usize) -> usize {
        self.get(ix).expect("plan covers every reachable decision node")
    }
}

impl DecisionTree {
    pub(crate) fn path_of(&self, ix: usize) -> EventSet {
        self.nodes[ix].path
    }

    /// Follows `plan` from `from`, writing each leaf gain on the leaf's path
    /// event. Entries outside `path_of(from)` are left untouched.
    pub(crate) fn fill_gains(&self, from: usize, plan: &Plan, out: &mut [Rational]) {
        match &self.nodes[from].kind {
            Kind::Leaf(g) => {
                for e in self.nodes[from].path.iter() {
                    out[e] = g.clone();
                }
            }
            Kind::Decision(edges) => self.fill_gains(edges[plan.choose(from)].1, plan, out),
            Kind::Chance(edges) => {
                for (_, child) in edges {
                    self.fill_gains(*child, plan, out);
                }
            }
        }
    }

    pub(crate) fn gains_of(&self, from: usize, plan: &Plan) -> Vec<Rational> {
        let mut out = vec![Rational::default(); self.space().len()];
        self.fill_gains(from, plan, &mut out);
        out
    }

    /// Decision nodes reached from `from` under `plan`, in pre-order.
    pub(crate) fn reachable_decisions(&self, from: usize, plan: &Plan) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        while let Some(ix) = stack.pop() {
            match &self.nodes[ix].kind {
                Kind::Leaf(_) => {}
                Kind::Decision(edges) => {
                    out.push(ix);
                    stack.push(edges[plan.choose(ix)].1);
                }
                Kind::Chance(edges) => stack.extend(edges.iter().rev().map(|(_, c)| *c)),
            }
        }
        out.sort_unstable();
        out
    }

    /// Nearest decision nodes strictly below `from` reached under `plan`.
    pub(crate) fn decision_frontier(&self, from: usize, plan: &Plan) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = match &self.nodes[from].kind {
            Kind::Decision(edges) => vec![edges[plan.choose(from)].1],
            _ => self.children(from),
        };
        while let Some(ix) = stack.pop() {
            match &self.nodes[ix].kind {
                Kind::Leaf(_) => {}
                Kind::Decision(_) => out.push(ix),
                Kind::Chance(edges) => stack.extend(edges.iter().map(|(_, c)| *c)),
            }
        }
        out.sort_unstable();
        out
    }

    /// Restriction of `plan` to the subtree rooted at `from`.
    pub(crate) fn sub_plan(&self, from: usize, plan: &Plan) -> Plan {
        let mut v: Vec<(u32, u32)> = self
            .reachable_decisions(from, plan)
            .into_iter()
            .map(|ix| (ix as u32, plan.choose(ix) as u32))
            .collect();
        v.sort_unstable();
        Plan(v)
    }

    /// Checks that `s` chooses exactly at the decision nodes reachable from
    /// `from` and converts it to a plan.
    pub(crate) fn plan_from(&self, from: usize, s: &Strategy) -> Result<Plan> {
        let mut choices = Vec::new();
        let mut stack = vec![from];
        while let Some(ix) = stack.pop() {
            match &self.nodes[ix].kind {
                Kind::Leaf(_) => {}
                Kind::Decision(edges) => {
                    let id = self.id_of(ix);
                    let k = s.choice(id).ok_or_else(|| {
                        Error::InvalidStrategy(format!("no choice at reachable node `{id}`"))
                    })?;
                    if k >= edges.len() {
                        return Err(Error::InvalidStrategy(format!(
                            "node `{id}` has no edge {k}"
                        )));
                    }
                    choices.push((ix as u32, k as u32));
                    stack.push(edges[k].1);
                }
                Kind::Chance(edges) => stack.extend(edges.iter().map(|(_, c)| *c)),
            }
        }
        if choices.len() != s.choices.len() {
            let reached: Vec<&NodeId> = choices.iter().map(|(ix, _)| self.id_of(*ix as usize)).collect();
            let extra = s
                .choices
                .keys()
                .find(|id| !reached.contains(id))
                .expect("some choice is unreachable");
            return Err(Error::InvalidStrategy(format!(
                "choice at unreachable node `{extra}`"
            )));
        }
        choices.sort_unstable();
        Ok(Plan(choices))
    }

    pub(crate) fn strategy_of(&self, plan: &Plan) -> Strategy {
        Strategy {
            choices: plan
                .0
                .iter()
                .map(|(ix, k)| (self.id_of(*ix as usize).clone(), *k as usize))
                .collect(),
        }
    }

    /// All plans rooted at `from`, depth-first in edge-index order.
    pub(crate) fn enumerate_plans(&self, from: usize, filter: Option<&EdgeFilter>) -> Vec<Plan> {
        match &self.nodes[from].kind {
            Kind::Leaf(_) => vec![Plan::default()],
            Kind::Decision(edges) => {
                let mut out = Vec::new();
                for (k, (_, child)) in edges.iter().enumerate() {
                    if filter.is_some_and(|f| !f.allows(from, k)) {
                        continue;
                    }
                    for sub in self.enumerate_plans(*child, filter) {
                        let mut v = Vec::with_capacity(sub.0.len() + 1);
                        v.push((from as u32, k as u32));
                        v.extend(sub.0);
                        out.push(Plan(v));
                    }
                }
                out
            }
            Kind::Chance(edges) => {
                let mut acc = vec![Plan::default()];
                for (_, child) in edges {
                    let subs = self.enumerate_plans(*child, filter);
                    let mut next = Vec::with_capacity(acc.len() * subs.len());
                    for a in &acc {
                        for b in &subs {
                            let mut v = a.0.clone();
                            v.extend_from_slice(&b.0);
                            next.push(Plan(v));
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }

    /// Saturating count of plans rooted at `from`.
    pub(crate) fn count_plans(&self, from: usize, filter: Option<&EdgeFilter>) -> u128 {
        match &self.nodes[from].kind {
            Kind::Leaf(_) => 1,
            Kind::Decision(edges) => edges
                .iter()
                .enumerate()
                .filter(|(k, _)| filter.is_none_or(|f| f.allows(from, *k)))
                .map(|(_, (_, c))| self.count_plans(*c, filter))
                .fold(0u128, |a, b| a.saturating_add(b)),
            Kind::Chance(edges) => edges
                .iter()
                .map(|(_, c)| self.count_plans(*c, filter))
                .fold(1u128, |a, b| a.saturating_mul(b)),
        }
    }

    pub(crate) fn checked_plans(
        &self,
        from: usize,
        filter: Option<&EdgeFilter>,
        cap: u128,
    ) -> Result<Vec<Plan>> {
        let count = self.count_plans(from, filter);
        if count > cap {
            return Err(Error::CapExceeded { count, cap });
        }
        Ok(self.enumerate_plans(from, filter))
    }
}

/// Intersection of the chance-edge events on the path from the root.
pub fn path_event(t: &DecisionTree, node: &NodeId) -> Result<EventSet> {
    Ok(t.path_of(t.ix(node)?))
}

/// Number of strategies rooted at the tree's root (saturating).
pub fn count_strategies(t: &DecisionTree) -> u128 {
    t.count_plans(0, None)
}

/// All strategies of the tree, or `CapExceeded` when there are more than
/// `cap`.
pub fn enumerate_strategies(t: &DecisionTree, cap: u128) -> Result<Vec<Strategy>> {
    Ok(t.checked_plans(0, None, cap)?
        .iter()
        .map(|p| t.strategy_of(p))
        .collect())
}

/// All substrategies of the subtree rooted at `from`.
pub fn enumerate_substrategies(t: &DecisionTree, from: &NodeId, cap: u128) -> Result<Vec<Strategy>> {
    let ix = t.ix(from)?;
    Ok(t.checked_plans(ix, None, cap)?
        .iter()
        .map(|p| t.strategy_of(p))
        .collect())
}

/// The elementary event → gain mapping induced by a strategy.
pub fn gain_mapping(t: &DecisionTree, s: &Strategy) -> Result<GainMapping> {
    let plan = t.plan_from(0, s)?;
    Ok(GainMapping {
        space: t.space().clone(),
        values: t.gains_of(0, &plan),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Example1;
    use crate::rational::{int, rat};
    use crate::tree::NodeSpec;

    fn fx() -> Example1 {
        Example1::new(rat(1, 1000)).unwrap()
    }

    #[test]
    fn single_leaf_has_one_empty_strategy() {
        let s = EventSpace::numbered(2).unwrap();
        let t = DecisionTree::new(s.clone(), NodeSpec::leaf(int(7))).unwrap();
        let all = enumerate_strategies(&t, 10).unwrap();
        assert_eq!(all, vec![Strategy::new()]);
        assert_eq!(gain_mapping(&t, &all[0]).unwrap(), GainMapping::constant(&s, int(7)));
    }

    #[test]
    fn decision_over_leaves() {
        let s = EventSpace::numbered(1).unwrap();
        let t = DecisionTree::new(
            s,
            NodeSpec::decision("d", (0..4).map(|k| (format!("a{k}"), NodeSpec::leaf(int(k)))).collect()),
        )
        .unwrap();
        let all = enumerate_strategies(&t, 100).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all[2], Strategy::new().with("d", 2));
    }

    #[test]
    fn example1_strategies() {
        let fx = fx();
        let all = enumerate_strategies(&fx.tree, 100).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(count_strategies(&fx.tree), 5);
        assert_eq!(all[0], fx.u_r_r());
        assert_eq!(all[3], fx.u_b_y());
        assert_eq!(all[4], fx.down());
        assert!(matches!(
            enumerate_strategies(&fx.tree, 4),
            Err(Error::CapExceeded { count: 5, cap: 4 })
        ));
    }

    #[test]
    fn example1_path_events() {
        let fx = fx();
        let s = fx.tree.space();
        assert_eq!(path_event(&fx.tree, &"0".into()).unwrap(), s.full());
        assert_eq!(
            path_event(&fx.tree, &"1".into()).unwrap(),
            s.set(&["HR", "HB", "HY"]).unwrap()
        );
        assert!(path_event(&fx.tree, &"nope".into()).is_err());
    }

    #[test]
    fn nested_chance_path_event() {
        let s = EventSpace::numbered(4).unwrap();
        let a = s.set(&["e1", "e2", "e3"]).unwrap();
        let b = s.set(&["e2", "e3"]).unwrap();
        let spec = NodeSpec::chance(
            "c1",
            vec![
                (
                    a,
                    NodeSpec::chance(
                        "c2",
                        vec![
                            (b, NodeSpec::decision("x", vec![("k", NodeSpec::leaf(int(0)))])),
                            (s.set(&["e1"]).unwrap(), NodeSpec::leaf(int(0))),
                        ],
                    ),
                ),
                (!a, NodeSpec::leaf(int(1))),
            ],
        );
        let t = DecisionTree::new(s, spec).unwrap();
        assert_eq!(path_event(&t, &"x".into()).unwrap(), a & b);
    }

    #[test]
    fn example1_gain_mappings() {
        let fx = fx();
        let eps = &fx.epsilon;
        let s = fx.tree.space();
        let g = gain_mapping(&fx.tree, &fx.u_b_y()).unwrap();
        let win = s.set(&["HB", "TY"]).unwrap();
        for e in 0..6 {
            let expect = if win.contains(e) { int(100) + eps * int(2) } else { eps * int(2) };
            assert_eq!(g.get(e), &expect);
        }
        let d = gain_mapping(&fx.tree, &fx.down()).unwrap();
        for e in 0..6 {
            let expect = if win.contains(e) { int(100) + eps } else { eps.clone() };
            assert_eq!(d.get(e), &expect);
        }
    }

    #[test]
    fn invalid_strategies_rejected() {
        let fx = fx();
        // missing choice at node 2
        let s = Strategy::new().with("0", 0).with("1", 0);
        assert!(matches!(gain_mapping(&fx.tree, &s), Err(Error::InvalidStrategy(_))));
        // choice at unreachable node
        let s = fx.down().with("1", 0);
        assert!(matches!(gain_mapping(&fx.tree, &s), Err(Error::InvalidStrategy(_))));
        // edge out of range
        let s = Strategy::new().with("0", 5);
        assert!(matches!(gain_mapping(&fx.tree, &s), Err(Error::InvalidStrategy(_))));
    }

    #[test]
    fn substrategies_from_inner_node() {
        let fx = fx();
        let subs = enumerate_substrategies(&fx.tree, &"1".into(), 10).unwrap();
        assert_eq!(subs, vec![Strategy::new().with("1", 0), Strategy::new().with("1", 1)]);
    }
}
