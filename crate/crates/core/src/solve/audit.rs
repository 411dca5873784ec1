use std::collections::HashSet;

use num_traits::Zero;
use serde::Serialize;

use super::{solve, SolveReport, SolverConfig};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::tree::{DecisionTree, EdgeRef, GainMapping, NodeId, NodeSpec, Strategy};
use crate::uncertainty::{Capacity, EventSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditVerdict {
    pub pass: bool,
    /// First flagged edge taken by the strategy, in pre-order.
    pub offending_edge: Option<EdgeRef>,
}

impl AuditVerdict {
    fn passed() -> Self {
        Self {
            pass: true,
            offending_edge: None,
        }
    }

    fn failed(edge: EdgeRef) -> Self {
        Self {
            pass: false,
            offending_edge: Some(edge),
        }
    }
}

/// Fails when `s` takes any of `pay_edges`, i.e. pays to be put back into a
/// position it could have kept for free.
pub fn audit_money_pump(t: &DecisionTree, pay_edges: &[EdgeRef], s: &Strategy) -> Result<AuditVerdict> {
    for e in pay_edges {
        if e.edge >= t.edge_count(&e.node)? {
            return Err(Error::UnknownEdge {
                node: e.node.to_string(),
                edge: e.edge,
            });
        }
    }
    let plan = t.plan_from(0, s)?;
    for ix in t.reachable_decisions(0, &plan) {
        let taken = EdgeRef {
            node: t.id_of(ix).clone(),
            edge: plan.get(ix).expect("reachable"),
        };
        if pay_edges.contains(&taken) {
            return Ok(AuditVerdict::failed(taken));
        }
    }
    Ok(AuditVerdict::passed())
}

/// A tree with an extra "pay" option at one decision node.
#[derive(Clone, Debug)]
pub struct MoneyPumpGadget {
    pub tree: DecisionTree,
    pub pay_edge: EdgeRef,
}

/// Adds a `pay` edge at decision node `at` leading to a copy of the subtree
/// rooted at `at` in which every gain is lowered by `fee`. Copied node ids
/// get a `~pay` suffix.
pub fn build_money_pump_gadget(base: &DecisionTree, at: &NodeId, fee: &Rational) -> Result<MoneyPumpGadget> {
    if *fee <= Rational::zero() {
        return Err(Error::InvalidFee(format_rational(fee)));
    }
    if !base.is_decision(at) {
        return Err(if base.contains(at) {
            Error::InvalidConfig(format!("node `{at}` is not a decision node"))
        } else {
            Error::UnknownNode(at.to_string())
        });
    }
    let existing: HashSet<String> = base.decision_ids().iter().map(|id| id.to_string()).collect();
    let mut suffix = String::from("~pay");
    let spec = base.to_spec();
    while ids_below(&spec, at).iter().any(|id| existing.contains(&format!("{id}{suffix}"))) {
        suffix.push_str("~pay");
    }
    let edges = base.edge_count(at)?;
    let tree = DecisionTree::new(base.space().clone(), add_pay(&spec, at, fee, &suffix))?;
    Ok(MoneyPumpGadget {
        tree,
        pay_edge: EdgeRef {
            node: at.clone(),
            edge: edges,
        },
    })
}

fn ids_below(spec: &NodeSpec, at: &NodeId) -> Vec<NodeId> {
    fn find<'a>(spec: &'a NodeSpec, at: &NodeId) -> Option<&'a NodeSpec> {
        if spec.id() == Some(at) {
            return Some(spec);
        }
        match spec {
            NodeSpec::Decision { edges, .. } => edges.iter().find_map(|(_, c)| find(c, at)),
            NodeSpec::Chance { edges, .. } => edges.iter().find_map(|(_, c)| find(c, at)),
            NodeSpec::Leaf { .. } => None,
        }
    }
    fn collect(spec: &NodeSpec, out: &mut Vec<NodeId>) {
        out.extend(spec.id().cloned());
        match spec {
            NodeSpec::Decision { edges, .. } => edges.iter().for_each(|(_, c)| collect(c, out)),
            NodeSpec::Chance { edges, .. } => edges.iter().for_each(|(_, c)| collect(c, out)),
            NodeSpec::Leaf { .. } => {}
        }
    }
    let mut out = Vec::new();
    if let Some(s) = find(spec, at) {
        collect(s, &mut out);
    }
    out
}

fn add_pay(spec: &NodeSpec, at: &NodeId, fee: &Rational, suffix: &str) -> NodeSpec {
    match spec {
        NodeSpec::Decision { id, edges } if id == at => {
            let copy = spec.map(&|g| g - fee, &|id| NodeId::new(format!("{id}{suffix}")));
            let mut edges = edges.clone();
            edges.push(("pay".to_string(), copy));
            NodeSpec::Decision { id: id.clone(), edges }
        }
        NodeSpec::Decision { id, edges } => NodeSpec::Decision {
            id: id.clone(),
            edges: edges.iter().map(|(a, c)| (a.clone(), add_pay(c, at, fee, suffix))).collect(),
        },
        NodeSpec::Chance { id, edges } => NodeSpec::Chance {
            id: id.clone(),
            edges: edges.iter().map(|(e, c)| (*e, add_pay(c, at, fee, suffix))).collect(),
        },
        NodeSpec::Leaf { .. } => spec.clone(),
    }
}

/// Choice between observing a partition before acting and acting blind
/// after paying `price`.
#[derive(Clone, Debug)]
pub struct InformationTree {
    pub tree: DecisionTree,
    pub info_edge: EdgeRef,
    pub noinfo_edge: EdgeRef,
}

/// Root `root` offers `info` (a chance node `observe` over the partition,
/// then a decision `cell{j}` among the acts) and `no-info` (a decision
/// `blind` among the acts with every gain lowered by `price`).
pub fn build_information_tree(acts: &[GainMapping], partition: &[EventSet], price: &Rational) -> Result<InformationTree> {
    if *price <= Rational::zero() {
        return Err(Error::InvalidPrice(format_rational(price)));
    }
    let Some(first) = acts.first() else {
        return Err(Error::InvalidConfig("at least one act is required".into()));
    };
    let space = first.space().clone();
    if acts.iter().any(|a| a.space() != &space) {
        return Err(Error::SpaceMismatch);
    }
    let mut covered = space.empty();
    for cell in partition {
        space.check(*cell).map_err(|_| Error::SpaceMismatch)?;
        if cell.is_empty() {
            return Err(Error::InvalidPartition("empty cell".into()));
        }
        if !cell.is_disjoint(covered) {
            return Err(Error::InvalidPartition(format!(
                "cell {} overlaps an earlier cell",
                space.describe(*cell)
            )));
        }
        covered = covered | *cell;
    }
    if !covered.is_full() {
        return Err(Error::InvalidPartition(format!(
                "cells miss {}",
                space.describe(!covered)
        )));
    }

    let act = |i: usize, g: &GainMapping, on: EventSet, prefix: &str, shift: &Rational| -> NodeSpec {
        let mut groups: Vec<(Rational, EventSet)> = Vec::new();
        for e in on.iter() {
            let v = g.get(e) - shift;
            match groups.iter_mut().find(|(x, _)| *x == v) {
                Some((_, set)) => *set = set.with(e),
                None => groups.push((v, space.singleton(e))),
            }
        }
        if groups.len() == 1 {
            NodeSpec::leaf(groups.pop().unwrap().0)
        } else {
            NodeSpec::chance(
                &format!("{prefix}:a{i}"),
                groups.into_iter().map(|(v, set)| (set, NodeSpec::leaf(v))).collect(),
            )
        }
    };
    let zero = Rational::zero();
    let cells = partition
        .iter()
        .enumerate()
        .map(|(j, cell)| {
            let id = format!("cell{j}");
            let choices = acts
                .iter()
                .enumerate()
                .map(|(i, g)| (format!("act{i}"), act(i, g, *cell, &id, &zero)))
                .collect();
            (*cell, NodeSpec::decision(&id, choices))
        })
        .collect();
    let blind = NodeSpec::decision(
        "blind",
        acts.iter()
            .enumerate()
            .map(|(i, g)| (format!("act{i}"), act(i, g, space.full(), "blind", price)))
            .collect(),
    );
    let root = NodeSpec::decision(
        "root",
        vec![("info", NodeSpec::chance("observe", cells)), ("no-info", blind)],
    );
    Ok(InformationTree {
        tree: DecisionTree::new(space, root)?,
        info_edge: EdgeRef::new("root", 0),
        noinfo_edge: EdgeRef::new("root", 1),
    })
}

#[derive(Clone, Debug)]
pub struct InformationAudit {
    pub verdict: AuditVerdict,
    pub report: SolveReport,
    pub tree: InformationTree,
}

/// Solves the information tree with `cfg`; the audit fails when the chosen
/// strategy pays to avoid free information.
pub fn audit_information_price(
    acts: &[GainMapping],
    partition: &[EventSet],
    price: &Rational,
    c: &Capacity,
    cfg: &SolverConfig,
) -> Result<InformationAudit> {
    let tree = build_information_tree(acts, partition, price)?;
    let report = solve(&tree.tree, c, cfg)?;
    let verdict = match &report.strategy {
        Some(s) => audit_money_pump(&tree.tree, std::slice::from_ref(&tree.noinfo_edge), s)?,
        None => AuditVerdict::passed(),
    };
    Ok(InformationAudit { verdict, report, tree })
}
