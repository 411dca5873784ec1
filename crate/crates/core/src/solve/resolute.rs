use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::alpha::{build_t1, AlphaSystem};
use super::backward::zero_weight_warnings;
use super::eval::Evaluator;
use super::{Method, Pruned, SolveReport};
use crate::criteria::Utility;
use crate::error::{Error, Result};
use crate::par;
use crate::rational::{format_rational, Rational};
use crate::tree::{DecisionTree, Plan};
use crate::uncertainty::Capacity;

/// Cooperative rollback with unlimited cooperation: every Self accepts any
/// α-substrategy, so the root simply takes the α-strategy with the highest
/// value.
pub fn resolute_unlimited(
    t: &DecisionTree,
    c: &Capacity,
    u: &Utility,
    alphas: &[AlphaSystem],
) -> Result<SolveReport> {
    rollback(t, c, u, alphas, None)
}

/// Cooperative rollback where each Self only accepts α-substrategies within
/// `epsilon0` of the best one available to it. Reports `failure` when no
/// α-strategy survives up to the root.
pub fn resolute_limited(
    t: &DecisionTree,
    c: &Capacity,
    u: &Utility,
    alphas: &[AlphaSystem],
    epsilon0: &Rational,
) -> Result<SolveReport> {
    if *epsilon0 < Rational::zero() {
        return Err(Error::NegativeEpsilon(format_rational(epsilon0)));
    }
    rollback(t, c, u, alphas, Some(epsilon0))
}

struct Step {
    /// Positions of systems whose substrategies survive below this node.
    available: Vec<usize>,
    accepted: Vec<usize>,
    values: HashMap<usize, Rational>,
    tentative: Option<usize>,
}

fn rollback(
    t: &DecisionTree,
    c: &Capacity,
    u: &Utility,
    alphas: &[AlphaSystem],
    epsilon0: Option<&Rational>,
) -> Result<SolveReport> {
    let ev = Evaluator::new(t, c, u)?;
    let t1 = build_t1(t, alphas)?;
    let plans = &t1.plans;
    let m = alphas.len();

    let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, plan) in plans.iter().enumerate() {
        for k in t.reachable_decisions(0, plan) {
            at.entry(k).or_default().push(a);
        }
    }

    let mut accepted = vec![None::<Vec<bool>>; t.node_count()];
    let mut tentative: Vec<Option<usize>> = vec![None; t.node_count()];
    let mut report = SolveReport::new(if epsilon0.is_some() {
        Method::ResoluteLimited
    } else {
        Method::Resolute
    });

    let mut root_step = None;
    for (&k, systems) in at.iter().rev() {
        let step = evaluate(&ev, plans, k, systems, &accepted, &tentative, epsilon0)?;
        let mut flags = vec![false; m];
        for a in &step.accepted {
            flags[*a] = true;
        }
        for a in &step.available {
            if !flags[*a] {
                report.diagnostics.pruned.push(Pruned {
                    node: t.id_of(k).clone(),
                    system: alphas[*a].id,
                });
            }
        }
        accepted[k] = Some(flags);
        tentative[k] = step.tentative;
        if let Some(a) = step.tentative {
            report.diagnostics.tentative.insert(t.id_of(k).clone(), alphas[a].id);
        }
        if k == 0 {
            root_step = Some(step);
        }
    }
    let root_step = match root_step {
        Some(s) => s,
        None => {
            // The root is a chance node or a leaf: it only collects what
            // survives below it.
            let all: Vec<usize> = (0..m).collect();
            evaluate(&ev, plans, 0, &all, &accepted, &tentative, None)?
        }
    };

    let d = &mut report.diagnostics;
    d.mode = Some(if epsilon0.is_some() { "limited" } else { "unlimited" }.into());
    d.alpha_systems = alphas.iter().map(AlphaSystem::summary).collect();
    d.warnings.extend(zero_weight_warnings(alphas));
    d.pruned.sort();

    let Some(chosen) = root_step.tentative else {
        report.failure = true;
        return Ok(report);
    };
    let plan = &plans[chosen];
    report.diagnostics.chosen_system = Some(alphas[chosen].id);
    report.root_value = Some(root_step.values[&chosen].clone());
    for k in t.reachable_decisions(0, plan) {
        report.node_values.insert(t.id_of(k).clone(), ev.value(k, plan)?);
    }
    report.strategy = Some(t.strategy_of(plan));
    Ok(report)
}

fn evaluate(
    ev: &Evaluator,
    plans: &[Plan],
    k: usize,
    systems: &[usize],
    accepted: &[Option<Vec<bool>>],
    tentative: &[Option<usize>],
    epsilon0: Option<&Rational>,
) -> Result<Step> {
    let t = ev.t;
    let frontier: HashMap<usize, Vec<usize>> = systems
        .iter()
        .map(|a| (*a, t.decision_frontier(k, &plans[*a])))
        .collect();
    let available: Vec<usize> = systems
        .iter()
        .copied()
        .filter(|a| {
            frontier[a]
                .iter()
                .all(|m| accepted[*m].as_ref().is_some_and(|f| f[*a]))
        })
        .collect();

    // Many systems share a substrategy; evaluate each distinct one once.
    let mut distinct: Vec<Plan> = Vec::new();
    let mut slot: HashMap<Plan, usize> = HashMap::new();
    let mut which = HashMap::new();
    for a in &available {
        let sub = t.sub_plan(k, &plans[*a]);
        let s = *slot.entry(sub.clone()).or_insert_with(|| {
            distinct.push(sub);
            distinct.len() - 1
        });
        which.insert(*a, s);
    }
    let computed = par::map(&distinct, |p| ev.value(k, p));
    let computed: Vec<Rational> = computed.into_iter().collect::<Result<_>>()?;
    let values: HashMap<usize, Rational> = available
        .iter()
        .map(|a| (*a, computed[which[a]].clone()))
        .collect();

    let best = available.iter().map(|a| &values[a]).max().cloned();
    let accepted_here: Vec<usize> = match (&best, epsilon0) {
        (None, _) => Vec::new(),
        (Some(_), None) => available.clone(),
        (Some(b), Some(eps)) => {
            let floor = b - eps;
            available.iter().copied().filter(|a| values[a] >= floor).collect()
        }
    };

    // Highest value, then agreement with the tentative choices just below,
    // then the lowest system.
    let agrees = |a: usize| {
        frontier[&a].iter().all(|m| {
            tentative[*m].is_some_and(|b| t.sub_plan(*m, &plans[b]) == t.sub_plan(*m, &plans[a]))
        })
    };
    let tentative_here = accepted_here
        .iter()
        .copied()
        .max_by(|a, b| {
            values[a]
                .cmp(&values[b])
                .then_with(|| agrees(*a).cmp(&agrees(*b)))
                .then_with(|| b.cmp(a))
        });

    Ok(Step {
        available,
        accepted: accepted_here,
        values,
        tentative: tentative_here,
    })
}
