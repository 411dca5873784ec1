use super::alpha::{build_t1, AlphaSystem};
use super::dominance::{enumerate_with_flags, is_undominated, mask_of};
use super::eval::Evaluator;
use super::{Method, SolveReport};
use crate::criteria::Utility;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{DecisionTree, EdgeFilter, Kind, Plan};
use crate::uncertainty::Capacity;

/// How the undominated subtree is obtained for justifiable choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JustifiableMode {
    /// Full enumeration with pairwise dominance checks.
    Exact,
    /// The subtree spanned by α-strategies.
    Approx,
}

/// Backward induction over the edges allowed by `filter`. Returns the plan
/// and, per node, the local value of the substrategy chosen there.
pub(crate) fn backward(ev: &Evaluator, filter: Option<&EdgeFilter>) -> Result<(Plan, Vec<Option<Rational>>)> {
    let mut values = vec![None; ev.t.node_count()];
    let plan = descend(ev, filter, 0, &mut values)?;
    Ok((plan, values))
}

fn descend(
    ev: &Evaluator,
    filter: Option<&EdgeFilter>,
    ix: usize,
    values: &mut [Option<Rational>],
) -> Result<Plan> {
    match &ev.t.nodes[ix].kind {
        Kind::Leaf(_) => Ok(Plan::default()),
        Kind::Chance(edges) => {
            let mut out = Vec::new();
            for (_, child) in edges {
                out.extend(descend(ev, filter, *child, values)?.0);
            }
            Ok(Plan(out))
        }
        Kind::Decision(edges) => {
            let mut best: Option<(Rational, Plan)> = None;
            for (k, (_, child)) in edges.iter().enumerate() {
                if filter.is_some_and(|f| !f.allows(ix, k)) {
                    continue;
                }
                let sub = descend(ev, filter, *child, values)?;
                let mut v = Vec::with_capacity(sub.0.len() + 1);
                v.push((ix as u32, k as u32));
                v.extend(sub.0);
                let cand = Plan(v);
                let value = ev.value(ix, &cand)?;
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, cand));
                }
            }
            let (value, plan) = best.ok_or_else(|| {
                Error::InvalidTree(format!("decision node `{}` has no edges", ev.t.id_of(ix)))
            })?;
            values[ix] = Some(value);
            Ok(plan)
        }
    }
}

fn report_for(ev: &Evaluator, method: Method, plan: &Plan, values: &[Option<Rational>]) -> Result<SolveReport> {
    let t = ev.t;
    let mut report = SolveReport::new(method);
    report.root_value = Some(ev.value(0, plan)?);
    for ix in t.reachable_decisions(0, plan) {
        let v = match &values[ix] {
            Some(v) => v.clone(),
            None => ev.value(ix, plan)?,
        };
        report.node_values.insert(t.id_of(ix).clone(), v);
    }
    report.strategy = Some(t.strategy_of(plan));
    Ok(report)
}

/// Backward induction: at each decision node, from the deepest up, keep the
/// edge whose continuation has the highest local value. Ties go to the
/// lowest edge index.
pub fn sophisticated(t: &DecisionTree, c: &Capacity, u: &Utility) -> Result<SolveReport> {
    let ev = Evaluator::new(t, c, u)?;
    let (plan, values) = backward(&ev, None)?;
    report_for(&ev, Method::Sophisticated, &plan, &values)
}

/// Backward induction restricted to the subtree of undominated strategies
/// (`Exact`) or to the subtree spanned by α-strategies (`Approx`).
pub fn justifiable(
    t: &DecisionTree,
    c: &Capacity,
    u: &Utility,
    mode: JustifiableMode,
    alphas: &[AlphaSystem],
    cap: u128,
) -> Result<SolveReport> {
    let ev = Evaluator::new(t, c, u)?;
    match mode {
        JustifiableMode::Exact => {
            let e = enumerate_with_flags(t, cap)?;
            let kept = e.plans.iter().zip(&e.undominated).filter(|(_, u)| **u).map(|(p, _)| p);
            let mask = mask_of(t, kept);
            let filter = mask.compile_spanning(t)?;
            let (plan, values) = backward(&ev, Some(&filter))?;
            let mut report = report_for(&ev, Method::JustifiableExact, &plan, &values)?;
            let pos = e.plans.iter().position(|p| *p == plan).expect("chosen plan is enumerated");
            report.undominated = Some(e.undominated[pos]);
            report.diagnostics.mode = Some("exact".into());
            report.diagnostics.retained_edges = Some(mask.len());
            Ok(report)
        }
        JustifiableMode::Approx => {
            let t1 = build_t1(t, alphas)?;
            let filter = t1.mask.compile_spanning(t)?;
            let (plan, values) = backward(&ev, Some(&filter))?;
            let mut report = report_for(&ev, Method::JustifiableApprox, &plan, &values)?;
            let d = &mut report.diagnostics;
            d.mode = Some("approx".into());
            d.retained_edges = Some(t1.mask.len());
            d.alpha_systems = alphas.iter().map(AlphaSystem::summary).collect();
            d.warnings.extend(zero_weight_warnings(alphas));
            match is_undominated(t, report.strategy.as_ref().unwrap(), cap) {
                Ok(flag) => report.undominated = Some(flag),
                Err(Error::CapExceeded { count, cap }) => report.diagnostics.warnings.push(format!(
                    "dominance not checked: {count} strategies exceed the cap of {cap}"
                )),
                Err(e) => return Err(e),
            }
            Ok(report)
        }
    }
}

pub(crate) fn zero_weight_warnings(alphas: &[AlphaSystem]) -> Vec<String> {
    alphas
        .iter()
        .filter(|a| !a.strictly_positive)
        .map(|a| format!("α-system {} gives zero weight to some event; its strategy may be dominated", a.id))
        .collect()
}
