use super::backward::backward;
use super::eval::Evaluator;
use crate::criteria::Utility;
use crate::error::{Error, Result};
use crate::par;
use crate::rational::Rational;
use crate::tree::{DecisionTree, Kind, Plan};
use crate::uncertainty::{Capacity, ProbabilityVector};

/// With an additive capacity, checks that backward induction agrees with
/// maximizing subjective expected utility over whole strategies, and that
/// the value of the chosen strategy at every reached node equals its
/// Bayes-conditional expected utility and decomposes over chance nodes.
pub fn seu_dynamic_consistency_check(
    t: &DecisionTree,
    p: &ProbabilityVector,
    u: &Utility,
    cap: u128,
) -> Result<bool> {
    if t.space() != p.space() {
        return Err(Error::SpaceMismatch);
    }
    for ix in 0..t.node_count() {
        if !matches!(t.nodes[ix].kind, Kind::Leaf(_)) && p.prob(t.path_of(ix)) == Rational::default() {
            return Err(Error::ZeroProbabilityPathEvent(t.id_of(ix).to_string()));
        }
    }
    let c = Capacity::additive(p.clone());
    let ev = Evaluator::new(t, &c, u)?;
    let (plan, _) = backward(&ev, None)?;

    let bayes = |ix: usize, plan: &Plan| -> Rational {
        let b = t.path_of(ix);
        let g = t.gains_of(ix, plan);
        let num: Rational = b.iter().map(|e| p.get(e) * u.eval(&g[e])).sum();
        num / p.prob(b)
    };

    let all = t.checked_plans(0, None, cap)?;
    let best = par::map(&all, |q| bayes(0, q)).into_iter().max().expect("at least one strategy");
    if bayes(0, &plan) != best || ev.value(0, &plan)? != best {
        return Ok(false);
    }

    let mut stack = vec![0usize];
    while let Some(ix) = stack.pop() {
        match &t.nodes[ix].kind {
            Kind::Leaf(_) => {}
            Kind::Decision(edges) => {
                let here = bayes(ix, &plan);
                if ev.value(ix, &plan)? != here {
                    return Ok(false);
                }
                let local_best = t
                    .checked_plans(ix, None, cap)?
                    .iter()
                    .map(|q| bayes(ix, q))
                    .max()
                    .expect("at least one substrategy");
                if here != local_best {
                    return Ok(false);
                }
                stack.push(edges[plan.get(ix).expect("reachable")].1);
            }
            Kind::Chance(edges) => {
                let pb = p.prob(t.path_of(ix));
                let mut total = Rational::default();
                for (_, child) in edges {
                    let pc = p.prob(t.path_of(*child));
                    if pc != Rational::default() {
                        total += &pc / &pb * bayes(*child, &plan);
                    }
                    stack.push(*child);
                }
                if total != bayes(ix, &plan) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
