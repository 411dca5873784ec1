use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::par;
use crate::rational::Rational;
use crate::tree::{DecisionTree, GainMapping, Plan, Strategy, SubtreeMask};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DominanceRelation {
    /// Strictly better under every elementary event.
    Strict,
    /// At least as good everywhere and strictly better somewhere.
    Weak,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceVerdict {
    pub relation: DominanceRelation,
    /// An event where the first mapping pays strictly more, if it dominates.
    pub witness: Option<usize>,
}

impl DominanceVerdict {
    pub fn dominates(&self) -> bool {
        self.relation != DominanceRelation::None
    }
}

/// Compares two gain mappings event by event.
pub fn dominates(g1: &GainMapping, g2: &GainMapping) -> Result<DominanceVerdict> {
    if g1.space() != g2.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(compare(g1.values(), g2.values()))
}

fn compare(a: &[Rational], b: &[Rational]) -> DominanceVerdict {
    let mut witness = None;
    let mut all_strict = true;
    for (e, (x, y)) in a.iter().zip(b).enumerate() {
        match x.cmp(y) {
            Ordering::Less => {
                return DominanceVerdict {
                    relation: DominanceRelation::None,
                    witness: None,
                }
            }
            Ordering::Equal => all_strict = false,
            Ordering::Greater => {
                witness.get_or_insert(e);
            }
        }
    }
    let relation = match witness {
        None => DominanceRelation::None,
        Some(_) if all_strict => DominanceRelation::Strict,
        Some(_) => DominanceRelation::Weak,
    };
    DominanceVerdict {
        relation,
        witness: witness.filter(|_| relation != DominanceRelation::None),
    }
}

fn weakly_dominates(a: &[Rational], b: &[Rational]) -> bool {
    compare(a, b).dominates()
}

/// For each gain vector, whether no other vector in `gains` dominates it.
pub(crate) fn undominated_flags(gains: &[Vec<Rational>]) -> Vec<bool> {
    let mut distinct: Vec<&Vec<Rational>> = Vec::new();
    let mut slot: HashMap<&Vec<Rational>, usize> = HashMap::new();
    let index: Vec<usize> = gains
        .iter()
        .map(|g| {
            *slot.entry(g).or_insert_with(|| {
                distinct.push(g);
                distinct.len() - 1
            })
        })
        .collect();
    let flags = par::map(&distinct, |g| !distinct.iter().any(|h| weakly_dominates(h, g)));
    index.into_iter().map(|k| flags[k]).collect()
}

pub(crate) struct Enumerated {
    pub(crate) plans: Vec<Plan>,
    pub(crate) undominated: Vec<bool>,
}

pub(crate) fn enumerate_with_flags(t: &DecisionTree, cap: u128) -> Result<Enumerated> {
    let plans = t.checked_plans(0, None, cap)?;
    let gains = par::map(&plans, |p| t.gains_of(0, p));
    let undominated = undominated_flags(&gains);
    Ok(Enumerated { plans, undominated })
}

/// Whether no strategy of `t` dominates `s`.
pub(crate) fn is_undominated(t: &DecisionTree, s: &Strategy, cap: u128) -> Result<bool> {
    let g = t.gains_of(0, &t.plan_from(0, s)?);
    let plans = t.checked_plans(0, None, cap)?;
    let beaten = par::map(&plans, |p| weakly_dominates(&t.gains_of(0, p), &g));
    Ok(!beaten.into_iter().any(|b| b))
}

/// Strategies of `t` not dominated by any other strategy of `t`, in
/// enumeration order.
pub fn undominated_strategies(t: &DecisionTree, cap: u128) -> Result<Vec<Strategy>> {
    let e = enumerate_with_flags(t, cap)?;
    Ok(e.plans
        .iter()
        .zip(&e.undominated)
        .filter(|(_, u)| **u)
        .map(|(p, _)| t.strategy_of(p))
        .collect())
}

/// Edges used by at least one undominated strategy.
pub fn build_t0(t: &DecisionTree, cap: u128) -> Result<SubtreeMask> {
    let e = enumerate_with_flags(t, cap)?;
    Ok(mask_of(t, e.plans.iter().zip(&e.undominated).filter(|(_, u)| **u).map(|(p, _)| p)))
}

pub(crate) fn mask_of<'p>(t: &DecisionTree, plans: impl IntoIterator<Item = &'p Plan>) -> SubtreeMask {
    let mut mask = SubtreeMask::new();
    for p in plans {
        mask.add_plan(t, p);
    }
    mask
}
