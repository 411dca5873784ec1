use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dominance::mask_of;
use super::AlphaSummary;
use crate::error::{Error, Result};
use crate::par;
use crate::rational::{rat, Rational};
use crate::tree::{DecisionTree, Kind, NodeId, Plan, Strategy, SubtreeMask};
use crate::uncertainty::{core_extreme_points, Capacity, ProbabilityVector};

/// A weighting of the elementary events used to pick one linear-value
/// maximizing strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSystem {
    pub id: usize,
    pub alpha: ProbabilityVector,
    /// Whether every event has positive weight. Without it the resulting
    /// strategy need not be undominated.
    pub strictly_positive: bool,
}

impl AlphaSystem {
    pub fn new(id: usize, alpha: ProbabilityVector) -> Self {
        Self {
            id,
            strictly_positive: alpha.is_strictly_positive(),
            alpha,
        }
    }

    pub fn summary(&self) -> AlphaSummary {
        AlphaSummary {
            id: self.id,
            alpha: self.alpha.weights().to_vec(),
            strictly_positive: self.strictly_positive,
        }
    }
}

/// Controls [`generate_weight_systems`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConfig {
    /// Upper bound on the number of systems returned.
    pub count: usize,
    /// Number of random simplex points appended after the structured ones.
    pub random_samples: usize,
    pub seed: u64,
    /// Mixing weight towards the uniform distribution, in `[0, 1)`.
    pub eta: Rational,
    /// Orderings tried when enumerating core vertices.
    pub perm_budget: usize,
    /// Extra systems supplied by the caller, placed after the uniform one.
    pub extra: Vec<ProbabilityVector>,
}

impl Default for WeightConfig {
    fn default() -> Self {
        Self {
            count: 1024,
            random_samples: 8,
            seed: 0,
            eta: rat(1, 100),
            perm_budget: 40_320,
            extra: Vec::new(),
        }
    }
}

/// Candidate weightings in a fixed order: core vertices of the capacity
/// (or the generating probabilities of an envelope), the uniform
/// distribution, caller-supplied systems, then seeded random simplex
/// points. Each is mixed towards uniform by `eta`; duplicates are dropped
/// and the list is cut at `count`.
pub fn generate_weight_systems(c: &Capacity, cfg: &WeightConfig) -> Result<Vec<AlphaSystem>> {
    if cfg.eta < Rational::zero() || cfg.eta >= Rational::one() {
        return Err(Error::InvalidEta(crate::rational::format_rational(&cfg.eta)));
    }
    let space = c.space();
    let mut raw: Vec<ProbabilityVector> = Vec::new();
    if let Some(m) = c.masses() {
        raw.extend(core_extreme_points(m, cfg.perm_budget, cfg.seed));
    } else if let Some(ps) = c.envelope() {
        raw.extend(ps.iter().cloned());
    } else if let Some(m) = c.mobius().to_mass_assignment() {
        raw.extend(core_extreme_points(&m, cfg.perm_budget, cfg.seed));
    }
    raw.push(ProbabilityVector::uniform(space));
    for p in &cfg.extra {
        if p.space() != space {
            return Err(Error::SpaceMismatch);
        }
        raw.push(p.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_a1fa);
    for _ in 0..cfg.random_samples {
        raw.push(random_simplex_point(space, &mut rng));
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in raw {
        if out.len() >= cfg.count {
            break;
        }
        let p = if cfg.eta.is_zero() { p } else { p.mix_uniform(&cfg.eta) };
        if seen.insert(p.clone()) {
            out.push(AlphaSystem::new(out.len(), p));
        }
    }
    Ok(out)
}

fn random_simplex_point(space: &crate::uncertainty::EventSpace, rng: &mut ChaCha8Rng) -> ProbabilityVector {
    loop {
        let w: Vec<i64> = (0..space.len()).map(|_| rng.random_range(0..=16)).collect();
        let total: i64 = w.iter().sum();
        if total > 0 {
            let p = w.iter().map(|x| rat(*x, total)).collect();
            return ProbabilityVector::new(space.clone(), p).expect("normalized weights");
        }
    }
}

/// Strategy maximizing `Σ_e α(e) g(e)`, built by backward induction with
/// ties going to the lowest edge index.
pub fn alpha_strategy(t: &DecisionTree, alpha: &ProbabilityVector) -> Result<Strategy> {
    if t.space() != alpha.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(t.strategy_of(&alpha_plan(t, alpha)))
}

pub(crate) fn alpha_plan(t: &DecisionTree, alpha: &ProbabilityVector) -> Plan {
    let n = t.node_count();
    let mut value = vec![Rational::zero(); n];
    let mut choice = vec![0usize; n];
    for ix in (0..n).rev() {
        value[ix] = match &t.nodes[ix].kind {
            Kind::Leaf(g) => g * alpha.prob(t.path_of(ix)),
            Kind::Chance(edges) => edges.iter().map(|(_, c)| &value[*c]).sum(),
            Kind::Decision(edges) => {
                let mut best = 0;
                for k in 1..edges.len() {
                    if value[edges[k].1] > value[edges[best].1] {
                        best = k;
                    }
                }
                choice[ix] = best;
                value[edges[best].1].clone()
            }
        };
    }
    let mut plan = Vec::new();
    let mut stack = vec![0usize];
    while let Some(ix) = stack.pop() {
        match &t.nodes[ix].kind {
            Kind::Leaf(_) => {}
            Kind::Decision(edges) => {
                plan.push((ix as u32, choice[ix] as u32));
                stack.push(edges[choice[ix]].1);
            }
            Kind::Chance(edges) => stack.extend(edges.iter().map(|(_, c)| *c)),
        }
    }
    plan.sort_unstable();
    Plan(plan)
}

/// The subtree spanned by a family of α-strategies, with the substrategy
/// each system induces at every decision node it reaches.
#[derive(Clone, Debug)]
pub struct SpannedSubtree {
    pub mask: SubtreeMask,
    /// `(system id, substrategy)` pairs per decision node, in system order.
    pub index: BTreeMap<NodeId, Vec<(usize, Strategy)>>,
    pub(crate) plans: Vec<Plan>,
}

pub fn build_t1(t: &DecisionTree, alphas: &[AlphaSystem]) -> Result<SpannedSubtree> {
    if alphas.is_empty() {
        return Err(Error::EmptyAlphas);
    }
    if alphas.iter().any(|a| a.alpha.space() != t.space()) {
        return Err(Error::SpaceMismatch);
    }
    let plans = par::map(alphas, |a| alpha_plan(t, &a.alpha));
    let mut index: BTreeMap<NodeId, Vec<(usize, Strategy)>> = BTreeMap::new();
    for (a, plan) in alphas.iter().zip(&plans) {
        for k in t.reachable_decisions(0, plan) {
            index
                .entry(t.id_of(k).clone())
                .or_default()
                .push((a.id, t.strategy_of(&t.sub_plan(k, plan))));
        }
    }
    Ok(SpannedSubtree {
        mask: mask_of(t, &plans),
        index,
        plans,
    })
}
