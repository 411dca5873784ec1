//! Seeded generators of small random instances for property tests,
//! acceptance runs and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{int, rat, Rational};
use crate::tree::{count_strategies, DecisionTree, GainMapping, NodeSpec};
use crate::uncertainty::{Capacity, EventSet, EventSpace, MassAssignment, ProbabilityVector};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for [`random_tree`].
#[derive(Clone, Debug)]
pub struct TreeShape {
    pub max_depth: usize,
    pub max_edges: usize,
    pub max_gain: i64,
    pub max_strategies: u128,
    /// Probability that a non-root inner node is a chance node.
    pub chance_bias: f64,
}

impl Default for TreeShape {
    fn default() -> Self {
        Self {
            max_depth: 3,
            max_edges: 3,
            max_gain: 5,
            max_strategies: 200,
            chance_bias: 0.5,
        }
    }
}

pub fn random_space(rng: &mut InstanceRng, min: usize, max: usize) -> EventSpace {
    EventSpace::numbered(rng.random_range(min..=max)).expect("small space")
}

fn random_nonempty(rng: &mut InstanceRng, space: &EventSpace) -> EventSet {
    let n = space.len();
    loop {
        let bits = rng.random_range(1u32..(1 << n));
        let set = EventSet::from_bits(n, bits);
        if !set.is_empty() {
            return set;
        }
    }
}

/// One to four focal sets with small integer weights, plus the whole space
/// when they leave some event uncovered (so every event is plausible).
pub fn random_masses(rng: &mut InstanceRng, space: &EventSpace) -> MassAssignment {
    let k = rng.random_range(1..=4usize);
    let mut focal: Vec<(EventSet, i64)> = Vec::new();
    let mut add = |set: EventSet, w: i64| match focal.iter_mut().find(|(s, _)| *s == set) {
        Some((_, x)) => *x += w,
        None => focal.push((set, w)),
    };
    let mut covered = space.empty();
    for _ in 0..k {
        let set = random_nonempty(rng, space);
        covered = covered | set;
        add(set, rng.random_range(1..=6));
    }
    if !covered.is_full() {
        add(space.full(), 1);
    }
    let total: i64 = focal.iter().map(|(_, w)| w).sum();
    MassAssignment::new(
        space.clone(),
        focal.into_iter().map(|(s, w)| (s, rat(w, total))).collect(),
    )
    .expect("normalized masses")
}

pub fn random_probability(rng: &mut InstanceRng, space: &EventSpace, strictly_positive: bool) -> ProbabilityVector {
    let low = if strictly_positive { 1 } else { 0 };
    loop {
        let w: Vec<i64> = (0..space.len()).map(|_| rng.random_range(low..=6)).collect();
        let total: i64 = w.iter().sum();
        if total > 0 {
            return ProbabilityVector::new(space.clone(), w.iter().map(|x| rat(*x, total)).collect())
                .expect("normalized weights");
        }
    }
}

/// A belief function or a lower envelope of one to three probabilities,
/// with equal chance. Every event has positive plausibility.
pub fn random_capacity(rng: &mut InstanceRng, space: &EventSpace) -> Capacity {
    if rng.random_bool(0.5) {
        Capacity::from_masses(random_masses(rng, space))
    } else {
        let k = rng.random_range(1..=3usize);
        let ps = (0..k).map(|i| random_probability(rng, space, i == 0)).collect();
        Capacity::from_envelope(ps).expect("non-empty envelope")
    }
}

/// Splits `set` into between two and `max` non-empty cells (fewer when the
/// set is small).
pub fn random_partition(rng: &mut InstanceRng, set: EventSet, max: usize) -> Vec<EventSet> {
    let mut events: Vec<usize> = set.iter().collect();
    events.shuffle(rng);
    let k = rng.random_range(2..=max.max(2)).min(events.len());
    let n = set.universe();
    let mut cells = vec![EventSet::empty(n); k];
    for (i, e) in events.into_iter().enumerate() {
        let c = if i < k { i } else { rng.random_range(0..k) };
        cells[c] = cells[c].with(e);
    }
    cells.sort_by_key(|c| c.iter().next());
    cells
}

/// A tree whose root is a decision node, retried until it has at most
/// `shape.max_strategies` strategies.
pub fn random_tree(rng: &mut InstanceRng, space: &EventSpace, shape: &TreeShape) -> DecisionTree {
    loop {
        let mut next_id = 0usize;
        let spec = grow(rng, space.full(), 0, true, shape, &mut next_id);
        let t = DecisionTree::new(space.clone(), spec).expect("events from this space");
        if count_strategies(&t) <= shape.max_strategies {
            return t;
        }
    }
}

fn grow(
    rng: &mut InstanceRng,
    path: EventSet,
    depth: usize,
    root: bool,
    shape: &TreeShape,
    next_id: &mut usize,
) -> NodeSpec {
    let leaf = |rng: &mut InstanceRng| NodeSpec::leaf(int(rng.random_range(0..=shape.max_gain)));
    if !root && (depth >= shape.max_depth || rng.random_bool(0.3)) {
        return leaf(rng);
    }
    let id = format!("n{}", *next_id);
    *next_id += 1;
    if !root && path.len() >= 2 && rng.random_bool(shape.chance_bias) {
        let cells = random_partition(rng, path, shape.max_edges);
        let edges = cells
            .into_iter()
            .map(|cell| (cell, grow(rng, cell, depth + 1, false, shape, next_id)))
            .collect();
        return NodeSpec::chance(&id, edges);
    }
    let k = rng.random_range(2..=shape.max_edges.max(2));
    let edges = (0..k)
        .map(|i| {
            let child = if depth + 1 < shape.max_depth && path.len() >= 2 && rng.random_bool(0.6) {
                // Lean towards uncertainty being resolved below decisions.
                let cells = random_partition(rng, path, shape.max_edges);
                let cid = format!("n{}", *next_id);
                *next_id += 1;
                NodeSpec::chance(
                    &cid,
                    cells
                        .into_iter()
                        .map(|cell| (cell, grow(rng, cell, depth + 2, false, shape, next_id)))
                        .collect(),
                )
            } else {
                grow(rng, path, depth + 1, false, shape, next_id)
            };
            (format!("a{i}"), child)
        })
        .collect();
    NodeSpec::decision(&id, edges)
}

/// A random tree together with a random capacity on 2 to 4 events.
pub struct Instance {
    pub tree: DecisionTree,
    pub capacity: Capacity,
}

pub fn random_instance(seed: u64, shape: &TreeShape) -> Instance {
    let mut rng = rng(seed);
    let space = random_space(&mut rng, 2, 4);
    let capacity = random_capacity(&mut rng, &space);
    let tree = random_tree(&mut rng, &space, shape);
    Instance { tree, capacity }
}

/// Acts with small integer gains.
pub fn random_acts(rng: &mut InstanceRng, space: &EventSpace, count: usize, max_gain: i64) -> Vec<GainMapping> {
    (0..count)
        .map(|_| {
            let v: Vec<Rational> = (0..space.len()).map(|_| int(rng.random_range(0..=max_gain))).collect();
            GainMapping::new(space.clone(), v).expect("one gain per event")
        })
        .collect()
}
