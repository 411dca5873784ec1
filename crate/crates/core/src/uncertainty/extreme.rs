use std::collections::HashSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{MassAssignment, ProbabilityVector};
use crate::rational::Rational;

/// Extreme points of the core of a belief function, by the permutation
/// construction: for an ordering of the events, each focal mass goes to its
/// earliest element.
///
/// All `n!` orderings are used when `n! <= perm_budget`; otherwise
/// `perm_budget` orderings are drawn uniformly with a generator seeded by
/// `seed`. Duplicates are dropped, first occurrence kept.
pub fn core_extreme_points(
    m: &MassAssignment,
    perm_budget: usize,
    seed: u64,
) -> Vec<ProbabilityVector> {
    let n = m.space().len();
    let budget = perm_budget.max(1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |order: &[usize]| {
        let p = allocate(m, order);
        if seen.insert(p.clone()) {
            out.push(ProbabilityVector::new(m.space().clone(), p).expect("masses sum to one"));
        }
    };
    if factorial_at_most(n, budget) {
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            push(&order);
            if !next_permutation(&mut order) {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..budget {
            order.shuffle(&mut rng);
            push(&order);
        }
    }
    out
}

fn allocate(m: &MassAssignment, order: &[usize]) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); order.len()];
    for (set, mass) in m.entries() {
        let first = order
            .iter()
            .copied()
            .find(|e| set.contains(*e))
            .expect("focal sets are non-empty");
        p[first] += mass;
    }
    p
}

fn factorial_at_most(n: usize, limit: usize) -> bool {
    let mut f: usize = 1;
    for k in 2..=n {
        match f.checked_mul(k) {
            Some(v) if v <= limit => f = v,
            _ => return false,
        }
    }
    true
}

/// Lexicographic successor; `false` once the last permutation is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
