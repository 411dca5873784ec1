use std::sync::OnceLock;

use crate::criteria::{choquet_on, Utility};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{DecisionTree, Plan};
use crate::uncertainty::Capacity;

/// Conditioned capacities are tabulated up to this many events.
const MATERIALIZE_UP_TO: usize = 12;

/// Local Choquet values with per-node conditioned capacities built on first
/// use.
pub(crate) struct Evaluator<'a> {
    pub(crate) t: &'a DecisionTree,
    c: &'a Capacity,
    u: &'a Utility,
    conditioned: Vec<OnceLock<Result<Capacity>>>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(t: &'a DecisionTree, c: &'a Capacity, u: &'a Utility) -> Result<Self> {
        if t.space() != c.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            t,
            c,
            u,
            conditioned: (0..t.node_count()).map(|_| OnceLock::new()).collect(),
        })
    }

    fn conditioned(&self, ix: usize) -> Result<&Capacity> {
        self.conditioned[ix]
            .get_or_init(|| {
                let cb = self.c.condition(self.t.path_of(ix))?;
                Ok(if self.t.space().len() <= MATERIALIZE_UP_TO {
                    cb.materialize()
                } else {
                    cb
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Value at node `ix` of the choices `plan` makes below it.
    pub(crate) fn value(&self, ix: usize, plan: &Plan) -> Result<Rational> {
        self.value_of_gains(ix, &self.t.gains_of(ix, plan))
    }

    pub(crate) fn value_of_gains(&self, ix: usize, gains: &[Rational]) -> Result<Rational> {
        let cb = self.conditioned(ix)?;
        Ok(choquet_on(gains, self.t.path_of(ix), cb, self.u))
    }
}
