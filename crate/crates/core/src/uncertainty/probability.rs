use num_traits::{One, Zero};

use super::{EventSet, EventSpace};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A probability measure on the elementary events of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProbabilityVector {
    space: EventSpace,
    p: Vec<Rational>,
}

impl ProbabilityVector {
    pub fn new(space: EventSpace, p: Vec<Rational>) -> Result<Self> {
        if p.len() != space.len() {
            return Err(Error::InvalidProbability(format!(
                "{} weights for {} events",
                p.len(),
                space.len()
            )));
        }
        if let Some(neg) = p.iter().find(|x| **x < Rational::zero()) {
            return Err(Error::InvalidProbability(format!(
                "negative weight {}",
                format_rational(neg)
            )));
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidProbability(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(Self { space, p })
    }

    pub fn uniform(space: &EventSpace) -> Self {
        let n = space.len();
        let w = Rational::new(1.into(), (n as i64).into());
        Self {
            space: space.clone(),
            p: vec![w; n],
        }
    }

    pub fn degenerate(space: &EventSpace, event: usize) -> Self {
        let mut p = vec![Rational::zero(); space.len()];
        p[event] = Rational::one();
        Self {
            space: space.clone(),
            p,
        }
    }

    pub fn space(&self) -> &EventSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.p
    }

    pub fn get(&self, event: usize) -> &Rational {
        &self.p[event]
    }

    pub fn prob(&self, set: EventSet) -> Rational {
        set.iter().map(|i| &self.p[i]).sum()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.p.iter().all(|x| *x > Rational::zero())
    }

    /// `(1 - eta) * self + eta * uniform`.
    pub fn mix_uniform(&self, eta: &Rational) -> Self {
        let n = Rational::from_integer((self.p.len() as i64).into());
        let keep = Rational::one() - eta;
        let share = eta / n;
        Self {
            space: self.space.clone(),
            p: self.p.iter().map(|x| &keep * x + &share).collect(),
        }
    }
}
