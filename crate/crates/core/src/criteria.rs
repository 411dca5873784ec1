//! Evaluation of gain mappings: Choquet expected utility, subjective
//! expected utility, linear forms, and the local criterion at a tree node.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::tree::{DecisionTree, GainMapping, NodeId, Strategy};
use crate::uncertainty::{Capacity, EventSet, ProbabilityVector};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Identity,
    Affine { slope: Rational, intercept: Rational },
    /// Breakpoints with strictly increasing abscissae and ordinates; the
    /// end segments are extended linearly.
    Piecewise(Vec<(Rational, Rational)>),
}

/// A strictly increasing utility over gains, closed on rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Utility(Repr);

impl Default for Utility {
    fn default() -> Self {
        Self::identity()
    }
}

impl Utility {
    pub fn identity() -> Self {
        Self(Repr::Identity)
    }

    pub fn affine(slope: Rational, intercept: Rational) -> Result<Self> {
        if slope <= Rational::zero() {
            return Err(Error::InvalidUtility(format!(
                "affine slope must be positive, got {}",
                format_rational(&slope)
            )));
        }
        Ok(Self(Repr::Affine { slope, intercept }))
    }

    pub fn piecewise(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidUtility(
                "piecewise utility needs at least two breakpoints".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::InvalidUtility(
                    "breakpoints must be strictly increasing in both coordinates".into(),
                ));
            }
        }
        Ok(Self(Repr::Piecewise(points)))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Repr::Identity
    }

    /// `(slope, intercept)` of an affine utility.
    pub fn affine_parts(&self) -> Option<(&Rational, &Rational)> {
        match &self.0 {
            Repr::Affine { slope, intercept } => Some((slope, intercept)),
            _ => None,
        }
    }

    pub fn breakpoints(&self) -> Option<&[(Rational, Rational)]> {
        match &self.0 {
            Repr::Piecewise(p) => Some(p),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        match &self.0 {
            Repr::Identity => x.clone(),
            Repr::Affine { slope, intercept } => slope * x + intercept,
            Repr::Piecewise(pts) => {
                let k = match pts.iter().position(|(bx, _)| x <= bx) {
                    Some(0) => 1,
                    Some(k) => k,
                    None => pts.len() - 1,
                };
                let (x0, y0) = &pts[k - 1];
                let (x1, y1) = &pts[k];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionKind {
    Ceu,
    Seu,
    Linear,
}

impl CriterionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ceu => "ceu",
            Self::Seu => "seu",
            Self::Linear => "linear",
        }
    }
}

/// Criterion shared by every node of a tree, plus the cooperation slack
/// used by the limited resolute procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionConfig {
    pub kind: CriterionKind,
    pub utility: Utility,
    pub probability: Option<ProbabilityVector>,
    pub epsilon0: Rational,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        Self {
            kind: CriterionKind::Ceu,
            utility: Utility::identity(),
            probability: None,
            epsilon0: Rational::zero(),
        }
    }
}

impl CriterionConfig {
    pub fn new(
        kind: CriterionKind,
        utility: Utility,
        probability: Option<ProbabilityVector>,
        epsilon0: Rational,
    ) -> Result<Self> {
        if epsilon0 < Rational::zero() {
            return Err(Error::NegativeEpsilon(format_rational(&epsilon0)));
        }
        if kind != CriterionKind::Ceu && probability.is_none() {
            return Err(Error::InvalidConfig(format!(
                "criterion `{}` needs a probability vector",
                kind.as_str()
            )));
        }
        Ok(Self {
            kind,
            utility,
            probability,
            epsilon0,
        })
    }

    /// Capacity and utility the solvers evaluate with: the model capacity
    /// for CEU, the configured probability for SEU, and the probability
    /// with raw gains for linear forms.
    pub fn evaluation(&self, model: &Capacity) -> Result<(Capacity, Utility)> {
        match self.kind {
            CriterionKind::Ceu => Ok((model.clone(), self.utility.clone())),
            CriterionKind::Seu | CriterionKind::Linear => {
                let p = self.probability.clone().expect("checked at construction");
                if p.space() != model.space() {
                    return Err(Error::SpaceMismatch);
                }
                let u = if self.kind == CriterionKind::Seu {
                    self.utility.clone()
                } else {
                    Utility::identity()
                };
                Ok((Capacity::additive(p), u))
            }
        }
    }
}

/// Choquet integral of `u ∘ g` over the events of `support`; events with
/// equal utility form one level. `c` must satisfy `c(support) = 1`.
pub(crate) fn choquet_on(values: &[Rational], support: EventSet, c: &Capacity, u: &Utility) -> Rational {
    let mut utils: Vec<(Rational, usize)> = support.iter().map(|e| (u.eval(&values[e]), e)).collect();
    if utils.is_empty() {
        return Rational::zero();
    }
    utils.sort();
    let mut total = utils[0].0.clone();
    let mut upper = support;
    let mut k = 0;
    while k < utils.len() {
        let level = utils[k].0.clone();
        let mut j = k;
        while j < utils.len() && utils[j].0 == level {
            j += 1;
        }
        if k > 0 {
            let step = &level - &utils[k - 1].0;
            total += c.value(upper) * step;
        }
        for (_, e) in &utils[k..j] {
            upper = upper.without(*e);
        }
        k = j;
    }
    total
}

/// `V = u(c1) + Σ_{i≥2} Π(A_i ∪ … ∪ A_n) [u(c_i) − u(c_{i−1})]` with gains
/// sorted increasingly.
pub fn choquet_value(g: &GainMapping, c: &Capacity, u: &Utility) -> Result<Rational> {
    if g.space() != c.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(choquet_on(g.values(), c.space().full(), c, u))
}

/// `Σ_e p(e) u(g(e))`.
pub fn seu_value(g: &GainMapping, p: &ProbabilityVector, u: &Utility) -> Result<Rational> {
    if g.space() != p.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(g.values()
        .iter()
        .zip(p.weights())
        .map(|(x, w)| w * u.eval(x))
        .sum())
}

/// `Σ_e α(e) g(e)` on raw gains.
pub fn linear_value(g: &GainMapping, alpha: &ProbabilityVector) -> Result<Rational> {
    if g.space() != alpha.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(g.values().iter().zip(alpha.weights()).map(|(x, w)| w * x).sum())
}

/// Value at `node` of the substrategy `s` (choices inside the subtree
/// rooted at `node`), under the capacity conditioned on the node's path
/// event. Gains outside the path event carry no weight.
pub fn local_value(
    t: &DecisionTree,
    node: &NodeId,
    s: &Strategy,
    c: &Capacity,
    u: &Utility,
) -> Result<Rational> {
    if t.space() != c.space() {
        return Err(Error::SpaceMismatch);
    }
    let ix = t.ix(node)?;
    let plan = t.plan_from(ix, s)?;
    let b = t.path_of(ix);
    let cb = c.condition(b)?;
    Ok(choquet_on(&t.gains_of(ix, &plan), b, &cb, u))
}
