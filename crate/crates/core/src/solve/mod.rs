//! Strategy selection: sophisticated backward induction, justifiable choice
//! in the undominated subtree, resolute cooperative rollback over
//! α-strategies, the dominance oracle, and rationality audits.

mod alpha;
mod audit;
mod backward;
mod consistency;
mod dominance;
mod eval;
mod resolute;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Serialize, Serializer};

pub use alpha::{
    alpha_strategy, build_t1, generate_weight_systems, AlphaSystem, SpannedSubtree, WeightConfig,
};
pub use audit::{
    audit_information_price, audit_money_pump, build_information_tree, build_money_pump_gadget,
    AuditVerdict, InformationAudit, InformationTree, MoneyPumpGadget,
};
pub use backward::{justifiable, sophisticated, JustifiableMode};
pub use consistency::seu_dynamic_consistency_check;
pub use dominance::{build_t0, dominates, undominated_strategies, DominanceRelation, DominanceVerdict};
pub use resolute::{resolute_limited, resolute_unlimited};

use crate::criteria::Utility;
use crate::error::{Error, Result};
use crate::rational::{format_rational, serde_rational, Rational};
use crate::tree::{DecisionTree, NodeId, Strategy};
use crate::uncertainty::Capacity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Sophisticated,
    JustifiableExact,
    JustifiableApprox,
    Resolute,
    ResoluteLimited,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Sophisticated,
        Method::JustifiableExact,
        Method::JustifiableApprox,
        Method::Resolute,
        Method::ResoluteLimited,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sophisticated => "sophisticated",
            Self::JustifiableExact => "justifiable-exact",
            Self::JustifiableApprox => "justifiable-approx",
            Self::Resolute => "resolute",
            Self::ResoluteLimited => "resolute-limited",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method `{s}`")))
    }
}

/// Everything a solver run needs besides the tree and the capacity.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub method: Method,
    pub utility: Utility,
    pub epsilon0: Rational,
    pub weights: WeightConfig,
    /// Explicit weighting systems; generated from `weights` when `None`.
    pub alphas: Option<Vec<AlphaSystem>>,
    pub strategy_cap: u128,
    /// Run the dominance oracle on the chosen strategy.
    pub check_dominance: bool,
}

impl SolverConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            utility: Utility::identity(),
            epsilon0: Rational::zero(),
            weights: WeightConfig::default(),
            alphas: None,
            strategy_cap: crate::DEFAULT_STRATEGY_CAP,
            check_dominance: false,
        }
    }

    pub fn with_alphas(mut self, alphas: Vec<AlphaSystem>) -> Self {
        self.alphas = Some(alphas);
        self
    }

    pub fn with_epsilon0(mut self, eps0: Rational) -> Self {
        self.epsilon0 = eps0;
        self
    }

    pub fn with_check_dominance(mut self, on: bool) -> Self {
        self.check_dominance = on;
        self
    }

    pub(crate) fn systems(&self, c: &Capacity) -> Result<Vec<AlphaSystem>> {
        match &self.alphas {
            Some(a) => Ok(a.clone()),
            None => generate_weight_systems(c, &self.weights),
        }
    }
}

/// Runs the configured method.
pub fn solve(t: &DecisionTree, c: &Capacity, cfg: &SolverConfig) -> Result<SolveReport> {
    let mut report = match cfg.method {
        Method::Sophisticated => sophisticated(t, c, &cfg.utility)?,
        Method::JustifiableExact => {
            justifiable(t, c, &cfg.utility, JustifiableMode::Exact, &[], cfg.strategy_cap)?
        }
        Method::JustifiableApprox => justifiable(
            t,
            c,
            &cfg.utility,
            JustifiableMode::Approx,
            &cfg.systems(c)?,
            cfg.strategy_cap,
        )?,
        Method::Resolute => resolute_unlimited(t, c, &cfg.utility, &cfg.systems(c)?)?,
        Method::ResoluteLimited => {
            resolute_limited(t, c, &cfg.utility, &cfg.systems(c)?, &cfg.epsilon0)?
        }
    };
    if cfg.check_dominance && report.undominated.is_none() {
        if let Some(s) = &report.strategy {
            report.undominated = Some(dominance::is_undominated(t, s, cfg.strategy_cap)?);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSummary {
    pub id: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub alpha: Vec<Rational>,
    pub strictly_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pruned {
    pub node: NodeId,
    pub system: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub retained_edges: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alpha_systems: Vec<AlphaSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen_system: Option<usize>,
    /// α-system holding the tentative substrategy at each processed node.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tentative: BTreeMap<NodeId, usize>,
    /// Substrategies rejected by a node's Self under limited cooperation.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pruned: Vec<Pruned>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Outcome of one solver run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub method: Method,
    /// `None` when limited cooperation fails.
    pub strategy: Option<Strategy>,
    #[serde(serialize_with = "serde_rational::option::serialize")]
    pub root_value: Option<Rational>,
    /// Local value of the chosen substrategy at each reached decision node.
    #[serde(serialize_with = "ser_value_map")]
    pub node_values: BTreeMap<NodeId, Rational>,
    /// Verdict of the dominance oracle, when it was run.
    pub undominated: Option<bool>,
    pub failure: bool,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub(crate) fn new(method: Method) -> Self {
        Self {
            method,
            strategy: None,
            root_value: None,
            node_values: BTreeMap::new(),
            undominated: None,
            failure: false,
            diagnostics: Diagnostics::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn ser_value_map<S: Serializer>(m: &BTreeMap<NodeId, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k, format_rational(v))))
}

fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}
