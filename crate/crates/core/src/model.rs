//! JSON model files: an event space, a capacity, and optionally a decision
//! tree, declared pay edges and a criterion.
//!
//! Rationals are written as `"p/q"` strings; integers are also accepted on
//! input. Event sets are lists of event names. Table keys are either a
//! comma-separated list of names or a decimal bitmask (names win when a key
//! could be read both ways).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::criteria::{CriterionConfig, CriterionKind, Utility};
use crate::error::Error;
use crate::rational::{format_rational, Exact, Rational};
use crate::solve::AlphaSystem;
use crate::tree::{validate_tree, DecisionTree, EdgeRef, NodeId, NodeSpec, Strategy};
use crate::uncertainty::{validate_capacity, Capacity, EventSet, EventSpace, MassAssignment, ProbabilityVector};

/// A loaded model. `tree` is absent for capacity-only files.
#[derive(Clone)]
pub struct Model {
    pub space: EventSpace,
    pub capacity: Capacity,
    pub tree: Option<DecisionTree>,
    pub pay_edges: Vec<EdgeRef>,
    pub criterion: Option<CriterionConfig>,
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("{message} at line {line}, column {column}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Content(String),
    #[error("model has {} violation(s)", .0.violations.len())]
    Invalid(ModelReport),
}

impl From<serde_json::Error> for ModelError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        Self::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelViolation {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub violations: Vec<ModelViolation>,
}

impl ModelReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: &str, node: Option<String>, message: impl Into<String>) {
        self.violations.push(ModelViolation {
            kind: kind.to_string(),
            node,
            message: message.into(),
        });
    }
}

/// Result of checking a model file: the model when it could be built, and
/// every semantic violation found.
pub struct Checked {
    pub model: Option<Model>,
    pub report: ModelReport,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    events: Vec<String>,
    capacity: Option<RawCapacity>,
    masses: Option<Vec<RawMass>>,
    envelope: Option<Vec<Vec<Exact>>>,
    table: Option<BTreeMap<String, Exact>>,
    root: Option<RawNode>,
    #[serde(default)]
    pay_edges: Vec<EdgeRef>,
    criterion: Option<RawCriterion>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCapacity {
    events: Option<Vec<String>>,
    masses: Option<Vec<RawMass>>,
    envelope: Option<Vec<Vec<Exact>>>,
    table: Option<BTreeMap<String, Exact>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMass {
    set: Vec<String>,
    mass: Exact,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawNode {
    Decision { id: NodeId, edges: Vec<RawDecisionEdge> },
    Chance { id: NodeId, edges: Vec<RawChanceEdge> },
    Leaf { gain: Exact },
}

#[derive(Deserialize)]
struct RawDecisionEdge {
    action: String,
    to: RawNode,
}

#[derive(Deserialize)]
struct RawChanceEdge {
    event: Vec<String>,
    to: RawNode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCriterion {
    kind: String,
    utility: Option<RawUtility>,
    probability: Option<Vec<Exact>>,
    epsilon0: Option<Exact>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawUtility {
    Identity,
    Affine { a: Exact, b: Exact },
    Piecewise { points: Vec<(Exact, Exact)> },
}

fn content(msg: impl Into<String>) -> ModelError {
    ModelError::Content(msg.into())
}

fn event_set(space: &EventSpace, names: &[String]) -> Result<EventSet, ModelError> {
    space.set(names).map_err(|e| content(e.to_string()))
}

fn table_key(space: &EventSpace, key: &str) -> Result<EventSet, ModelError> {
    let inner = key.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if inner.is_empty() {
        return Ok(space.empty());
    }
    let names: Vec<&str> = inner.split(',').map(str::trim).collect();
    if let Ok(set) = space.set(&names) {
        return Ok(set);
    }
    match inner.parse::<u32>() {
        Ok(bits) if space.len() >= 32 || bits >> space.len() == 0 => Ok(EventSet::from_bits(space.len(), bits)),
        _ => Err(content(format!("table key `{key}` is neither a list of events nor a bitmask"))),
    }
}

fn rationals(v: &[Exact]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn node_spec(space: &EventSpace, raw: &RawNode) -> Result<NodeSpec, ModelError> {
    Ok(match raw {
        RawNode::Leaf { gain } => NodeSpec::leaf(gain.0.clone()),
        RawNode::Decision { id, edges } => NodeSpec::Decision {
            id: id.clone(),
            edges: edges
                .iter()
                .map(|e| Ok((e.action.clone(), node_spec(space, &e.to)?)))
                .collect::<Result<_, ModelError>>()?,
        },
        RawNode::Chance { id, edges } => NodeSpec::Chance {
            id: id.clone(),
            edges: edges
                .iter()
                .map(|e| Ok((event_set(space, &e.event)?, node_spec(space, &e.to)?)))
                .collect::<Result<_, ModelError>>()?,
        },
    })
}

fn build_capacity(
    space: &EventSpace,
    masses: Option<&[RawMass]>,
    envelope: Option<&[Vec<Exact>]>,
    table: Option<&BTreeMap<String, Exact>>,
    report: &mut ModelReport,
) -> Result<Option<Capacity>, ModelError> {
    let given = [masses.is_some(), envelope.is_some(), table.is_some()];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err(content(
            "capacity needs exactly one of \"masses\", \"envelope\" or \"table\"",
        ));
    }
    let mut invalid = |e: Error| {
        report.push("capacity", None, e.to_string());
        Ok(None)
    };
    if let Some(masses) = masses {
        let mut entries = Vec::with_capacity(masses.len());
        for m in masses {
            entries.push((event_set(space, &m.set)?, m.mass.0.clone()));
        }
        return match MassAssignment::new(space.clone(), entries) {
            Ok(m) => Ok(Some(Capacity::from_masses(m))),
            Err(e) => invalid(e),
        };
    }
    if let Some(rows) = envelope {
        let mut ps = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != space.len() {
                return Err(content(format!(
                    "envelope row has {} entries for {} events",
                    row.len(),
                    space.len()
                )));
            }
            match ProbabilityVector::new(space.clone(), rationals(row)) {
                Ok(p) => ps.push(p),
                Err(e) => return invalid(e),
            }
        }
        return match Capacity::from_envelope(ps) {
            Ok(c) => Ok(Some(c)),
            Err(e) => invalid(e),
        };
    }
    let table = table.expect("one representation is present");
    let mut values: Vec<Option<Rational>> = vec![None; 1usize << space.len()];
    for (key, v) in table {
        let set = table_key(space, key)?;
        let slot = &mut values[set.bits() as usize];
        if slot.is_some() {
            return Err(content(format!("table lists {} twice", space.describe(set))));
        }
        *slot = Some(v.0.clone());
    }
    let values: Vec<Rational> = values
        .into_iter()
        .enumerate()
        .map(|(bits, v)| {
            v.ok_or_else(|| {
                content(format!(
                    "table has no entry for {}",
                    space.describe(EventSet::from_bits(space.len(), bits as u32))
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let c = Capacity::from_table(space.clone(), values).map_err(|e| content(e.to_string()))?;
    let checked = validate_capacity(&c);
    if checked.is_valid() {
        Ok(Some(c))
    } else {
        for v in &checked.violations {
            report.push("capacity", None, v.describe(space));
        }
        Ok(None)
    }
}

fn build_criterion(space: &EventSpace, raw: &RawCriterion) -> Result<CriterionConfig, Error> {
    let kind = match raw.kind.as_str() {
        "ceu" => CriterionKind::Ceu,
        "seu" => CriterionKind::Seu,
        "linear" => CriterionKind::Linear,
        other => return Err(Error::InvalidConfig(format!("unknown criterion kind `{other}`"))),
    };
    let utility = match &raw.utility {
        None | Some(RawUtility::Identity) => Utility::identity(),
        Some(RawUtility::Affine { a, b }) => Utility::affine(a.0.clone(), b.0.clone())?,
        Some(RawUtility::Piecewise { points }) => {
            Utility::piecewise(points.iter().map(|(x, y)| (x.0.clone(), y.0.clone())).collect())?
        }
    };
    let probability = match &raw.probability {
        Some(p) => Some(ProbabilityVector::new(space.clone(), rationals(p))?),
        None => None,
    };
    let eps = raw.epsilon0.as_ref().map(|e| e.0.clone()).unwrap_or_default();
    CriterionConfig::new(kind, utility, probability, eps)
}

/// Parses a model and collects its semantic violations. Syntax errors,
/// unknown event names and malformed capacity layouts are returned as
/// errors; everything else lands in the report.
pub fn check_model(text: &str) -> Result<Checked, ModelError> {
    let raw: RawModel = serde_json::from_str(text)?;
    let space = EventSpace::new(&raw.events).map_err(|e| content(e.to_string()))?;
    let mut report = ModelReport::default();

    let capacity = match &raw.capacity {
        Some(c) => {
            if raw.masses.is_some() || raw.envelope.is_some() || raw.table.is_some() {
                return Err(content("capacity given both inline and under \"capacity\""));
            }
            if let Some(ev) = &c.events {
                if *ev != raw.events {
                    return Err(content("capacity events differ from the model events"));
                }
            }
            build_capacity(&space, c.masses.as_deref(), c.envelope.as_deref(), c.table.as_ref(), &mut report)?
        }
        None => build_capacity(
            &space,
            raw.masses.as_deref(),
            raw.envelope.as_deref(),
            raw.table.as_ref(),
            &mut report,
        )?,
    };

    let tree = match &raw.root {
        Some(root) => {
            let t = DecisionTree::new(space.clone(), node_spec(&space, root)?)
                .map_err(|e| content(e.to_string()))?;
            for v in &validate_tree(&t).violations {
                report.push(v.kind(), Some(v.node().to_string()), v.describe(&t));
            }
            Some(t)
        }
        None => None,
    };

    for e in &raw.pay_edges {
        let ok = match &tree {
            Some(t) => t.is_decision(&e.node) && t.edge_count(&e.node).is_ok_and(|n| e.edge < n),
            None => false,
        };
        if !ok {
            report.push(
                "pay-edge",
                Some(e.node.to_string()),
                format!("pay edge {e} is not an edge of a decision node"),
            );
        }
    }

    let criterion = match &raw.criterion {
        Some(c) => match build_criterion(&space, c) {
            Ok(c) => Some(c),
            Err(e) => {
                report.push("criterion", None, e.to_string());
                None
            }
        },
        None => None,
    };

    let model = capacity.map(|capacity| Model {
        space,
        capacity,
        tree,
        pay_edges: raw.pay_edges,
        criterion,
    });
    Ok(Checked { model, report })
}

/// Parses a model and rejects it unless it is free of violations.
pub fn load_model(text: &str) -> Result<Model, ModelError> {
    let checked = check_model(text)?;
    match checked.model {
        Some(m) if checked.report.is_valid() => Ok(m),
        _ => Err(ModelError::Invalid(checked.report)),
    }
}

fn set_names(space: &EventSpace, set: EventSet) -> Value {
    json!(space.names(set))
}

fn node_json(space: &EventSpace, spec: &NodeSpec) -> Value {
    match spec {
        NodeSpec::Leaf { gain } => json!({"kind": "leaf", "gain": format_rational(gain)}),
        NodeSpec::Decision { id, edges } => json!({
            "kind": "decision",
            "id": id,
            "edges": edges
                .iter()
                .map(|(a, c)| json!({"action": a, "to": node_json(space, c)}))
                .collect::<Vec<_>>(),
        }),
        NodeSpec::Chance { id, edges } => json!({
            "kind": "chance",
            "id": id,
            "edges": edges
                .iter()
                .map(|(e, c)| json!({"event": set_names(space, *e), "to": node_json(space, c)}))
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn capacity_json(c: &Capacity) -> Value {
    let space = c.space();
    if let Some(m) = c.masses() {
        let masses: Vec<Value> = m
            .entries()
            .iter()
            .map(|(s, v)| json!({"set": set_names(space, *s), "mass": format_rational(v)}))
            .collect();
        return json!({ "masses": masses });
    }
    if let Some(ps) = c.envelope() {
        let rows: Vec<Vec<String>> = ps
            .iter()
            .map(|p| p.weights().iter().map(format_rational).collect())
            .collect();
        return json!({ "envelope": rows });
    }
    let table: serde_json::Map<String, Value> = c
        .to_table()
        .iter()
        .enumerate()
        .map(|(bits, v)| (bits.to_string(), json!(format_rational(v))))
        .collect();
    json!({ "table": table })
}

fn utility_json(u: &Utility) -> Value {
    if let Some((a, b)) = u.affine_parts() {
        return json!({"kind": "affine", "a": format_rational(a), "b": format_rational(b)});
    }
    if let Some(points) = u.breakpoints() {
        let pts: Vec<[String; 2]> = points
            .iter()
            .map(|(x, y)| [format_rational(x), format_rational(y)])
            .collect();
        return json!({"kind": "piecewise", "points": pts});
    }
    json!({"kind": "identity"})
}

/// The model as a JSON value that [`check_model`] reads back to an equal
/// model.
pub fn model_json(m: &Model) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("events".into(), json!(m.space.labels()));
    out.insert("capacity".into(), capacity_json(&m.capacity));
    if let Some(t) = &m.tree {
        out.insert("root".into(), node_json(&m.space, &t.to_spec()));
    }
    if !m.pay_edges.is_empty() {
        out.insert("pay_edges".into(), json!(m.pay_edges));
    }
    if let Some(c) = &m.criterion {
        let mut crit = json!({
            "kind": c.kind.as_str(),
            "utility": utility_json(&c.utility),
            "epsilon0": format_rational(&c.epsilon0),
        });
        if let Some(p) = &c.probability {
            crit["probability"] = json!(p.weights().iter().map(format_rational).collect::<Vec<_>>());
        }
        out.insert("criterion".into(), crit);
    }
    Value::Object(out)
}

pub fn model_to_string(m: &Model) -> String {
    serde_json::to_string_pretty(&model_json(m)).expect("values serialize")
}

/// `{"choices": {node-id: edge-index}}`.
pub fn parse_strategy(text: &str) -> Result<Strategy, ModelError> {
    Ok(serde_json::from_str(text)?)
}

pub fn strategy_to_string(s: &Strategy) -> String {
    serde_json::to_string(s).expect("strategies serialize")
}

/// A JSON array of weight vectors, each a list of rationals per event.
/// Systems are used as given (no mixing) and numbered in file order.
pub fn parse_alphas(text: &str, space: &EventSpace) -> Result<Vec<AlphaSystem>, ModelError> {
    let rows: Vec<Vec<Exact>> = serde_json::from_str(text)?;
    if rows.is_empty() {
        return Err(content(Error::EmptyAlphas.to_string()));
    }
    rows.iter()
        .enumerate()
        .map(|(id, row)| {
            ProbabilityVector::new(space.clone(), rationals(row))
                .map(|p| AlphaSystem::new(id, p))
                .map_err(|e| content(format!("weight system {id}: {e}")))
        })
        .collect()
}
