//! JSON encodings of values, orders, configuration sets, scenarios and solver results.
//!
//! Values: integers are numbers, `"top"`/`"bot"` are the extremes, `null` is
//! the void value, other strings are enumeration values and arrays are tuples.
//! Output is canonical: object keys are sorted and configurations are emitted
//! in sorted order.

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use crate::pareto::{Configuration, ConfigurationSet, ConfigurationSpace, ParetoError};
use crate::poset::{Domain, OrderKind, Poset, PosetDescriptor, Value};
use crate::solver::{CostSpec, Mapping, PlatformBudget, Scenario, SolverResult, Symmetry};
use crate::video::{Resolution, StreamRequest, VideoFormat};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error(transparent)]
    Pareto(#[from] ParetoError),
}

fn schema(path: &str, msg: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.to_string(),
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<Json, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))
}

/// Pretty-printed with a trailing newline.
pub fn render(j: &Json) -> String {
    let mut s = serde_json::to_string_pretty(j).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Int(i) => json!(i),
        Value::Bot => json!("bot"),
        Value::Top => json!("top"),
        Value::Void => Json::Null,
        Value::Enum(s) => json!(s),
        Value::Tuple(items) => Json::Array(items.iter().map(value_to_json).collect()),
    }
}

pub fn value_from_json(j: &Json, path: &str) -> Result<Value, JsonError> {
    match j {
        Json::Null => Ok(Value::Void),
        Json::Number(n) => n
            .as_i64()
            .map(Value::Int)
            .ok_or_else(|| schema(path, format!("{n} is not a 64-bit integer"))),
        Json::String(s) => Ok(match s.as_str() {
            "top" => Value::Top,
            "bot" => Value::Bot,
            _ => Value::Enum(s.clone()),
        }),
        Json::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| value_from_json(x, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>, _>>()
            .map(Value::Tuple),
        Json::Bool(_) | Json::Object(_) => {
            Err(schema(path, "expected a number, string, null or array"))
        }
    }
}

pub fn order_to_json(o: &OrderKind) -> Json {
    match o {
        OrderKind::NumLe => json!({"kind": "le"}),
        OrderKind::NumGe => json!({"kind": "ge"}),
        OrderKind::EqOnly => json!({"kind": "eq"}),
        OrderKind::ElementWise(parts) => {
            json!({"kind": "elementwise", "parts": parts.iter().map(order_to_json).collect::<Vec<_>>()})
        }
        OrderKind::Custom(c) => json!({"kind": "custom", "name": c.name()}),
    }
}

fn field<'a>(obj: &'a Map<String, Json>, key: &str, path: &str) -> Result<&'a Json, JsonError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

fn object<'a>(j: &'a Json, path: &str) -> Result<&'a Map<String, Json>, JsonError> {
    j.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn array<'a>(j: &'a Json, path: &str) -> Result<&'a Vec<Json>, JsonError> {
    j.as_array()
        .ok_or_else(|| schema(path, "expected an array"))
}

fn kind<'a>(obj: &'a Map<String, Json>, path: &str) -> Result<&'a str, JsonError> {
    field(obj, "kind", path)?
        .as_str()
        .ok_or_else(|| schema(path, "\"kind\" must be a string"))
}

pub fn order_from_json(j: &Json, path: &str) -> Result<OrderKind, JsonError> {
    let obj = object(j, path)?;
    match kind(obj, path)? {
        "le" => Ok(OrderKind::NumLe),
        "ge" => Ok(OrderKind::NumGe),
        "eq" => Ok(OrderKind::EqOnly),
        "elementwise" => {
            let parts = array(field(obj, "parts", path)?, path)?;
            parts
                .iter()
                .enumerate()
                .map(|(i, p)| order_from_json(p, &format!("{path}.parts[{i}]")))
                .collect::<Result<Vec<_>, _>>()
                .map(OrderKind::ElementWise)
        }
        "custom" => Err(schema(path, "custom orders cannot be read from JSON")),
        other => Err(schema(path, format!("unknown order kind {other:?}"))),
    }
}

fn domain_to_json(d: &Domain) -> Option<Json> {
    match d {
        Domain::Unnamed | Domain::Void => None,
        Domain::Named(n) => Some(json!(n)),
        Domain::Product(parts) => Some(Json::Array(
            parts
                .iter()
                .map(|p| domain_to_json(p).unwrap_or(Json::Null))
                .collect(),
        )),
        Domain::Component(d, i) => {
            Some(json!({"of": domain_to_json(d).unwrap_or(Json::Null), "index": i}))
        }
    }
}

fn domain_from_json(j: &Json, path: &str) -> Result<Domain, JsonError> {
    match j {
        Json::Null => Ok(Domain::Unnamed),
        Json::String(s) => Ok(Domain::Named(s.clone())),
        Json::Array(parts) => parts
            .iter()
            .enumerate()
            .map(|(i, p)| domain_from_json(p, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>, _>>()
            .map(Domain::Product),
        Json::Object(obj) => {
            let of = domain_from_json(field(obj, "of", path)?, path)?;
            let index = field(obj, "index", path)?
                .as_u64()
                .ok_or_else(|| schema(path, "\"index\" must be a non-negative integer"))?;
            Ok(Domain::Component(Box::new(of), index as usize))
        }
        _ => Err(schema(path, "expected a domain name, list or component")),
    }
}

/// `{"kind": …, "parts"?: …, "domain"?: …}`; the void poset is `{"kind": "void"}`.
pub fn poset_to_json(p: &Poset) -> Json {
    if p.is_void() {
        return json!({"kind": "void"});
    }
    let mut j = order_to_json(&p.order);
    if let (Some(d), Some(obj)) = (domain_to_json(&p.domain), j.as_object_mut()) {
        obj.insert("domain".into(), d);
    }
    j
}

pub fn poset_from_json(j: &Json, path: &str) -> Result<Poset, JsonError> {
    let obj = object(j, path)?;
    if kind(obj, path)? == "void" {
        return Ok(Poset::void());
    }
    let order = order_from_json(j, path)?;
    let domain = match obj.get("domain") {
        Some(d) => domain_from_json(d, &format!("{path}.domain"))?,
        None => Domain::Unnamed,
    };
    Ok(Poset::new(domain, order))
}

pub fn set_to_json(set: &ConfigurationSet) -> Json {
    let space: Vec<Json> = set
        .space()
        .dims()
        .iter()
        .map(|d| json!({"name": d.name, "order": poset_to_json(&d.poset)}))
        .collect();
    let configs: Vec<Json> = set
        .sorted()
        .iter()
        .map(|c| Json::Array(c.values().iter().map(value_to_json).collect()))
        .collect();
    json!({"space": space, "configs": configs})
}

pub fn set_from_json(j: &Json) -> Result<ConfigurationSet, JsonError> {
    let obj = object(j, "$")?;
    let dims = array(field(obj, "space", "$")?, "$.space")?
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let path = format!("$.space[{i}]");
            let o = object(d, &path)?;
            let name = field(o, "name", &path)?
                .as_str()
                .ok_or_else(|| schema(&path, "\"name\" must be a string"))?;
            let poset = poset_from_json(field(o, "order", &path)?, &format!("{path}.order"))?;
            Ok(PosetDescriptor::new(name, poset))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let space = ConfigurationSpace::new(dims)?;
    let mut set = ConfigurationSet::empty(space);
    for (i, c) in array(field(obj, "configs", "$")?, "$.configs")?
        .iter()
        .enumerate()
    {
        let path = format!("$.configs[{i}]");
        let values = array(c, &path)?
            .iter()
            .enumerate()
            .map(|(k, v)| value_from_json(v, &format!("{path}[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        set.insert(Configuration(values))
            .map_err(|e| schema(&path, e.to_string()))?;
    }
    Ok(set)
}

fn int(j: &Json, path: &str) -> Result<i64, JsonError> {
    j.as_i64()
        .ok_or_else(|| schema(path, "expected an integer"))
}

fn stream_from_json(j: &Json, path: &str) -> Result<StreamRequest, JsonError> {
    let obj = object(j, path)?;
    let input = object(field(obj, "input", path)?, &format!("{path}.input"))?;
    let res_name = field(input, "res", path)?
        .as_str()
        .ok_or_else(|| schema(path, "\"res\" must be a string"))?;
    let res: Resolution = res_name
        .parse()
        .map_err(|e: crate::video::VideoError| schema(path, e.to_string()))?;
    let rate = int(field(input, "rate", path)?, &format!("{path}.input.rate"))?;
    let format = VideoFormat::new(res, rate).map_err(|e| schema(path, e.to_string()))?;
    let out_name = field(obj, "output_res", path)?
        .as_str()
        .ok_or_else(|| schema(path, "\"output_res\" must be a string"))?;
    let out: Resolution = out_name
        .parse()
        .map_err(|e: crate::video::VideoError| schema(path, e.to_string()))?;
    StreamRequest::new(format, out).map_err(|e| schema(path, e.to_string()))
}

fn cost_from_json(j: &Json, path: &str) -> Result<CostSpec, JsonError> {
    let obj = object(j, path)?;
    match kind(obj, path)? {
        "max-min-rate" => Ok(CostSpec::MaxMinRate),
        "weighted-min" => {
            let w = array(field(obj, "weights", path)?, path)?
                .iter()
                .enumerate()
                .map(|(i, x)| int(x, &format!("{path}.weights[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CostSpec::WeightedMin(w))
        }
        other => Err(schema(path, format!("unknown cost kind {other:?}"))),
    }
}

fn flag(obj: &Map<String, Json>, key: &str, path: &str) -> Result<bool, JsonError> {
    match obj.get(key) {
        None => Ok(true),
        Some(b) => b
            .as_bool()
            .ok_or_else(|| schema(path, format!("{key:?} must be a boolean"))),
    }
}

/// Reads a scenario; `cost` defaults to max-min-rate, symmetries and budgets to their defaults.
pub fn scenario_from_json(j: &Json) -> Result<Scenario, JsonError> {
    let obj = object(j, "$")?;
    let platforms = field(obj, "platforms", "$")?
        .as_u64()
        .ok_or_else(|| schema("$.platforms", "expected a non-negative integer"))?
        as usize;
    let streams = array(field(obj, "streams", "$")?, "$.streams")?
        .iter()
        .enumerate()
        .map(|(i, s)| stream_from_json(s, &format!("$.streams[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut scenario = Scenario::new(platforms, streams);
    if let Some(c) = obj.get("cost") {
        scenario.cost = cost_from_json(c, "$.cost")?;
    }
    if let Some(s) = obj.get("symmetry") {
        let s = object(s, "$.symmetry")?;
        scenario.symmetry = Symmetry {
            platform: flag(s, "platform", "$.symmetry")?,
            stream: flag(s, "stream", "$.symmetry")?,
        };
    }
    if let Some(b) = obj.get("budget") {
        let b = object(b, "$.budget")?;
        let mut budget = PlatformBudget::default();
        if let Some(f) = b.get("fiber") {
            budget.fiber_gbps = int(f, "$.budget.fiber")?;
        }
        if let Some(s) = b.get("scaler") {
            match array(s, "$.budget.scaler")?.as_slice() {
                [a, c, m] => {
                    budget.scaler = (
                        int(a, "$.budget.scaler")?,
                        int(c, "$.budget.scaler")?,
                        int(m, "$.budget.scaler")?,
                    )
                }
                _ => return Err(schema("$.budget.scaler", "expected [streams, comp, segs]")),
            }
        }
        scenario.budget = budget;
    }
    Ok(scenario)
}

pub fn scenario_to_json(s: &Scenario) -> Json {
    let streams: Vec<Json> = s
        .streams
        .iter()
        .map(|r| json!({"input": {"res": r.input.res.name(), "rate": r.input.rate}, "output_res": r.output_res.name()}))
        .collect();
    let cost = match &s.cost {
        CostSpec::MaxMinRate => json!({"kind": "max-min-rate"}),
        CostSpec::WeightedMin(w) => json!({"kind": "weighted-min", "weights": w}),
        CostSpec::Custom { name, .. } => json!({"kind": "custom", "name": name}),
    };
    let (a, c, m) = s.budget.scaler;
    json!({
        "platforms": s.platforms,
        "streams": streams,
        "cost": cost,
        "symmetry": {"platform": s.symmetry.platform, "stream": s.symmetry.stream},
        "budget": {"fiber": s.budget.fiber_gbps, "scaler": [a, c, m]},
    })
}

fn config_json(c: &Configuration) -> Json {
    Json::Array(c.values().iter().map(value_to_json).collect())
}

fn mapping_json(m: &Mapping) -> Json {
    json!(m.0)
}

/// `{"frontier", "chosen", "mapping"}` plus `"stats"` when requested.
pub fn result_to_json(r: &SolverResult, stats: bool) -> Json {
    let mut obj = Map::new();
    obj.insert(
        "frontier".into(),
        Json::Array(r.frontier.sorted().iter().map(config_json).collect()),
    );
    obj.insert("chosen".into(), config_json(&r.chosen));
    obj.insert("mapping".into(), mapping_json(&r.chosen_mapping));
    if stats {
        let raw = u64::try_from(r.stats.mappings_enumerated)
            .map(|x| json!(x))
            .unwrap_or_else(|_| json!(r.stats.mappings_enumerated.to_string()));
        obj.insert(
            "stats".into(),
            json!({
                "mappings_enumerated": raw,
                "mappings_after_symmetry": r.stats.mappings_after_symmetry,
                "wall_time_ms": r.stats.wall_time.as_secs_f64() * 1000.0,
            }),
        );
    }
    Json::Object(obj)
}
