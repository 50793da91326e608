use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use indexmap::IndexMap;

use super::ast::{BinOp, ComponentDef, Direction, Expr, Instance, Model};
use super::expr::{self, Scope, Typed};
use super::types::{self, TypeInfo, TypeTable};
use super::QrmlError;
use crate::pareto::{Configuration, ConfigurationSpace};
use crate::poset::{OrderKind, Poset, Value};
use crate::qrm::{
    apply_aggregation, apply_alternatives, AggregationSpec, AlternativesSpec, Branch,
    JointConstraint, Normalization,
};
use crate::qrm::{QrmError, QrmInterface};

/// Upper bound on the number of candidate assignments enumerated per configuration.
const MAX_CANDIDATES: usize = 1 << 20;

#[derive(Clone, Debug)]
struct Slot {
    name: String,
    part: usize,
    ty: TypeInfo,
    offset: usize,
    width: usize,
    spliced: bool,
    /// The only port of its part; the part value is the port value.
    single: bool,
}

/// Where each port lives in the six-part interface.
#[derive(Clone, Debug)]
struct Layout {
    slots: Vec<Slot>,
    posets: [Poset; 6],
}

impl Layout {
    fn slot(&self, name: &str) -> Option<&Slot> {
        self.slots.iter().find(|s| s.name == name)
    }

    fn port_value(&self, slot: &Slot, parts: &[Value]) -> Result<Value, QrmlError> {
        let part = &parts[slot.part];
        if slot.single {
            return Ok(part.clone());
        }
        match part {
            Value::Tuple(items) if slot.offset + slot.width <= items.len() => Ok(if slot.spliced {
                Value::Tuple(items[slot.offset..slot.offset + slot.width].to_vec())
            } else {
                items[slot.offset].clone()
            }),
            v @ (Value::Top | Value::Bot) => Ok(v.clone()),
            other => Err(QrmlError::Type(format!(
                "part value {other} does not hold port `{}`",
                slot.name
            ))),
        }
    }

    /// Assembles part values from port values given in slot order.
    fn parts(&self, ports: &[Value]) -> Result<[Value; 6], QrmlError> {
        let mut parts: [Vec<Value>; 6] = Default::default();
        let mut single: [Option<Value>; 6] = Default::default();
        for (slot, v) in self.slots.iter().zip(ports) {
            if slot.single {
                single[slot.part] = Some(v.clone());
            } else if slot.spliced {
                match v {
                    Value::Tuple(items) if items.len() == slot.width => {
                        parts[slot.part].extend(items.iter().cloned())
                    }
                    Value::Top | Value::Bot => {
                        parts[slot.part].extend(std::iter::repeat_n(v.clone(), slot.width))
                    }
                    other => {
                        return Err(QrmlError::Type(format!(
                            "{other} is not a value of port `{}`",
                            slot.name
                        )));
                    }
                }
            } else {
                parts[slot.part].push(v.clone());
            }
        }
        let out: [Value; 6] = std::array::from_fn(|i| match single[i].take() {
            Some(v) => v,
            None if parts[i].is_empty() => Value::Void,
            None => Value::Tuple(std::mem::take(&mut parts[i])),
        });
        for (v, p) in out.iter().zip(&self.posets) {
            p.check(v)
                .map_err(|e| QrmlError::Type(format!("{v} is not a value of {p}: {e}")))?;
        }
        Ok(out)
    }
}

fn layout(c: &ComponentDef, table: &TypeTable) -> Result<Layout, QrmlError> {
    let mut slots = Vec::with_capacity(c.ports.len());
    let mut posets: [Poset; 6] = std::array::from_fn(|_| Poset::void());
    for dir in Direction::ALL {
        let part = dir.part_index();
        let ports: Vec<_> = c.ports.iter().filter(|p| p.dir == dir).collect();
        let single = ports.len() == 1;
        let mut leaves = Vec::new();
        for p in ports {
            let ty = types::resolve(&p.ty, p.pos, table)?;
            let (spliced, width) = match &ty.poset.order {
                OrderKind::ElementWise(parts) if !single => (true, parts.len()),
                _ => (false, 1),
            };
            if single {
                posets[part] = ty.poset.clone();
            } else if spliced {
                for i in 0..width {
                    leaves.push(ty.poset.component(i)?);
                }
            } else {
                leaves.push(ty.poset.clone());
            }
            slots.push(Slot {
                name: p.name.clone(),
                part,
                ty,
                offset: leaves.len().saturating_sub(width),
                width,
                spliced,
                single,
            });
        }
        if !leaves.is_empty() {
            posets[part] = Poset::product(&leaves);
        }
    }
    Ok(Layout { slots, posets })
}

/// A pinned candidate source for one port.
#[derive(Clone, Debug)]
enum Pin {
    Eq(Expr),
    In(Vec<Expr>),
}

#[derive(Debug)]
struct Compiled {
    def: ComponentDef,
    layout: Arc<Layout>,
    /// Inline port constraints, `from` clauses as equalities, and `constraint` declarations.
    constraints: Vec<Expr>,
}

fn mentions_any(e: &Expr, names: &HashSet<&str>) -> bool {
    expr::paths(e).iter().any(|p| names.contains(p[0].as_str()))
}

/// The first pin for every port, or the name of a port that has none.
fn pins(layout: &Layout, constraints: &[Expr]) -> Result<Vec<Pin>, String> {
    let own: HashSet<&str> = layout.slots.iter().map(|s| s.name.as_str()).collect();
    let is_port = |e: &Expr, name: &str| matches!(e, Expr::Path(p) if p.len() == 1 && p[0] == name);
    layout
        .slots
        .iter()
        .map(|s| {
            constraints
                .iter()
                .flat_map(|c| c.conjuncts())
                .find_map(|c| match c {
                    Expr::Bin(BinOp::Eq, a, b) if is_port(a, &s.name) && !mentions_any(b, &own) => {
                        Some(Pin::Eq((**b).clone()))
                    }
                    Expr::Bin(BinOp::Eq, a, b) if is_port(b, &s.name) && !mentions_any(a, &own) => {
                        Some(Pin::Eq((**a).clone()))
                    }
                    Expr::In(x, set)
                        if is_port(x, &s.name) && !set.iter().any(|e| mentions_any(e, &own)) =>
                    {
                        Some(Pin::In(set.clone()))
                    }
                    _ => None,
                })
                .ok_or_else(|| s.name.clone())
        })
        .collect()
}

/// Names visible while evaluating a component's constraints.
struct CompScope<'a> {
    own: Option<(&'a Layout, &'a [Value])>,
    subs: &'a [(String, Arc<Layout>)],
    sub_values: &'a [Value],
}

impl Scope for CompScope<'_> {
    fn lookup(&self, path: &[String]) -> Result<Option<(Typed, usize)>, QrmlError> {
        if let Some((layout, ports)) = self.own {
            if let Some(i) = layout.slots.iter().position(|s| s.name == path[0]) {
                let ty = Some(layout.slots[i].ty.clone());
                return Ok(Some((
                    Typed {
                        value: ports[i].clone(),
                        ty,
                    },
                    1,
                )));
            }
        }
        let Some(k) = self.subs.iter().position(|(n, _)| *n == path[0]) else {
            return Ok(None);
        };
        let Some(port) = path.get(1) else {
            return Err(QrmlError::Type(format!(
                "instance `{}` is not a value",
                path[0]
            )));
        };
        let layout = &self.subs[k].1;
        let Some(slot) = layout.slot(port) else {
            return Ok(None);
        };
        let value = layout.port_value(slot, &self.sub_values[6 * k..6 * k + 6])?;
        Ok(Some((
            Typed {
                value,
                ty: Some(slot.ty.clone()),
            },
            2,
        )))
    }
}

/// Own-port assignments consistent with the constraints, for fixed subcomponent values.
fn solve(
    layout: &Layout,
    subs: &[(String, Arc<Layout>)],
    sub_values: &[Value],
    pins: &[Pin],
    constraints: &[Expr],
) -> Result<Vec<[Value; 6]>, QrmlError> {
    let scope = CompScope {
        own: None,
        subs,
        sub_values,
    };
    let mut candidates: Vec<Vec<Value>> = Vec::with_capacity(pins.len());
    let mut total: usize = 1;
    for pin in pins {
        let mut vs = Vec::new();
        let exprs = match pin {
            Pin::Eq(e) => std::slice::from_ref(e),
            Pin::In(set) => set.as_slice(),
        };
        for e in exprs {
            let v = expr::eval_value(e, &scope)?.value;
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        total = total.saturating_mul(vs.len());
        candidates.push(vs);
    }
    if total > MAX_CANDIDATES {
        return Err(QrmlError::Unsupported(format!(
            "{total} candidate assignments exceed the enumeration limit"
        )));
    }
    let mut out = Vec::new();
    if total == 0 {
        return Ok(out);
    }
    let mut idx = vec![0usize; candidates.len()];
    loop {
        let ports: Vec<Value> = idx
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| c[i].clone())
            .collect();
        let full = CompScope {
            own: Some((layout, &ports)),
            subs,
            sub_values,
        };
        let mut ok = true;
        for c in constraints {
            if !expr::eval_bool(c, &full)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(layout.parts(&ports)?);
        }
        // odometer
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The constraint `D` of a QRML aggregation or alternative branch.
#[derive(Debug)]
struct QrmlJoint {
    layout: Arc<Layout>,
    subs: Vec<(String, Arc<Layout>)>,
    pins: Vec<Pin>,
    constraints: Vec<Expr>,
}

impl JointConstraint for QrmlJoint {
    fn target(&self) -> [Poset; 6] {
        self.layout.posets.clone()
    }

    fn solutions(
        &self,
        _: &ConfigurationSpace,
        c: &Configuration,
    ) -> Result<Vec<[Value; 6]>, QrmError> {
        solve(
            &self.layout,
            &self.subs,
            c.values(),
            &self.pins,
            &self.constraints,
        )
        .map_err(|e| match e {
            QrmlError::Qrm(q) => q,
            QrmlError::Poset(p) => QrmError::Poset(p),
            QrmlError::Pareto(p) => QrmError::Pareto(p),
            other => QrmError::ConstraintType(other.to_string()),
        })
    }
}

/// Elaborated types and components; component interfaces are computed on demand and cached.
#[derive(Debug)]
pub struct ElaboratedModel {
    types: TypeTable,
    components: IndexMap<String, Compiled>,
    cache: Mutex<HashMap<String, QrmInterface>>,
}

impl ElaboratedModel {
    pub fn new(model: &Model) -> Result<ElaboratedModel, QrmlError> {
        let types = types::elaborate_types(&model.types)?;
        let mut components = IndexMap::new();
        for c in &model.components {
            let mut names = HashSet::new();
            for n in c.ports.iter().map(|p| &p.name).chain(
                c.contains
                    .iter()
                    .flat_map(|k| k.alternatives.iter().map(|i| &i.name)),
            ) {
                if !names.insert(n.as_str()) {
                    return Err(QrmlError::DuplicateName {
                        kind: "port or instance",
                        name: n.clone(),
                    });
                }
            }
            let mut constraints = Vec::new();
            for p in &c.ports {
                constraints.extend(p.inline.iter().cloned());
                if let Some(f) = &p.from {
                    constraints.push(Expr::bin(
                        BinOp::Eq,
                        Expr::Path(vec![p.name.clone()]),
                        f.clone(),
                    ));
                }
            }
            constraints.extend(c.constraints.iter().map(|d| d.expr.clone()));
            let compiled = Compiled {
                layout: Arc::new(layout(c, &types)?),
                def: c.clone(),
                constraints,
            };
            if components.insert(c.name.clone(), compiled).is_some() {
                return Err(QrmlError::DuplicateName {
                    kind: "component",
                    name: c.name.clone(),
                });
            }
        }
        for c in components.values() {
            for inst in c.def.contains.iter().flat_map(|k| &k.alternatives) {
                if !components.contains_key(&inst.component) {
                    return Err(QrmlError::UnknownComponent(inst.component.clone()));
                }
            }
        }
        Ok(ElaboratedModel {
            types,
            components,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn type_info(&self, name: &str) -> Option<&TypeInfo> {
        self.types.get(name)
    }

    pub fn type_names(&self) -> impl Iterator<Item = &str> {
        self.types.keys().map(String::as_str)
    }

    pub fn component_names(&self) -> impl Iterator<Item = &str> {
        self.components.keys().map(String::as_str)
    }

    /// The six part posets of a component's configuration space.
    pub fn component_space(&self, name: &str) -> Result<[Poset; 6], QrmlError> {
        Ok(self.compiled(name)?.layout.posets.clone())
    }

    /// The Pareto-minimal configuration set of component `name`.
    pub fn evaluate(&self, name: &str) -> Result<QrmInterface, QrmlError> {
        self.evaluate_in(name, &mut Vec::new())
    }

    fn compiled(&self, name: &str) -> Result<&Compiled, QrmlError> {
        self.components
            .get(name)
            .ok_or_else(|| QrmlError::UnknownComponent(name.to_string()))
    }

    fn evaluate_in(&self, name: &str, stack: &mut Vec<String>) -> Result<QrmInterface, QrmlError> {
        if let Some(i) = self.lock().get(name) {
            return Ok(i.clone());
        }
        if let Some(at) = stack.iter().position(|s| s == name) {
            let mut cycle = stack[at..].to_vec();
            cycle.push(name.to_string());
            return Err(QrmlError::Cycle(cycle));
        }
        let c = self.compiled(name)?;
        stack.push(name.to_string());
        let result = self.compute(c, stack);
        stack.pop();
        let result = result?;
        if result.is_empty() {
            log::warn!("component `{name}` has no configurations");
        }
        self.lock().insert(name.to_string(), result.clone());
        Ok(result)
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<String, QrmInterface>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn unbounded(c: &Compiled, port: String) -> QrmlError {
        QrmlError::UnboundedDomain {
            component: c.def.name.clone(),
            port,
        }
    }

    fn joint(
        &self,
        c: &Compiled,
        insts: &[&Instance],
        constraints: Vec<Expr>,
    ) -> Result<QrmlJoint, QrmlError> {
        let pins = pins(&c.layout, &constraints).map_err(|p| Self::unbounded(c, p))?;
        let subs = insts
            .iter()
            .map(|i| Ok((i.name.clone(), self.compiled(&i.component)?.layout.clone())))
            .collect::<Result<Vec<_>, QrmlError>>()?;
        Ok(QrmlJoint {
            layout: c.layout.clone(),
            subs,
            pins,
            constraints,
        })
    }

    fn compute(&self, c: &Compiled, stack: &mut Vec<String>) -> Result<QrmInterface, QrmlError> {
        let contains = &c.def.contains;
        if contains.is_empty() {
            let pins = pins(&c.layout, &c.constraints).map_err(|p| Self::unbounded(c, p))?;
            let rows = solve(&c.layout, &[], &[], &pins, &c.constraints)?;
            return Ok(QrmInterface::from_rows(c.layout.posets.clone(), rows)?.minimized()?);
        }
        let choice = contains.iter().any(|k| k.alternatives.len() > 1);
        if choice && contains.len() > 1 {
            return Err(QrmlError::Unsupported(format!(
                "component `{}` mixes a choice with other subcomponents",
                c.def.name
            )));
        }
        if choice {
            let alts = &contains[0].alternatives;
            let mut branches = Vec::with_capacity(alts.len());
            for inst in alts {
                let others: HashSet<&str> = alts
                    .iter()
                    .filter(|a| a.name != inst.name)
                    .map(|a| a.name.as_str())
                    .collect();
                let constraints = c
                    .constraints
                    .iter()
                    .filter(|e| !mentions_any(e, &others))
                    .cloned()
                    .collect();
                let joint = self.joint(c, &[inst], constraints)?;
                let sub = self.evaluate_in(&inst.component, stack)?;
                branches.push(Branch::new(sub, Normalization::joint(joint)));
            }
            let mut spec = AlternativesSpec::new(branches);
            spec.target = Some(c.layout.posets.clone());
            return Ok(apply_alternatives(&spec)?);
        }
        let insts: Vec<&Instance> = contains.iter().map(|k| &k.alternatives[0]).collect();
        let joint = self.joint(c, &insts, c.constraints.clone())?;
        let subs = insts
            .iter()
            .map(|i| self.evaluate_in(&i.component, stack))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(apply_aggregation(&AggregationSpec::new(
            subs,
            Normalization::joint(joint),
        ))?)
    }
}
