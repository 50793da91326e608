use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;

use super::ast::{Expr, Lambda, OrderClause, Pattern, Pos, TypeDef, TypeExpr};
use super::expr::{self, Scope, Typed};
use super::QrmlError;
use crate::poset::{CustomOrder, Domain, OrderKind, Poset, PosetError, Value};

/// An elaborated QRML type: its poset plus the named parts of a combination.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeInfo {
    pub poset: Poset,
    /// Empty for scalar types.
    pub parts: Vec<(String, TypeInfo)>,
}

impl TypeInfo {
    pub fn scalar(poset: Poset) -> TypeInfo {
        TypeInfo {
            poset,
            parts: Vec::new(),
        }
    }

    pub fn part(&self, name: &str) -> Option<(usize, &TypeInfo)> {
        self.parts
            .iter()
            .enumerate()
            .find(|(_, (n, _))| n == name)
            .map(|(i, (_, t))| (i, t))
    }

    pub fn is_combination(&self) -> bool {
        !self.parts.is_empty()
    }
}

pub(crate) type TypeTable = IndexMap<String, TypeInfo>;

/// Elaborates type definitions; forward references are allowed, cycles are not.
pub(crate) fn elaborate_types(defs: &[TypeDef]) -> Result<TypeTable, QrmlError> {
    let mut by_name: HashMap<&str, &TypeDef> = HashMap::new();
    for d in defs {
        if d.name == "int" || by_name.insert(&d.name, d).is_some() {
            return Err(QrmlError::DuplicateName {
                kind: "type",
                name: d.name.clone(),
            });
        }
    }
    let mut done = TypeTable::new();
    for d in defs {
        let mut visiting = Vec::new();
        define(d, &by_name, &mut done, &mut visiting)?;
    }
    // keep declaration order
    let mut out = TypeTable::new();
    for d in defs {
        out.insert(d.name.clone(), done[&d.name].clone());
    }
    Ok(out)
}

fn define<'a>(
    d: &'a TypeDef,
    by_name: &HashMap<&str, &'a TypeDef>,
    done: &mut TypeTable,
    visiting: &mut Vec<&'a str>,
) -> Result<TypeInfo, QrmlError> {
    if let Some(t) = done.get(&d.name) {
        return Ok(t.clone());
    }
    if visiting.contains(&d.name.as_str()) {
        return Err(QrmlError::UnresolvedType {
            name: format!("{} (cyclic definition)", d.name),
            pos: d.pos,
        });
    }
    visiting.push(&d.name);
    let body = {
        let mut lookup = |n: &str| -> Result<Option<TypeInfo>, QrmlError> {
            match by_name.get(n) {
                Some(dep) => define(dep, by_name, done, visiting).map(Some),
                None => Ok(None),
            }
        };
        resolve_with(&d.body, d.pos, &mut lookup)?
    };
    visiting.pop();
    let info = order_type(d, body)?;
    done.insert(d.name.clone(), info.clone());
    Ok(info)
}

/// Applies the definition's name and order clause to its resolved body.
fn order_type(d: &TypeDef, body: TypeInfo) -> Result<TypeInfo, QrmlError> {
    let domain = Domain::named(d.name.clone());
    let ill = |msg: &str| QrmlError::IllFormedOrder {
        name: d.name.clone(),
        msg: msg.to_string(),
        pos: d.pos,
    };
    let order = match &d.order {
        OrderClause::Default => body.poset.order.clone(),
        OrderClause::ElementWise => {
            if !body.is_combination() {
                return Err(ill("element-wise order on a scalar type"));
            }
            OrderKind::element_wise(body.parts.iter().map(|(_, t)| t.poset.order.clone()))
        }
        OrderClause::OrderedBy(lambda) => {
            check_lambda(lambda, &body).map_err(|m| ill(&m))?;
            let arity = body.is_combination().then_some(body.parts.len());
            OrderKind::Custom(compile_order(&d.name, arity, lambda.clone(), body.clone()))
        }
    };
    Ok(TypeInfo {
        poset: Poset::new(domain, order),
        parts: body.parts,
    })
}

/// Resolves a type expression against already elaborated types (port declarations).
pub(crate) fn resolve(ty: &TypeExpr, pos: Pos, table: &TypeTable) -> Result<TypeInfo, QrmlError> {
    resolve_with(ty, pos, &mut |n| Ok(table.get(n).cloned()))
}

fn resolve_with(
    ty: &TypeExpr,
    pos: Pos,
    lookup: &mut dyn FnMut(&str) -> Result<Option<TypeInfo>, QrmlError>,
) -> Result<TypeInfo, QrmlError> {
    match ty {
        TypeExpr::Int => Ok(TypeInfo::scalar(Poset::anonymous(OrderKind::NumLe))),
        TypeExpr::Named(n) => lookup(n)?.ok_or_else(|| QrmlError::UnresolvedType {
            name: n.clone(),
            pos,
        }),
        TypeExpr::Combination(parts) => {
            let mut seen = HashSet::new();
            let mut out = Vec::with_capacity(parts.len());
            for (n, t) in parts {
                if !seen.insert(n.as_str()) {
                    return Err(QrmlError::DuplicateName {
                        kind: "part",
                        name: n.clone(),
                    });
                }
                out.push((n.clone(), resolve_with(t, pos, lookup)?));
            }
            let poset = Poset::product(out.iter().map(|(_, t)| &t.poset));
            Ok(TypeInfo { poset, parts: out })
        }
    }
}

fn pattern_vars<'a>(p: &'a Pattern, out: &mut Vec<&'a str>) {
    match p {
        Pattern::Var(v) => out.push(v),
        Pattern::Tuple(items) => items.iter().for_each(|i| pattern_vars(i, out)),
    }
}

fn check_pattern(p: &Pattern, ty: &TypeInfo) -> Result<(), String> {
    match p {
        Pattern::Var(_) => Ok(()),
        Pattern::Tuple(items) if items.len() == ty.parts.len() => items
            .iter()
            .zip(&ty.parts)
            .try_for_each(|(i, (_, t))| check_pattern(i, t)),
        Pattern::Tuple(items) => Err(format!(
            "pattern binds {} parts, the type has {}",
            items.len(),
            ty.parts.len()
        )),
    }
}

fn is_condition(e: &Expr) -> bool {
    use super::ast::BinOp;
    match e {
        Expr::Bin(BinOp::And, a, b) => is_condition(a) && is_condition(b),
        Expr::Bin(BinOp::Eq | BinOp::Le | BinOp::Ge, ..) | Expr::In(..) => true,
        _ => false,
    }
}

fn check_lambda(l: &Lambda, ty: &TypeInfo) -> Result<(), String> {
    check_pattern(&l.left, ty)?;
    check_pattern(&l.right, ty)?;
    let (mut left, mut right) = (Vec::new(), Vec::new());
    pattern_vars(&l.left, &mut left);
    pattern_vars(&l.right, &mut right);
    let mut seen = HashSet::new();
    for v in left.iter().chain(&right) {
        if !seen.insert(*v) {
            return Err(format!("variable `{v}` is bound twice"));
        }
    }
    if !is_condition(&l.body) {
        return Err("the body is not a condition".into());
    }
    let used: Vec<&str> = expr::paths(&l.body)
        .into_iter()
        .map(|p| p[0].as_str())
        .collect();
    if let Some(u) = used.iter().find(|u| !seen.contains(*u)) {
        return Err(format!("`{u}` is not bound by the patterns"));
    }
    if !used.iter().any(|u| left.contains(u)) || !used.iter().any(|u| right.contains(u)) {
        return Err("the body must refer to both operands".into());
    }
    Ok(())
}

struct Bindings(HashMap<String, Typed>);

impl Scope for Bindings {
    fn lookup(&self, path: &[String]) -> Result<Option<(Typed, usize)>, QrmlError> {
        Ok(self.0.get(&path[0]).map(|t| (t.clone(), 1)))
    }
}

fn bind(
    p: &Pattern,
    v: &Value,
    ty: &TypeInfo,
    out: &mut HashMap<String, Typed>,
) -> Result<(), PosetError> {
    match p {
        Pattern::Var(n) => {
            out.insert(
                n.clone(),
                Typed {
                    value: v.clone(),
                    ty: Some(ty.clone()),
                },
            );
            Ok(())
        }
        Pattern::Tuple(items) => match v {
            Value::Tuple(vs) if vs.len() == items.len() => items
                .iter()
                .zip(vs)
                .zip(&ty.parts)
                .try_for_each(|((p, v), (_, t))| bind(p, v, t, out)),
            // a whole-tuple extreme binds every part to that extreme
            Value::Top | Value::Bot => items
                .iter()
                .zip(&ty.parts)
                .try_for_each(|(p, (_, t))| bind(p, v, t, out)),
            Value::Tuple(vs) => Err(PosetError::ShapeMismatch {
                expected: items.len(),
                found: vs.len(),
            }),
            other => Err(PosetError::Undefined(format!("cannot destructure {other}"))),
        },
    }
}

fn compile_order(name: &str, arity: Option<usize>, lambda: Lambda, shape: TypeInfo) -> CustomOrder {
    CustomOrder::new(name.to_string(), arity, move |a, b| {
        let mut env = HashMap::new();
        bind(&lambda.left, a, &shape, &mut env)?;
        bind(&lambda.right, b, &shape, &mut env)?;
        expr::eval_bool(&lambda.body, &Bindings(env))
            .map_err(|e| PosetError::Undefined(e.to_string()))
    })
}
