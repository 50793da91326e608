use super::ast::{BinOp, Expr};
use super::types::TypeInfo;
use super::QrmlError;
use crate::poset::{ExtInt, Poset, Value};

/// A value together with its QRML type, when known.
#[derive(Clone, Debug, PartialEq)]
pub struct Typed {
    pub value: Value,
    pub ty: Option<TypeInfo>,
}

impl Typed {
    pub fn untyped(value: Value) -> Typed {
        Typed { value, ty: None }
    }

    pub fn poset(&self) -> Option<&Poset> {
        self.ty.as_ref().map(|t| &t.poset)
    }
}

/// Name resolution for expression evaluation.
pub trait Scope {
    /// Resolves the longest known prefix of `path`; returns the value and the number of segments used.
    fn lookup(&self, path: &[String]) -> Result<Option<(Typed, usize)>, QrmlError>;
}

enum Eval {
    Val(Typed),
    Bool(bool),
}

fn type_err<T>(msg: impl Into<String>) -> Result<T, QrmlError> {
    Err(QrmlError::Type(msg.into()))
}

pub fn eval_value(e: &Expr, scope: &dyn Scope) -> Result<Typed, QrmlError> {
    match eval(e, scope)? {
        Eval::Val(v) => Ok(v),
        Eval::Bool(_) => type_err(format!("expected a value, found the condition `{e}`")),
    }
}

pub fn eval_bool(e: &Expr, scope: &dyn Scope) -> Result<bool, QrmlError> {
    match eval(e, scope)? {
        Eval::Bool(b) => Ok(b),
        Eval::Val(v) => type_err(format!("expected a condition, found the value {}", v.value)),
    }
}

/// Every path mentioned in `e`.
pub(crate) fn paths(e: &Expr) -> Vec<&[String]> {
    let mut out = Vec::new();
    fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a [String]>) {
        match e {
            Expr::Int(_) | Expr::Bot | Expr::Top => {}
            Expr::Path(p) => out.push(p),
            Expr::Tuple(items) => items.iter().for_each(|i| walk(i, out)),
            Expr::Neg(x) => walk(x, out),
            Expr::Bin(_, a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Expr::In(x, set) => {
                walk(x, out);
                set.iter().for_each(|i| walk(i, out));
            }
        }
    }
    walk(e, &mut out);
    out
}

fn eval(e: &Expr, scope: &dyn Scope) -> Result<Eval, QrmlError> {
    let val = |e: &Expr| eval_value(e, scope);
    Ok(match e {
        Expr::Int(i) => Eval::Val(Typed::untyped(Value::Int(*i))),
        Expr::Bot => Eval::Val(Typed::untyped(Value::Bot)),
        Expr::Top => Eval::Val(Typed::untyped(Value::Top)),
        Expr::Path(p) => Eval::Val(path(p, scope)?),
        Expr::Tuple(items) => {
            let vs = items
                .iter()
                .map(|i| val(i).map(|t| t.value))
                .collect::<Result<Vec<_>, _>>()?;
            Eval::Val(Typed::untyped(Value::Tuple(vs)))
        }
        Expr::Neg(x) => {
            let t = val(x)?;
            Eval::Val(Typed {
                value: negate(&t.value)?,
                ty: t.ty,
            })
        }
        Expr::Bin(BinOp::And, a, b) => Eval::Bool(eval_bool(a, scope)? && eval_bool(b, scope)?),
        Expr::Bin(op @ (BinOp::Add | BinOp::Sub), a, b) => {
            let (a, b) = (val(a)?, val(b)?);
            let rhs = if *op == BinOp::Sub {
                negate(&b.value)?
            } else {
                b.value
            };
            Eval::Val(Typed {
                value: add(&a.value, &rhs)?,
                ty: a.ty.or(b.ty),
            })
        }
        Expr::Bin(BinOp::Eq, a, b) => Eval::Bool(val(a)?.value == val(b)?.value),
        Expr::Bin(BinOp::Le, a, b) => Eval::Bool(le(&val(a)?, &val(b)?)?),
        Expr::Bin(BinOp::Ge, a, b) => Eval::Bool(le(&val(b)?, &val(a)?)?),
        Expr::In(x, set) => {
            let v = val(x)?.value;
            let mut found = false;
            for s in set {
                if val(s)?.value == v {
                    found = true;
                    break;
                }
            }
            Eval::Bool(found)
        }
    })
}

fn path(p: &[String], scope: &dyn Scope) -> Result<Typed, QrmlError> {
    let (mut t, used) = scope
        .lookup(p)?
        .ok_or_else(|| QrmlError::UnknownName(p.join(".")))?;
    for seg in &p[used..] {
        let Some(ty) = &t.ty else {
            return Err(QrmlError::UnknownName(p.join(".")));
        };
        let Some((i, part)) = ty.part(seg) else {
            return Err(QrmlError::UnknownName(p.join(".")));
        };
        let value = match &t.value {
            Value::Tuple(items) if i < items.len() => items[i].clone(),
            v @ (Value::Top | Value::Bot) => v.clone(),
            other => return type_err(format!("cannot select part `{seg}` of {other}")),
        };
        t = Typed {
            value,
            ty: Some(part.clone()),
        };
    }
    Ok(t)
}

fn negate(v: &Value) -> Result<Value, QrmlError> {
    match v {
        Value::Int(i) => i
            .checked_neg()
            .map(Value::Int)
            .ok_or_else(|| QrmlError::Type("integer overflow".into())),
        Value::Top => Ok(Value::Bot),
        Value::Bot => Ok(Value::Top),
        Value::Tuple(items) => items
            .iter()
            .map(negate)
            .collect::<Result<_, _>>()
            .map(Value::Tuple),
        other => type_err(format!("cannot negate {other}")),
    }
}

fn add(a: &Value, b: &Value) -> Result<Value, QrmlError> {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => x
            .checked_add(*y)
            .map(Value::Int)
            .ok_or_else(|| QrmlError::Type("integer overflow".into())),
        (Value::Top, Value::Bot) | (Value::Bot, Value::Top) => type_err("top + bot is undefined"),
        (Value::Top, Value::Int(_)) | (Value::Int(_), Value::Top) | (Value::Top, Value::Top) => {
            Ok(Value::Top)
        }
        (Value::Bot, Value::Int(_)) | (Value::Int(_), Value::Bot) | (Value::Bot, Value::Bot) => {
            Ok(Value::Bot)
        }
        (Value::Tuple(xs), Value::Tuple(ys)) if xs.len() == ys.len() => xs
            .iter()
            .zip(ys)
            .map(|(x, y)| add(x, y))
            .collect::<Result<_, _>>()
            .map(Value::Tuple),
        _ => type_err(format!("cannot add {a} and {b}")),
    }
}

/// `a <= b` under the order of `b`'s type, else `a`'s, else numerically.
fn le(a: &Typed, b: &Typed) -> Result<bool, QrmlError> {
    match b.poset().or(a.poset()) {
        Some(p) => Ok(p.order.le(&a.value, &b.value)?),
        None => numeric_le(&a.value, &b.value),
    }
}

fn numeric_le(a: &Value, b: &Value) -> Result<bool, QrmlError> {
    match (a, b) {
        (Value::Tuple(xs), Value::Tuple(ys)) if xs.len() == ys.len() => {
            for (x, y) in xs.iter().zip(ys) {
                if !numeric_le(x, y)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Value::Bot, _) | (_, Value::Top) => Ok(true),
        (Value::Top, _) | (_, Value::Bot) => Ok(false),
        _ => match (ExtInt::of(a), ExtInt::of(b)) {
            (Some(x), Some(y)) => Ok(x <= y),
            _ => type_err(format!("cannot compare {a} and {b}")),
        },
    }
}
