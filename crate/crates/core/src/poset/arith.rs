use super::{ExtInt, OrderKind, Poset, PosetError, Value};

fn ext(v: &Value, op: &'static str) -> Result<ExtInt, PosetError> {
    ExtInt::of(v).ok_or_else(|| PosetError::Domain {
        value: v.clone(),
        order: format!("numeric ({op})"),
    })
}

fn tuples<'a>(
    order: &OrderKind,
    a: &'a Value,
    b: &'a Value,
    n: usize,
) -> Result<(&'a [Value], &'a [Value]), PosetError> {
    let get = |v: &'a Value| match v {
        Value::Tuple(items) if items.len() == n => Ok(items.as_slice()),
        Value::Tuple(items) => Err(PosetError::ShapeMismatch {
            expected: n,
            found: items.len(),
        }),
        _ => Err(PosetError::Domain {
            value: v.clone(),
            order: order.to_string(),
        }),
    };
    Ok((get(a)?, get(b)?))
}

/// `a +_Q b` for two values of the same poset.
///
/// Integers add with saturation at the extremes (`⊤` absorbs, then `⊥`).
/// Discrete values only add when comparable, yielding the larger one.
pub fn add_values(order: &OrderKind, a: &Value, b: &Value) -> Result<Value, PosetError> {
    match order {
        OrderKind::NumLe | OrderKind::NumGe => {
            let r = match (ext(a, "+")?, ext(b, "+")?) {
                (ExtInt::PosInf, _) | (_, ExtInt::PosInf) => ExtInt::PosInf,
                (ExtInt::NegInf, _) | (_, ExtInt::NegInf) => ExtInt::NegInf,
                (ExtInt::Fin(x), ExtInt::Fin(y)) => {
                    ExtInt::Fin(x.checked_add(y).ok_or(PosetError::Overflow("+"))?)
                }
            };
            Ok(r.into_value())
        }
        OrderKind::EqOnly => match (a, b) {
            _ if a == b => Ok(a.clone()),
            (Value::Bot, x) | (x, Value::Bot) => Ok(x.clone()),
            (Value::Top, _) | (_, Value::Top) => Ok(Value::Top),
            _ => Err(PosetError::Undefined(format!(
                "cannot add distinct discrete values {a} and {b}"
            ))),
        },
        OrderKind::ElementWise(parts) => {
            let (xs, ys) = tuples(order, a, b, parts.len())?;
            let items = parts
                .iter()
                .zip(xs.iter().zip(ys))
                .map(|(o, (x, y))| add_values(o, x, y))
                .collect::<Result<_, _>>()?;
            Ok(Value::Tuple(items))
        }
        OrderKind::Custom(c) => Err(PosetError::Undefined(format!(
            "no addition defined for custom order {}",
            c.name()
        ))),
    }
}

/// `p −_Q c` where `p` is read under `order` and `c` under its dual.
pub fn sub_values(order: &OrderKind, p: &Value, c: &Value) -> Result<Value, PosetError> {
    match order {
        OrderKind::NumLe | OrderKind::NumGe => {
            let r = match (ext(p, "-")?, ext(c, "-")?) {
                (ExtInt::PosInf, _) => ExtInt::PosInf,
                (_, ExtInt::PosInf) => ExtInt::NegInf,
                (ExtInt::NegInf, _) => ExtInt::NegInf,
                (_, ExtInt::NegInf) => ExtInt::PosInf,
                (ExtInt::Fin(x), ExtInt::Fin(y)) => {
                    ExtInt::Fin(x.checked_sub(y).ok_or(PosetError::Overflow("-"))?)
                }
            };
            Ok(r.into_value())
        }
        OrderKind::EqOnly => Err(PosetError::Undefined(
            "subtraction is undefined on discrete posets".into(),
        )),
        OrderKind::ElementWise(parts) => {
            let (xs, ys) = tuples(order, p, c, parts.len())?;
            let items = parts
                .iter()
                .zip(xs.iter().zip(ys))
                .map(|(o, (x, y))| sub_values(o, x, y))
                .collect::<Result<_, _>>()?;
            Ok(Value::Tuple(items))
        }
        OrderKind::Custom(c) => Err(PosetError::Undefined(format!(
            "no subtraction defined for custom order {}",
            c.name()
        ))),
    }
}

/// Poset addition: sums values of identical posets, otherwise pairs them.
///
/// The void poset acts as the identity on either side.
pub fn value_add(
    pa: &Poset,
    a: &Value,
    pb: &Poset,
    b: &Value,
) -> Result<(Value, Poset), PosetError> {
    pa.check(a)?;
    pb.check(b)?;
    match (pa.is_void(), pb.is_void()) {
        (true, true) => Ok((Value::Void, Poset::void())),
        (true, false) => Ok((b.clone(), pb.clone())),
        (false, true) => Ok((a.clone(), pa.clone())),
        (false, false) if pa == pb => Ok((add_values(&pa.order, a, b)?, pa.clone())),
        (false, false) => Ok((Value::tuple([a.clone(), b.clone()]), Poset::pair(pa, pb))),
    }
}

/// Poset subtraction: the producer `p` minus the consumer `c`.
///
/// Both must share a domain and the consumer's order must be the dual of the
/// producer's. The result lives in the producer's poset.
pub fn value_sub(
    pp: &Poset,
    p: &Value,
    pc: &Poset,
    c: &Value,
) -> Result<(Value, Poset), PosetError> {
    if pp.domain != pc.domain || pc.order != pp.order.dual() {
        return Err(PosetError::OrderMismatch(format!(
            "cannot subtract {pc} from {pp}: orders must be dual"
        )));
    }
    if pp.is_void() {
        return Err(PosetError::Undefined(
            "subtraction is undefined on the void poset".into(),
        ));
    }
    pp.check(p)?;
    pc.check(c)?;
    Ok((sub_values(&pp.order, p, c)?, pp.clone()))
}

pub fn min_values(a: &Value, b: &Value) -> Result<Value, PosetError> {
    Ok(ext(a, "min")?.min(ext(b, "min")?).into_value())
}

pub fn max_values(a: &Value, b: &Value) -> Result<Value, PosetError> {
    Ok(ext(a, "max")?.max(ext(b, "max")?).into_value())
}

fn non_negative(v: &Value, op: &'static str) -> Result<ExtInt, PosetError> {
    match ext(v, op)? {
        ExtInt::Fin(x) if x < 0 => Err(PosetError::Domain {
            value: v.clone(),
            order: format!("non-negative ({op})"),
        }),
        ExtInt::NegInf => Err(PosetError::Domain {
            value: v.clone(),
            order: format!("non-negative ({op})"),
        }),
        e => Ok(e),
    }
}

/// Product over the non-negative integers with `⊤`; `0 · ⊤ = 0`.
pub fn mult_values(a: &Value, b: &Value) -> Result<Value, PosetError> {
    let r = match (non_negative(a, "*")?, non_negative(b, "*")?) {
        (ExtInt::Fin(0), _) | (_, ExtInt::Fin(0)) => ExtInt::Fin(0),
        (ExtInt::PosInf, _) | (_, ExtInt::PosInf) => ExtInt::PosInf,
        (ExtInt::Fin(x), ExtInt::Fin(y)) => {
            ExtInt::Fin(x.checked_mul(y).ok_or(PosetError::Overflow("*"))?)
        }
        _ => unreachable!("negative infinity rejected above"),
    };
    Ok(r.into_value())
}

/// Floor division `p / c` over the non-negative integers with `⊤`.
pub fn div_values(p: &Value, c: &Value) -> Result<Value, PosetError> {
    let r = match (non_negative(p, "/")?, non_negative(c, "/")?) {
        (_, ExtInt::Fin(0)) => return Err(PosetError::Undefined("division by zero".into())),
        (ExtInt::PosInf, _) => ExtInt::PosInf,
        (_, ExtInt::PosInf) => ExtInt::Fin(0),
        (ExtInt::Fin(x), ExtInt::Fin(y)) => ExtInt::Fin(x / y),
        _ => unreachable!("negative infinity rejected above"),
    };
    Ok(r.into_value())
}
