use std::fmt;
use std::sync::Arc;

use super::value::{ExtInt, Value};
use super::PosetError;

/// Outcome of comparing two values under a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            other => other,
        }
    }

    /// `a ⪯ b`
    pub fn is_le(self) -> bool {
        matches!(self, Comparison::Less | Comparison::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, Comparison::Greater | Comparison::Equal)
    }
}

pub type OrderPredicate = dyn Fn(&Value, &Value) -> Result<bool, PosetError> + Send + Sync;

/// A user-supplied order relation, e.g. compiled from a QRML `ordered by` clause.
///
/// The predicate is trusted to be a partial order; [`check_order_laws`] can
/// sample it. `Top`/`Bot` are adjoined as greatest/least elements.
#[derive(Clone)]
pub struct CustomOrder {
    name: Arc<str>,
    pred: Arc<OrderPredicate>,
    arity: Option<usize>,
    reversed: bool,
}

impl CustomOrder {
    /// `arity` declares the domain: `Some(n)` admits `n`-tuples, `None` any non-void value.
    pub fn new<F>(name: impl Into<Arc<str>>, arity: Option<usize>, pred: F) -> Self
    where
        F: Fn(&Value, &Value) -> Result<bool, PosetError> + Send + Sync + 'static,
    {
        CustomOrder {
            name: name.into(),
            pred: Arc::new(pred),
            arity,
            reversed: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> Option<usize> {
        self.arity
    }

    fn le(&self, a: &Value, b: &Value) -> Result<bool, PosetError> {
        if self.reversed {
            (self.pred)(b, a)
        } else {
            (self.pred)(a, b)
        }
    }
}

impl PartialEq for CustomOrder {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pred, &other.pred) && self.reversed == other.reversed
    }
}

impl fmt::Debug for CustomOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CustomOrder({}{})",
            self.name,
            if self.reversed { ", dual" } else { "" }
        )
    }
}

/// How the values of one poset are ordered.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderKind {
    /// Integers under `≤`.
    NumLe,
    /// Integers under `≥`.
    NumGe,
    /// Discrete order: distinct values are incomparable.
    EqOnly,
    /// Product order on tuples, one order per component.
    ElementWise(Vec<OrderKind>),
    Custom(CustomOrder),
}

impl OrderKind {
    pub fn element_wise<I: IntoIterator<Item = OrderKind>>(parts: I) -> OrderKind {
        OrderKind::ElementWise(parts.into_iter().collect())
    }

    /// The dual order: `⪯` reversed at every leaf. `EqOnly` is its own dual.
    pub fn dual(&self) -> OrderKind {
        match self {
            OrderKind::NumLe => OrderKind::NumGe,
            OrderKind::NumGe => OrderKind::NumLe,
            OrderKind::EqOnly => OrderKind::EqOnly,
            OrderKind::ElementWise(parts) => {
                OrderKind::ElementWise(parts.iter().map(OrderKind::dual).collect())
            }
            OrderKind::Custom(c) => OrderKind::Custom(CustomOrder {
                reversed: !c.reversed,
                ..c.clone()
            }),
        }
    }

    /// True when every leaf is `EqOnly`, i.e. distinct non-extreme values never compare.
    pub fn is_discrete(&self) -> bool {
        match self {
            OrderKind::EqOnly => true,
            OrderKind::ElementWise(parts) => parts.iter().all(OrderKind::is_discrete),
            _ => false,
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, OrderKind::NumLe | OrderKind::NumGe)
    }

    pub fn check_domain(&self, v: &Value) -> Result<(), PosetError> {
        let bad = || PosetError::Domain {
            value: v.clone(),
            order: self.to_string(),
        };
        match self {
            OrderKind::NumLe | OrderKind::NumGe => match v {
                Value::Int(_) | Value::Top | Value::Bot => Ok(()),
                _ => Err(bad()),
            },
            OrderKind::EqOnly => Ok(()),
            OrderKind::ElementWise(parts) => match v {
                Value::Tuple(items) if items.len() == parts.len() => parts
                    .iter()
                    .zip(items)
                    .try_for_each(|(o, item)| o.check_domain(item)),
                Value::Top | Value::Bot => Ok(()),
                Value::Tuple(items) => Err(PosetError::ShapeMismatch {
                    expected: parts.len(),
                    found: items.len(),
                }),
                _ => Err(bad()),
            },
            OrderKind::Custom(c) => match (v, c.arity) {
                (Value::Void, _) => Err(bad()),
                (Value::Top | Value::Bot, _) | (_, None) => Ok(()),
                (Value::Tuple(items), Some(n)) if items.len() == n => Ok(()),
                (Value::Tuple(items), Some(n)) => Err(PosetError::ShapeMismatch {
                    expected: n,
                    found: items.len(),
                }),
                _ => Err(bad()),
            },
        }
    }

    pub fn compare(&self, a: &Value, b: &Value) -> Result<Comparison, PosetError> {
        match self {
            OrderKind::NumLe => numeric(self, a, b),
            OrderKind::NumGe => numeric(self, a, b).map(Comparison::reverse),
            OrderKind::EqOnly => Ok(discrete(a, b)),
            OrderKind::ElementWise(parts) => {
                self.check_shape(a)?;
                self.check_shape(b)?;
                let (Value::Tuple(xs), Value::Tuple(ys)) = (a, b) else {
                    unreachable!("shape checked above")
                };
                let mut acc = Comparison::Equal;
                for ((o, x), y) in parts.iter().zip(xs).zip(ys) {
                    acc = match (acc, o.compare(x, y)?) {
                        (_, Comparison::Incomparable) => return Ok(Comparison::Incomparable),
                        (acc, Comparison::Equal) => acc,
                        (Comparison::Equal, c) => c,
                        (acc, c) if acc == c => acc,
                        _ => return Ok(Comparison::Incomparable),
                    };
                }
                Ok(acc)
            }
            OrderKind::Custom(c) => {
                self.check_domain(a)?;
                self.check_domain(b)?;
                if a == b {
                    return Ok(Comparison::Equal);
                }
                // adjoined extremes follow the direction of the relation
                let ext = match (a, b) {
                    (Value::Bot, _) | (_, Value::Top) => Some(Comparison::Less),
                    (Value::Top, _) | (_, Value::Bot) => Some(Comparison::Greater),
                    _ => None,
                };
                if let Some(cmp) = ext {
                    return Ok(if c.reversed { cmp.reverse() } else { cmp });
                }
                match (c.le(a, b)?, c.le(b, a)?) {
                    (true, true) => Err(PosetError::NotAntisymmetric {
                        order: c.name.to_string(),
                        a: a.clone(),
                        b: b.clone(),
                    }),
                    (true, false) => Ok(Comparison::Less),
                    (false, true) => Ok(Comparison::Greater),
                    (false, false) => Ok(Comparison::Incomparable),
                }
            }
        }
    }

    /// `a ⪯ b`
    pub fn le(&self, a: &Value, b: &Value) -> Result<bool, PosetError> {
        self.compare(a, b).map(Comparison::is_le)
    }

    fn check_shape(&self, v: &Value) -> Result<(), PosetError> {
        let OrderKind::ElementWise(parts) = self else {
            return Ok(());
        };
        match v {
            Value::Tuple(items) if items.len() == parts.len() => Ok(()),
            Value::Tuple(items) => Err(PosetError::ShapeMismatch {
                expected: parts.len(),
                found: items.len(),
            }),
            _ => Err(PosetError::Domain {
                value: v.clone(),
                order: self.to_string(),
            }),
        }
    }
}

fn numeric(order: &OrderKind, a: &Value, b: &Value) -> Result<Comparison, PosetError> {
    let ext = |v: &Value| {
        ExtInt::of(v).ok_or_else(|| PosetError::Domain {
            value: v.clone(),
            order: order.to_string(),
        })
    };
    Ok(match ext(a)?.cmp(&ext(b)?) {
        std::cmp::Ordering::Less => Comparison::Less,
        std::cmp::Ordering::Equal => Comparison::Equal,
        std::cmp::Ordering::Greater => Comparison::Greater,
    })
}

fn discrete(a: &Value, b: &Value) -> Comparison {
    if a == b {
        Comparison::Equal
    } else if matches!(a, Value::Bot) || matches!(b, Value::Top) {
        Comparison::Less
    } else if matches!(a, Value::Top) || matches!(b, Value::Bot) {
        Comparison::Greater
    } else {
        Comparison::Incomparable
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::NumLe => f.write_str("le"),
            OrderKind::NumGe => f.write_str("ge"),
            OrderKind::EqOnly => f.write_str("eq"),
            OrderKind::ElementWise(parts) => {
                f.write_str("elementwise(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            OrderKind::Custom(c) => {
                write!(f, "custom {}{}", c.name, if c.reversed { "⁻¹" } else { "" })
            }
        }
    }
}

/// A violated partial-order law found while sampling.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderLawViolation {
    Reflexivity(Value),
    Antisymmetry(Value, Value),
    Transitivity(Value, Value, Value),
    Error(PosetError),
}

/// Samples reflexivity, antisymmetry and transitivity of `order` over `samples`.
///
/// Cubic in the sample size; meant for test and diagnostic use.
pub fn check_order_laws(order: &OrderKind, samples: &[Value]) -> Result<(), OrderLawViolation> {
    let cmp = |a: &Value, b: &Value| order.compare(a, b).map_err(OrderLawViolation::Error);
    for a in samples {
        if cmp(a, a)? != Comparison::Equal {
            return Err(OrderLawViolation::Reflexivity(a.clone()));
        }
    }
    for a in samples {
        for b in samples {
            let ab = cmp(a, b)?;
            if ab != cmp(b, a)?.reverse() || (ab == Comparison::Equal && a != b) {
                return Err(OrderLawViolation::Antisymmetry(a.clone(), b.clone()));
            }
            if !ab.is_le() {
                continue;
            }
            for c in samples {
                if cmp(b, c)?.is_le() && !cmp(a, c)?.is_le() {
                    return Err(OrderLawViolation::Transitivity(
                        a.clone(),
                        b.clone(),
                        c.clone(),
                    ));
                }
            }
        }
    }
    Ok(())
}
