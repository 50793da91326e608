//! Partially-ordered values, order descriptors and the generalized `+`/`−`
//! operators used by the aggregation templates.

mod arith;
mod order;
mod value;

use std::fmt;

use thiserror::Error;

pub use arith::{
    add_values, div_values, max_values, min_values, mult_values, sub_values, value_add, value_sub,
};
pub use order::{
    check_order_laws, Comparison, CustomOrder, OrderKind, OrderLawViolation, OrderPredicate,
};
pub use value::Value;

pub(crate) use value::ExtInt;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PosetError {
    #[error("tuple arity mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("value {value} is outside the domain of order {order}")]
    Domain { value: Value, order: String },
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Undefined(String),
    #[error("order {order} is not antisymmetric: {a} and {b} are mutually below each other")]
    NotAntisymmetric { order: String, a: Value, b: Value },
}

/// The carrier set of a poset, used to decide when two posets are identical.
///
/// Two posets are the same only if both their domain and their order agree;
/// bandwidth and connection bandwidth are both integers under `≤` but must not
/// be summed together.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// Anonymous values; equal to every other `Unnamed` domain.
    Unnamed,
    /// The void poset `{⊥}`.
    Void,
    Named(String),
    /// Tuples whose components come from the listed domains.
    Product(Vec<Domain>),
    /// Component `i` of a tupled domain, produced by ungrouping a named tuple domain.
    Component(Box<Domain>, usize),
}

impl Domain {
    pub fn named(name: impl Into<String>) -> Domain {
        Domain::Named(name.into())
    }

    /// Domain of component `i` of a tuple drawn from this domain.
    pub fn component(&self, i: usize) -> Domain {
        match self {
            Domain::Product(parts) if i < parts.len() => parts[i].clone(),
            Domain::Unnamed => Domain::Unnamed,
            other => Domain::Component(Box::new(other.clone()), i),
        }
    }

    /// Appends `#tag` to every named leaf, keeping the structure.
    pub fn tagged(&self, tag: &str) -> Domain {
        match self {
            Domain::Named(n) => Domain::Named(format!("{n}#{tag}")),
            Domain::Product(parts) => {
                Domain::Product(parts.iter().map(|d| d.tagged(tag)).collect())
            }
            Domain::Component(d, i) => Domain::Component(Box::new(d.tagged(tag)), *i),
            Domain::Unnamed => Domain::Named(format!("#{tag}")),
            Domain::Void => Domain::Void,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Unnamed => f.write_str("_"),
            Domain::Void => f.write_str("void"),
            Domain::Named(n) => f.write_str(n),
            Domain::Product(parts) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" × ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Domain::Component(d, i) => write!(f, "{d}.{i}"),
        }
    }
}

/// A set of values together with a partial order on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Poset {
    pub domain: Domain,
    pub order: OrderKind,
}

impl Poset {
    pub fn new(domain: Domain, order: OrderKind) -> Poset {
        Poset { domain, order }
    }

    pub fn void() -> Poset {
        Poset::new(Domain::Void, OrderKind::EqOnly)
    }

    pub fn anonymous(order: OrderKind) -> Poset {
        Poset::new(Domain::Unnamed, order)
    }

    pub fn named(name: impl Into<String>, order: OrderKind) -> Poset {
        Poset::new(Domain::named(name), order)
    }

    pub fn is_void(&self) -> bool {
        self.domain == Domain::Void
    }

    pub fn dual(&self) -> Poset {
        Poset::new(self.domain.clone(), self.order.dual())
    }

    pub fn check(&self, v: &Value) -> Result<(), PosetError> {
        if self.is_void() {
            return match v {
                Value::Void => Ok(()),
                _ => Err(PosetError::Domain {
                    value: v.clone(),
                    order: "void".into(),
                }),
            };
        }
        if matches!(v, Value::Void) {
            return Err(PosetError::Domain {
                value: v.clone(),
                order: self.order.to_string(),
            });
        }
        self.order.check_domain(v)
    }

    pub fn compare(&self, a: &Value, b: &Value) -> Result<Comparison, PosetError> {
        if self.is_void() {
            self.check(a)?;
            self.check(b)?;
            return Ok(Comparison::Equal);
        }
        self.order.compare(a, b)
    }

    /// Poset of tuples `(a, b)` ordered component-wise.
    pub fn pair(a: &Poset, b: &Poset) -> Poset {
        Poset::product([a, b])
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Poset>>(parts: I) -> Poset {
        let (domains, orders): (Vec<_>, Vec<_>) = parts
            .into_iter()
            .map(|p| (p.domain.clone(), p.order.clone()))
            .unzip();
        Poset::new(Domain::Product(domains), OrderKind::ElementWise(orders))
    }

    /// Poset of component `i` when this poset orders tuples element-wise.
    pub fn component(&self, i: usize) -> Result<Poset, PosetError> {
        match &self.order {
            OrderKind::ElementWise(parts) if i < parts.len() => {
                Ok(Poset::new(self.domain.component(i), parts[i].clone()))
            }
            OrderKind::ElementWise(parts) => Err(PosetError::ShapeMismatch {
                expected: parts.len(),
                found: i + 1,
            }),
            other => Err(PosetError::Undefined(format!(
                "cannot ungroup a poset ordered by {other}"
            ))),
        }
    }

    pub fn tagged(&self, tag: &str) -> Poset {
        Poset::new(self.domain.tagged(tag), self.order.clone())
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return f.write_str("void");
        }
        write!(f, "{} by {}", self.domain, self.order)
    }
}

/// A named dimension of a configuration space.
#[derive(Clone, Debug, PartialEq)]
pub struct PosetDescriptor {
    pub name: String,
    pub poset: Poset,
}

impl PosetDescriptor {
    pub fn new(name: impl Into<String>, poset: Poset) -> PosetDescriptor {
        PosetDescriptor {
            name: name.into(),
            poset,
        }
    }

    pub fn order(&self) -> &OrderKind {
        &self.poset.order
    }
}
