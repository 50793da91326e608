use std::fmt;
use std::sync::Arc;

use super::QrmError;
use crate::pareto::{self, Configuration, ConfigurationSet, ConfigurationSpace};
use crate::poset::{Poset, Value};

type ConvertFn = dyn Fn(&Value) -> Result<Value, QrmError> + Send + Sync;
type PredicateFn =
    dyn Fn(&ConfigurationSpace, &Configuration) -> Result<bool, QrmError> + Send + Sync;

/// A `⪰`-derivation mapping consumer values into the producer's poset.
#[derive(Clone)]
pub struct Conversion {
    pub name: String,
    f: Arc<ConvertFn>,
}

impl Conversion {
    pub fn new<F>(name: impl Into<String>, f: F) -> Conversion
    where
        F: Fn(&Value) -> Result<Value, QrmError> + Send + Sync + 'static,
    {
        Conversion {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn apply(&self, v: &Value) -> Result<Value, QrmError> {
        (self.f)(v)
    }
}

impl fmt::Debug for Conversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conversion({})", self.name)
    }
}

/// An arbitrary predicate over configurations.
#[derive(Clone)]
pub struct ConstraintFn {
    pub name: String,
    f: Arc<PredicateFn>,
}

impl ConstraintFn {
    pub fn new<F>(name: impl Into<String>, f: F) -> ConstraintFn
    where
        F: Fn(&ConfigurationSpace, &Configuration) -> Result<bool, QrmError>
            + Send
            + Sync
            + 'static,
    {
        ConstraintFn {
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for ConstraintFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConstraintFn({})", self.name)
    }
}

/// Constraints used by the composition patterns. Indices are 0-based.
#[derive(Clone, Debug)]
pub enum Constraint {
    /// `f(q_c) ⪯ q_p` under the producer's order; `convert: None` is the identity.
    ProducerConsumer {
        producer: usize,
        consumer: usize,
        convert: Option<Conversion>,
    },
    /// `q_i ∈ X` on a discretely ordered dimension.
    Subset {
        dim: usize,
        allowed: Vec<Value>,
    },
    Custom(ConstraintFn),
}

impl Constraint {
    pub fn producer_consumer(producer: usize, consumer: usize) -> Constraint {
        Constraint::ProducerConsumer {
            producer,
            consumer,
            convert: None,
        }
    }

    pub fn subset(dim: usize, allowed: impl IntoIterator<Item = Value>) -> Constraint {
        Constraint::Subset {
            dim,
            allowed: allowed.into_iter().collect(),
        }
    }

    pub fn custom<F>(name: impl Into<String>, f: F) -> Constraint
    where
        F: Fn(&ConfigurationSpace, &Configuration) -> Result<bool, QrmError>
            + Send
            + Sync
            + 'static,
    {
        Constraint::Custom(ConstraintFn::new(name, f))
    }

    /// Checks the constraint's typing preconditions against `space`.
    pub fn check(&self, space: &ConfigurationSpace) -> Result<(), QrmError> {
        let dim = |i: usize| -> Result<&Poset, QrmError> {
            space
                .dims()
                .get(i)
                .map(|d| &d.poset)
                .ok_or(QrmError::Index {
                    index: i,
                    arity: space.arity(),
                })
        };
        match self {
            Constraint::ProducerConsumer {
                producer,
                consumer,
                convert,
            } => {
                if producer == consumer {
                    return Err(QrmError::ConstraintType(
                        "producer and consumer must differ".into(),
                    ));
                }
                let (p, c) = (dim(*producer)?, dim(*consumer)?);
                if convert.is_none() && (p.domain != c.domain || c.order != p.order.dual()) {
                    return Err(QrmError::OrderMismatch(format!(
                        "identity matching needs the consumer poset to be the dual of the producer poset ({c} vs {p})"
                    )));
                }
                Ok(())
            }
            Constraint::Subset { dim: i, allowed } => {
                let p = dim(*i)?;
                if !(p.is_void() || p.order.is_discrete()) {
                    return Err(QrmError::ConstraintType(format!(
                        "subset constraint on dimension {i} ordered by {}",
                        p.order
                    )));
                }
                for v in allowed {
                    p.check(v)?;
                }
                Ok(())
            }
            Constraint::Custom(_) => Ok(()),
        }
    }

    /// Membership test; assumes [`Constraint::check`] passed.
    pub fn holds(&self, space: &ConfigurationSpace, c: &Configuration) -> Result<bool, QrmError> {
        match self {
            Constraint::ProducerConsumer {
                producer,
                consumer,
                convert,
            } => {
                let p = &space.dim(*producer).poset;
                let needed = match convert {
                    Some(f) => f.apply(c.get(*consumer))?,
                    None => c.get(*consumer).clone(),
                };
                Ok(p.compare(&needed, c.get(*producer))?.is_le())
            }
            Constraint::Subset { dim, allowed } => Ok(allowed.contains(c.get(*dim))),
            Constraint::Custom(f) => (f.f)(space, c),
        }
    }

    /// `C ∩ D`.
    pub fn apply(&self, set: &ConfigurationSet) -> Result<ConfigurationSet, QrmError> {
        self.check(set.space())?;
        let space = set.space();
        pareto::apply_constraint(set, |c| self.holds(space, c))
    }
}
