use std::fmt;
use std::sync::Arc;

use super::{Constraint, QrmError};
use crate::pareto::{self, Configuration, ConfigurationSet, ConfigurationSpace};
use crate::poset::{self, OrderKind, Poset, PosetDescriptor, Value};

type DeriveFn =
    dyn Fn(&ConfigurationSpace, &Configuration) -> Result<Value, QrmError> + Send + Sync;

/// A caller-supplied `⪯`-derivation with a fixed target poset.
#[derive(Clone)]
pub struct CustomDerivation {
    pub name: String,
    pub target: Poset,
    f: Arc<DeriveFn>,
}

impl CustomDerivation {
    pub fn new<F>(name: impl Into<String>, target: Poset, f: F) -> CustomDerivation
    where
        F: Fn(&ConfigurationSpace, &Configuration) -> Result<Value, QrmError>
            + Send
            + Sync
            + 'static,
    {
        CustomDerivation {
            name: name.into(),
            target,
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for CustomDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomDerivation({} -> {})", self.name, self.target)
    }
}

/// Building blocks for the part derivations of the composition patterns.
///
/// Indices are 0-based positions in the space the derivation is applied to.
#[derive(Clone, Debug)]
pub enum Derivation {
    Copy(usize),
    /// Tuple of the listed dimensions ordered element-wise; a single index copies.
    Group(Vec<usize>),
    /// Component `j` of the element-wise ordered dimension `i`.
    Ungroup(usize, usize),
    Void,
    Add(usize, usize),
    Mult(usize, usize),
    Min(usize, usize),
    Max(usize, usize),
    /// Producer minus consumer; the consumer is ordered by `≥`.
    Sub(usize, usize),
    Div(usize, usize),
    PosetAdd(usize, usize),
    PosetSub(usize, usize),
    Constant(Value, Poset),
    Custom(CustomDerivation),
}

impl Derivation {
    /// `group_{i,j}` over the inclusive range `i..=j`.
    pub fn group_range(i: usize, j: usize) -> Derivation {
        Derivation::Group((i..=j).collect())
    }

    fn short_name(&self) -> &'static str {
        match self {
            Derivation::Copy(_) => "copy",
            Derivation::Group(_) => "group",
            Derivation::Ungroup(..) => "ungroup",
            Derivation::Void => "void",
            Derivation::Add(..) => "add",
            Derivation::Mult(..) => "mult",
            Derivation::Min(..) => "min",
            Derivation::Max(..) => "max",
            Derivation::Sub(..) => "sub",
            Derivation::Div(..) => "div",
            Derivation::PosetAdd(..) => "plus",
            Derivation::PosetSub(..) => "minus",
            Derivation::Constant(..) => "const",
            Derivation::Custom(_) => "custom",
        }
    }

    /// The poset of the appended dimension, checking index and order preconditions.
    pub fn target(&self, space: &ConfigurationSpace) -> Result<Poset, QrmError> {
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
        let numeric = |i: usize, want: &OrderKind| -> Result<&Poset, QrmError> {
            let p = dim(i)?;
            if &p.order != want {
                return Err(QrmError::DerivationType(format!(
                    "dimension {i} is ordered by {}, expected {want}",
                    p.order
                )));
            }
            Ok(p)
        };
        let same_or_anonymous = |a: &Poset, b: &Poset| {
            if a.domain == b.domain {
                a.clone()
            } else {
                Poset::anonymous(a.order.clone())
            }
        };
        match self {
            Derivation::Copy(i) => Ok(dim(*i)?.clone()),
            Derivation::Group(idx) => match idx.as_slice() {
                [] => Err(QrmError::DerivationType("empty group".into())),
                [i] => Ok(dim(*i)?.clone()),
                _ => {
                    let parts = idx.iter().map(|&i| dim(i)).collect::<Result<Vec<_>, _>>()?;
                    Ok(Poset::product(parts))
                }
            },
            Derivation::Ungroup(i, j) => Ok(dim(*i)?.component(*j)?),
            Derivation::Void => Ok(Poset::void()),
            Derivation::Add(i, j)
            | Derivation::Mult(i, j)
            | Derivation::Min(i, j)
            | Derivation::Max(i, j) => {
                let a = numeric(*i, &OrderKind::NumLe)?;
                let b = numeric(*j, &OrderKind::NumLe)?;
                Ok(same_or_anonymous(a, b))
            }
            Derivation::Sub(p, c) | Derivation::Div(p, c) => {
                if p == c {
                    return Err(QrmError::DerivationType(
                        "producer and consumer must differ".into(),
                    ));
                }
                let a = numeric(*p, &OrderKind::NumLe)?;
                let b = numeric(*c, &OrderKind::NumGe)?;
                Ok(same_or_anonymous(a, b))
            }
            Derivation::PosetAdd(i, j) => {
                let (a, b) = (dim(*i)?, dim(*j)?);
                Ok(match (a.is_void(), b.is_void()) {
                    (true, _) => b.clone(),
                    (false, true) => a.clone(),
                    _ if a == b => a.clone(),
                    _ => Poset::pair(a, b),
                })
            }
            Derivation::PosetSub(i, j) => {
                let (a, b) = (dim(*i)?, dim(*j)?);
                if a.domain != b.domain || b.order != a.order.dual() {
                    return Err(QrmError::OrderMismatch(format!(
                        "cannot subtract {b} from {a}: orders must be dual"
                    )));
                }
                Ok(a.clone())
            }
            Derivation::Constant(v, p) => {
                p.check(v)?;
                Ok(p.clone())
            }
            Derivation::Custom(c) => Ok(c.target.clone()),
        }
    }

    pub fn eval(&self, space: &ConfigurationSpace, c: &Configuration) -> Result<Value, QrmError> {
        let v = |i: usize| c.get(i);
        let p = |i: usize| &space.dim(i).poset;
        Ok(match self {
            Derivation::Copy(i) => v(*i).clone(),
            Derivation::Group(idx) => match idx.as_slice() {
                [i] => v(*i).clone(),
                _ => Value::tuple(idx.iter().map(|&i| v(i).clone())),
            },
            Derivation::Ungroup(i, j) => match v(*i) {
                Value::Tuple(items) if *j < items.len() => items[*j].clone(),
                other => {
                    return Err(QrmError::DerivationType(format!(
                        "cannot take component {j} of {other}"
                    )))
                }
            },
            Derivation::Void => Value::Void,
            Derivation::Add(i, j) => poset::add_values(&OrderKind::NumLe, v(*i), v(*j))?,
            Derivation::Mult(i, j) => poset::mult_values(v(*i), v(*j))?,
            Derivation::Min(i, j) => poset::min_values(v(*i), v(*j))?,
            Derivation::Max(i, j) => poset::max_values(v(*i), v(*j))?,
            Derivation::Sub(pi, ci) => poset::sub_values(&OrderKind::NumLe, v(*pi), v(*ci))?,
            Derivation::Div(pi, ci) => poset::div_values(v(*pi), v(*ci))?,
            Derivation::PosetAdd(i, j) => poset::value_add(p(*i), v(*i), p(*j), v(*j))?.0,
            Derivation::PosetSub(i, j) => poset::value_sub(p(*i), v(*i), p(*j), v(*j))?.0,
            Derivation::Constant(value, _) => value.clone(),
            Derivation::Custom(d) => (d.f)(space, c)?,
        })
    }

    /// Appends the derived dimension to every configuration of `set`.
    pub fn apply(
        &self,
        set: &ConfigurationSet,
        name: Option<&str>,
    ) -> Result<ConfigurationSet, QrmError> {
        let target = self.target(set.space())?;
        let name = name
            .map(str::to_string)
            .unwrap_or_else(|| format!("{}{}", self.short_name(), set.space().arity() + 1));
        let space = set.space();
        pareto::derive(
            set,
            |c| self.eval(space, c),
            PosetDescriptor::new(name, target),
        )
    }
}

/// One step of a derivation pipeline over an evolving space.
#[derive(Clone, Debug)]
pub enum Step {
    Derive(Derivation),
    /// Removes a dimension (0-based); later indices shift down.
    Abstract(usize),
    Constrain(Constraint),
}

impl From<Derivation> for Step {
    fn from(d: Derivation) -> Self {
        Step::Derive(d)
    }
}

/// Applies the steps left to right.
pub fn apply_steps(set: &ConfigurationSet, steps: &[Step]) -> Result<ConfigurationSet, QrmError> {
    let mut cur = set.clone();
    for step in steps {
        cur = match step {
            Step::Derive(d) => d.apply(&cur, None)?,
            Step::Abstract(k) => pareto::abstract_dim(&cur, *k)?,
            Step::Constrain(c) => c.apply(&cur)?,
        };
    }
    Ok(cur)
}
