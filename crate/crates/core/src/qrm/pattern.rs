use std::fmt;
use std::sync::Arc;

use super::{
    apply_steps, finish, interface_space, Constraint, ConstraintFn, Derivation, QrmError,
    QrmInterface, Step,
};
use crate::pareto::{self, Configuration, ConfigurationSet, ConfigurationSpace};
use crate::poset::{Poset, Value};

/// A constraint `D` relating a configuration to the six appended interface values.
///
/// `solutions(c)` lists every `t` with `c·t ∈ D`; the constraint-based
/// patterns constrain `C × Qi × … × Qx` this way without enumerating the
/// (possibly infinite) target space.
pub trait JointConstraint: Send + Sync + fmt::Debug {
    fn target(&self) -> [Poset; 6];
    fn solutions(
        &self,
        space: &ConfigurationSpace,
        c: &Configuration,
    ) -> Result<Vec<[Value; 6]>, QrmError>;
}

/// A joint constraint over an explicitly enumerated finite target set.
#[derive(Clone, Debug)]
pub struct FiniteJoint {
    candidates: QrmInterface,
    pred: ConstraintFn,
}

impl FiniteJoint {
    /// `pred` sees the source configuration followed by a candidate, in the concatenated space.
    pub fn new<F>(candidates: QrmInterface, name: impl Into<String>, pred: F) -> FiniteJoint
    where
        F: Fn(&ConfigurationSpace, &Configuration) -> Result<bool, QrmError>
            + Send
            + Sync
            + 'static,
    {
        FiniteJoint {
            candidates,
            pred: ConstraintFn::new(name, pred),
        }
    }
}

impl JointConstraint for FiniteJoint {
    fn target(&self) -> [Poset; 6] {
        std::array::from_fn(|i| self.candidates.space().dim(i).poset.clone())
    }

    fn solutions(
        &self,
        space: &ConfigurationSpace,
        c: &Configuration,
    ) -> Result<Vec<[Value; 6]>, QrmError> {
        let joint = space.concat(self.candidates.space());
        let check = Constraint::Custom(self.pred.clone());
        let mut out = Vec::new();
        for t in self.candidates.iter() {
            let mut values = c.values().to_vec();
            values.extend_from_slice(t.values());
            if check.holds(&joint, &Configuration(values))? {
                out.push(std::array::from_fn(|i| t.get(i).clone()));
            }
        }
        Ok(out)
    }
}

/// How a set is brought into the six-part target space.
#[derive(Clone, Debug)]
pub enum Normalization {
    /// Derivation pipeline that must append exactly six dimensions net.
    Steps(Vec<Step>),
    Joint(Arc<dyn JointConstraint>),
}

impl Normalization {
    /// Copies the six parts unchanged.
    pub fn identity() -> Normalization {
        Normalization::Steps((0..6).map(|i| Step::Derive(Derivation::Copy(i))).collect())
    }

    /// One derivation per part, applied in part order.
    pub fn parts(parts: [Derivation; 6]) -> Normalization {
        Normalization::Steps(parts.into_iter().map(Step::Derive).collect())
    }

    pub fn joint<J: JointConstraint + 'static>(j: J) -> Normalization {
        Normalization::Joint(Arc::new(j))
    }

    /// Appends the normalized parts to every configuration of `set`.
    pub fn apply(&self, set: &ConfigurationSet) -> Result<ConfigurationSet, QrmError> {
        match self {
            Normalization::Steps(steps) => apply_steps(set, steps),
            Normalization::Joint(j) => {
                let space = set.space().concat(&interface_space(j.target()));
                let mut out = ConfigurationSet::empty(space);
                for c in set.iter() {
                    for t in j.solutions(set.space(), c)? {
                        let mut values = c.values().to_vec();
                        values.extend(t);
                        out.insert(Configuration(values))?;
                    }
                }
                Ok(out)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub interface: QrmInterface,
    pub normalization: Normalization,
}

impl Branch {
    pub fn new(interface: QrmInterface, normalization: Normalization) -> Branch {
        Branch {
            interface,
            normalization,
        }
    }
}

/// The alternatives pattern: normalize each branch, take the union, minimize.
#[derive(Clone, Debug)]
pub struct AlternativesSpec {
    pub branches: Vec<Branch>,
    /// Expected target posets; defaults to those of the first normalized branch.
    pub target: Option<[Poset; 6]>,
}

impl AlternativesSpec {
    pub fn new(branches: Vec<Branch>) -> AlternativesSpec {
        AlternativesSpec {
            branches,
            target: None,
        }
    }
}

pub fn apply_alternatives(spec: &AlternativesSpec) -> Result<QrmInterface, QrmError> {
    let mut normalized = Vec::with_capacity(spec.branches.len());
    for (k, b) in spec.branches.iter().enumerate() {
        let n = finish(&b.normalization.apply(b.interface.set())?, 6)?;
        let expected = match (&spec.target, normalized.first()) {
            (Some(t), _) => Some(interface_space(t.clone())),
            (None, Some(first)) => Some(QrmInterface::space(first).clone()),
            (None, None) => None,
        };
        if let Some(e) = expected {
            if !e.same_posets(n.space()) {
                return Err(QrmError::NormalizationShape(format!(
                    "branch {k} does not normalize into the target space"
                )));
            }
        }
        normalized.push(n);
    }
    if normalized.is_empty() {
        return Err(QrmError::NormalizationShape("no branches".into()));
    }
    let sets: Vec<ConfigurationSet> = normalized.into_iter().map(QrmInterface::into_set).collect();
    let union = pareto::alternatives(&sets)?;
    QrmInterface::new(pareto::minimize(&union)?)
}

/// The aggregation pattern `min ∘ (↓1)^{6n} ∘ ∩D_a ∘ f ∘ ∩D_c ∘ ×ⁿ`.
#[derive(Clone, Debug)]
pub struct AggregationSpec {
    pub constituents: Vec<QrmInterface>,
    /// Applied to the `6n`-dimensional product.
    pub pre: Vec<Constraint>,
    pub normalization: Normalization,
    /// Applied to the `6n + 6`-dimensional space after the part derivations.
    pub post: Vec<Constraint>,
}

impl AggregationSpec {
    pub fn new(constituents: Vec<QrmInterface>, normalization: Normalization) -> AggregationSpec {
        AggregationSpec {
            constituents,
            pre: Vec::new(),
            normalization,
            post: Vec::new(),
        }
    }
}

pub fn apply_aggregation(spec: &AggregationSpec) -> Result<QrmInterface, QrmError> {
    let sets: Vec<ConfigurationSet> = spec.constituents.iter().map(|c| c.set().clone()).collect();
    let mut product = pareto::free_product_all(&sets)?;
    for d in &spec.pre {
        product = d.apply(&product)?;
    }
    let mut derived = spec.normalization.apply(&product)?;
    for d in &spec.post {
        derived = d.apply(&derived)?;
    }
    finish(&derived, 6 * spec.constituents.len())
}
