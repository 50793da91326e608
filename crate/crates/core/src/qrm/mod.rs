//! The six-part QRM interface and its composition patterns.

mod constraint;
mod derivation;
mod pattern;
mod template;

use std::fmt;

use thiserror::Error;

use crate::pareto::{self, Configuration, ConfigurationSet, ConfigurationSpace, ParetoError};
#[cfg(test)]
use crate::poset::Domain;
use crate::poset::{Poset, PosetDescriptor, PosetError, Value};

pub use constraint::{Constraint, ConstraintFn, Conversion};
pub use derivation::{apply_steps, CustomDerivation, Derivation, Step};
pub use pattern::{
    apply_aggregation, apply_alternatives, AggregationSpec, AlternativesSpec, Branch, FiniteJoint,
    JointConstraint, Normalization,
};
pub use template::{
    free_aggregate, free_aggregate_with, horizontal_aggregate, horizontal_aggregate_with,
    vertical_aggregate, vertical_aggregate_with, Consumption, ParamPolicy, TemplateOptions,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum QrmError {
    #[error("a QRM interface has six dimensions, found {0}")]
    NotSixDimensional(usize),
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("constraint type error: {0}")]
    ConstraintType(String),
    #[error("normalization shape error: {0}")]
    NormalizationShape(String),
    #[error("derivation type error: {0}")]
    DerivationType(String),
    #[error("dimension index {index} out of range for arity {arity}")]
    Index { index: usize, arity: usize },
    #[error(transparent)]
    Pareto(#[from] ParetoError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// One of the six parts of a QRM interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Input,
    Output,
    Required,
    Provided,
    Quality,
    Parameters,
}

impl Part {
    pub const ALL: [Part; 6] = [
        Part::Input,
        Part::Output,
        Part::Required,
        Part::Provided,
        Part::Quality,
        Part::Parameters,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        PART_NAMES[self.index()]
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const PART_NAMES: [&str; 6] = [
    "input",
    "output",
    "required",
    "provided",
    "quality",
    "parameters",
];

/// The space `Qi × Qo × Qr × Qp × Qq × Qx` with conventional part names.
pub fn interface_space(posets: [Poset; 6]) -> ConfigurationSpace {
    let dims = PART_NAMES
        .iter()
        .zip(posets)
        .map(|(n, p)| PosetDescriptor::new(*n, p))
        .collect();
    ConfigurationSpace::new(dims).expect("six distinct part names")
}

/// A six-dimensional configuration set read as input, output, required
/// budget, provided budget, quality and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct QrmInterface(ConfigurationSet);

impl QrmInterface {
    pub fn new(set: ConfigurationSet) -> Result<QrmInterface, QrmError> {
        match set.space().arity() {
            6 => Ok(QrmInterface(set)),
            n => Err(QrmError::NotSixDimensional(n)),
        }
    }

    pub fn from_rows<I>(posets: [Poset; 6], rows: I) -> Result<QrmInterface, QrmError>
    where
        I: IntoIterator<Item = [Value; 6]>,
    {
        let set =
            ConfigurationSet::from_rows(interface_space(posets), rows.into_iter().map(Vec::from))?;
        Ok(QrmInterface(set))
    }

    /// An interface whose only non-void part is `part`.
    pub fn only(
        part: Part,
        poset: Poset,
        values: impl IntoIterator<Item = Value>,
    ) -> Result<QrmInterface, QrmError> {
        let mut posets: [Poset; 6] = std::array::from_fn(|_| Poset::void());
        posets[part.index()] = poset;
        let rows = values.into_iter().map(|v| {
            let mut row: [Value; 6] = std::array::from_fn(|_| Value::Void);
            row[part.index()] = v;
            row
        });
        QrmInterface::from_rows(posets, rows)
    }

    pub fn set(&self) -> &ConfigurationSet {
        &self.0
    }

    pub fn into_set(self) -> ConfigurationSet {
        self.0
    }

    pub fn space(&self) -> &ConfigurationSpace {
        self.0.space()
    }

    pub fn poset(&self, part: Part) -> &Poset {
        &self.0.space().dim(part.index()).poset
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Configuration> {
        self.0.iter()
    }

    pub fn minimized(&self) -> Result<QrmInterface, QrmError> {
        Ok(QrmInterface(pareto::minimize(&self.0)?))
    }

    /// Restricts the interface to the configurations satisfying `pred`.
    pub fn filter<F>(&self, pred: F) -> Result<QrmInterface, QrmError>
    where
        F: Fn(&Configuration) -> Result<bool, ParetoError>,
    {
        Ok(QrmInterface(pareto::apply_constraint(&self.0, pred)?))
    }

    pub fn constrained(&self, constraints: &[Constraint]) -> Result<QrmInterface, QrmError> {
        let mut set = self.0.clone();
        for c in constraints {
            set = c.apply(&set)?;
        }
        Ok(QrmInterface(set))
    }

    /// Normalizes the listed parts to the void poset and minimizes.
    pub fn voided(&self, parts: &[Part]) -> Result<QrmInterface, QrmError> {
        let steps = Part::ALL
            .iter()
            .map(|p| {
                Step::Derive(if parts.contains(p) {
                    Derivation::Void
                } else {
                    Derivation::Copy(p.index())
                })
            })
            .collect::<Vec<_>>();
        let normalized = apply_steps(&self.0, &steps)?;
        finish(&normalized, 6)
    }

    /// Relabels the domains of the listed parts with `#tag`, leaving values untouched.
    ///
    /// Tagged parts of two interfaces no longer share a poset, so poset
    /// addition pairs them instead of summing.
    pub fn tagged(&self, tag: &str, parts: &[Part]) -> Result<QrmInterface, QrmError> {
        let posets: [Poset; 6] = std::array::from_fn(|i| {
            let p = &self.space().dim(i).poset;
            if parts.contains(&Part::ALL[i]) {
                p.tagged(tag)
            } else {
                p.clone()
            }
        });
        Ok(QrmInterface(
            self.0.clone().with_space_unchecked(interface_space(posets)),
        ))
    }
}

impl ConfigurationSet {
    /// Swaps in a space with the same shapes but different domain labels.
    pub(crate) fn with_space_unchecked(self, space: ConfigurationSpace) -> ConfigurationSet {
        let (_, configs) = self.into_parts();
        let mut out = ConfigurationSet::empty(space);
        for c in configs {
            out.insert_unchecked(c);
        }
        out
    }
}

/// Keeps the last six dimensions of `set`, renames them to the part names and minimizes.
pub(crate) fn finish(set: &ConfigurationSet, base: usize) -> Result<QrmInterface, QrmError> {
    let arity = set.space().arity();
    if arity != base + 6 {
        return Err(QrmError::NormalizationShape(format!(
            "expected {} dimensions after normalization, found {arity}",
            base + 6
        )));
    }
    let keep: Vec<usize> = (base..arity).collect();
    let projected = pareto::project(set, &keep)?;
    let space = projected.space().renamed(&PART_NAMES)?;
    let renamed = projected.with_space(space)?;
    Ok(QrmInterface(pareto::minimize(&renamed)?))
}

impl fmt::Display for QrmInterface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.sorted().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests;
