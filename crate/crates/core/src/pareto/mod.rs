//! Configuration spaces, configuration sets and the basic Pareto-algebraic
//! operations: dominance, minimization, product, constraint, derivation,
//! abstraction, permutation and alternatives.

mod space;

use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

use crate::poset::{Comparison, PosetDescriptor, PosetError, Value};

pub use space::ConfigurationSpace;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParetoError {
    #[error("a configuration space needs at least one dimension")]
    EmptySpace,
    #[error("duplicate dimension name `{0}`")]
    DuplicateName(String),
    #[error("configuration has {found} values but the space has {expected} dimensions")]
    ArityMismatch { expected: usize, found: usize },
    #[error("dimension index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("{0:?} is not a permutation")]
    NotABijection(Vec<usize>),
    #[error("configuration spaces differ: {0}")]
    SpaceMismatch(String),
    #[error("dimension `{dim}`: {source}")]
    Dimension {
        dim: String,
        #[source]
        source: PosetError,
    },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// One point of a configuration space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(pub Vec<Value>);

impl Configuration {
    pub fn new(values: Vec<Value>) -> Configuration {
        Configuration(values)
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Value {
        &self.0[i]
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn into_values(self) -> Vec<Value> {
        self.0
    }
}

impl From<Vec<Value>> for Configuration {
    fn from(values: Vec<Value>) -> Self {
        Configuration(values)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Value::Tuple(self.0.clone()))
    }
}

/// A finite, duplicate-free set of configurations of one space.
///
/// Iteration follows insertion order so every operation is deterministic.
#[derive(Clone, Debug)]
pub struct ConfigurationSet {
    space: ConfigurationSpace,
    configs: IndexSet<Configuration>,
}

impl PartialEq for ConfigurationSet {
    /// Set equality: same space and same members regardless of order.
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.configs.len() == other.configs.len()
            && self.configs.iter().all(|c| other.configs.contains(c))
    }
}

impl ConfigurationSet {
    pub fn empty(space: ConfigurationSpace) -> ConfigurationSet {
        ConfigurationSet {
            space,
            configs: IndexSet::new(),
        }
    }

    pub fn from_configs<I>(
        space: ConfigurationSpace,
        configs: I,
    ) -> Result<ConfigurationSet, ParetoError>
    where
        I: IntoIterator<Item = Configuration>,
    {
        let mut set = ConfigurationSet::empty(space);
        for c in configs {
            set.insert(c)?;
        }
        Ok(set)
    }

    /// Builds a set from raw value rows.
    pub fn from_rows<I>(space: ConfigurationSpace, rows: I) -> Result<ConfigurationSet, ParetoError>
    where
        I: IntoIterator<Item = Vec<Value>>,
    {
        ConfigurationSet::from_configs(space, rows.into_iter().map(Configuration))
    }

    /// Validates `c` against the space and adds it; returns false for a duplicate.
    pub fn insert(&mut self, c: Configuration) -> Result<bool, ParetoError> {
        self.space.check(&c)?;
        Ok(self.configs.insert(c))
    }

    pub(crate) fn insert_unchecked(&mut self, c: Configuration) -> bool {
        self.configs.insert(c)
    }

    pub fn space(&self) -> &ConfigurationSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        self.configs.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Configuration> {
        self.configs.iter()
    }

    pub fn configs(&self) -> Vec<&Configuration> {
        self.configs.iter().collect()
    }

    /// Members in the canonical total order of [`Value`].
    pub fn sorted(&self) -> Vec<Configuration> {
        let mut v: Vec<Configuration> = self.configs.iter().cloned().collect();
        v.sort();
        v
    }

    pub fn into_parts(self) -> (ConfigurationSpace, Vec<Configuration>) {
        (self.space, self.configs.into_iter().collect())
    }

    /// Replaces the space by one with equal posets, e.g. to rename dimensions.
    pub fn with_space(self, space: ConfigurationSpace) -> Result<ConfigurationSet, ParetoError> {
        self.space.ensure_same_posets(&space)?;
        Ok(ConfigurationSet {
            space,
            configs: self.configs,
        })
    }
}

impl<'a> IntoIterator for &'a ConfigurationSet {
    type Item = &'a Configuration;
    type IntoIter = indexmap::set::Iter<'a, Configuration>;

    fn into_iter(self) -> Self::IntoIter {
        self.configs.iter()
    }
}

/// Compares two configurations under the dominance order of `space`.
pub fn compare(
    space: &ConfigurationSpace,
    a: &Configuration,
    b: &Configuration,
) -> Result<Comparison, ParetoError> {
    space.check_arity(a)?;
    space.check_arity(b)?;
    let mut acc = Comparison::Equal;
    for (d, (x, y)) in space.dims().iter().zip(a.0.iter().zip(&b.0)) {
        let c = d
            .poset
            .compare(x, y)
            .map_err(|source| ParetoError::Dimension {
                dim: d.name.clone(),
                source,
            })?;
        acc = match (acc, c) {
            (_, Comparison::Incomparable) => return Ok(Comparison::Incomparable),
            (acc, Comparison::Equal) => acc,
            (Comparison::Equal, c) => c,
            (acc, c) if acc == c => acc,
            _ => return Ok(Comparison::Incomparable),
        };
    }
    Ok(acc)
}

/// `c ⪯ c2`: every dimension of `c` is below the corresponding one of `c2`.
pub fn dominates(
    space: &ConfigurationSpace,
    c: &Configuration,
    c2: &Configuration,
) -> Result<bool, ParetoError> {
    Ok(compare(space, c, c2)?.is_le())
}

/// Pareto minimization by Simple Cull.
///
/// Keeps every configuration not strictly dominated by another. Survivors
/// retain their relative input order.
pub fn minimize(set: &ConfigurationSet) -> Result<ConfigurationSet, ParetoError> {
    let space = set.space();
    let mut window: Vec<&Configuration> = Vec::new();
    'candidates: for c in set.iter() {
        let mut beaten = Vec::new();
        for (i, w) in window.iter().enumerate() {
            match compare(space, c, w)? {
                Comparison::Less | Comparison::Equal => continue 'candidates,
                Comparison::Greater => beaten.push(i),
                Comparison::Incomparable => {}
            }
        }
        if !beaten.is_empty() {
            let mut k = 0;
            window.retain(|_| {
                let keep = beaten.binary_search(&k).is_err();
                k += 1;
                keep
            });
        }
        window.push(c);
    }
    Ok(ConfigurationSet {
        space: space.clone(),
        configs: window.into_iter().cloned().collect(),
    })
}

/// True iff no member is strictly dominated by another.
pub fn is_pareto_minimal(set: &ConfigurationSet) -> Result<bool, ParetoError> {
    let cs = set.configs();
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            if matches!(
                compare(set.space(), a, b)?,
                Comparison::Less | Comparison::Greater
            ) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `a ⪯ b`: every configuration of `a` is dominated by some configuration of `b`.
pub fn set_dominates(a: &ConfigurationSet, b: &ConfigurationSet) -> Result<bool, ParetoError> {
    a.space().ensure_same_posets(b.space())?;
    for c in a.iter() {
        let mut covered = false;
        for d in b.iter() {
            if dominates(a.space(), c, d)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn equivalent(a: &ConfigurationSet, b: &ConfigurationSet) -> Result<bool, ParetoError> {
    Ok(set_dominates(a, b)? && set_dominates(b, a)?)
}

/// Cartesian product; the result space is the concatenation of both spaces.
pub fn free_product(a: &ConfigurationSet, b: &ConfigurationSet) -> ConfigurationSet {
    let space = a.space().concat(b.space());
    let mut configs = IndexSet::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            let mut v = Vec::with_capacity(x.arity() + y.arity());
            v.extend_from_slice(&x.0);
            v.extend_from_slice(&y.0);
            configs.insert(Configuration(v));
        }
    }
    ConfigurationSet { space, configs }
}

/// `×ⁿ`: left fold of [`free_product`].
pub fn free_product_all(sets: &[ConfigurationSet]) -> Result<ConfigurationSet, ParetoError> {
    let (first, rest) = sets.split_first().ok_or(ParetoError::EmptySpace)?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, s| free_product(&acc, s)))
}

/// `C ∩ D` for a predicate `D`.
pub fn apply_constraint<F, E>(set: &ConfigurationSet, pred: F) -> Result<ConfigurationSet, E>
where
    F: Fn(&Configuration) -> Result<bool, E>,
{
    let mut configs = IndexSet::new();
    for c in set.iter() {
        if pred(c)? {
            configs.insert(c.clone());
        }
    }
    Ok(ConfigurationSet {
        space: set.space().clone(),
        configs,
    })
}

/// Looks for `c2 ⪯ c1` in `sample` with `c2 ∈ D` but `c1 ∉ D`.
pub fn find_safety_violation<F>(
    pred: F,
    sample: &ConfigurationSet,
) -> Result<Option<(Configuration, Configuration)>, ParetoError>
where
    F: Fn(&Configuration) -> Result<bool, ParetoError>,
{
    let verdicts = sample.iter().map(&pred).collect::<Result<Vec<_>, _>>()?;
    let cs = sample.configs();
    for (i, lo) in cs.iter().enumerate() {
        if !verdicts[i] {
            continue;
        }
        for (j, hi) in cs.iter().enumerate() {
            if !verdicts[j] && dominates(sample.space(), lo, hi)? {
                return Ok(Some(((*lo).clone(), (*hi).clone())));
            }
        }
    }
    Ok(None)
}

/// Sampled safety: dominating configurations are never excluded.
pub fn check_constraint_safety<F>(pred: F, sample: &ConfigurationSet) -> Result<bool, ParetoError>
where
    F: Fn(&Configuration) -> Result<bool, ParetoError>,
{
    Ok(find_safety_violation(pred, sample)?.is_none())
}

/// Appends `f(c)` to every configuration as a new last dimension.
pub fn derive<F, E>(
    set: &ConfigurationSet,
    f: F,
    target: PosetDescriptor,
) -> Result<ConfigurationSet, E>
where
    F: Fn(&Configuration) -> Result<Value, E>,
    E: From<ParetoError>,
{
    let space = set.space().extended(target)?;
    let last = space.dim(space.arity() - 1);
    let mut configs = IndexSet::with_capacity(set.len());
    for c in set.iter() {
        let v = f(c)?;
        last.poset
            .check(&v)
            .map_err(|source| ParetoError::Dimension {
                dim: last.name.clone(),
                source,
            })?;
        let mut values = c.0.clone();
        values.push(v);
        configs.insert(Configuration(values));
    }
    Ok(ConfigurationSet { space, configs })
}

/// Sampled check that `f` is a `⪯`-derivation: `c ⪯ c'` implies `f(c) ⪯ f(c')`.
///
/// Returns the first offending pair.
pub fn find_derivation_violation<F>(
    sample: &ConfigurationSet,
    f: F,
    target: &PosetDescriptor,
) -> Result<Option<(Configuration, Configuration)>, ParetoError>
where
    F: Fn(&Configuration) -> Result<Value, ParetoError>,
{
    let images = sample.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
    let cs = sample.configs();
    for (i, a) in cs.iter().enumerate() {
        for (j, b) in cs.iter().enumerate() {
            if dominates(sample.space(), a, b)?
                && !target.poset.compare(&images[i], &images[j])?.is_le()
            {
                return Ok(Some(((*a).clone(), (*b).clone())));
            }
        }
    }
    Ok(None)
}

/// `C ↓ k`: removes dimension `k` (0-based).
pub fn abstract_dim(set: &ConfigurationSet, k: usize) -> Result<ConfigurationSet, ParetoError> {
    let space = set.space().without(k)?;
    let configs = set
        .iter()
        .map(|c| {
            let mut v = c.0.clone();
            v.remove(k);
            Configuration(v)
        })
        .collect();
    Ok(ConfigurationSet { space, configs })
}

/// Keeps only the listed dimensions (0-based, in the given order).
///
/// Equivalent to abstracting every other dimension followed by a permutation.
pub fn project(set: &ConfigurationSet, keep: &[usize]) -> Result<ConfigurationSet, ParetoError> {
    let space = set.space().select(keep)?;
    let configs = set
        .iter()
        .map(|c| Configuration(keep.iter().map(|&i| c.0[i].clone()).collect()))
        .collect();
    Ok(ConfigurationSet { space, configs })
}

/// Reorders dimensions so that dimension `i` of the result is dimension `pi[i]` of the input.
pub fn permute(set: &ConfigurationSet, pi: &[usize]) -> Result<ConfigurationSet, ParetoError> {
    let n = set.space().arity();
    let mut seen = vec![false; n];
    if pi.len() != n
        || !pi
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
    {
        return Err(ParetoError::NotABijection(pi.to_vec()));
    }
    project(set, pi)
}

/// `∪ⁿ`: union of sets over one space, deduplicated but not minimized.
pub fn alternatives(sets: &[ConfigurationSet]) -> Result<ConfigurationSet, ParetoError> {
    let (first, rest) = sets.split_first().ok_or(ParetoError::EmptySpace)?;
    let mut out = first.clone();
    for s in rest {
        first.space().ensure_same_posets(s.space())?;
        for c in s.iter() {
            out.configs.insert(c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
