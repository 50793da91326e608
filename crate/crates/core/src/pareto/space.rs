use std::collections::HashSet;

use super::{Configuration, ParetoError};
use crate::poset::{Poset, PosetDescriptor};

/// An ordered list of named posets: `Q₁ × … × Qₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigurationSpace {
    dims: Vec<PosetDescriptor>,
}

impl ConfigurationSpace {
    pub fn new(dims: Vec<PosetDescriptor>) -> Result<ConfigurationSpace, ParetoError> {
        if dims.is_empty() {
            return Err(ParetoError::EmptySpace);
        }
        let mut seen = HashSet::new();
        for d in &dims {
            if !seen.insert(d.name.as_str()) {
                return Err(ParetoError::DuplicateName(d.name.clone()));
            }
        }
        Ok(ConfigurationSpace { dims })
    }

    /// A space with generated names `q1 … qn`.
    pub fn of_posets<I: IntoIterator<Item = Poset>>(
        posets: I,
    ) -> Result<ConfigurationSpace, ParetoError> {
        let dims = posets
            .into_iter()
            .enumerate()
            .map(|(i, p)| PosetDescriptor::new(format!("q{}", i + 1), p))
            .collect();
        ConfigurationSpace::new(dims)
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[PosetDescriptor] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> &PosetDescriptor {
        &self.dims[i]
    }

    pub fn get(&self, i: usize) -> Result<&PosetDescriptor, ParetoError> {
        self.dims.get(i).ok_or(ParetoError::IndexOutOfRange {
            index: i,
            arity: self.arity(),
        })
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.dims.iter().position(|d| d.name == name)
    }

    pub(crate) fn check_arity(&self, c: &Configuration) -> Result<(), ParetoError> {
        if c.arity() != self.arity() {
            return Err(ParetoError::ArityMismatch {
                expected: self.arity(),
                found: c.arity(),
            });
        }
        Ok(())
    }

    /// Checks that every value of `c` inhabits its dimension.
    pub fn check(&self, c: &Configuration) -> Result<(), ParetoError> {
        self.check_arity(c)?;
        for (d, v) in self.dims.iter().zip(&c.0) {
            d.poset.check(v).map_err(|source| ParetoError::Dimension {
                dim: d.name.clone(),
                source,
            })?;
        }
        Ok(())
    }

    /// Posets agree dimension by dimension; names may differ.
    pub fn same_posets(&self, other: &ConfigurationSpace) -> bool {
        self.arity() == other.arity()
            && self
                .dims
                .iter()
                .zip(&other.dims)
                .all(|(a, b)| a.poset == b.poset)
    }

    pub(crate) fn ensure_same_posets(&self, other: &ConfigurationSpace) -> Result<(), ParetoError> {
        if self.arity() != other.arity() {
            return Err(ParetoError::SpaceMismatch(format!(
                "arity {} vs {}",
                self.arity(),
                other.arity()
            )));
        }
        for (i, (a, b)) in self.dims.iter().zip(&other.dims).enumerate() {
            if a.poset != b.poset {
                return Err(ParetoError::SpaceMismatch(format!(
                    "dimension {i}: {} vs {}",
                    a.poset, b.poset
                )));
            }
        }
        Ok(())
    }

    fn fresh_name(&self, name: &str, position: usize) -> String {
        if self.index_of(name).is_none() {
            return name.to_string();
        }
        let mut candidate = format!("{name}_{position}");
        while self.index_of(&candidate).is_some() {
            candidate.push('\'');
        }
        candidate
    }

    /// Concatenation; colliding names from `other` become `name_k` with `k` the 1-based position.
    pub fn concat(&self, other: &ConfigurationSpace) -> ConfigurationSpace {
        let mut out = self.clone();
        for d in &other.dims {
            let name = out.fresh_name(&d.name, out.arity() + 1);
            out.dims.push(PosetDescriptor::new(name, d.poset.clone()));
        }
        out
    }

    /// Appends a dimension, renaming it when the name is taken.
    pub fn extended(&self, d: PosetDescriptor) -> Result<ConfigurationSpace, ParetoError> {
        let mut out = self.clone();
        let name = out.fresh_name(&d.name, out.arity() + 1);
        out.dims.push(PosetDescriptor::new(name, d.poset));
        Ok(out)
    }

    pub fn without(&self, k: usize) -> Result<ConfigurationSpace, ParetoError> {
        self.get(k)?;
        if self.arity() == 1 {
            return Err(ParetoError::EmptySpace);
        }
        let mut dims = self.dims.clone();
        dims.remove(k);
        Ok(ConfigurationSpace { dims })
    }

    pub fn select(&self, keep: &[usize]) -> Result<ConfigurationSpace, ParetoError> {
        let dims = keep
            .iter()
            .map(|&i| self.get(i).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        ConfigurationSpace::new(dims)
    }

    pub fn renamed(&self, names: &[&str]) -> Result<ConfigurationSpace, ParetoError> {
        if names.len() != self.arity() {
            return Err(ParetoError::ArityMismatch {
                expected: self.arity(),
                found: names.len(),
            });
        }
        let dims = self
            .dims
            .iter()
            .zip(names)
            .map(|(d, n)| PosetDescriptor::new(*n, d.poset.clone()))
            .collect();
        ConfigurationSpace::new(dims)
    }
}
