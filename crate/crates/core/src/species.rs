//! Species registry and canonical species sets.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Returns true if `name` is a nonempty identifier over `[A-Za-z0-9_]`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// The species universe of an instance.
///
/// Indices are dense, `0..len()`, and follow the byte order of the names so
/// that the same species set always gets the same index assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Species {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Species {
    /// Builds the registry, sorting names. Fails on duplicates or invalid names.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
            return Err(Error::Invalid(format!("invalid species name `{bad}`")));
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate species name `{}`", w[0])));
        }
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Ok(Species { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownSpecies(name.to_string()))
    }

    /// Resolves a list of names into a set.
    pub fn set_of<'a, I>(&self, names: I) -> Result<SpeciesSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names
            .into_iter()
            .map(|n| self.resolve(n))
            .collect::<Result<Vec<_>>>()
            .map(SpeciesSet::from_indices)
    }

    /// Parses a comma separated list such as `A,B,C`. Empty input gives the empty set.
    pub fn parse_set(&self, text: &str) -> Result<SpeciesSet> {
        self.set_of(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn format_set(&self, set: &SpeciesSet) -> String {
        set.iter().map(|i| self.name(i)).collect::<Vec<_>>().join(",")
    }
}

/// A sorted, duplicate-free set of species indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpeciesSet(Vec<usize>);

impl SpeciesSet {
    pub fn new() -> Self {
        SpeciesSet(Vec::new())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SpeciesSet(v)
    }

    /// Wraps a vector that is already sorted and duplicate free.
    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        SpeciesSet(v)
    }

    pub fn singleton(index: usize) -> Self {
        SpeciesSet(vec![index])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn insert(&mut self, index: usize) -> bool {
        match self.0.binary_search(&index) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, index);
                true
            }
        }
    }

    pub fn union(&self, other: &SpeciesSet) -> SpeciesSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SpeciesSet(out)
    }

    pub fn difference(&self, other: &SpeciesSet) -> SpeciesSet {
        SpeciesSet(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    pub fn is_subset(&self, other: &SpeciesSet) -> bool {
        self.len() <= other.len() && self.iter().all(|x| other.contains(x))
    }

    /// Checks every member against a universe of `size` species.
    pub fn check_bounds(&self, size: usize) -> Result<()> {
        match self.0.last() {
            Some(&index) if index >= size => Err(Error::IndexOutOfRange { index, size }),
            _ => Ok(()),
        }
    }

    /// Dense membership mask over `size` species.
    pub fn mask(&self, size: usize) -> Vec<bool> {
        let mut m = vec![false; size];
        for i in self.iter() {
            m[i] = true;
        }
        m
    }
}

impl FromIterator<usize> for SpeciesSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SpeciesSet::from_indices(iter)
    }
}

impl<'a> IntoIterator for &'a SpeciesSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for SpeciesSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn registry_sorts_and_rejects_duplicates() {
        let s = Species::new(["C", "A", "B"]).unwrap();
        assert_eq!(s.names(), &["A", "B", "C"]);
        assert_eq!(s.index_of("C"), Some(2));
        assert!(Species::new(["A", "A"]).is_err());
        assert!(Species::new(["A-1"]).is_err());
        assert!(Species::new([""]).is_err());
    }

    #[test]
    fn parse_and_format_sets() {
        let s = Species::new(["A", "B", "C", "D", "E"]).unwrap();
        let set = s.parse_set("E, A,B").unwrap();
        assert_eq!(set.as_slice(), &[0, 1, 4]);
        assert_eq!(s.format_set(&set), "A,B,E");
        assert!(s.parse_set("").unwrap().is_empty());
        assert!(matches!(s.parse_set("A,Q"), Err(Error::UnknownSpecies(n)) if n == "Q"));
    }

    #[test]
    fn bounds_check() {
        let set = SpeciesSet::from_indices([0, 3]);
        assert!(set.check_bounds(4).is_ok());
        assert!(set.check_bounds(3).is_err());
    }

    proptest! {
        #[test]
        fn set_algebra(a in proptest::collection::vec(0usize..20, 0..10),
                       b in proptest::collection::vec(0usize..20, 0..10)) {
            let sa = SpeciesSet::from_indices(a.clone());
            let sb = SpeciesSet::from_indices(b.clone());
            let u = sa.union(&sb);
            prop_assert!(u.as_slice().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(sa.is_subset(&u) && sb.is_subset(&u));
            prop_assert_eq!(u.len(), sa.len() + sb.difference(&sa).len());
            let mut ins = sa.clone();
            for x in &sb { ins.insert(x); }
            prop_assert_eq!(ins, u);
        }
    }
}
