//! Variable universes, subset masks, and variable permutations.
//!
//! A universe is an ordered list of distinct variable names; every other
//! structure in the crate indexes coordinates by subsets of a universe.
//! Subsets are bitmasks with variable `i` on bit `i`, and the coordinate
//! of a nonempty subset with mask `m` is `m - 1` ("binary order": A, B,
//! AB, C, AC, BC, ABC, ...).

use std::fmt;

use thiserror::Error;

/// Hard cap on universe size. Coordinate vectors have `2^n - 1` entries,
/// so anything near the cap is already out of desk range.
pub const MAX_VARS: usize = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VarError {
    #[error("universe must have between 1 and {MAX_VARS} variables, got {0}")]
    BadSize(usize),
    #[error("duplicate variable name `{0}`")]
    Duplicate(String),
    #[error("invalid variable name `{0}`")]
    BadName(String),
    #[error("unknown variable `{0}`")]
    Unknown(String),
    #[error("variable set does not fit in universe of {n} variables")]
    OutOfUniverse { n: usize },
    #[error("permutation is not a bijection on {0} variables")]
    NotBijective(usize),
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric())
}

/// An ordered set of distinct variable names. Order is significant: it
/// fixes the bit assignment and hence every coordinate layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarUniverse {
    names: Vec<String>,
}

impl VarUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, VarError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(VarError::BadSize(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(VarError::BadName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(VarError::Duplicate(name.clone()));
            }
        }
        Ok(Self { names })
    }

    /// The first `n` single-letter names `A`, `B`, `C`, ...
    pub fn letters(n: usize) -> Result<Self, VarError> {
        if n == 0 || n > MAX_VARS {
            return Err(VarError::BadSize(n));
        }
        Self::new((0..n).map(|i| ((b'A' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor guarantees at least one variable
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Mask of the full variable set.
    pub fn full_mask(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    /// Number of coordinates in binary subset order: `2^n - 1`.
    pub fn coord_count(&self) -> usize {
        (1usize << self.len()) - 1
    }

    /// Extend with fresh names (used when adjoining auxiliary variables).
    pub fn extended<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = S>,
    ) -> Result<Self, VarError> {
        let mut names = self.names.clone();
        names.extend(extra.into_iter().map(Into::into));
        Self::new(names)
    }

    pub fn set_of(&self, names: &[&str]) -> Result<VarSet, VarError> {
        let mut mask = 0u32;
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| VarError::Unknown((*name).to_string()))?;
            mask |= 1 << i;
        }
        Ok(VarSet { mask })
    }

    pub fn singleton(&self, index: usize) -> VarSet {
        debug_assert!(index < self.len());
        VarSet { mask: 1 << index }
    }

    /// Render a subset mask as a comma-joined name list.
    pub fn display_mask(&self, mask: u32) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            if mask & (1 << i) != 0 {
                if !out.is_empty() {
                    out.push(',');
                }
                out.push_str(&self.names[i]);
            }
        }
        out
    }

    pub fn contains_mask(&self, mask: u32) -> bool {
        mask & !self.full_mask() == 0
    }
}

impl fmt::Display for VarUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

/// A subset of a universe's variables, as a bitmask. The universe itself is
/// carried by context, not stored here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet {
    pub mask: u32,
}

impl VarSet {
    pub const EMPTY: VarSet = VarSet { mask: 0 };

    pub fn from_mask(mask: u32) -> Self {
        VarSet { mask }
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet {
            mask: self.mask | other.mask,
        }
    }

    pub fn intersect(self, other: VarSet) -> VarSet {
        VarSet {
            mask: self.mask & other.mask,
        }
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet {
            mask: self.mask & !other.mask,
        }
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn contains_var(self, index: usize) -> bool {
        self.mask & (1 << index) != 0
    }

    /// Coordinate index in binary subset order; panics on the empty set,
    /// which has no coordinate.
    pub fn coord(self) -> usize {
        assert!(self.mask != 0, "empty set has no coordinate");
        (self.mask - 1) as usize
    }

    pub fn iter_vars(self) -> impl Iterator<Item = usize> {
        (0..32usize).filter(move |i| self.mask & (1 << i) != 0)
    }
}

/// A bijection on the variable indices of a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, VarError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(VarError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply_var(&self, index: usize) -> usize {
        self.image[index]
    }

    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        for (from, &to) in self.image.iter().enumerate() {
            if mask & (1 << from) != 0 {
                out |= 1 << to;
            }
        }
        out
    }

    pub fn apply_set(&self, set: VarSet) -> VarSet {
        VarSet {
            mask: self.apply_mask(set.mask),
        }
    }

    /// All `n!` permutations of `n` indices, in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        permute(&mut current, 0, &mut out);
        out.sort_by(|a, b| a.image.cmp(&b.image));
        out
    }
}

fn permute(current: &mut Vec<usize>, start: usize, out: &mut Vec<Permutation>) {
    if start == current.len() {
        out.push(Permutation {
            image: current.clone(),
        });
        return;
    }
    for i in start..current.len() {
        current.swap(start, i);
        permute(current, start + 1, out);
        current.swap(start, i);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.image.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", strs.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_rejects_duplicates_and_bad_names() {
        assert!(VarUniverse::new(["A", "B", "A"]).is_err());
        assert!(VarUniverse::new(["1A"]).is_err());
        assert!(VarUniverse::new(Vec::<String>::new()).is_err());
        assert!(VarUniverse::new((0..27).map(|i| format!("V{i}"))).is_err());
    }

    #[test]
    fn binary_order_coordinates() {
        let u = VarUniverse::letters(5).unwrap();
        assert_eq!(u.set_of(&["A"]).unwrap().coord(), 0);
        assert_eq!(u.set_of(&["B"]).unwrap().coord(), 1);
        assert_eq!(u.set_of(&["A", "B"]).unwrap().coord(), 2);
        assert_eq!(u.set_of(&["C"]).unwrap().coord(), 3);
        assert_eq!(u.set_of(&["A", "B", "C", "D", "E"]).unwrap().coord(), 30);
    }

    #[test]
    fn permutations_act_on_masks() {
        let p = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(p.apply_mask(0b001), 0b010);
        assert_eq!(p.apply_mask(0b011), 0b011);
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
