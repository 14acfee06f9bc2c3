//! Polymatroid axiom checks: normalization, monotonicity, submodularity.

use std::fmt;

use crate::rank::RankVector;
use crate::vars::VarSet;

/// The first failing axiom instance, by subset masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolymatroidViolation {
    /// `v(S) > v(T)` for some `S ⊆ T`.
    Monotonicity { s: u32, t: u32 },
    /// `v(S) + v(T) < v(S ∪ T) + v(S ∩ T)`.
    Submodularity { s: u32, t: u32 },
}

impl fmt::Display for PolymatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolymatroidViolation::Monotonicity { s, t } => {
                write!(f, "monotonicity fails at masks {s:#b} ⊆ {t:#b}")
            }
            PolymatroidViolation::Submodularity { s, t } => {
                write!(f, "submodularity fails at masks {s:#b}, {t:#b}")
            }
        }
    }
}

impl PolymatroidViolation {
    pub fn describe(&self, v: &RankVector) -> String {
        let u = v.universe();
        match *self {
            PolymatroidViolation::Monotonicity { s, t } => format!(
                "monotonicity fails: v({}) = {} > {} = v({})",
                u.display_mask(s),
                v.value(VarSet::from_mask(s)),
                v.value(VarSet::from_mask(t)),
                u.display_mask(t),
            ),
            PolymatroidViolation::Submodularity { s, t } => format!(
                "submodularity fails at S = {}, T = {}",
                u.display_mask(s),
                u.display_mask(t),
            ),
        }
    }
}

/// Check the polymatroid axioms exhaustively over all subset pairs,
/// reporting the first violation in ascending mask order. `v(∅) = 0`
/// holds by representation.
pub fn validate_polymatroid(v: &RankVector) -> Result<(), PolymatroidViolation> {
    let full = v.universe().full_mask();
    // monotonicity: S ⊆ T ⟹ v(S) ≤ v(T); it suffices to compare each T
    // against its one-element-removed subsets
    let mut t = 1u32;
    while t <= full {
        let tv = v.value(VarSet::from_mask(t));
        let mut bits = t;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            let s = t & !bit;
            if s != 0 && v.value(VarSet::from_mask(s)) > tv {
                return Err(PolymatroidViolation::Monotonicity { s, t });
            }
            bits &= bits - 1;
        }
        t += 1;
    }
    let mut s = 1u32;
    while s <= full {
        let sv = v.value(VarSet::from_mask(s));
        let mut t = s + 1;
        while t <= full {
            let union = s | t;
            let inter = s & t;
            let lhs = &sv + v.value(VarSet::from_mask(t));
            let rhs = v.value(VarSet::from_mask(union)) + v.value(VarSet::from_mask(inter));
            if lhs < rhs {
                return Err(PolymatroidViolation::Submodularity { s, t });
            }
            t += 1;
        }
        s += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarUniverse;

    #[test]
    fn cardinality_function_is_polymatroid() {
        let u = VarUniverse::letters(4).unwrap();
        let coords: Vec<i64> = (1u32..16).map(|m| m.count_ones() as i64).collect();
        let v = RankVector::from_integers(u, &coords).unwrap();
        assert_eq!(validate_polymatroid(&v), Ok(()));
    }

    #[test]
    fn detects_monotonicity_violation() {
        let u = VarUniverse::letters(2).unwrap();
        let v = RankVector::from_integers(u, &[2, 1, 1]).unwrap();
        assert_eq!(
            validate_polymatroid(&v),
            Err(PolymatroidViolation::Monotonicity { s: 0b01, t: 0b11 })
        );
    }

    #[test]
    fn detects_submodularity_violation() {
        let u = VarUniverse::letters(2).unwrap();
        let v = RankVector::from_integers(u, &[1, 1, 3]).unwrap();
        assert_eq!(
            validate_polymatroid(&v),
            Err(PolymatroidViolation::Submodularity { s: 0b01, t: 0b10 })
        );
        let u2 = VarUniverse::letters(2).unwrap();
        let v = RankVector::from_integers(u2, &[1, 1, 2]).unwrap();
        assert_eq!(validate_polymatroid(&v), Ok(()));
    }
}
