//! Rank vectors: candidate polymatroid / entropy points with `2^n - 1`
//! nonnegative rational coordinates in binary subset order.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::expr::EntropyExpr;
use crate::vars::{Permutation, VarSet, VarUniverse};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("coordinate {index} is negative")]
    Negative { index: usize },
    #[error("universe mismatch: `{0}` vs `{1}`")]
    UniverseMismatch(String, String),
}

/// `2^n - 1` nonnegative rationals in binary subset order, with the value
/// on the empty set implicitly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankVector {
    universe: VarUniverse,
    coords: Vec<Rat>,
}

impl RankVector {
    pub fn new(universe: VarUniverse, coords: Vec<Rat>) -> Result<Self, RankError> {
        if coords.len() != universe.coord_count() {
            return Err(RankError::WrongLength {
                expected: universe.coord_count(),
                got: coords.len(),
            });
        }
        if let Some(index) = coords.iter().position(|c| c.is_negative()) {
            return Err(RankError::Negative { index });
        }
        Ok(Self { universe, coords })
    }

    pub fn from_integers(universe: VarUniverse, coords: &[i64]) -> Result<Self, RankError> {
        let coords = coords
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect();
        Self::new(universe, coords)
    }

    pub fn zero(universe: VarUniverse) -> Self {
        let coords = vec![Rat::zero(); universe.coord_count()];
        Self { universe, coords }
    }

    pub fn universe(&self) -> &VarUniverse {
        &self.universe
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Value on a subset; the empty set evaluates to zero.
    pub fn value(&self, set: VarSet) -> Rat {
        if set.is_empty() {
            Rat::zero()
        } else {
            self.coords[set.coord()].clone()
        }
    }

    pub fn scaled(&self, factor: &Rat) -> RankVector {
        RankVector {
            universe: self.universe.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &RankVector) -> Result<RankVector, RankError> {
        self.check_universe(other.universe())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RankVector {
            universe: self.universe.clone(),
            coords,
        })
    }

    pub fn check_universe(&self, other: &VarUniverse) -> Result<(), RankError> {
        if &self.universe != other {
            return Err(RankError::UniverseMismatch(
                self.universe.to_string(),
                other.to_string(),
            ));
        }
        Ok(())
    }
}

/// Exact dot product of an expression's coefficients with a vector's
/// coordinates. The expression must fit inside the vector's universe.
pub fn evaluate(expr: &EntropyExpr, v: &RankVector) -> Result<Rat, RankError> {
    let n = v.universe().len();
    if let Some(max) = expr.max_var() {
        if max >= n {
            return Err(RankError::UniverseMismatch(
                format!("expression on >= {} variables", max + 1),
                v.universe().to_string(),
            ));
        }
    }
    let mut acc = Rat::zero();
    for (set, coeff) in expr.terms() {
        acc += coeff * &v.coords()[set.coord()];
    }
    Ok(acc)
}

/// Re-index a vector by a permutation of its universe's variables.
pub fn permute_vector(v: &RankVector, p: &Permutation) -> RankVector {
    assert_eq!(p.len(), v.universe().len(), "permutation size mismatch");
    let mut coords = vec![Rat::zero(); v.coords().len()];
    for (i, c) in v.coords().iter().enumerate() {
        let mask = (i + 1) as u32;
        coords[(p.apply_mask(mask) - 1) as usize] = c.clone();
    }
    RankVector {
        universe: v.universe().clone(),
        coords,
    }
}

/// The lexicographically least coordinate vector in the permutation orbit
/// of `v`. Deterministic, idempotent, and invariant under permutations.
pub fn orbit_canonical(v: &RankVector) -> RankVector {
    let n = v.universe().len();
    let mut best: Option<RankVector> = None;
    for p in Permutation::all(n) {
        let image = permute_vector(v, &p);
        match &best {
            Some(b) if image.coords() >= b.coords() => {}
            _ => best = Some(image),
        }
    }
    best.expect("orbit is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn rejects_wrong_length_and_negatives() {
        let u = VarUniverse::letters(2).unwrap();
        assert_eq!(
            RankVector::from_integers(u.clone(), &[1, 1]).unwrap_err(),
            RankError::WrongLength {
                expected: 3,
                got: 2
            }
        );
        assert!(matches!(
            RankVector::from_integers(u, &[1, -1, 2]).unwrap_err(),
            RankError::Negative { index: 1 }
        ));
    }

    #[test]
    fn evaluate_entropy_on_zero_vector() {
        let u = VarUniverse::letters(3).unwrap();
        let v = RankVector::zero(u.clone());
        let e = EntropyExpr::entropy(u.set_of(&["A"]).unwrap());
        assert_eq!(evaluate(&e, &v).unwrap(), rat(0));
    }

    #[test]
    fn evaluate_rejects_universe_mismatch() {
        let u2 = VarUniverse::letters(2).unwrap();
        let u3 = VarUniverse::letters(3).unwrap();
        let v = RankVector::zero(u2);
        let e = EntropyExpr::entropy(u3.set_of(&["C"]).unwrap());
        assert!(evaluate(&e, &v).is_err());
    }

    #[test]
    fn symmetric_vector_is_its_own_canonical_form() {
        let u = VarUniverse::letters(3).unwrap();
        let coords: Vec<i64> = (1u32..8).map(|m| m.count_ones() as i64).collect();
        let v = RankVector::from_integers(u, &coords).unwrap();
        assert_eq!(orbit_canonical(&v), v);
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let u = VarUniverse::letters(3).unwrap();
        let v = RankVector::from_integers(u, &[1, 2, 2, 1, 2, 2, 3]).unwrap();
        let canon = orbit_canonical(&v);
        for p in Permutation::all(3) {
            assert_eq!(orbit_canonical(&permute_vector(&v, &p)), canon);
        }
        assert_eq!(orbit_canonical(&canon), canon);
    }
}
