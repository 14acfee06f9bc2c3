//! Entropy expressions: exact-rational linear combinations of joint-entropy
//! coordinates, plus the information terms that expand into them.
//!
//! Everything here is exact. `H(∅) = 0` is applied during expansion and
//! never stored; zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::vars::{Permutation, VarError, VarSet, VarUniverse};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error(transparent)]
    Var(#[from] VarError),
    #[error("universe mismatch: `{0}` vs `{1}`")]
    UniverseMismatch(String, String),
    #[error("mutual information requires nonempty arguments")]
    EmptyMutualArg,
    #[error("substitution must cover variable `{0}`")]
    IncompleteSubstitution(String),
}

/// A linear combination of `H(S)` coordinates with exact rational
/// coefficients, keyed by nonempty subset mask.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EntropyExpr {
    coeffs: BTreeMap<u32, Rat>,
}

impl EntropyExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `H(set)`; the empty set yields the zero expression.
    pub fn entropy(set: VarSet) -> Self {
        let mut e = Self::zero();
        e.add_term(set, Rat::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, set: VarSet, coeff: Rat) {
        if set.is_empty() || coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(set.mask).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&set.mask);
        }
    }

    pub fn add_assign(&mut self, other: &EntropyExpr) {
        for (&mask, coeff) in &other.coeffs {
            self.add_term(VarSet::from_mask(mask), coeff.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &EntropyExpr) {
        for (&mask, coeff) in &other.coeffs {
            self.add_term(VarSet::from_mask(mask), -coeff.clone());
        }
    }

    pub fn scaled(&self, factor: &Rat) -> EntropyExpr {
        if factor.is_zero() {
            return EntropyExpr::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, c)| (m, c * factor))
            .collect();
        EntropyExpr { coeffs }
    }

    pub fn negated(&self) -> EntropyExpr {
        let coeffs = self.coeffs.iter().map(|(&m, c)| (m, -c.clone())).collect();
        EntropyExpr { coeffs }
    }

    pub fn coeff(&self, set: VarSet) -> Rat {
        self.coeffs.get(&set.mask).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (VarSet, &Rat)> {
        self.coeffs.iter().map(|(&m, c)| (VarSet::from_mask(m), c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.coeffs
            .keys()
            .map(|m| 31 - m.leading_zeros() as usize)
            .max()
    }

    /// Dense coefficient vector in binary subset order over a universe of
    /// `n` variables.
    pub fn to_coord_vec(&self, n: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); (1usize << n) - 1];
        for (&mask, c) in &self.coeffs {
            v[(mask - 1) as usize] = c.clone();
        }
        v
    }

    /// Rewrite every subset through `map_mask` (used by substitution and
    /// permutation). Images may collapse or become empty; empty drops.
    pub fn map_sets(&self, mut map_mask: impl FnMut(u32) -> u32) -> EntropyExpr {
        let mut out = EntropyExpr::zero();
        for (&mask, coeff) in &self.coeffs {
            out.add_term(VarSet::from_mask(map_mask(mask)), coeff.clone());
        }
        out
    }

    /// Display against a universe (`Display` itself is mask-based).
    pub fn display_in<'a>(&'a self, universe: &'a VarUniverse) -> ExprDisplay<'a> {
        ExprDisplay {
            expr: self,
            universe,
        }
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a EntropyExpr,
    universe: &'a VarUniverse,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (set, coeff) in self.expr.terms() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                write!(f, "{}*", abs)?;
            }
            write!(f, "H({})", self.universe.display_mask(set.mask))?;
        }
        Ok(())
    }
}

/// An unexpanded information term: `H(x|z)` or `I(x;y|z)` with `z`
/// possibly empty. Expansion into `H` coordinates is the single source
/// of truth for what these mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfoTerm {
    /// `H(x | z)`; plain `H(x)` has empty `z`.
    Entropy { x: VarSet, z: VarSet },
    /// `I(x ; y | z)`; plain `I(x;y)` has empty `z`.
    Mutual { x: VarSet, y: VarSet, z: VarSet },
}

impl InfoTerm {
    pub fn entropy(x: VarSet) -> Self {
        InfoTerm::Entropy { x, z: VarSet::EMPTY }
    }

    pub fn cond_entropy(x: VarSet, z: VarSet) -> Self {
        InfoTerm::Entropy { x, z }
    }

    pub fn mutual(x: VarSet, y: VarSet) -> Self {
        InfoTerm::Mutual {
            x,
            y,
            z: VarSet::EMPTY,
        }
    }

    pub fn cond_mutual(x: VarSet, y: VarSet, z: VarSet) -> Self {
        InfoTerm::Mutual { x, y, z }
    }

    /// All variables mentioned by the term.
    pub fn support(self) -> VarSet {
        match self {
            InfoTerm::Entropy { x, z } => x.union(z),
            InfoTerm::Mutual { x, y, z } => x.union(y).union(z),
        }
    }

    pub fn display_in<'a>(&'a self, universe: &'a VarUniverse) -> InfoTermDisplay<'a> {
        InfoTermDisplay {
            term: self,
            universe,
        }
    }
}

pub struct InfoTermDisplay<'a> {
    term: &'a InfoTerm,
    universe: &'a VarUniverse,
}

impl fmt::Display for InfoTermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.universe;
        match *self.term {
            InfoTerm::Entropy { x, z } => {
                if z.is_empty() {
                    write!(f, "H({})", u.display_mask(x.mask))
                } else {
                    write!(f, "H({}|{})", u.display_mask(x.mask), u.display_mask(z.mask))
                }
            }
            InfoTerm::Mutual { x, y, z } => {
                if z.is_empty() {
                    write!(f, "I({};{})", u.display_mask(x.mask), u.display_mask(y.mask))
                } else {
                    write!(
                        f,
                        "I({};{}|{})",
                        u.display_mask(x.mask),
                        u.display_mask(y.mask),
                        u.display_mask(z.mask)
                    )
                }
            }
        }
    }
}

/// Expand an information term into basic entropy coordinates:
/// `H(x|z) = H(xz) - H(z)` and
/// `I(x;y|z) = H(xz) + H(yz) - H(xyz) - H(z)`.
pub fn expand_info_term(term: InfoTerm, universe: &VarUniverse) -> Result<EntropyExpr, ExprError> {
    if !universe.contains_mask(term.support().mask) {
        return Err(ExprError::Var(VarError::OutOfUniverse { n: universe.len() }));
    }
    let mut e = EntropyExpr::zero();
    match term {
        InfoTerm::Entropy { x, z } => {
            if x.is_empty() {
                return Err(ExprError::EmptyMutualArg);
            }
            e.add_term(x.union(z), Rat::one());
            e.add_term(z, -Rat::one());
        }
        InfoTerm::Mutual { x, y, z } => {
            if x.is_empty() || y.is_empty() {
                return Err(ExprError::EmptyMutualArg);
            }
            e.add_term(x.union(z), Rat::one());
            e.add_term(y.union(z), Rat::one());
            e.add_term(x.union(y).union(z), -Rat::one());
            e.add_term(z, -Rat::one());
        }
    }
    Ok(e)
}

/// True iff two expressions have identical coefficient maps. Expressions
/// are canonical by construction, so this is plain equality.
pub fn linear_identical(e1: &EntropyExpr, e2: &EntropyExpr) -> bool {
    e1 == e2
}

/// A canonicalized statement `expr >= 0` with a free-text label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearInequality {
    pub expr: EntropyExpr,
    pub label: String,
    pub universe: VarUniverse,
}

impl LinearInequality {
    pub fn new(expr: EntropyExpr, label: impl Into<String>, universe: VarUniverse) -> Self {
        Self {
            expr,
            label: label.into(),
            universe,
        }
    }

    /// Same statement over an enlarged universe (ground bits keep their
    /// positions, so coefficients carry over unchanged).
    pub fn lifted_to(&self, universe: &VarUniverse) -> Result<LinearInequality, ExprError> {
        if universe.len() < self.universe.len()
            || universe.names()[..self.universe.len()] != *self.universe.names()
        {
            return Err(ExprError::UniverseMismatch(
                self.universe.to_string(),
                universe.to_string(),
            ));
        }
        Ok(LinearInequality {
            expr: self.expr.clone(),
            label: self.label.clone(),
            universe: universe.clone(),
        })
    }

    /// Same universe names and same coefficient map; labels are not
    /// compared.
    pub fn same_statement(&self, other: &LinearInequality) -> bool {
        self.universe == other.universe && linear_identical(&self.expr, &other.expr)
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} >= 0", self.expr.display_in(&self.universe))
    }
}

/// Substitute each variable of `q`'s universe by a subset of `target`'s
/// universe: `H(S)` becomes `H(∪_{t in S} f(t))`. Images may be empty,
/// in which case the term contributes `H(∅) = 0`.
pub fn substitute(
    q: &LinearInequality,
    f: &[VarSet],
    target: &VarUniverse,
) -> Result<LinearInequality, ExprError> {
    if f.len() != q.universe.len() {
        return Err(ExprError::IncompleteSubstitution(
            q.universe
                .names()
                .get(f.len())
                .cloned()
                .unwrap_or_default(),
        ));
    }
    for set in f {
        if !target.contains_mask(set.mask) {
            return Err(ExprError::Var(VarError::OutOfUniverse { n: target.len() }));
        }
    }
    let expr = q.expr.map_sets(|mask| {
        let mut image = 0u32;
        for i in VarSet::from_mask(mask).iter_vars() {
            image |= f[i].mask;
        }
        image
    });
    Ok(LinearInequality::new(
        expr,
        format!("{}[subst]", q.label),
        target.clone(),
    ))
}

/// Re-index an inequality by a permutation of its universe.
pub fn permute_inequality(q: &LinearInequality, p: &Permutation) -> LinearInequality {
    assert_eq!(p.len(), q.universe.len(), "permutation size mismatch");
    LinearInequality {
        expr: q.expr.map_sets(|mask| p.apply_mask(mask)),
        label: q.label.clone(),
        universe: q.universe.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u5() -> VarUniverse {
        VarUniverse::letters(5).unwrap()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn expand_mutual_matches_definition() {
        let u = u5();
        let a = u.set_of(&["A"]).unwrap();
        let b = u.set_of(&["B"]).unwrap();
        let e = expand_info_term(InfoTerm::mutual(a, b), &u).unwrap();
        assert_eq!(e.coeff(a), rat(1));
        assert_eq!(e.coeff(b), rat(1));
        assert_eq!(e.coeff(a.union(b)), rat(-1));
        assert_eq!(e.term_count(), 3);
    }

    #[test]
    fn expand_self_information_is_entropy() {
        let u = u5();
        let a = u.set_of(&["A"]).unwrap();
        let e = expand_info_term(InfoTerm::mutual(a, a), &u).unwrap();
        assert_eq!(e, EntropyExpr::entropy(a));
    }

    #[test]
    fn expand_conditional_mutual() {
        let u = u5();
        let a = u.set_of(&["A"]).unwrap();
        let b = u.set_of(&["B"]).unwrap();
        let c = u.set_of(&["C"]).unwrap();
        let e = expand_info_term(InfoTerm::cond_mutual(a, b, c), &u).unwrap();
        assert_eq!(e.coeff(a.union(c)), rat(1));
        assert_eq!(e.coeff(b.union(c)), rat(1));
        assert_eq!(e.coeff(a.union(b).union(c)), rat(-1));
        assert_eq!(e.coeff(c), rat(-1));
    }

    #[test]
    fn expansion_rejects_foreign_variables() {
        let u = VarUniverse::letters(2).unwrap();
        let c = VarSet::from_mask(0b100);
        assert!(expand_info_term(InfoTerm::entropy(c), &u).is_err());
    }

    #[test]
    fn mutual_symmetry() {
        let u = u5();
        let a = u.set_of(&["A"]).unwrap();
        let b = u.set_of(&["B"]).unwrap();
        let ab = expand_info_term(InfoTerm::mutual(a, b), &u).unwrap();
        let ba = expand_info_term(InfoTerm::mutual(b, a), &u).unwrap();
        assert!(linear_identical(&ab, &ba));
    }

    #[test]
    fn display_round_shape() {
        let u = u5();
        let a = u.set_of(&["A"]).unwrap();
        let b = u.set_of(&["B"]).unwrap();
        let mut e = EntropyExpr::entropy(a);
        e.add_term(b, rat(-2));
        assert_eq!(e.display_in(&u).to_string(), "H(A) - 2*H(B)");
    }
}
