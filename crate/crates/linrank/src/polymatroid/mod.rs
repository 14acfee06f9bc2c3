//! Rank vectors as polymatroids: axiom checks, rank computation from
//! matrix representations over the rationals and prime fields, the
//! all-fields criterion, extreme-ray and face verification, and the
//! independence-family vector constructions.

mod axioms;
mod faces;
mod independence;
pub mod linalg;
mod ranks;

pub use axioms::{validate_polymatroid, PolymatroidViolation};
pub use faces::{extremality_check, face_check, tight_set, FaceError};
pub use independence::{
    independence_vectors, random_w_representation, IndependenceError, IndependenceFamily, WKind,
};
pub use linalg::{IntMatrix, MatrixError, PrimeField};
pub use ranks::{all_fields_check, ranks_from_matrices, ranks_mod_p};

use thiserror::Error;

use crate::vars::VarUniverse;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("expected {expected} matrices, got {got}")]
    WrongMatrixCount { expected: usize, got: usize },
    #[error("matrix for `{var}` has {got} columns, expected {expected}")]
    ColumnMismatch {
        var: String,
        expected: usize,
        got: usize,
    },
}

/// Per-variable integer matrices over a shared ambient column space; the
/// row space of each matrix is the subspace assigned to that variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceRepresentation {
    universe: VarUniverse,
    matrices: Vec<IntMatrix>,
    cols: usize,
}

impl SubspaceRepresentation {
    pub fn new(
        universe: VarUniverse,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self, RepresentationError> {
        if matrices.len() != universe.len() {
            return Err(RepresentationError::WrongMatrixCount {
                expected: universe.len(),
                got: matrices.len(),
            });
        }
        let cols = matrices[0].cols();
        for (i, m) in matrices.iter().enumerate() {
            if m.cols() != cols {
                return Err(RepresentationError::ColumnMismatch {
                    var: universe.name(i).to_string(),
                    expected: cols,
                    got: m.cols(),
                });
            }
        }
        Ok(Self {
            universe,
            matrices,
            cols,
        })
    }

    pub fn universe(&self) -> &VarUniverse {
        &self.universe
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, var: usize) -> &IntMatrix {
        &self.matrices[var]
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// All rows of the matrices selected by `mask`, stacked.
    pub fn stacked_rows(&self, mask: u32) -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for i in 0..self.universe.len() {
            if mask & (1 << i) != 0 {
                rows.extend(self.matrices[i].row_vecs());
            }
        }
        rows
    }
}
