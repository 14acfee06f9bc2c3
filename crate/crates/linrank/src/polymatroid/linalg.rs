//! Small exact linear algebra: integer matrices, rank over the rationals,
//! rank and kernels over prime fields, and Smith normal form.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A dense integer matrix; rows span a subspace of the ambient column
/// space. Zero-row matrices are legal and still carry a column count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self, MatrixError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i + 1,
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn empty(cols: usize) -> Self {
        Self {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Rank over the rationals by Gaussian elimination in exact arithmetic.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut echelon = RatEchelon::new();
    for row in rows {
        let rat_row: Vec<Rat> = row.iter().map(|&e| crate::rat(e)).collect();
        echelon.insert(rat_row);
    }
    echelon.rank()
}

/// Incremental row-echelon basis over the rationals. Rows are inserted
/// one at a time; the rank is the number of independent rows seen.
pub struct RatEchelon {
    // each pivot row is normalized to leading coefficient 1
    pivots: Vec<(usize, Vec<Rat>)>,
}

impl RatEchelon {
    pub fn new() -> Self {
        Self { pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the basis; if a nonzero remainder is left,
    /// add it as a new pivot row and return `true`.
    pub fn insert(&mut self, mut row: Vec<Rat>) -> bool {
        for (col, pivot) in &self.pivots {
            if !row[*col].is_zero() {
                let factor = row[*col].clone();
                for (r, p) in row.iter_mut().zip(pivot.iter()) {
                    if !p.is_zero() {
                        *r -= &factor * p;
                    }
                }
            }
        }
        match row.iter().position(|c| !c.is_zero()) {
            Some(col) => {
                let lead = row[col].clone();
                for c in row.iter_mut() {
                    if !c.is_zero() {
                        *c /= &lead;
                    }
                }
                self.pivots.push((col, row));
                self.pivots.sort_by_key(|(c, _)| *c);
                true
            }
            None => false,
        }
    }
}

impl Default for RatEchelon {
    fn default() -> Self {
        Self::new()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic over the field with `p` elements, `p < 2^31`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, MatrixError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(MatrixError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn reduce(&self, x: i64) -> u64 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        // Fermat: a^(p-2) mod p
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn reduce_rows(&self, rows: &[Vec<i64>]) -> Vec<Vec<u64>> {
        rows.iter()
            .map(|r| r.iter().map(|&e| self.reduce(e)).collect())
            .collect()
    }
}

/// Row-reduce in place; returns the rank. Rows end up in echelon form.
pub fn mod_row_reduce(rows: &mut Vec<Vec<u64>>, field: PrimeField) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for c in col..ncols {
            rows[rank][c] = field.mul(rows[rank][c], inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let factor = rows[i][col];
                for c in col..ncols {
                    let sub = field.mul(factor, rows[rank][c]);
                    rows[i][c] = field.sub(rows[i][c], sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

pub fn mod_rank(rows: &[Vec<u64>], field: PrimeField) -> usize {
    let mut work = rows.to_vec();
    mod_row_reduce(&mut work, field)
}

/// Basis of `{ x : x M = 0 }` (left null space of the row list viewed as
/// a map from coefficient space to the ambient space).
pub fn mod_left_kernel(rows: &[Vec<u64>], field: PrimeField) -> Vec<Vec<u64>> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    // transpose: columns of M^T are the original rows
    let mut work: Vec<Vec<u64>> = (0..ncols)
        .map(|c| (0..m).map(|r| rows[r][c]).collect())
        .collect();
    // reduce M^T and track pivot columns (original row indices)
    let rank = mod_row_reduce(&mut work, field);
    let mut pivot_cols = Vec::with_capacity(rank);
    for row in work.iter() {
        let lead = row.iter().position(|&e| e != 0).expect("nonzero row");
        pivot_cols.push(lead);
    }
    let mut basis = Vec::new();
    for free in 0..m {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut vec = vec![0u64; m];
        vec[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            // pivot entry is 1; solve pc's coefficient
            vec[pc] = field.sub(0, work[r][free]);
        }
        basis.push(vec);
    }
    basis
}

/// Basis of the intersection of two row spaces over `F_p`.
pub fn mod_intersection(a: &[Vec<u64>], b: &[Vec<u64>], field: PrimeField) -> Vec<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ncols = a[0].len();
    // kernel of [A; -B] stacked as rows: coefficients (u, v) with uA = vB
    let mut stacked: Vec<Vec<u64>> = Vec::with_capacity(a.len() + b.len());
    stacked.extend(a.iter().cloned());
    for row in b {
        stacked.push(row.iter().map(|&e| field.sub(0, e)).collect());
    }
    let kernel = mod_left_kernel(&stacked, field);
    let mut out = Vec::new();
    for combo in kernel {
        let mut vec = vec![0u64; ncols];
        for (i, &coef) in combo[..a.len()].iter().enumerate() {
            if coef != 0 {
                for c in 0..ncols {
                    vec[c] = field.add(vec[c], field.mul(coef, a[i][c]));
                }
            }
        }
        if vec.iter().any(|&e| e != 0) {
            out.push(vec);
        }
    }
    let mut reduced = out;
    mod_row_reduce(&mut reduced, field);
    reduced
}

/// Diagonal entries of the Smith normal form (nonzero ones only, in
/// divisibility order, absolute values).
pub fn smith_normal_divisors(rows: &[Vec<i64>]) -> Vec<Int> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| Int::from(e)).collect())
        .collect();
    let mut divisors = Vec::new();
    let mut t = 0usize;
    while t < m && t < n {
        // locate a nonzero entry of minimal absolute value in the submatrix
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        // clear row and column t; restart whenever a remainder survives
        let mut clean = true;
        for i in t + 1..m {
            if a[i][t].is_zero() {
                continue;
            }
            let q = div_nearest(&a[i][t], &a[t][t]);
            for j in t..n {
                let sub = &q * &a[t][j];
                a[i][j] -= sub;
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if a[t][j].is_zero() {
                continue;
            }
            let q = div_nearest(&a[t][j], &a[t][t]);
            for row in a.iter_mut().skip(t) {
                let sub = &q * &row[t];
                row[j] -= sub;
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility: pivot must divide every remaining entry
        let mut fixed = false;
        'outer: for i in t + 1..m {
            for j in t + 1..n {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for jj in t..n {
                        let add = a[i][jj].clone();
                        a[t][jj] += add;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

// Quotient rounded toward the nearest integer, which keeps remainders
// at most half the divisor during the Smith reduction.
fn div_nearest(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rank_basic() {
        assert_eq!(rank_rational(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank_rational(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(rank_rational(&[]), 0);
    }

    #[test]
    fn mod_rank_drops_on_char() {
        let f2 = PrimeField::new(2).unwrap();
        let rows = f2.reduce_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(mod_rank(&rows, f2), 1);
        let f3 = PrimeField::new(3).unwrap();
        let rows = f3.reduce_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(mod_rank(&rows, f3), 2);
    }

    #[test]
    fn field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert!(PrimeField::new(6).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let f = PrimeField::new(101).unwrap();
        // xy-plane and yz-plane meet in the y-axis
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let int = mod_intersection(&f.reduce_rows(&a), &f.reduce_rows(&b), f);
        assert_eq!(int.len(), 1);
        assert_eq!(int[0], vec![0, 1, 0]);
    }

    #[test]
    fn smith_divisors() {
        assert_eq!(
            smith_normal_divisors(&[vec![2, 0], vec![0, 3]]),
            vec![Int::from(1), Int::from(6)]
        );
        assert_eq!(smith_normal_divisors(&[vec![2]]), vec![Int::from(2)]);
        assert_eq!(
            smith_normal_divisors(&[vec![1, 0, 0], vec![0, 1, 0]]),
            vec![Int::from(1), Int::from(1)]
        );
        // rank-deficient
        assert_eq!(smith_normal_divisors(&[vec![2, 4], vec![1, 2]]).len(), 1);
    }

    #[test]
    fn left_kernel_finds_dependencies() {
        let f = PrimeField::new(5).unwrap();
        let rows = f.reduce_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let kernel = mod_left_kernel(&rows, f);
        assert_eq!(kernel.len(), 1);
        // combination must vanish
        let k = &kernel[0];
        for c in 0..2 {
            let mut acc = 0u64;
            for (i, row) in rows.iter().enumerate() {
                acc = f.add(acc, f.mul(k[i], row[c]));
            }
            assert_eq!(acc, 0);
        }
    }
}
