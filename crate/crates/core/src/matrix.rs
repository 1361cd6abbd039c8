//! Symbolic matrices over [`Polynomial`] and exact rational matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Largest order accepted by the cofactor expansion (memo has `2^n` states).
pub const SYMBOLIC_DET_LIMIT: usize = 20;

/// Polynomial matrix with vertex multisets labelling rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<Polynomial>>,
}

impl SymbolicMatrix {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::SizeMismatch(format!(
                "entries do not form a {}x{} matrix",
                rows.len(),
                cols.len()
            )));
        }
        Ok(SymbolicMatrix { rows, cols, entries })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    /// Entry addressed by vertex labels rather than positions (first match).
    pub fn entry(&self, row_vertex: usize, col_vertex: usize) -> Option<&Polynomial> {
        let r = self.rows.iter().position(|&v| v == row_vertex)?;
        let c = self.cols.iter().position(|&v| v == col_vertex)?;
        Some(&self.entries[r][c])
    }

    /// Submatrix on the given vertex lists; repeated vertices repeat rows.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<SymbolicMatrix> {
        let pos = |labels: &[usize], v: usize, what: &'static str| {
            labels.iter().position(|&x| x == v).ok_or(Error::NotSubset {
                what,
                container: "matrix labels",
            })
        };
        let ri = rows
            .iter()
            .map(|&v| pos(&self.rows, v, "row set"))
            .collect::<Result<Vec<_>>>()?;
        let ci = cols
            .iter()
            .map(|&v| pos(&self.cols, v, "column set"))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolicMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: ri
                .iter()
                .map(|&r| ci.iter().map(|&c| self.entries[r][c].clone()).collect())
                .collect(),
        })
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        SymbolicMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: (0..self.ncols())
                .map(|c| (0..self.nrows()).map(|r| self.entries[r][c].clone()).collect())
                .collect(),
        }
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        determinant(&self.entries)
    }
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// columns still available.
pub fn determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NonSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    if n > SYMBOLIC_DET_LIMIT {
        return Err(Error::TooLarge {
            what: "symbolic determinant",
            size: n,
            limit: SYMBOLIC_DET_LIMIT,
        });
    }
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    Ok(minor_rec(m, 0, (1u32 << n) - 1, &mut memo))
}

fn minor_rec(m: &[Vec<Polynomial>], row: usize, cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if cols == 0 {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero();
    let mut sign_positive = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = &m[row][c];
        if !e.is_zero() {
            let sub = minor_rec(m, row + 1, cols & !(1 << c), memo);
            if !sub.is_zero() {
                let t = e * &sub;
                if sign_positive {
                    acc += t;
                } else {
                    acc -= &t;
                }
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Dense exact rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RationalMatrix {
            nrows,
            ncols,
            data: vec![BigRational::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.data
            .chunks(self.ncols.max(1))
            .take(self.nrows)
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = RationalMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if (self.nrows, self.ncols) != (rhs.nrows, rhs.ncols) {
            return Err(Error::SizeMismatch("matrix difference".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                out[(a, b)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.nrows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Rows scaled by the lcm of their denominators: `(integer rows, scale per row)`.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.nrows);
        let mut scales = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let row = &self.data[i * self.ncols..(i + 1) * self.ncols];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scales.push(l);
        }
        (rows, scales)
    }

    /// Fraction-free (Bareiss) elimination on the integer-scaled rows.
    /// Returns the rank and, for square input, the determinant.
    fn bareiss(&self) -> (usize, Option<BigRational>) {
        let (mut a, scales) = self.integer_rows();
        let (n, m) = (self.nrows, self.ncols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut negate = false;
        for col in 0..m {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                negate = !negate;
            }
            for r in rank + 1..n {
                for c in col + 1..m {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        let det = if n == m {
            if rank < n {
                Some(BigRational::zero())
            } else {
                let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
                let num = if negate { -prev } else { prev };
                Some(BigRational::new(num, denom))
            }
        } else {
            None
        };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        if self.nrows == 0 {
            return Ok(BigRational::one());
        }
        Ok(self.bareiss().1.expect("square"))
    }

    /// Reduced row echelon form and pivot columns (leftmost pivot first).
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let Some(p) = (row..m.nrows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].recip();
            for c in col..m.ncols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.nrows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.ncols {
                        let v = &m[(row, c)] * &f;
                        m[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.ncols];
                v[f] = BigRational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(k, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[BigRational]) -> Result<Vec<BigRational>> {
        if !self.is_square() || b.len() != self.nrows {
            return Err(Error::SizeMismatch("linear system".into()));
        }
        let mut aug = RationalMatrix::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.ncols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < self.nrows || pivots.contains(&self.ncols) {
            return Err(Error::Singular);
        }
        Ok((0..self.nrows).map(|i| r[(i, self.ncols)].clone()).collect())
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        let n = self.nrows;
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Sylvester's criterion on leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.nrows).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.submatrix(&idx, &idx)
                .determinant()
                .map(|d| d.is_positive())
                .unwrap_or(false)
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.ncols {
            self.data.swap(a * self.ncols + c, b * self.ncols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.ncols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Leibniz formula over all permutations.
    fn leibniz(m: &RationalMatrix) -> BigRational {
        let n = m.nrows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = BigRational::zero();
        permute(&mut perm, 0, &mut |p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = if inversions % 2 == 0 { q(1) } else { q(-1) };
            for (i, &pi) in p.iter().enumerate() {
                t *= &m[(i, pi)];
            }
            total += t;
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn symbolic_two_by_two() {
        let s = |i, j| Polynomial::sigma(i, j);
        let m = vec![vec![s(0, 0), s(0, 1)], vec![s(1, 0), s(1, 1)]];
        assert_eq!(determinant(&m).unwrap().to_string(), "s11*s22 - s12^2");
        let repeated = vec![vec![s(0, 0), s(0, 1)], vec![s(0, 0), s(0, 1)]];
        assert!(determinant(&repeated).unwrap().is_zero());
        assert_eq!(
            determinant(&[vec![Polynomial::omega(0, 0)]]).unwrap().to_string(),
            "w11"
        );
        assert!(matches!(
            determinant(&[vec![s(0, 0), s(0, 1)]]),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn rational_basics() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[4, 3]]);
        assert_eq!(m.determinant().unwrap(), q(2));
        assert_eq!(m.rank(), 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        let sing = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(sing.rank(), 1);
        let k = sing.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let col = RationalMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect()).unwrap();
            assert!(sing.mul(&col).unwrap().rows().iter().flatten().all(Zero::is_zero));
        }
        assert!(RationalMatrix::identity(3).is_positive_definite());
        assert!(!RationalMatrix::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert_eq!(m.solve(&[q(3), q(7)]).unwrap(), vec![q(1), q(1)]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(xs in prop::collection::vec((-6i64..7, 1i64..4), 16), n in 1usize..5) {
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| (0..n).map(|j| { let (a, b) = xs[i * 4 + j]; BigRational::new(a.into(), b.into()) }).collect())
                .collect();
            let m = RationalMatrix::from_rows(rows).unwrap();
            let d = m.determinant().unwrap();
            prop_assert_eq!(&d, &leibniz(&m));
            prop_assert_eq!(m.rank() == n, !d.is_zero());
            prop_assert_eq!(m.rank() + m.kernel().len(), n);
        }
    }
}
