//! Dense linear algebra over arbitrary-precision integers.
//!
//! Ranks use fraction-free (Bareiss) elimination: after `k` pivots every entry
//! is a `(k+1)`-minor of the input, so the division by the previous pivot is exact.
//! Kernels use integer Gauss-Jordan with content reduction and are returned as
//! rational vectors.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: Vec<Vec<BigInt>>) -> Result<Self> {
        Ok(Self::from_rows(columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self - r·I`.
    pub fn shift_diagonal(&self, r: &BigInt) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::invalid("shift_diagonal needs a square matrix"));
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= r;
        }
        Ok(m)
    }

    /// Matrix product, parallel over row blocks.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols = other.cols;
        let mut data = vec![BigInt::zero(); self.rows * cols];
        data.par_chunks_mut(cols.max(1))
            .enumerate()
            .for_each(|(i, out)| {
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (o, b) in out.iter_mut().zip(other.row(k)) {
                        if !b.is_zero() {
                            *o += a * b;
                        }
                    }
                }
            });
        Ok(IntMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::invalid("vector length mismatch"));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Copies the block with rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m[(i - r0, j - c0)] = self[(i, j)].clone();
            }
        }
        m
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::invalid(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Vector of reduced rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Clears denominators and divides by the content; the first nonzero entry
    /// becomes positive.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        make_primitive(&mut ints);
        ints
    }
}

/// Divides by the gcd of the entries and makes the first nonzero entry positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    for x in v.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
}

/// Exact rank over the rationals by Bareiss elimination with first-nonzero pivoting.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    bareiss_in_place(&mut m)
}

/// Runs fraction-free forward elimination, returning the number of pivots.
fn bareiss_in_place(m: &mut IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let pivot = m[(r, c)].clone();
        let pivot_row: Vec<BigInt> = m.row(r)[c..].to_vec();
        let chunk = &mut m.data[(r + 1) * cols..];
        chunk.par_chunks_mut(cols).for_each(|row| {
            let lead = row[c].clone();
            for (j, pj) in (c..cols).zip(&pivot_row) {
                let v = &pivot * &row[j] - &lead * pj;
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        });
        prev = pivot;
        r += 1;
    }
    r
}

/// Reduced row echelon form over the integers: pivot rows are primitive and
/// every pivot column is zero outside its pivot row. Returns the pivot columns.
fn integer_rref(m: &mut IntMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        {
            let row = &mut m.data[r * cols..(r + 1) * cols];
            make_primitive(row);
        }
        let pivot_row: Vec<BigInt> = m.row(r).to_vec();
        let pivot = pivot_row[c].clone();
        m.data
            .par_chunks_mut(cols)
            .enumerate()
            .filter(|(i, _)| *i != r)
            .for_each(|(_, row)| {
                let lead = row[c].clone();
                if lead.is_zero() {
                    return;
                }
                let g = pivot.gcd(&lead);
                let (sp, sl) = (&pivot / &g, &lead / &g);
                for (x, pj) in row.iter_mut().zip(&pivot_row) {
                    *x = &sp * &*x - &sl * pj;
                }
                make_primitive(row);
            });
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : A x = 0}`, one vector per free column in
/// increasing column order.
pub fn kernel_basis(a: &IntMatrix) -> Vec<RationalVector> {
    let mut m = a.clone();
    let pivots = integer_rref(&mut m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let num = &m[(r, f)];
                if !num.is_zero() {
                    x[pc] = -BigRational::new(num.clone(), m[(r, pc)].clone());
                }
            }
            RationalVector(x)
        })
        .collect()
}

/// Primitive integer basis of the left kernel `{c : c A = 0}`.
pub fn left_kernel_integer(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_basis(&a.transpose())
        .iter()
        .map(RationalVector::to_primitive_integer)
        .collect()
}

/// True iff `∏_r (A - r·I)` is the zero matrix.
pub fn annihilation_check(a: &IntMatrix, roots: &[BigInt]) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::invalid("annihilation_check needs a square matrix"));
    }
    let mut prod = IntMatrix::identity(a.rows);
    for r in roots {
        prod = prod.mul(&a.shift_diagonal(r)?)?;
        if prod.is_zero() {
            return Ok(true);
        }
    }
    Ok(prod.is_zero())
}

/// `dim - rank(A - r·I)`: the geometric multiplicity of `r`.
pub fn eigen_multiplicity(a: &IntMatrix, r: &BigInt) -> Result<usize> {
    Ok(a.rows - rank(&a.shift_diagonal(r)?))
}

/// Rank of a growing list of rows, maintained as a fraction-free echelon basis.
#[derive(Debug, Clone)]
pub struct IncrementalRank {
    dim: usize,
    /// `(pivot column, primitive row)`, pivot columns distinct.
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IncrementalRank {
    pub fn new(dim: usize) -> Self {
        IncrementalRank {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, row: &[BigInt]) -> Result<bool> {
        if row.len() != self.dim {
            return Err(Error::invalid("row length mismatch"));
        }
        let mut v = row.to_vec();
        for (pc, b) in &self.basis {
            if v[*pc].is_zero() {
                continue;
            }
            let g = b[*pc].gcd(&v[*pc]);
            let (sb, sv) = (&b[*pc] / &g, &v[*pc] / &g);
            for (x, y) in v.iter_mut().zip(b) {
                *x = &sb * &*x - &sv * y;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                make_primitive(&mut v);
                self.basis.push((pc, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Naive rational Gaussian elimination, used only to cross-check the
    //! fraction-free code paths.
    use super::*;

    pub fn rational_rank(a: &IntMatrix) -> usize {
        let mut m: Vec<Vec<BigRational>> = a
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let (rows, cols) = (a.rows(), a.cols());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..rows {
                let f = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }
}
