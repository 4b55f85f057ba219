//! Images `V^{⊗d} · C̄ R̄ C̄` over F2, where `R̄`, `C̄` are the sums of the row and
//! column stabilizers of a Young diagram acting by place permutations.
//!
//! Tensor basis vectors `e_{i_1} ⊗ .. ⊗ e_{i_d}` are indexed lexicographically
//! (`i_1` most significant). A permutation `σ` sends the basis tuple `(i_1, .., i_d)`
//! to `(i_σ(1), .., i_σ(d))`; matrices act on row vectors.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest diagram size for which stabilizers are enumerated.
pub const MAX_DIAGRAM: u32 = 8;

/// Default cap on the tensor dimension `m^d`.
pub const DEFAULT_BUDGET: usize = 1 << 15;

/// A permutation of `{0, .., d-1}`: `perm[i]` is the image of `i`.
pub type Permutation = Vec<usize>;

#[derive(Debug, Clone)]
pub struct YoungStabilizers {
    pub lambda: Vec<u32>,
    pub row_group: Vec<Permutation>,
    pub column_group: Vec<Permutation>,
}

/// Row and column stabilizers of the row-major filling of the diagram of `lambda`.
///
/// `lambda` may be any weakly decreasing sequence of positive parts.
pub fn young_stabilizers(lambda: &[u32]) -> Result<YoungStabilizers> {
    if lambda.contains(&0) || !lambda.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!(
            "parts must be positive and weakly decreasing: {lambda:?}"
        )));
    }
    let d: u32 = lambda.iter().sum();
    if d > MAX_DIAGRAM {
        return Err(Error::ResourceLimit(format!(
            "diagram of size {d} exceeds {MAX_DIAGRAM}"
        )));
    }
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut offset = 0usize;
    for &len in lambda {
        rows.push((offset..offset + len as usize).collect());
        offset += len as usize;
    }
    let width = lambda.first().copied().unwrap_or(0) as usize;
    let columns: Vec<Vec<usize>> = (0..width)
        .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    Ok(YoungStabilizers {
        lambda: lambda.to_vec(),
        row_group: product_of_symmetric_groups(d as usize, &rows),
        column_group: product_of_symmetric_groups(d as usize, &columns),
    })
}

/// All permutations of `{0..d-1}` preserving each block setwise.
fn product_of_symmetric_groups(d: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut group: Vec<Permutation> = vec![(0..d).collect()];
    for block in blocks {
        let arrangements = permutations_of(block);
        group = group
            .iter()
            .flat_map(|g| {
                arrangements.iter().map(move |images| {
                    let mut p = g.clone();
                    for (&src, &dst) in block.iter().zip(images) {
                        p[src] = dst;
                    }
                    p
                })
            })
            .collect();
    }
    group
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Bit-packed dense matrix over F2.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        F2Matrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row `i` of the product is the XOR of the rows of `other` selected by row `i` of `self`.
    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("F2 matrix shape mismatch"));
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        let ow = other.words;
        if ow == 0 {
            return Ok(out);
        }
        out.data
            .par_chunks_mut(ow)
            .enumerate()
            .for_each(|(i, dst)| {
                for (wi, &word) in self.row_words(i).iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let k = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for (d, s) in dst.iter_mut().zip(other.row_words(k)) {
                            *d ^= s;
                        }
                    }
                }
            });
        Ok(out)
    }

    /// Rank by word-level XOR elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&r| m[r * w + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    m.swap(p * w + k, rank * w + k);
                }
            }
            let pivot: Vec<u64> = m[rank * w..(rank + 1) * w].to_vec();
            for r in rank + 1..self.rows {
                if m[r * w + word] & bit != 0 {
                    for k in word..w {
                        m[r * w + k] ^= pivot[k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

fn tensor_dim(m: usize, d: usize, budget: usize) -> Result<usize> {
    let dim = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(m));
    match dim {
        Some(dim) if dim <= budget => Ok(dim),
        _ => Err(Error::ResourceLimit(format!(
            "tensor dimension {m}^{d} exceeds budget {budget}"
        ))),
    }
}

/// Matrix of `Σ_{σ ∈ perms} σ` on `(F2^m)^{⊗d}`.
pub fn algebra_action_matrix(
    perms: &[Permutation],
    m: usize,
    d: usize,
    budget: usize,
) -> Result<F2Matrix> {
    if perms.iter().any(|p| p.len() != d) {
        return Err(Error::invalid(format!("permutations must act on {d} points")));
    }
    let dim = tensor_dim(m, d, budget)?;
    let mut out = F2Matrix::zeros(dim, dim);
    if m == 0 {
        return Ok(out);
    }
    let words = out.words;
    out.data
        .par_chunks_mut(words.max(1))
        .enumerate()
        .for_each(|(e, row)| {
            let mut digits = vec![0usize; d];
            let mut x = e;
            for slot in digits.iter_mut().rev() {
                *slot = x % m;
                x /= m;
            }
            for sigma in perms {
                let target = sigma.iter().fold(0usize, |acc, &s| acc * m + digits[s]);
                row[target / 64] ^= 1 << (target % 64);
            }
        });
    Ok(out)
}

/// `C̄ · R̄ · C̄` for the diagram of `lambda` on `(F2^m)^{⊗|λ|}`.
pub fn jk_operator(lambda: &[u32], m: usize, budget: usize) -> Result<F2Matrix> {
    let d: u32 = lambda.iter().sum();
    tensor_dim(m, d as usize, budget)?;
    let stab = young_stabilizers(lambda)?;
    let c = algebra_action_matrix(&stab.column_group, m, d as usize, budget)?;
    let r = algebra_action_matrix(&stab.row_group, m, d as usize, budget)?;
    c.mul(&r)?.mul(&c)
}

/// Dimension over F2 of `V^{⊗|λ|} · C̄ R̄ C̄` with `dim V = m`.
pub fn jk_image_dim(lambda: &[u32], m: usize) -> Result<usize> {
    jk_image_dim_with_budget(lambda, m, DEFAULT_BUDGET)
}

pub fn jk_image_dim_with_budget(lambda: &[u32], m: usize, budget: usize) -> Result<usize> {
    Ok(jk_operator(lambda, m, budget)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense, unoptimized rebuild of the same operator for cross-checking.
    fn oracle_image_dim(groups: [&[Permutation]; 3], m: usize, d: usize) -> usize {
        let dim = m.pow(d as u32);
        let action = |perms: &[Permutation]| -> Vec<Vec<u8>> {
            let mut a = vec![vec![0u8; dim]; dim];
            for (e, row) in a.iter_mut().enumerate() {
                let digits: Vec<usize> = (0..d).map(|k| e / m.pow((d - 1 - k) as u32) % m).collect();
                for s in perms {
                    let mut t = 0;
                    for &src in s {
                        t = t * m + digits[src];
                    }
                    row[t] ^= 1;
                }
            }
            a
        };
        let mul = |a: &Vec<Vec<u8>>, b: &Vec<Vec<u8>>| -> Vec<Vec<u8>> {
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| (0..dim).fold(0u8, |acc, k| acc ^ (a[i][k] & b[k][j])))
                        .collect()
                })
                .collect()
        };
        let p = mul(&mul(&action(groups[0]), &action(groups[1])), &action(groups[2]));
        let mut rows = p;
        let mut rank = 0;
        for c in 0..dim {
            if let Some(piv) = (rank..dim).find(|&r| rows[r][c] == 1) {
                rows.swap(piv, rank);
                for r in 0..dim {
                    if r != rank && rows[r][c] == 1 {
                        let pr = rows[rank].clone();
                        for (x, y) in rows[r].iter_mut().zip(pr) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn compose(a: &Permutation, b: &Permutation) -> Permutation {
        b.iter().map(|&i| a[i]).collect()
    }

    fn is_closed(group: &[Permutation]) -> bool {
        let set: std::collections::HashSet<&Permutation> = group.iter().collect();
        group
            .iter()
            .all(|a| group.iter().all(|b| set.contains(&compose(a, b))))
    }

    fn factorial(k: u32) -> usize {
        (1..=k as usize).product()
    }

    #[test]
    fn stabilizer_orders() {
        let s = young_stabilizers(&[2, 1]).unwrap();
        assert_eq!((s.row_group.len(), s.column_group.len()), (2, 2));
        for n in 1..=5 {
            let s = young_stabilizers(&[n]).unwrap();
            assert_eq!(s.row_group.len(), factorial(n));
            assert_eq!(s.column_group.len(), 1);
            let ones = vec![1; n as usize];
            let s = young_stabilizers(&ones).unwrap();
            assert_eq!(s.row_group.len(), 1);
            assert_eq!(s.column_group.len(), factorial(n));
        }
        let s = young_stabilizers(&[3, 2, 2]).unwrap();
        assert_eq!(s.row_group.len(), 6 * 2 * 2);
        assert_eq!(s.column_group.len(), 6 * 6);
        assert!(is_closed(&s.row_group) && is_closed(&s.column_group));
        assert!(matches!(young_stabilizers(&[5, 4]), Err(Error::ResourceLimit(_))));
        assert!(young_stabilizers(&[1, 2]).is_err());
    }

    #[test]
    fn action_matrix_examples() {
        let id: Permutation = vec![0, 1, 2];
        assert_eq!(
            algebra_action_matrix(&[id], 2, 3, DEFAULT_BUDGET).unwrap(),
            F2Matrix::identity(8)
        );
        let swap = vec![vec![0, 1], vec![1, 0]];
        let m = algebra_action_matrix(&swap, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(!m.get(0, 0) && m.get(1, 2) && m.get(2, 1) && !m.get(3, 3));
        let m = algebra_action_matrix(&swap, 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.rank(), 3);
        assert!(matches!(
            algebra_action_matrix(&swap, 300, 2, DEFAULT_BUDGET),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn image_dim_examples() {
        for m in 1..=6 {
            assert_eq!(jk_image_dim(&[1], m).unwrap(), m);
        }
        assert_eq!(jk_image_dim(&[2], 2).unwrap(), 1);
    }

    #[test]
    fn hook_at_dimension_three_matches_oracle() {
        let s = young_stabilizers(&[2, 1]).unwrap();
        let oracle = oracle_image_dim([&s.column_group, &s.row_group, &s.column_group], 3, 3);
        assert_eq!(jk_image_dim(&[2, 1], 3).unwrap(), oracle);
        assert_eq!(oracle, HOOK_21_DIM3);
    }

    /// Image dimension of the (2,1) symmetrizer on `(F2^3)^{⊗3}`, fixed by the dense oracle.
    const HOOK_21_DIM3: usize = 8;

    #[test]
    fn bitpacked_matches_oracle_small() {
        let shapes: [&[u32]; 6] = [&[1], &[2], &[1, 1], &[2, 1], &[3], &[1, 1, 1]];
        for lambda in shapes {
            let s = young_stabilizers(lambda).unwrap();
            let d: u32 = lambda.iter().sum();
            for m in 1..=3 {
                let expect =
                    oracle_image_dim([&s.column_group, &s.row_group, &s.column_group], m, d as usize);
                assert_eq!(jk_image_dim(lambda, m).unwrap(), expect, "{lambda:?} m={m}");
            }
        }
    }

    #[test]
    fn conjugated_filling_gives_same_dimension() {
        let shapes: [&[u32]; 6] = [&[2, 1], &[3, 1], &[2, 2], &[3, 2], &[2, 1, 1], &[4, 1]];
        for lambda in shapes {
            let s = young_stabilizers(lambda).unwrap();
            let d: usize = lambda.iter().sum::<u32>() as usize;
            // a fixed cyclic relabelling of the cells
            let pi: Permutation = (0..d).map(|i| (i + 1) % d).collect();
            let mut pi_inv = vec![0; d];
            for (i, &p) in pi.iter().enumerate() {
                pi_inv[p] = i;
            }
            let conj = |g: &[Permutation]| -> Vec<Permutation> {
                g.iter().map(|s| compose(&compose(&pi_inv, s), &pi)).collect()
            };
            let (rc, cc) = (conj(&s.row_group), conj(&s.column_group));
            let m = 2;
            let op = |r: &[Permutation], c: &[Permutation]| {
                let cm = algebra_action_matrix(c, m, d, DEFAULT_BUDGET).unwrap();
                let rm = algebra_action_matrix(r, m, d, DEFAULT_BUDGET).unwrap();
                cm.mul(&rm).unwrap().mul(&cm).unwrap().rank()
            };
            assert_eq!(op(&s.row_group, &s.column_group), op(&rc, &cc), "{lambda:?}");
        }
    }

    #[test]
    fn group_sum_squares_to_order_times_sum() {
        let shapes: [&[u32]; 7] = [&[2], &[3], &[2, 1], &[3, 1], &[2, 2], &[4, 1], &[3, 2]];
        for lambda in shapes {
            let s = young_stabilizers(lambda).unwrap();
            let d = lambda.iter().sum::<u32>() as usize;
            for g in [&s.row_group, &s.column_group] {
                let m = algebra_action_matrix(g, 2, d, DEFAULT_BUDGET).unwrap();
                let sq = m.mul(&m).unwrap();
                if g.len() % 2 == 0 {
                    assert!(sq.is_zero());
                } else {
                    assert_eq!(sq, m);
                }
            }
        }
    }

    #[test]
    fn f2_rank_basics() {
        assert_eq!(F2Matrix::identity(130).rank(), 130);
        assert_eq!(F2Matrix::zeros(5, 70).rank(), 0);
        let mut m = F2Matrix::zeros(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 0, true);
        m.set(1, 1, true);
        m.set(2, 2, true);
        assert_eq!(m.rank(), 2);
        m.toggle(2, 2);
        assert_eq!(m.rank(), 1);
    }
}
