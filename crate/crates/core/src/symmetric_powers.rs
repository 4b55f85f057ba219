//! Symmetric powers of the natural representation in the exterior-power basis.
//!
//! The Koszul complex gives `Σ_{i=0..min(k,n)} (-1)^i [S^(k-i)]·[Λ^i] = 0` for
//! `k >= 1`, hence the recursion
//! `[S^k] = Σ_{i=1..min(k,n)} (-1)^(i+1) [S^(k-i)]·[Λ^i]` with `[S^0] = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact_linalg::{left_kernel_integer, IncrementalRank, IntMatrix};
use crate::lambda_ring::{Mode, Normalizer, RingElement};

/// Rows `[S^0], .., [S^K]` in `R(M_n(F2))`.
#[derive(Debug, Clone)]
pub struct SymTable {
    pub n: u32,
    pub rows: Vec<RingElement>,
}

impl SymTable {
    pub fn build(n: u32, max_k: usize) -> SymTable {
        let mode = Mode::m(n);
        let mut norm = Normalizer::new(mode);
        let lambdas: Vec<RingElement> = (0..=n).map(|i| norm.normalize(&[i])).collect();
        let mut rows = vec![RingElement::unit(mode)];
        for k in 1..=max_k {
            let mut acc = RingElement::zero(mode);
            for i in 1..=k.min(n as usize) {
                let prod = norm
                    .multiply(&rows[k - i], &lambdas[i])
                    .expect("single mode");
                acc = if i % 2 == 1 {
                    acc.checked_add(&prod)
                } else {
                    acc.checked_sub(&prod)
                }
                .expect("single mode");
            }
            rows.push(acc);
        }
        SymTable { n, rows }
    }

    pub fn mode(&self) -> Mode {
        Mode::m(self.n)
    }

    /// Rows as a `(K+1) x 2^n` integer matrix in basis order.
    pub fn coordinate_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.rows.iter().map(RingElement::to_coordinates).collect())
            .expect("rows share the basis")
    }
}

/// `[S^k]` in `R(M_n(F2))`.
pub fn expand_sym(n: u32, k: usize) -> RingElement {
    SymTable::build(n, k).rows.pop().expect("row k exists")
}

/// Reduces every coefficient into `{0, 1}`.
pub fn mod2_reduce(x: &RingElement) -> RingElement {
    let two = BigInt::from(2);
    x.map_coeffs(|c| c.mod_floor(&two))
}

/// `Σ_{i=0..min(k,n)} (-1)^i [S^(k-i)]·[Λ^i]`, recomputed from the table rows by
/// fresh ring multiplications. Zero whenever the table is correct.
pub fn koszul_residual_from(table: &SymTable, k: usize) -> RingElement {
    let mode = table.mode();
    let mut norm = Normalizer::new(mode);
    let mut acc = RingElement::zero(mode);
    for i in 0..=k.min(table.n as usize) {
        let lambda = RingElement::lambda_product(mode, &[i as u32]);
        let prod = norm.multiply(&table.rows[k - i], &lambda).expect("single mode");
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc = acc.checked_add(&prod.scale(&sign)).expect("single mode");
    }
    acc
}

pub fn koszul_residual(n: u32, k: usize) -> RingElement {
    koszul_residual_from(&SymTable::build(n, k), k)
}

/// `(k, rank of span{s_0..s_k})` for `k = 0..=max_k`.
pub fn sym_rank_profile(n: u32, max_k: usize) -> Vec<(usize, usize)> {
    let table = SymTable::build(n, max_k);
    rank_profile_of(&table)
}

pub fn rank_profile_of(table: &SymTable) -> Vec<(usize, usize)> {
    let mut inc = IncrementalRank::new(1usize << table.n);
    table
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            inc.push(&row.to_coordinates()).expect("dimension matches");
            (k, inc.rank())
        })
        .collect()
}

/// Primitive integer covectors `c` with `c · s_k = 0` for every `k <= max_k`.
pub fn left_null_covectors(n: u32, max_k: usize) -> Vec<Vec<BigInt>> {
    covectors_of(&SymTable::build(n, max_k))
}

pub fn covectors_of(table: &SymTable) -> Vec<Vec<BigInt>> {
    // {c : c·s_k = 0} is the right kernel of the row matrix.
    left_kernel_integer(&table.coordinate_matrix().transpose())
}

/// `Σ coeff · ∏ C(n, λ_i)`: the F2-dimension of a virtual class.
pub fn dimension(x: &RingElement) -> BigInt {
    let n = x.mode().n;
    x.terms()
        .map(|(p, c)| {
            let dims: BigInt = p.parts().iter().map(|&l| binomial(n, l)).product();
            c * dims
        })
        .fold(BigInt::zero(), |a, b| a + b)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
