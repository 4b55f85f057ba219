//! Matrices of `[ρ] ↦ Σ_{i=0..n} [ρ ⊗ Λ^i]`.
//!
//! Conventions, checked against the printed tables:
//!
//! - `mult_m`, `mult_gl`: column `j` holds the image of basis element `j`.
//! - `t = transpose(mult_m)`.
//! - `tau_printed = mult_gl`, which is what the golden `τ_n` tables list.
//!
//! In bitmask order the partitions without part `n` come first, so `t` splits at
//! `2^(n-1)` into `[[t_{n-1}, δ_{n-1}], [0, τ]]` with `τ = t_{n-1} + δ_{n-1}`
//! equal to `transpose(mult_gl)`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{annihilation_check, eigen_multiplicity, kernel_basis, IntMatrix};
use crate::lambda_ring::{Mode, Normalizer, RingElement};
use crate::partitions::Partition;

#[derive(Debug, Clone)]
pub struct TMatrices {
    pub n: u32,
    pub mult_m: IntMatrix,
    pub mult_gl: IntMatrix,
    pub t: IntMatrix,
    pub tau_printed: IntMatrix,
}

/// The four blocks of `t_n` split at `2^(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub upper_left: IntMatrix,
    pub delta: IntMatrix,
    pub lower_left: IntMatrix,
    pub tau_block: IntMatrix,
}

/// Columns-as-images matrix of multiplication by `Σ Λ^i` in `mode`.
pub fn multiplication_matrix(mode: Mode) -> Result<IntMatrix> {
    let basis = mode.basis()?;
    let columns: Vec<Vec<BigInt>> = basis
        .table
        .par_iter()
        .map_init(
            || Normalizer::new(mode),
            |norm, key| {
                let mut e = RingElement::zero(mode);
                e.add_term(key.clone(), BigInt::one());
                norm.mult_by_sum_lambda(&e)
                    .expect("same mode")
                    .to_coordinates()
            },
        )
        .collect();
    IntMatrix::from_columns(columns)
}

pub fn build_t_matrices(n: u32) -> Result<TMatrices> {
    let mult_m = multiplication_matrix(Mode::m(n))?;
    let t = mult_m.transpose();
    // n = 0: the GL "ring" degenerates to the single class (0) with image 1.
    let mult_gl = if n == 0 {
        IntMatrix::identity(1)
    } else {
        multiplication_matrix(Mode::gl(n))?
    };
    let tau_printed = mult_gl.clone();
    Ok(TMatrices {
        n,
        mult_m,
        mult_gl,
        t,
        tau_printed,
    })
}

/// Splits a `2^n x 2^n` matrix into quadrants at `2^(n-1)`.
pub fn block_decompose(t: &IntMatrix, n: u32) -> Result<Blocks> {
    if n == 0 {
        return Err(Error::invalid("block_decompose needs n >= 1"));
    }
    let dim = 1usize << n;
    if t.rows() != dim || t.cols() != dim {
        return Err(Error::invalid(format!(
            "expected a {dim}x{dim} matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let h = dim / 2;
    Ok(Blocks {
        upper_left: t.submatrix(0, h, 0, h),
        delta: t.submatrix(0, h, h, dim),
        lower_left: t.submatrix(h, dim, 0, h),
        tau_block: t.submatrix(h, dim, h, dim),
    })
}

/// Result of checking the block structure of `t_n` against `t_{n-1}` and the
/// GL-mode matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCheck {
    pub n: u32,
    pub upper_left_is_previous: bool,
    pub lower_left_zero: bool,
    pub tau_is_sum: bool,
    pub tau_matches_gl: bool,
}

impl BlockCheck {
    pub fn passed(&self) -> bool {
        self.upper_left_is_previous && self.lower_left_zero && self.tau_is_sum && self.tau_matches_gl
    }
}

pub fn check_blocks(current: &TMatrices, previous: &TMatrices) -> Result<BlockCheck> {
    if current.n != previous.n + 1 {
        return Err(Error::invalid("check_blocks needs consecutive n"));
    }
    let b = block_decompose(&current.t, current.n)?;
    let sum = b.upper_left.add(&b.delta)?;
    Ok(BlockCheck {
        n: current.n,
        upper_left_is_previous: b.upper_left == previous.t,
        lower_left_zero: b.lower_left.is_zero(),
        tau_is_sum: b.tau_block == sum,
        tau_matches_gl: b.tau_block == current.mult_gl.transpose(),
    })
}

/// Printed label of the `i`-th GL-mode basis element.
pub fn gl_label(n: u32, i: usize) -> Partition {
    if n == 0 {
        return Partition::empty();
    }
    Partition::from_mask(i as u64)
        .with_head(n)
        .expect("tail below n")
}

/// Measured vs. expected multiplicity of one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenCount {
    pub eigenvalue: u64,
    pub multiplicity: usize,
    pub expected: usize,
}

/// Outcome of checking that `t_n` is diagonalizable with eigenvalue `2^i` of
/// multiplicity `2^(n-1-i)` for `i < n` and `2^n` simple.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub n: u32,
    pub dimension: usize,
    pub annihilated: bool,
    pub spectrum: Vec<EigenCount>,
    pub multiplicities_match: bool,
    pub multiplicities_sum_to_dimension: bool,
    pub kernel_at_one_dim: usize,
    pub kernel_at_one_expected: usize,
    pub passed: bool,
    pub build_ms: u128,
    pub annihilation_ms: u128,
    pub multiplicity_ms: u128,
}

pub fn expected_multiplicity(n: u32, i: u32) -> usize {
    if i == n {
        1
    } else {
        1usize << (n - 1 - i)
    }
}

/// Builds `t_n` and checks annihilation by `∏_{i=0..n} (x - 2^i)` together with
/// every multiplicity. Optionally also computes `ker(t_n - I)` explicitly.
pub fn conjecture_report(n: u32, with_kernel: bool) -> Result<ConjectureReport> {
    if n == 0 {
        return Err(Error::invalid("conjecture_report needs n >= 1"));
    }
    let start = Instant::now();
    let t = multiplication_matrix(Mode::m(n))?.transpose();
    let build_ms = start.elapsed().as_millis();

    let roots: Vec<BigInt> = (0..=n).map(|i| BigInt::one() << i).collect();
    let start = Instant::now();
    let annihilated = annihilation_check(&t, &roots)?;
    let annihilation_ms = start.elapsed().as_millis();

    let start = Instant::now();
    let spectrum = roots
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(EigenCount {
                eigenvalue: 1u64 << i,
                multiplicity: eigen_multiplicity(&t, r)?,
                expected: expected_multiplicity(n, i as u32),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel_at_one_dim = if with_kernel {
        kernel_basis(&t.shift_diagonal(&BigInt::one())?).len()
    } else {
        spectrum[0].multiplicity
    };
    let multiplicity_ms = start.elapsed().as_millis();

    let dimension = t.rows();
    let multiplicities_match = spectrum.iter().all(|e| e.multiplicity == e.expected);
    let multiplicities_sum_to_dimension =
        spectrum.iter().map(|e| e.multiplicity).sum::<usize>() == dimension;
    let kernel_at_one_expected = 1usize << (n - 1);
    let passed = annihilated
        && multiplicities_match
        && multiplicities_sum_to_dimension
        && kernel_at_one_dim == kernel_at_one_expected;
    Ok(ConjectureReport {
        n,
        dimension,
        annihilated,
        spectrum,
        multiplicities_match,
        multiplicities_sum_to_dimension,
        kernel_at_one_dim,
        kernel_at_one_expected,
        passed,
        build_ms,
        annihilation_ms,
        multiplicity_ms,
    })
}
