//! Strict partitions and the bitmask basis order.
//!
//! A strictly decreasing partition with parts in `1..=n` is the same thing as a
//! subset of `{1, .., n}`; we encode it as the bitmask `sum 2^(j-1)`. Sorting by
//! that integer gives the order in which the golden tables list their terms, and
//! it means the index of a basis element is simply its mask.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest part a [`Partition`] may carry (the mask must fit in a `u64`).
pub const MAX_PART: u32 = 63;

/// Largest `n` for which [`enumerate_basis`] materialises a table.
pub const MAX_BASIS_N: u32 = 24;

/// A strictly decreasing sequence of positive integers.
///
/// The empty partition is the unit class and renders as `(0)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0 || p > MAX_PART) {
            return Err(Error::invalid(format!(
                "parts must lie in 1..={MAX_PART}: {parts:?}"
            )));
        }
        if !parts.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!(
                "parts must be strictly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds the partition whose parts are the set bits of `mask` (bit `j-1` is part `j`).
    pub fn from_mask(mask: u64) -> Self {
        let mut parts = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            let top = 63 - m.leading_zeros();
            parts.push(top + 1);
            m &= !(1u64 << top);
        }
        Partition(parts)
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &p| acc | (1u64 << (p - 1)))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `(λ2, .., λh)`: drop the largest part.
    pub fn tail(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// Prepends `first`, which must exceed the current largest part.
    pub fn with_head(&self, first: u32) -> Result<Partition> {
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(first);
        parts.extend_from_slice(&self.0);
        Partition::new(parts)
    }

    /// The staircase `(n, n-1, .., 1)`.
    pub fn staircase(n: u32) -> Partition {
        Partition((1..=n).rev().collect())
    }

    pub fn conjugate(&self) -> Vec<u32> {
        conjugate(&self.0)
    }

    pub fn harris_shank_index(&self) -> Vec<u32> {
        harris_shank_index(&self.0)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mask().cmp(&other.mask())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the table token syntax: `(0)`, `(4)`, `(4,3,1)`. Bare `4,3,1` is accepted too.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        Partition::new(parts)
    }
}

/// Parses a comma-separated list of parts, optionally parenthesised. `(0)` and the
/// empty string give the empty list. Order is not checked.
pub fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    if inner.is_empty() || inner == "0" {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .ok()
                .filter(|&p| p > 0)
                .ok_or_else(|| Error::parse(0, format!("bad part {tok:?} in {s:?}")))
        })
        .collect()
}

/// Which Grothendieck ring a basis lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeKind {
    /// `R(M_n(F2))`: exterior powers above `n` vanish.
    M,
    /// `R(GL_n(F2))`: additionally the top exterior power is the unit.
    GL,
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeKind::M => f.write_str("M"),
            ModeKind::GL => f.write_str("GL"),
        }
    }
}

impl FromStr for ModeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "M" => Ok(ModeKind::M),
            "GL" => Ok(ModeKind::GL),
            _ => Err(Error::invalid(format!("unknown mode {s:?}"))),
        }
    }
}

/// The ordered basis of a ring.
///
/// In GL-mode the table stores tails `μ`; element `μ` stands for `Λ^(n, μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrder {
    pub n: u32,
    pub kind: ModeKind,
    pub table: Vec<Partition>,
}

impl BasisOrder {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Position of a stored key in the table.
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        let bound = match self.kind {
            ModeKind::M => self.n,
            ModeKind::GL => self.n - 1,
        };
        (p.largest() <= bound).then(|| p.mask() as usize)
    }

    /// The partition as printed: GL-mode tails get the implicit leading `n`.
    pub fn printed(&self, i: usize) -> Partition {
        let p = &self.table[i];
        match self.kind {
            ModeKind::M => p.clone(),
            ModeKind::GL => p.with_head(self.n).expect("tail parts are below n"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.printed(i).to_string()).collect()
    }
}

/// Lists the basis of the ring in bitmask order.
pub fn enumerate_basis(n: u32, kind: ModeKind) -> Result<BasisOrder> {
    if n > MAX_BASIS_N {
        return Err(Error::ResourceLimit(format!(
            "basis for n = {n} has more than 2^{MAX_BASIS_N} elements"
        )));
    }
    let bits = match kind {
        ModeKind::M => n,
        ModeKind::GL if n == 0 => {
            return Err(Error::invalid("GL-mode needs n >= 1"));
        }
        ModeKind::GL => n - 1,
    };
    let table = (0..1u64 << bits).map(Partition::from_mask).collect();
    Ok(BasisOrder { n, kind, table })
}

/// Transpose of the Young diagram of a weakly decreasing sequence of positive parts.
pub fn conjugate(parts: &[u32]) -> Vec<u32> {
    let first = parts.first().copied().unwrap_or(0);
    (1..=first)
        .map(|j| parts.iter().filter(|&&p| p >= j).count() as u32)
        .collect()
}

/// Differences of consecutive parts of the conjugate, ending with its last part.
pub fn harris_shank_index(parts: &[u32]) -> Vec<u32> {
    let conj = conjugate(parts);
    let mut out: Vec<u32> = conj.windows(2).map(|w| w[0] - w[1]).collect();
    if let Some(&last) = conj.last() {
        out.push(last);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Lower,
    Greater,
    Equal,
    Incomparable,
}

/// Dominance comparison oriented so that `(n)` is the smallest partition of `n`.
///
/// Partitions of different sizes compare by size. For equal sizes, `lambda` is
/// lower when each of its partial sums is at least the matching partial sum of `mu`.
pub fn dominance_compare(lambda: &[u32], mu: &[u32]) -> Dominance {
    let (sl, sm): (u32, u32) = (lambda.iter().sum(), mu.iter().sum());
    match sl.cmp(&sm) {
        Ordering::Less => return Dominance::Lower,
        Ordering::Greater => return Dominance::Greater,
        Ordering::Equal => {}
    }
    if lambda == mu {
        return Dominance::Equal;
    }
    let len = lambda.len().max(mu.len());
    let (mut pl, mut pm) = (0u32, 0u32);
    let (mut ge, mut le) = (true, true);
    for i in 0..len {
        pl += lambda.get(i).copied().unwrap_or(0);
        pm += mu.get(i).copied().unwrap_or(0);
        ge &= pl >= pm;
        le &= pl <= pm;
    }
    match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Lower,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// All partitions of `n` with weakly decreasing parts.
    fn all_partitions(n: u32) -> Vec<Vec<u32>> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                go(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn basis_n4_matches_table_term_order() {
        let b = enumerate_basis(4, ModeKind::M).unwrap();
        let printed: Vec<String> = b.labels();
        let expected = "(0) (1) (2) (2,1) (3) (3,1) (3,2) (3,2,1) (4) (4,1) (4,2) (4,2,1) \
                        (4,3) (4,3,1) (4,3,2) (4,3,2,1)";
        assert_eq!(printed.join(" "), expected);
    }

    #[test]
    fn basis_gl5_matches_tau5_listing() {
        let b = enumerate_basis(5, ModeKind::GL).unwrap();
        let expected = "(5) (5,1) (5,2) (5,2,1) (5,3) (5,3,1) (5,3,2) (5,3,2,1) \
                        (5,4) (5,4,1) (5,4,2) (5,4,2,1) (5,4,3) (5,4,3,1) (5,4,3,2) (5,4,3,2,1)";
        assert_eq!(b.labels().join(" "), expected);
    }

    #[test]
    fn basis_edge_cases() {
        let b = enumerate_basis(0, ModeKind::M).unwrap();
        assert_eq!(b.table, vec![Partition::empty()]);
        assert!(matches!(
            enumerate_basis(0, ModeKind::GL),
            Err(Error::InvalidArgument(_))
        ));
        for n in 0..=12 {
            let b = enumerate_basis(n, ModeKind::M).unwrap();
            assert_eq!(b.len(), 1 << n);
            let mut masks: Vec<u64> = b.table.iter().map(Partition::mask).collect();
            masks.sort_unstable();
            assert_eq!(masks, (0..1u64 << n).collect::<Vec<_>>());
            assert!(b.table.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(conjugate(&[]), Vec::<u32>::new());
        for n in 1..=8 {
            let st = Partition::staircase(n);
            assert_eq!(st.conjugate(), st.parts().to_vec());
        }
    }

    #[test]
    fn conjugate_is_involution_up_to_30() {
        for n in 0..=30 {
            for lam in all_partitions(n) {
                assert_eq!(conjugate(&conjugate(&lam)), lam);
            }
        }
    }

    #[test]
    fn harris_shank_examples() {
        for n in 1..=8 {
            assert_eq!(Partition::staircase(n).harris_shank_index(), vec![1; n as usize]);
            let mut expect = vec![0; n as usize - 1];
            expect.push(1);
            assert_eq!(p(&[n]).harris_shank_index(), expect);
        }
        assert_eq!(p(&[1]).harris_shank_index(), vec![1]);
    }

    #[test]
    fn harris_shank_binary_iff_strict() {
        for n in 1..=14 {
            for lam in all_partitions(n) {
                let strict = lam.windows(2).all(|w| w[0] > w[1]);
                let binary = harris_shank_index(&lam).iter().all(|&d| d <= 1);
                assert_eq!(strict, binary, "{lam:?}");
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance_compare(&[4], &[3, 1]), Dominance::Lower);
        assert_eq!(dominance_compare(&[3, 1], &[4]), Dominance::Greater);
        assert_eq!(dominance_compare(&[3, 1], &[3, 1]), Dominance::Equal);
        assert_eq!(dominance_compare(&[4, 1, 1], &[3, 3]), Dominance::Incomparable);
        assert_eq!(dominance_compare(&[2], &[2, 1]), Dominance::Lower);
    }

    #[test]
    fn single_row_is_minimal() {
        for n in 1..=12 {
            for mu in all_partitions(n) {
                let d = dominance_compare(&[n], &mu);
                assert!(matches!(d, Dominance::Lower | Dominance::Equal), "{mu:?}");
            }
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Partition::empty().to_string(), "(0)");
        assert_eq!(p(&[4, 3, 1]).to_string(), "(4,3,1)");
        assert_eq!("(4,3,1)".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("(0)".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(2,3)".parse::<Partition>().is_err());
        assert!("(a)".parse::<Partition>().is_err());
        assert_eq!(Partition::from_mask(0b1011), p(&[4, 2, 1]));
    }
}
