//! Grothendieck-ring elements in the exterior-power basis.
//!
//! A product `Λ^a ⊗ Λ^b ⊗ ...` is a multiset of exponents. It is already a basis
//! element when the exponents are distinct; otherwise a duplicated pair `{k, k}`
//! is rewritten with
//!
//! ```text
//! [Λ^k ⊗ Λ^k] = [Λ^k] + Σ_{i=1..k} (-1)^(i-1) · 2 · [Λ^(k+i) ⊗ Λ^(k-i)]
//! ```
//!
//! and the process repeats. Every rewrite strictly increases the measure
//! `(-total, sum of squares)` in lexicographic order, and both coordinates are
//! bounded once parts are capped at `n`, so normalization terminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{BasisOrder, Partition, MAX_PART};

pub use crate::partitions::ModeKind;

/// The ambient ring: `R(M_n(F2))` or `R(GL_n(F2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub kind: ModeKind,
    pub n: u32,
}

impl Mode {
    pub fn new(kind: ModeKind, n: u32) -> Result<Mode> {
        if kind == ModeKind::GL && n == 0 {
            return Err(Error::invalid("GL-mode needs n >= 1"));
        }
        if n > MAX_PART {
            return Err(Error::invalid(format!("n = {n} exceeds {MAX_PART}")));
        }
        Ok(Mode { kind, n })
    }

    /// M-mode. Panics if `n > 63`.
    pub fn m(n: u32) -> Mode {
        Mode::new(ModeKind::M, n).expect("n <= 63")
    }

    /// GL-mode. Panics unless `1 <= n <= 63`.
    pub fn gl(n: u32) -> Mode {
        Mode::new(ModeKind::GL, n).expect("1 <= n <= 63")
    }

    /// Largest part a stored key may have.
    pub fn max_key_part(&self) -> u32 {
        match self.kind {
            ModeKind::M => self.n,
            ModeKind::GL => self.n - 1,
        }
    }

    pub fn basis(&self) -> Result<BasisOrder> {
        crate::partitions::enumerate_basis(self.n, self.kind)
    }

    /// Applies the vanishing and unit rules in place. Returns `false` when the
    /// product is zero. Sorts the exponents in decreasing order.
    fn reduce(&self, exps: &mut Vec<u32>) -> bool {
        if exps.iter().any(|&e| e > self.n) {
            return false;
        }
        let n = self.n;
        match self.kind {
            ModeKind::M => exps.retain(|&e| e != 0),
            ModeKind::GL => exps.retain(|&e| e != 0 && e != n),
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        true
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

/// Right-hand side of the straightening relation for the pair `{k, k}`, as
/// unreduced exponent lists with their coefficients.
pub fn straightening_terms(k: u32) -> Vec<(Vec<u32>, i64)> {
    let mut out = Vec::with_capacity(k as usize + 1);
    out.push((vec![k], 1));
    for i in 1..=k {
        let sign = if i % 2 == 1 { 2 } else { -2 };
        let term = if i == k { vec![2 * k] } else { vec![k + i, k - i] };
        out.push((term, sign));
    }
    out
}

/// Lexicographic termination measure `(-total, sum of squares)`.
pub fn rewrite_measure(exps: &[u32]) -> (i64, u64) {
    let total: u64 = exps.iter().map(|&e| e as u64).sum();
    let squares: u64 = exps.iter().map(|&e| (e as u64) * (e as u64)).sum();
    (-(total as i64), squares)
}

/// A class in the exterior-power basis: finitely many nonzero integer coefficients.
///
/// GL-mode keys are tails `μ` (parts `<= n-1`) standing for `Λ^(n, μ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    mode: Mode,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl RingElement {
    pub fn zero(mode: Mode) -> Self {
        RingElement {
            mode,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(mode: Mode) -> Self {
        Self::monomial(mode, Partition::empty(), BigInt::one())
    }

    fn monomial(mode: Mode, key: Partition, c: BigInt) -> Self {
        let mut e = Self::zero(mode);
        e.add_term(key, c);
        e
    }

    /// The class of `Λ^parts`. In GL-mode a leading part equal to `n` is accepted
    /// and stripped; otherwise the parts must already be a valid key.
    pub fn basis_element(mode: Mode, parts: &Partition) -> Result<Self> {
        let key = match mode.kind {
            ModeKind::GL if parts.largest() == mode.n => parts.tail(),
            _ => parts.clone(),
        };
        if key.largest() > mode.max_key_part() {
            return Err(Error::invalid(format!("{parts} is not a basis label in {mode}")));
        }
        Ok(Self::monomial(mode, key, BigInt::one()))
    }

    /// The class of the product of exterior powers with the given exponents.
    pub fn lambda_product(mode: Mode, exponents: &[u32]) -> Self {
        normalize(exponents, mode)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, key: &Partition) -> BigInt {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(key.largest() <= self.mode.max_key_part());
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &RingElement, c: &BigInt) {
        for (k, v) in &other.coeffs {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        check_modes(self, other)?;
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        check_modes(self, other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> RingElement {
        let mut out = RingElement::zero(self.mode);
        out.add_scaled(self, c);
        out
    }

    /// Coordinates in the bitmask basis order of the element's mode.
    pub fn to_coordinates(&self) -> Vec<BigInt> {
        let dim = 1usize << self.mode.max_key_part();
        let mut v = vec![BigInt::zero(); dim];
        for (k, c) in &self.coeffs {
            v[k.mask() as usize] = c.clone();
        }
        v
    }

    pub fn from_coordinates(mode: Mode, coords: &[BigInt]) -> Result<RingElement> {
        let dim = 1usize << mode.max_key_part();
        if coords.len() != dim {
            return Err(Error::invalid(format!(
                "expected {dim} coordinates for {mode}, got {}",
                coords.len()
            )));
        }
        let mut out = RingElement::zero(mode);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(Partition::from_mask(i as u64), c.clone());
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> RingElement {
        let mut out = RingElement::zero(self.mode);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    /// Renders in additive table notation. Terms follow the basis order;
    /// coefficient 1 is omitted except on the unit when `unit_one` is set.
    pub fn render(&self, unit_one: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let label = match self.mode.kind {
                ModeKind::M => k.clone(),
                ModeKind::GL => k.with_head(self.mode.n).expect("tail below n"),
            };
            if c.is_negative() {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            let mag = c.abs();
            if !mag.is_one() || (unit_one && label.is_empty()) {
                s.push_str(&mag.to_string());
            }
            s.push_str(&label.to_string());
        }
        s
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.mode, self.render(true))
    }
}

fn check_modes(a: &RingElement, b: &RingElement) -> Result<()> {
    if a.mode != b.mode {
        return Err(Error::ModeMismatch {
            left: a.mode.to_string(),
            right: b.mode.to_string(),
        });
    }
    Ok(())
}

/// Memoizing normalizer for one mode. Uses the default strategy: rewrite the
/// duplicated pair with the largest part first.
pub struct Normalizer {
    mode: Mode,
    cache: HashMap<Vec<u32>, RingElement>,
}

impl Normalizer {
    pub fn new(mode: Mode) -> Self {
        Normalizer {
            mode,
            cache: HashMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn normalize(&mut self, exponents: &[u32]) -> RingElement {
        let mut exps = exponents.to_vec();
        if !self.mode.reduce(&mut exps) {
            return RingElement::zero(self.mode);
        }
        self.normalize_reduced(exps)
    }

    fn normalize_reduced(&mut self, exps: Vec<u32>) -> RingElement {
        let Some(k) = largest_duplicate(&exps) else {
            let key = Partition::new(exps).expect("distinct parts within range");
            return RingElement::monomial(self.mode, key, BigInt::one());
        };
        if let Some(hit) = self.cache.get(&exps) {
            return hit.clone();
        }
        let mut out = RingElement::zero(self.mode);
        for (mut next, c) in rewrite_pair(&exps, k) {
            if !self.mode.reduce(&mut next) {
                continue;
            }
            let sub = self.normalize_reduced(next);
            out.add_scaled(&sub, &BigInt::from(c));
        }
        self.cache.insert(exps, out.clone());
        out
    }

    /// `a · b`, reusing this normalizer's cache.
    pub fn multiply(&mut self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        check_modes(a, b)?;
        if a.mode != self.mode {
            return Err(Error::ModeMismatch {
                left: a.mode.to_string(),
                right: self.mode.to_string(),
            });
        }
        let mut out = RingElement::zero(self.mode);
        let mut exps = Vec::new();
        for (ka, ca) in &a.coeffs {
            for (kb, cb) in &b.coeffs {
                exps.clear();
                exps.extend_from_slice(ka.parts());
                exps.extend_from_slice(kb.parts());
                let prod = self.normalize(&exps);
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `a · (Λ^0 + Λ^1 + .. + Λ^n)`.
    pub fn mult_by_sum_lambda(&mut self, a: &RingElement) -> Result<RingElement> {
        if a.mode != self.mode {
            return Err(Error::ModeMismatch {
                left: a.mode.to_string(),
                right: self.mode.to_string(),
            });
        }
        let mut out = RingElement::zero(self.mode);
        let mut exps = Vec::new();
        for (k, c) in &a.coeffs {
            for i in 0..=self.mode.n {
                exps.clear();
                exps.extend_from_slice(k.parts());
                exps.push(i);
                let prod = self.normalize(&exps);
                out.add_scaled(&prod, c);
            }
        }
        Ok(out)
    }
}

fn largest_duplicate(sorted_desc: &[u32]) -> Option<u32> {
    sorted_desc
        .windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
}

fn duplicates(sorted_desc: &[u32]) -> Vec<u32> {
    let mut d: Vec<u32> = sorted_desc
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    d.dedup();
    d
}

/// Replaces one `{k, k}` pair of `exps` by each straightening term.
fn rewrite_pair(exps: &[u32], k: u32) -> Vec<(Vec<u32>, i64)> {
    let mut rest = exps.to_vec();
    for _ in 0..2 {
        let pos = rest.iter().position(|&e| e == k).expect("pair present");
        rest.remove(pos);
    }
    straightening_terms(k)
        .into_iter()
        .map(|(term, c)| {
            let mut next = rest.clone();
            next.extend(term);
            (next, c)
        })
        .collect()
}

/// Expresses `⊗_k Λ^k` over the multiset `exponents` in the basis of `mode`.
pub fn normalize(exponents: &[u32], mode: Mode) -> RingElement {
    Normalizer::new(mode).normalize(exponents)
}

/// Normalizes without memoization, letting `choose` pick which duplicated part
/// to rewrite at every step and reporting each rewrite `(before, after)` to `observe`.
///
/// `choose` receives the distinct duplicated parts in decreasing order.
pub fn normalize_with(
    exponents: &[u32],
    mode: Mode,
    choose: &mut dyn FnMut(&[u32]) -> u32,
    observe: &mut dyn FnMut(&[u32], &[u32]),
) -> RingElement {
    fn go(
        mut exps: Vec<u32>,
        mode: Mode,
        choose: &mut dyn FnMut(&[u32]) -> u32,
        observe: &mut dyn FnMut(&[u32], &[u32]),
    ) -> RingElement {
        if !mode.reduce(&mut exps) {
            return RingElement::zero(mode);
        }
        let dups = duplicates(&exps);
        if dups.is_empty() {
            let key = Partition::new(exps).expect("distinct parts within range");
            return RingElement::monomial(mode, key, BigInt::one());
        }
        let k = choose(&dups);
        assert!(dups.contains(&k), "strategy picked a non-duplicated part {k}");
        let mut out = RingElement::zero(mode);
        for (next, c) in rewrite_pair(&exps, k) {
            observe(&exps, &next);
            let sub = go(next, mode, choose, observe);
            out.add_scaled(&sub, &BigInt::from(c));
        }
        out
    }
    go(exponents.to_vec(), mode, choose, observe)
}

/// The right-hand side of the straightening relation for `{k, k}`, normalized.
pub fn straighten_pair(k: u32, mode: Mode) -> Result<RingElement> {
    if k == 0 {
        return Err(Error::invalid("straighten_pair needs k >= 1"));
    }
    let mut norm = Normalizer::new(mode);
    let mut out = RingElement::zero(mode);
    for (term, c) in straightening_terms(k) {
        let t = norm.normalize(&term);
        out.add_scaled(&t, &BigInt::from(c));
    }
    Ok(out)
}

pub fn multiply(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    check_modes(a, b)?;
    Normalizer::new(a.mode).multiply(a, b)
}

/// `a · Σ_{i=0..n} [Λ^i]` in `a`'s mode.
pub fn mult_by_sum_lambda(a: &RingElement) -> RingElement {
    Normalizer::new(a.mode)
        .mult_by_sum_lambda(a)
        .expect("same mode")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn elem(mode: Mode, terms: &[(&[u32], i64)]) -> RingElement {
        let mut e = RingElement::zero(mode);
        for (p, c) in terms {
            e.add_term(part(p), BigInt::from(*c));
        }
        e
    }

    /// Independent oracle: repeatedly rewrites the first duplicated pair found
    /// scanning from the smallest part, over a plain map of sorted multisets.
    fn oracle_normalize(exps: &[u32], n: u32, gl: bool) -> BTreeMap<Vec<u32>, i64> {
        let mut work: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        work.insert(exps.to_vec(), 1);
        let mut done: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        while let Some((ms, c)) = work.pop_first() {
            let mut ms: Vec<u32> = ms
                .into_iter()
                .filter(|&e| e != 0 && !(gl && e == n))
                .collect();
            if ms.iter().any(|&e| e > n) {
                continue;
            }
            ms.sort_unstable();
            match ms.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]) {
                None => {
                    ms.reverse();
                    *done.entry(ms).or_default() += c;
                }
                Some(k) => {
                    let mut rest = ms.clone();
                    let i = rest.iter().position(|&e| e == k).unwrap();
                    rest.drain(i..i + 2);
                    let mut push = |extra: &[u32], coef: i64| {
                        let mut m = rest.clone();
                        m.extend_from_slice(extra);
                        m.sort_unstable();
                        *work.entry(m).or_default() += c * coef;
                    };
                    push(&[k], 1);
                    for i in 1..=k {
                        let sign = if i % 2 == 1 { 2 } else { -2 };
                        push(&[k + i, k - i], sign);
                    }
                }
            }
        }
        done.retain(|_, c| *c != 0);
        done
    }

    fn as_map(e: &RingElement) -> BTreeMap<Vec<u32>, i64> {
        e.terms()
            .map(|(k, c)| (k.parts().to_vec(), i64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn straighten_pair_examples() {
        for n in 2..6 {
            assert_eq!(
                straighten_pair(1, Mode::m(n)).unwrap(),
                elem(Mode::m(n), &[(&[1], 1), (&[2], 2)])
            );
        }
        assert_eq!(
            straighten_pair(2, Mode::m(4)).unwrap(),
            elem(Mode::m(4), &[(&[2], 1), (&[3, 1], 2), (&[4], -2)])
        );
        assert_eq!(
            straighten_pair(2, Mode::gl(3)).unwrap(),
            elem(Mode::gl(3), &[(&[2], 1), (&[1], 2)])
        );
        assert!(straighten_pair(0, Mode::m(3)).is_err());
        // k = n in GL-mode: unit times unit.
        assert_eq!(straighten_pair(3, Mode::gl(3)).unwrap(), RingElement::unit(Mode::gl(3)));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize(&[1, 1], Mode::m(2)),
            elem(Mode::m(2), &[(&[1], 1), (&[2], 2)])
        );
        assert!(normalize(&[5], Mode::m(4)).is_zero());
        assert_eq!(normalize(&[3, 2, 1], Mode::m(4)), elem(Mode::m(4), &[(&[3, 2, 1], 1)]));
        // (Λ²Λ²)Λ¹ = ((2) + 2(3,1))·Λ¹ = (2,1) + 2·(3,1,1)
        //   and (3,1,1) = (3)((1) + 2(2)) = (3,1) + 2(3,2).
        assert_eq!(
            normalize(&[2, 2, 1], Mode::m(3)),
            elem(Mode::m(3), &[(&[2, 1], 1), (&[3, 1], 2), (&[3, 2], 4)])
        );
        let oracle = oracle_normalize(&[2, 2, 1], 3, false);
        assert_eq!(as_map(&normalize(&[2, 2, 1], Mode::m(3))), oracle);
    }

    #[test]
    fn normalize_matches_oracle_exhaustively() {
        for n in 1..=5u32 {
            for gl in [false, true] {
                let mode = if gl { Mode::gl(n) } else { Mode::m(n) };
                let mut norm = Normalizer::new(mode);
                // all multisets of length <= 4 with parts in 0..=n+1
                let mut stack = vec![vec![]];
                while let Some(ms) = stack.pop() {
                    assert_eq!(as_map(&norm.normalize(&ms)), oracle_normalize(&ms, n, gl), "{ms:?}");
                    if ms.len() < 4 {
                        let start = ms.last().copied().unwrap_or(0);
                        for e in start..=n + 1 {
                            let mut next = ms.clone();
                            next.push(e);
                            stack.push(next);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let m4 = Mode::m(4);
        let two = elem(m4, &[(&[2], 1)]);
        assert_eq!(
            multiply(&two, &two).unwrap(),
            elem(m4, &[(&[2], 1), (&[3, 1], 2), (&[4], -2)])
        );
        let x = elem(m4, &[(&[2], 1), (&[1], 1)]);
        assert!(multiply(&x, &RingElement::zero(m4)).unwrap().is_zero());
        assert_eq!(multiply(&RingElement::unit(m4), &x).unwrap(), x);
        let gl = RingElement::unit(Mode::gl(4));
        assert!(matches!(multiply(&x, &gl), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn mult_by_sum_lambda_examples() {
        assert_eq!(
            mult_by_sum_lambda(&RingElement::unit(Mode::gl(2))),
            elem(Mode::gl(2), &[(&[], 2), (&[1], 1)])
        );
        let tail = RingElement::basis_element(Mode::gl(3), &part(&[3, 2, 1])).unwrap();
        assert_eq!(
            mult_by_sum_lambda(&tail),
            elem(Mode::gl(3), &[(&[1], 6), (&[2], 6), (&[2, 1], 4)])
        );
        assert!(mult_by_sum_lambda(&RingElement::zero(Mode::m(3))).is_zero());
    }

    #[test]
    fn unit_laws() {
        for n in 1..=5 {
            for mode in [Mode::m(n), Mode::gl(n)] {
                let basis = mode.basis().unwrap();
                for p in &basis.table {
                    let mut exps = p.parts().to_vec();
                    let plain = normalize(&exps, mode);
                    exps.push(0);
                    assert_eq!(normalize(&exps, mode), plain);
                    if mode.kind == ModeKind::GL {
                        exps.push(n);
                        assert_eq!(normalize(&exps, mode), plain);
                    }
                }
            }
        }
    }

    #[test]
    fn rewrites_increase_termination_measure() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(1..=6);
            let len = rng.gen_range(0..=6);
            let exps: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=6)).collect();
            let mode = if rng.gen_bool(0.5) { Mode::m(n) } else { Mode::gl(n) };
            normalize_with(
                &exps,
                mode,
                &mut |d| d[0],
                &mut |before, after| {
                    assert!(rewrite_measure(after) > rewrite_measure(before), "{before:?} -> {after:?}");
                    assert!(after.iter().sum::<u32>() <= before.iter().sum::<u32>());
                },
            );
        }
    }

    #[test]
    fn euler_characteristic_of_straightening_complex() {
        for n in 1..=6 {
            for mode in [Mode::m(n), Mode::gl(n)] {
                for k in 1..=5u32 {
                    let mut norm = Normalizer::new(mode);
                    let mut sum = RingElement::zero(mode);
                    for j in 0..=2 * k {
                        let t = norm.normalize(&[2 * k - j, j]);
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        sum.add_scaled(&t, &BigInt::from(sign));
                    }
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let expect = normalize(&[k], mode).scale(&BigInt::from(sign));
                    assert_eq!(sum, expect, "{mode} k={k}");
                }
            }
        }
    }

    #[test]
    fn render_notation() {
        let m4 = Mode::m(4);
        let e = elem(m4, &[(&[4], -2), (&[1], 1), (&[2], 3), (&[4, 1], -1)]);
        assert_eq!(e.render(false), "(1)+3(2)-2(4)-(4,1)");
        assert_eq!(RingElement::unit(m4).render(true), "1(0)");
        assert_eq!(RingElement::unit(m4).render(false), "(0)");
        assert_eq!(RingElement::zero(m4).render(false), "0");
        assert_eq!(RingElement::unit(Mode::gl(3)).render(false), "(3)");
    }

    fn arb_multiset() -> impl Strategy<Value = (u32, bool, Vec<u32>)> {
        (1u32..=6, any::<bool>(), prop::collection::vec(1u32..=6, 0..=6))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn confluence_under_random_rewrite_order((n, gl, exps) in arb_multiset(), seed in any::<u64>()) {
            let mode = if gl { Mode::gl(n) } else { Mode::m(n) };
            let mut rng = StdRng::seed_from_u64(seed);
            let randomized = normalize_with(
                &exps,
                mode,
                &mut |d| d[rng.gen_range(0..d.len())],
                &mut |_, _| {},
            );
            prop_assert_eq!(randomized, normalize(&exps, mode));
        }

        #[test]
        fn normalize_is_idempotent((n, gl, exps) in arb_multiset()) {
            let mode = if gl { Mode::gl(n) } else { Mode::m(n) };
            let once = normalize(&exps, mode);
            let mut norm = Normalizer::new(mode);
            let mut again = RingElement::zero(mode);
            for (k, c) in once.terms() {
                again.add_scaled(&norm.normalize(k.parts()), c);
            }
            prop_assert_eq!(again, once);
        }
    }
}
