//! Rational forms `N(q) / ∏ (1 - q^d_j)` and their truncated expansions.
//!
//! Forms are kept exactly as built; nothing cancels unless
//! [`RationalForm::cancel_common_factors`] is called.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub const DEFAULT_ORDER: usize = 64;

/// Integer polynomial in `q`, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial(Vec<BigInt>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut v = vec![BigInt::zero(); degree + 1];
        v[degree] = c;
        Self::new(v)
    }

    /// `1 - q^d`.
    pub fn one_minus_q_pow(d: u32) -> Self {
        let mut v = vec![BigInt::zero(); d as usize + 1];
        v[0] += 1;
        v[d as usize] -= 1;
        Self::new(v)
    }

    /// `1 + q + .. + q^m`.
    pub fn geometric_sum(m: u32) -> Self {
        Self::new(vec![BigInt::one(); m as usize + 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.0.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.0.len().max(other.0.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        factors
            .into_iter()
            .fold(Polynomial::one(), |acc, f| acc.mul(f))
    }

    /// Exact quotient by `1 - q^d`, or `None` when it does not divide.
    pub fn div_one_minus_q_pow(&self, d: u32) -> Option<Polynomial> {
        let d = d as usize;
        let deg = self.degree()?;
        if deg < d {
            return None;
        }
        // p = (1 - q^d) r  =>  r_i = p_i + r_{i-d}
        let mut r = vec![BigInt::zero(); deg - d + 1];
        for i in 0..r.len() {
            let back = if i >= d { r[i - d].clone() } else { BigInt::zero() };
            r[i] = &self.0[i] + back;
        }
        let quotient = Polynomial::new(r);
        (quotient.mul(&Polynomial::one_minus_q_pow(d as u32)) == *self).then_some(quotient)
    }

    /// Multiplicity of the root `q = 1`. `None` for the zero polynomial.
    pub fn multiplicity_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut m = 0;
        while p.eval_at_one().is_zero() {
            p = p.div_one_minus_q_pow(1).expect("root at 1 divides");
            m += 1;
        }
        Some(m)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str(if first { "-" } else { " - " })?;
            } else if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if d == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `numerator / ∏_j (1 - q^(d_j))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalForm {
    pub numerator: Polynomial,
    denominator_exponents: Vec<u32>,
}

impl RationalForm {
    pub fn new(numerator: Polynomial, mut denominator_exponents: Vec<u32>) -> Result<Self> {
        if denominator_exponents.contains(&0) {
            return Err(Error::invalid("denominator exponents must be positive"));
        }
        denominator_exponents.sort_unstable();
        Ok(RationalForm {
            numerator,
            denominator_exponents,
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalForm {
            numerator: p,
            denominator_exponents: Vec::new(),
        }
    }

    pub fn denominator_exponents(&self) -> &[u32] {
        &self.denominator_exponents
    }

    pub fn denominator(&self) -> Polynomial {
        let factors: Vec<Polynomial> = self
            .denominator_exponents
            .iter()
            .map(|&d| Polynomial::one_minus_q_pow(d))
            .collect();
        Polynomial::product(&factors)
    }

    pub fn mul(&self, other: &RationalForm) -> RationalForm {
        let mut dens = self.denominator_exponents.clone();
        dens.extend_from_slice(&other.denominator_exponents);
        dens.sort_unstable();
        RationalForm {
            numerator: self.numerator.mul(&other.numerator),
            denominator_exponents: dens,
        }
    }

    /// Removes each denominator factor `1 - q^d` that divides the numerator.
    pub fn cancel_common_factors(&self) -> RationalForm {
        let mut numerator = self.numerator.clone();
        let mut kept = Vec::new();
        for &d in self.denominator_exponents.iter().rev() {
            match numerator.div_one_minus_q_pow(d) {
                Some(q) => numerator = q,
                None => kept.push(d),
            }
        }
        kept.sort_unstable();
        RationalForm {
            numerator,
            denominator_exponents: kept,
        }
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if !self.denominator_exponents.is_empty() {
            f.write_str(" / ")?;
            for d in &self.denominator_exponents {
                if *d == 1 {
                    f.write_str("(1 - q)")?;
                } else {
                    write!(f, "(1 - q^{d})")?;
                }
            }
        }
        Ok(())
    }
}

/// Coefficients of degrees `0..=order`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PowerSeries {
    #[serde(serialize_with = "serialize_bigints")]
    coeffs: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::format::json_int(x))?;
    }
    seq.end()
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(|d| p.coeff(d)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = PowerSeries::zero(order);
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// In-place multiplication by `1 / (1 - q^d)`.
    fn divide_by_one_minus_q_pow(&mut self, d: usize) {
        for i in d..self.coeffs.len() {
            let prev = self.coeffs[i - d].clone();
            self.coeffs[i] += prev;
        }
    }

    /// Lowest degree with a nonzero coefficient, and that coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, c.clone()))
    }

    pub fn support(&self) -> Vec<usize> {
        self.sparse().into_iter().map(|(d, _)| d).collect()
    }

    pub fn sparse(&self) -> Vec<(usize, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, c.clone()))
            .collect()
    }
}

/// Truncated expansion through degree `order`.
pub fn expand(form: &RationalForm, order: usize) -> PowerSeries {
    let mut s = PowerSeries::from_polynomial(&form.numerator, order);
    for &d in form.denominator_exponents() {
        s.divide_by_one_minus_q_pow(d as usize);
    }
    s
}

/// `q^(Σ_{i=1..n} (2^i - 1)) / ∏_{i=1..n} (1 - q^(2^i - 1))`.
pub fn steinberg_form(n: u32) -> Result<RationalForm> {
    if n == 0 || n > 30 {
        return Err(Error::invalid(format!("steinberg_form needs 1 <= n <= 30, got {n}")));
    }
    let exps: Vec<u32> = (1..=n).map(|i| (1u32 << i) - 1).collect();
    let shift: u32 = exps.iter().sum();
    RationalForm::new(Polynomial::monomial(BigInt::one(), shift as usize), exps)
}

/// `λ_1 + 2 λ_2 + .. + 2^(h-1) λ_h`.
pub fn connectivity(lambda: &Partition) -> u64 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| (p as u64) << i)
        .sum()
}

/// Pole order at `q = 1`: number of denominator factors minus the multiplicity
/// of the root 1 in the numerator. `None` for the zero form.
pub fn pole_order_at_one(form: &RationalForm) -> Option<i64> {
    let m = form.numerator.multiplicity_at_one()?;
    Some(form.denominator_exponents().len() as i64 - m as i64)
}

/// `Σ_{h >= 0} q^(j·2^h)` through degree `order`.
pub fn chi_series(j: u64, order: usize) -> Result<PowerSeries> {
    if j.is_multiple_of(2) {
        return Err(Error::invalid(format!("chi_series needs an odd index, got {j}")));
    }
    let mut s = PowerSeries::zero(order);
    let mut d = j;
    while d as usize <= order {
        s.coeffs[d as usize] = BigInt::one();
        d *= 2;
    }
    Ok(s)
}

/// `∏_{i=1..n} (1 + q + .. + q^(2^i - 2))`; the `i = 1` factor is the constant 1.
pub fn eigenvector_denominator(n: u32) -> Result<Polynomial> {
    if n == 0 || n > 20 {
        return Err(Error::invalid(format!("needs 1 <= n <= 20, got {n}")));
    }
    let factors: Vec<Polynomial> = (1..=n)
        .map(|i| Polynomial::geometric_sum((1u32 << i) - 2))
        .collect();
    Ok(Polynomial::product(&factors))
}

/// The same product as a rational form: `∏ (1 - q^(2^i - 1)) / (1 - q)^n`.
pub fn eigenvector_denominator_form(n: u32) -> Result<RationalForm> {
    if n == 0 || n > 20 {
        return Err(Error::invalid(format!("needs 1 <= n <= 20, got {n}")));
    }
    let factors: Vec<Polynomial> = (1..=n)
        .map(|i| Polynomial::one_minus_q_pow((1u32 << i) - 1))
        .collect();
    RationalForm::new(Polynomial::product(&factors), vec![1; n as usize])
}

/// Exact equality of the represented rational functions.
pub fn forms_equal(a: &RationalForm, b: &RationalForm) -> bool {
    a.numerator.mul(&b.denominator()) == b.numerator.mul(&a.denominator())
}

/// Parses a dense coefficient list like `0,0,1,-2`.
pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::parse(0, format!("bad coefficient {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}
