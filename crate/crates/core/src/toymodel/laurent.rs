//! Truncated Laurent series in `ε` with coefficients polynomial in `L = ln c`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{write_terms, Poly};
use super::value::{to_f64, RegValue};
use crate::qalgebra::{format_rational, Rational};

/// `Σ coeffs[m] · L^m`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogPolynomial {
    coeffs: Vec<Rational>,
}

impl LogPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LogPolynomial {
            coeffs: Poly::new(coeffs).coeffs().to_vec(),
        }
    }

    pub fn zero() -> Self {
        LogPolynomial::default()
    }

    /// `c · L^degree`
    pub fn monomial(c: Rational, degree: usize) -> Self {
        LogPolynomial {
            coeffs: Poly::monomial(c, degree).coeffs().to_vec(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        LogPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = Poly::new(self.coeffs.clone());
        let b = Poly::new(other.coeffs.clone());
        LogPolynomial::new((&a * &b).coeffs().to_vec())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        LogPolynomial::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Substitutes a numeric `L`.
    pub fn eval_f64(&self, log_c: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * log_c + to_f64(c))
    }

    pub fn to_json(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for LogPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, 0, "L")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("denominator does not factor as ε^m times a unit at ε = 0")]
    ExpansionImpossible,
    #[error(
        "nonzero coefficient at ε^{power}, below the requested window starting at ε^{min_pow}"
    )]
    PoleBelowWindow { power: i32, min_pow: i32 },
    #[error("empty window: min power {min_pow} exceeds max power {max_pow}")]
    EmptyWindow { min_pow: i32, max_pow: i32 },
}

/// Coefficients of `ε^n` for `min_pow <= n <= max_pow`; terms above `max_pow`
/// are unknown, not zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    min_pow: i32,
    max_pow: i32,
    coeffs: BTreeMap<i32, LogPolynomial>,
}

impl LaurentSeries {
    pub fn zero(min_pow: i32, max_pow: i32) -> Self {
        LaurentSeries {
            min_pow,
            max_pow,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn min_pow(&self) -> i32 {
        self.min_pow
    }

    /// Truncation order: the highest power that is known exactly.
    pub fn max_pow(&self) -> i32 {
        self.max_pow
    }

    /// `None` beyond the truncation order.
    pub fn coefficient(&self, power: i32) -> Option<LogPolynomial> {
        if power > self.max_pow {
            return None;
        }
        Some(self.coeffs.get(&power).cloned().unwrap_or_default())
    }

    fn add_coeff(&mut self, power: i32, c: LogPolynomial) {
        if power > self.max_pow || c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&power) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(power, sum);
        }
    }

    pub fn lowest_nonzero(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficients of the negative powers, highest order pole first.
    pub fn pole_part(&self) -> Vec<(i32, LogPolynomial)> {
        (self.min_pow.min(0)..0)
            .map(|p| (p, self.coefficient(p).unwrap_or_default()))
            .collect()
    }

    /// No nonzero coefficient at a negative power.
    pub fn is_finite(&self) -> bool {
        self.coeffs.keys().all(|&p| p >= 0)
    }

    /// The `ε^0` coefficient.
    pub fn constant_term(&self) -> Option<LogPolynomial> {
        self.coefficient(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = LaurentSeries::zero(
            self.min_pow.min(other.min_pow),
            self.max_pow.min(other.max_pow),
        );
        for (p, c) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_coeff(*p, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let max_pow = (self.max_pow + other.min_pow).min(other.max_pow + self.min_pow);
        let mut out = LaurentSeries::zero(self.min_pow + other.min_pow, max_pow);
        for (p, a) in &self.coeffs {
            for (q, b) in &other.coeffs {
                out.add_coeff(p + q, a.mul(b));
            }
        }
        out
    }

    /// JSON object: power (as string) → `L` coefficients, every power in the window.
    pub fn to_json(&self) -> BTreeMap<i32, Vec<String>> {
        (self.min_pow..=self.max_pow)
            .map(|p| (p, self.coefficient(p).unwrap_or_default().to_json()))
            .collect()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.min_pow..=self.max_pow {
            let c = self.coefficient(p).unwrap_or_default();
            writeln!(f, "ε^{p}: {c}")?;
        }
        write!(f, "+ O(ε^{})", self.max_pow + 1)
    }
}

/// Exact expansion of `v` around `ε = 0` on the window `[min_pow, max_pow]`.
///
/// `c^(−kε) = Σ_m (−kL)^m ε^m / m!`; each `r_k(ε)` is written as
/// `ε^(a−m) · n(ε)/d(ε)` with `d(0) ≠ 0` and divided out as power series.
pub fn laurent_expand(
    v: &RegValue,
    min_pow: i32,
    max_pow: i32,
) -> Result<LaurentSeries, ExpansionError> {
    if min_pow > max_pow {
        return Err(ExpansionError::EmptyWindow { min_pow, max_pow });
    }
    // Expand from the lowest pole present so cancellations below the window are seen.
    let mut lowest = min_pow;
    let mut parts = Vec::new();
    for (k, r) in v.terms() {
        let num_val = r.num().valuation().expect("nonzero term") as i32;
        let den_val = r
            .den()
            .valuation()
            .ok_or(ExpansionError::ExpansionImpossible)? as i32;
        let shift = num_val - den_val;
        lowest = lowest.min(shift);
        parts.push((k, r, shift, num_val as usize, den_val as usize));
    }
    let mut full = LaurentSeries::zero(lowest, max_pow);
    for (k, r, shift, num_val, den_val) in parts {
        if shift > max_pow {
            continue;
        }
        let order = (max_pow - shift) as usize;
        let n = r.num().shift_down(num_val);
        let d = r.den().shift_down(den_val);
        let ratio = series_div(&n, &d, order)?;
        let exp = scale_exponential(k, order);
        for (i, q) in ratio.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (m, e) in exp.iter().enumerate().take(order + 1 - i) {
                full.add_coeff(shift + (i + m) as i32, e.scale(q));
            }
        }
    }
    if let Some(power) = full.lowest_nonzero().filter(|&p| p < min_pow) {
        return Err(ExpansionError::PoleBelowWindow { power, min_pow });
    }
    full.min_pow = min_pow;
    Ok(full)
}

/// First `order + 1` coefficients of `n/d` as a power series.
fn series_div(n: &Poly, d: &Poly, order: usize) -> Result<Vec<Rational>, ExpansionError> {
    let d0 = d.coeff(0);
    if d0.is_zero() {
        return Err(ExpansionError::ExpansionImpossible);
    }
    let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = n.coeff(i);
        for j in 1..=i {
            let dj = d.coeff(j);
            if !dj.is_zero() {
                acc -= dj * &out[i - j];
            }
        }
        out.push(acc / &d0);
    }
    Ok(out)
}

/// `(−kL)^m / m!` for `m = 0..=order`.
fn scale_exponential(k: u32, order: usize) -> Vec<LogPolynomial> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    let minus_k = Rational::from_integer(-BigInt::from(k));
    for m in 0..=order {
        if m > 0 {
            c = c * &minus_k / Rational::from_integer(BigInt::from(m));
        }
        out.push(LogPolynomial::monomial(c.clone(), m));
    }
    out
}
