//! Regularized values `Σ_k r_k(ε) · c^(−kε)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::poly::{Poly, RationalFunction};
use crate::qalgebra::{format_rational, parse_rational, Rational, RationalParseError};

/// Map from scale exponent `k` to its coefficient `r_k(ε)`; zero entries dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RegValue {
    terms: BTreeMap<u32, RationalFunction>,
}

impl RegValue {
    pub fn zero() -> Self {
        RegValue::default()
    }

    pub fn one() -> Self {
        RegValue::term(0, RationalFunction::one())
    }

    /// `r · c^(−kε)`
    pub fn term(k: u32, r: RationalFunction) -> Self {
        let mut out = RegValue::zero();
        out.add_term(k, r);
        out
    }

    pub fn add_term(&mut self, k: u32, r: RationalFunction) {
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(existing) => &existing + &r,
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RationalFunction)> {
        self.terms.iter().map(|(k, r)| (*k, r))
    }

    pub fn coeff(&self, k: u32) -> RationalFunction {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RegValue) -> RegValue {
        let mut out = self.clone();
        for (k, r) in &other.terms {
            out.add_term(*k, r.clone());
        }
        out
    }

    pub fn sub(&self, other: &RegValue) -> RegValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RegValue {
        RegValue {
            terms: self.terms.iter().map(|(k, r)| (*k, -r)).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> RegValue {
        let mut out = RegValue::zero();
        for (k, r) in &self.terms {
            out.add_term(*k, r.scale(q));
        }
        out
    }

    /// Products add scale exponents.
    pub fn mul(&self, other: &RegValue) -> RegValue {
        let mut out = RegValue::zero();
        for (k1, r1) in &self.terms {
            for (k2, r2) in &other.terms {
                out.add_term(k1 + k2, r1 * r2);
            }
        }
        out
    }

    /// `∫_c^∞ dy y^(−1−jε) V[y]`: each `r·y^(−kε)` becomes `r/((j+k)ε) · c^(−(j+k)ε)`.
    pub fn integrate_against(&self, weight: u32) -> RegValue {
        let mut out = RegValue::zero();
        for (k, r) in &self.terms {
            let total = weight + k;
            let factor = RationalFunction::eps_power(Rational::new(1.into(), total.into()), -1);
            out.add_term(total, r * &factor);
        }
        out
    }

    /// `c → 1`: collapses every scale exponent to `k = 0`.
    pub fn at_unit_scale(&self) -> RegValue {
        let mut out = RegValue::zero();
        for r in self.terms.values() {
            out.add_term(0, r.clone());
        }
        out
    }

    /// Numeric value at given `c` and `ε`.
    pub fn eval_f64(&self, c: f64, eps: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, r)| r.eval_f64(eps) * c.powf(-(*k as f64) * eps))
            .sum()
    }

    pub fn to_json(&self) -> Vec<RegTermJson> {
        self.terms
            .iter()
            .map(|(k, r)| RegTermJson {
                k: *k,
                num: r.num().coeffs().iter().map(format_rational).collect(),
                den: r.den().coeffs().iter().map(format_rational).collect(),
            })
            .collect()
    }

    pub fn from_json(terms: &[RegTermJson]) -> Result<Self, RegValueJsonError> {
        let mut out = RegValue::zero();
        for t in terms {
            let poly = |cs: &[String]| -> Result<Poly, RationalParseError> {
                cs.iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Poly::new)
            };
            let r = RationalFunction::new(poly(&t.num)?, poly(&t.den)?)
                .ok_or(RegValueJsonError::ZeroDenominator(t.k))?;
            out.add_term(t.k, r);
        }
        Ok(out)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RegValueJsonError {
    #[error(transparent)]
    Rational(#[from] RationalParseError),
    #[error("term with k = {0} has a zero denominator")]
    ZeroDenominator(u32),
}

/// JSON term: `{"k": k, "num": [ε^0, ε^1, ..], "den": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegTermJson {
    pub k: u32,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl fmt::Display for RegValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{r}")?,
                1 => write!(f, "[{r}] c^(-ε)")?,
                k => write!(f, "[{r}] c^(-{k}ε)")?,
            }
        }
        Ok(())
    }
}

/// Approximates a rational as `f64`.
pub(crate) fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{integer, rational};

    fn pole(q: Rational, order: i64) -> RationalFunction {
        RationalFunction::eps_power(q, -order)
    }

    #[test]
    fn arithmetic_closes() {
        let a = RegValue::term(1, pole(integer(1), 1));
        let b = RegValue::term(2, pole(rational(1, 2), 1));
        let prod = a.mul(&b);
        assert_eq!(prod, RegValue::term(3, pole(rational(1, 2), 2)));
        assert!(a.sub(&a).is_zero());
        assert_eq!(RegValue::one().mul(&a), a);
    }

    #[test]
    fn integration_adds_weight() {
        // ∫_c^∞ y^(−1−ε) dy = c^(−ε)/ε
        let v = RegValue::one().integrate_against(1);
        assert_eq!(v, RegValue::term(1, pole(integer(1), 1)));
        // then against weight 1 again: c^(−2ε)/(2ε²)
        assert_eq!(
            v.integrate_against(1),
            RegValue::term(2, pole(rational(1, 2), 2))
        );
    }

    #[test]
    fn unit_scale_is_idempotent() {
        let v =
            RegValue::term(1, pole(integer(1), 1)).add(&RegValue::term(4, pole(rational(1, 8), 3)));
        let once = v.at_unit_scale();
        assert_eq!(once.at_unit_scale(), once);
        assert_eq!(
            RegValue::term(4, pole(rational(1, 8), 3)).at_unit_scale(),
            RegValue::term(0, pole(rational(1, 8), 3))
        );
    }

    #[test]
    fn json_layout() {
        let v = RegValue::term(2, pole(rational(1, 2), 2));
        let json = serde_json::to_string(&v.to_json()).unwrap();
        assert_eq!(json, r#"[{"k":2,"num":["1/2"],"den":["0/1","0/1","1/1"]}]"#);
        let back: Vec<RegTermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(RegValue::from_json(&back).unwrap(), v);
    }

    #[test]
    fn numeric_evaluation() {
        let v = RegValue::term(2, pole(rational(1, 2), 2));
        let expected = 2f64.powf(-0.2) * 50.0;
        assert!((v.eval_f64(2.0, 0.1) - expected).abs() < 1e-12);
    }
}
