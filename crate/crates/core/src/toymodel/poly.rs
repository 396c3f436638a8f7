//! Dense univariate polynomials over ℚ and their quotients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qalgebra::Rational;

/// `Σ coeffs[i] · ε^i`, no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c · ε^degree`
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn scale(&self, q: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Exact division by `ε^n`; the low coefficients must vanish.
    pub fn shift_down(&self, n: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(n).all(Zero::is_zero));
        Poly::new(self.coeffs.iter().skip(n).cloned().collect())
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree().filter(|&n| n >= d_deg) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); n_deg - d_deg + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d_deg] / lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(d_deg);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Writes `Σ c_i x^(i + offset)` with `symbol` as `x`.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[Rational],
    offset: i64,
    symbol: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = i as i64 + offset;
        if first {
            write!(f, "{c}")?;
        } else if c.is_negative() {
            write!(f, " - {}", -c)?;
        } else {
            write!(f, " + {c}")?;
        }
        match power {
            0 => {}
            1 => write!(f, " {symbol}")?,
            p => write!(f, " {symbol}^{p}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, 0, "ε")
    }
}

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RationalFunction::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let scale = den.leading().unwrap().recip();
        Some(RationalFunction {
            num: num.scale(&scale),
            den: den.scale(&scale),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// `c · ε^power` for any integer power.
    pub fn eps_power(c: Rational, power: i64) -> Self {
        let p = power.unsigned_abs() as usize;
        if power >= 0 {
            RationalFunction::from_poly(Poly::monomial(c, p))
        } else {
            RationalFunction::new(Poly::constant(c), Poly::monomial(Rational::one(), p))
                .expect("nonzero denominator")
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality by cross-multiplication; agrees with `==` on normalized values.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.recip()?)
    }

    pub fn eval_f64(&self, eps: f64) -> f64 {
        self.num.eval_f64(eps) / self.den.eval_f64(eps)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() {
            // monic, so den = ε^m
            let m = self.den.degree().unwrap() as i64;
            return write_terms(f, self.num.coeffs(), -m, "ε");
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{integer, rational};

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| integer(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0, 3]).valuation(), Some(2));
    }

    #[test]
    fn division_with_remainder() {
        // (ε^3 + 2ε + 1) = (ε + 1)(ε^2 - ε + 3) - 2
        let (q, r) = p(&[1, 2, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[3, -1, 1]));
        assert_eq!(r, p(&[-2]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[1, 1]) * &p(&[0, 2]);
        let b = &p(&[1, 1]) * &p(&[3, 0, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn rational_functions_reduce() {
        let r = RationalFunction::new(p(&[0, 0, 4]), p(&[0, 0, 0, 0, 8])).unwrap();
        assert_eq!(r, RationalFunction::eps_power(rational(1, 2), -2));
        assert_eq!(r.to_string(), "1/2 ε^-2");
        assert!(RationalFunction::new(p(&[1]), Poly::zero()).is_none());
    }

    #[test]
    fn sums_cancel_poles() {
        let a = RationalFunction::eps_power(integer(1), -1);
        let b = RationalFunction::eps_power(integer(-1), -1);
        assert!((&a + &b).is_zero());
        let c = &RationalFunction::eps_power(integer(1), -2)
            + &RationalFunction::eps_power(integer(1), -1);
        assert_eq!(c.to_string(), "1 ε^-2 + 1 ε^-1");
        assert!(c.cross_eq(&RationalFunction::new(p(&[1, 1]), p(&[0, 0, 1])).unwrap()));
    }

    #[test]
    fn non_monomial_denominator_display() {
        let r = RationalFunction::new(p(&[1]), p(&[2, 2])).unwrap();
        assert_eq!(r.to_string(), "(1/2) / (1 + 1 ε)");
        assert!((r.eval_f64(1.0) - 0.25).abs() < 1e-15);
    }
}
