//! Exact-rational linear combinations of words and of word pairs/triples.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parenword::{parse, Alphabet, ParseError, Word};

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `p/q`, also for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    let malformed = || RationalParseError::Malformed(s.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| malformed())?;
    let q: BigInt = q.parse().map_err(|_| malformed())?;
    if q.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(p, q))
}

/// Basis elements a linear combination can be built over.
pub trait Monomial: Clone + Ord {
    /// Product of basis elements (slot-wise for tensors).
    fn times(&self, other: &Self) -> Self;
    fn words(&self) -> Vec<&Word>;
    fn render(&self) -> String;
}

impl Monomial for Word {
    fn times(&self, other: &Self) -> Self {
        self.concat(other)
    }

    fn words(&self) -> Vec<&Word> {
        vec![self]
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Monomial for (Word, Word) {
    fn times(&self, other: &Self) -> Self {
        (self.0.concat(&other.0), self.1.concat(&other.1))
    }

    fn words(&self) -> Vec<&Word> {
        vec![&self.0, &self.1]
    }

    fn render(&self) -> String {
        format!("{} ⊗ {}", self.0, self.1)
    }
}

impl Monomial for (Word, Word, Word) {
    fn times(&self, other: &Self) -> Self {
        (
            self.0.concat(&other.0),
            self.1.concat(&other.1),
            self.2.concat(&other.2),
        )
    }

    fn words(&self) -> Vec<&Word> {
        vec![&self.0, &self.1, &self.2]
    }

    fn render(&self) -> String {
        format!("{} ⊗ {} ⊗ {}", self.0, self.1, self.2)
    }
}

/// Finite formal sum with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

/// Element of the algebra of words.
pub type LinComb = Combination<Word>;
/// Element of the twofold tensor product; the image of the coproduct.
pub type Tensor2 = Combination<(Word, Word)>;
/// Element of the threefold tensor product.
pub type Tensor3 = Combination<(Word, Word, Word)>;

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Monomial> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: K) -> Self {
        Self::term(Rational::one(), k)
    }

    pub fn term(coeff: Rational, k: K) -> Self {
        let mut out = Self::zero();
        out.add_term(k, coeff);
        out
    }

    pub fn add_term(&mut self, k: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.add_term(k.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.add_term(k.clone(), -q.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * q)).collect(),
        }
    }

    /// Bilinear extension of [`Monomial::times`].
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                out.add_term(a.times(b), p * q);
            }
        }
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Monomial>(&self, f: impl Fn(&K) -> Combination<L>) -> Combination<L> {
        let mut out = Combination::zero();
        for (k, q) in &self.terms {
            for (l, c) in f(k).terms {
                out.add_term(l, c * q);
            }
        }
        out
    }

    /// Keeps only the terms whose basis element satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        Combination {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, q)| (k.clone(), q.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(k, q)| {
                let words = k.words();
                let word = if words.len() == 1 {
                    WordField::Single(words[0].to_string())
                } else {
                    WordField::Many(words.iter().map(|w| w.to_string()).collect())
                };
                TermJson {
                    coeff: format_rational(q),
                    word,
                }
            })
            .collect()
    }
}

impl<K: Monomial> FromIterator<(K, Rational)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, q) in iter {
            out.add_term(k, q);
        }
        out
    }
}

impl<K: Monomial> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, q)) in self.terms.iter().enumerate() {
            let shown = if i == 0 {
                q.to_string()
            } else if q.is_negative() {
                f.write_str(" - ")?;
                (-q).to_string()
            } else {
                f.write_str(" + ")?;
                q.to_string()
            };
            write!(f, "{shown} {}", k.render())?;
        }
        Ok(())
    }
}

impl<K: Monomial> Add for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: Self) -> Combination<K> {
        Combination::add(self, rhs)
    }
}

impl<K: Monomial> Sub for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: Self) -> Combination<K> {
        Combination::sub(self, rhs)
    }
}

impl<K: Monomial> Mul for &Combination<K> {
    type Output = Combination<K>;
    fn mul(self, rhs: Self) -> Combination<K> {
        Combination::mul(self, rhs)
    }
}

impl<K: Monomial> Neg for &Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        self.scale(&-Rational::one())
    }
}

pub fn add(a: &LinComb, b: &LinComb) -> LinComb {
    a.add(b)
}

pub fn scale(q: &Rational, a: &LinComb) -> LinComb {
    a.scale(q)
}

pub fn mul(a: &LinComb, b: &LinComb) -> LinComb {
    a.mul(b)
}

pub fn tensor(a: &LinComb, b: &LinComb) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (u, p) in a.iter() {
        for (v, q) in b.iter() {
            out.add_term((u.clone(), v.clone()), p * q);
        }
    }
    out
}

/// `m`: multiply the two slots of every term.
pub fn flatten(t: &Tensor2) -> LinComb {
    t.iter()
        .map(|((u, v), q)| (u.concat(v), q.clone()))
        .collect()
}

pub fn tensor2_mul(a: &Tensor2, b: &Tensor2) -> Tensor2 {
    a.mul(b)
}

/// JSON term: `{"coeff": "p/q", "word": "<word>"}`; tensors carry an array of words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: WordField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordField {
    Single(String),
    Many(Vec<String>),
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Rational(#[from] RationalParseError),
    #[error(transparent)]
    Word(#[from] ParseError),
    #[error("expected {expected} word(s) per term, found {found}")]
    Arity { expected: usize, found: usize },
}

fn json_words(
    field: &WordField,
    alphabet: &Alphabet,
    arity: usize,
) -> Result<Vec<Word>, JsonError> {
    let texts: Vec<&str> = match field {
        WordField::Single(s) => vec![s.as_str()],
        WordField::Many(v) => v.iter().map(String::as_str).collect(),
    };
    if texts.len() != arity {
        return Err(JsonError::Arity {
            expected: arity,
            found: texts.len(),
        });
    }
    texts
        .into_iter()
        .map(|t| parse(t, alphabet).map_err(JsonError::from))
        .collect()
}

impl LinComb {
    pub fn from_json(terms: &[TermJson], alphabet: &Alphabet) -> Result<Self, JsonError> {
        let mut out = LinComb::zero();
        for t in terms {
            let mut words = json_words(&t.word, alphabet, 1)?;
            out.add_term(words.remove(0), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl Tensor2 {
    pub fn from_json(terms: &[TermJson], alphabet: &Alphabet) -> Result<Self, JsonError> {
        let mut out = Tensor2::zero();
        for t in terms {
            let mut words = json_words(&t.word, alphabet, 2)?.into_iter();
            let (u, v) = (words.next().unwrap(), words.next().unwrap());
            out.add_term((u, v), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parenword::Alphabet;

    fn w(s: &str) -> Word {
        parse(s, &Alphabet::numbered(3)).unwrap()
    }

    fn lc(terms: &[(i64, &str)]) -> LinComb {
        terms.iter().map(|(q, s)| (w(s), integer(*q))).collect()
    }

    fn t2(terms: &[(i64, &str, &str)]) -> Tensor2 {
        terms
            .iter()
            .map(|(q, a, b)| ((w(a), w(b)), integer(*q)))
            .collect()
    }

    #[test]
    fn addition_and_cancellation() {
        assert_eq!(
            add(&lc(&[(2, "(x1)")]), &lc(&[(3, "(x1)")])),
            lc(&[(5, "(x1)")])
        );
        assert!(add(&lc(&[(1, "(x1)")]), &lc(&[(-1, "(x1)")])).is_zero());
        assert!(scale(&integer(0), &lc(&[(4, "(x1)"), (1, "()")])).is_zero());
    }

    #[test]
    fn product() {
        assert_eq!(
            mul(&lc(&[(1, "(x1)")]), &lc(&[(1, "(x2)")])),
            lc(&[(1, "(x1)(x2)")])
        );
        let x = lc(&[(3, "((x1)x2)"), (-1, "(x3)")]);
        assert_eq!(mul(&lc(&[(1, "()")]), &x), x);
        assert_eq!(mul(&x, &lc(&[(1, "()")])), x);
        assert_eq!(
            mul(&lc(&[(1, "(x1)"), (1, "(x2)")]), &lc(&[(1, "(x1)")])),
            lc(&[(1, "(x1)(x1)"), (1, "(x1)(x2)")])
        );
    }

    #[test]
    fn flattening() {
        assert_eq!(flatten(&t2(&[(1, "(x1)", "(x2)")])), lc(&[(1, "(x1)(x2)")]));
        assert_eq!(
            flatten(&t2(&[(1, "((x1)x2)", "()"), (1, "()", "((x1)x2)")])),
            lc(&[(2, "((x1)x2)")])
        );
        assert!(flatten(&t2(&[(-1, "(x1)", "()"), (1, "()", "(x1)")])).is_zero());
    }

    #[test]
    fn tensor_products() {
        assert_eq!(
            tensor2_mul(&t2(&[(1, "(x1)", "()")]), &t2(&[(1, "(x2)", "()")])),
            t2(&[(1, "(x1)(x2)", "()")])
        );
        assert_eq!(
            tensor2_mul(&t2(&[(1, "()", "(x1)")]), &t2(&[(1, "(x2)", "()")])),
            t2(&[(1, "(x2)", "(x1)")])
        );
        let delta = t2(&[(1, "(x1)", "()"), (1, "()", "(x1)")]);
        assert_eq!(
            tensor2_mul(&delta, &delta),
            t2(&[
                (1, "(x1)(x1)", "()"),
                (2, "(x1)", "(x1)"),
                (1, "()", "(x1)(x1)")
            ])
        );
        assert_eq!(
            tensor(&lc(&[(2, "(x1)")]), &lc(&[(3, "(x2)"), (1, "()")])),
            t2(&[(6, "(x1)", "(x2)"), (2, "(x1)", "()")])
        );
    }

    #[test]
    fn text_rendering() {
        assert_eq!(
            lc(&[(-1, "((x1)x2)"), (1, "(x1)(x2)")]).to_string(),
            "-1 ((x1)x2) + 1 (x1)(x2)"
        );
        assert_eq!(
            lc(&[(1, "(x1)"), (-2, "(x2)")]).to_string(),
            "1 (x1) - 2 (x2)"
        );
        assert_eq!(LinComb::zero().to_string(), "0");
        assert_eq!(t2(&[(1, "()", "()")]).to_string(), "1 () ⊗ ()");
    }

    #[test]
    fn rationals() {
        assert_eq!(format_rational(&integer(5)), "5/1");
        assert_eq!(format_rational(&rational(-10, 4)), "-5/2");
        assert_eq!(parse_rational("-5/2").unwrap(), rational(-5, 2));
        assert_eq!(parse_rational("7").unwrap(), integer(7));
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_rational("a/b"),
            Err(RationalParseError::Malformed(_))
        ));
    }

    #[test]
    fn json_schema() {
        let a = Alphabet::numbered(3);
        let x = lc(&[(-1, "((x1)x2)"), (1, "(x1)(x2)")]);
        let json = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":"-1/1","word":"((x1)x2)"},{"coeff":"1/1","word":"(x1)(x2)"}]"#
        );
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(LinComb::from_json(&back, &a).unwrap(), x);

        let t = t2(&[(2, "(x1)", "(x1)")]);
        let json = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(json, r#"[{"coeff":"2/1","word":["(x1)","(x1)"]}]"#);
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(Tensor2::from_json(&back, &a).unwrap(), t);
        assert!(matches!(
            LinComb::from_json(&back, &a),
            Err(JsonError::Arity {
                expected: 1,
                found: 2
            })
        ));
    }
}
