//! A one-dimensional integral model realizing the Hopf algebra.
//!
//! Feynman rules:
//!
//! ```text
//! (x_j)[c]   = ∫_c^∞ dy y^(−1−jε)          = c^(−jε) / (jε)
//! (X x_j)[c] = ∫_c^∞ dy y^(−1−jε) X[y]
//! (XY)[c]    = X[c] · Y[c]
//! R(X[c])    = X[1]
//! ```
//!
//! Every value is a finite sum `Σ_k r_k(ε) c^(−kε)` with `r_k` rational in
//! `ε`, so the whole model is evaluated exactly ([`RegValue`]).

pub mod laurent;
pub mod poly;
pub mod quadrature;
pub mod value;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_traits::One;

use crate::hopf::{project_both, HopfContext};
use crate::parenword::{IrreducibleWord, NotIrreducible, Word};
use crate::qalgebra::Rational;

pub use laurent::{laurent_expand, ExpansionError, LaurentSeries, LogPolynomial};
pub use poly::{Poly, RationalFunction};
pub use quadrature::{quadrature_oracle, QuadratureConfig, QuadratureError};
pub use value::{RegTermJson, RegValue};

/// Renormalization scheme. Only the lower-limit-to-one subtraction exists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scheme {
    /// `R(X[c]) = X[1]`
    #[default]
    UnitScale,
}

impl Scheme {
    pub fn id(self) -> &'static str {
        match self {
            Scheme::UnitScale => "unit-scale",
        }
    }

    pub fn apply(self, v: &RegValue) -> RegValue {
        match self {
            Scheme::UnitScale => v.at_unit_scale(),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown renormalization scheme `{0}` (supported: unit-scale)")]
pub struct UnknownScheme(pub String);

impl FromStr for Scheme {
    type Err = UnknownScheme;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unit-scale" => Ok(Scheme::UnitScale),
            other => Err(UnknownScheme(other.to_string())),
        }
    }
}

/// `φ`: the Feynman-rule value of a word.
pub fn phi(w: &Word) -> RegValue {
    w.factors()
        .iter()
        .fold(RegValue::one(), |acc, f| acc.mul(&phi_irreducible(f)))
}

fn phi_irreducible(w: &IrreducibleWord) -> RegValue {
    phi(&w.inner()).integrate_against(w.root().weight())
}

/// `R`: evaluate at `c = 1`.
pub fn rmap(v: &RegValue) -> RegValue {
    Scheme::UnitScale.apply(v)
}

/// Counter terms `S_R` and renormalized values, built on the coproduct of a
/// [`HopfContext`].
#[derive(Debug)]
pub struct ToyModel<'a> {
    hopf: &'a HopfContext,
    scheme: Scheme,
    counterterms: RwLock<HashMap<IrreducibleWord, RegValue>>,
}

impl<'a> ToyModel<'a> {
    pub fn new(hopf: &'a HopfContext) -> Self {
        Self::with_scheme(hopf, Scheme::UnitScale)
    }

    pub fn with_scheme(hopf: &'a HopfContext, scheme: Scheme) -> Self {
        ToyModel {
            hopf,
            scheme,
            counterterms: RwLock::new(HashMap::new()),
        }
    }

    pub fn hopf(&self) -> &HopfContext {
        self.hopf
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// `S_R`, multiplicative over factors with `S_R(e) = 1`.
    pub fn counterterm(&self, w: &Word) -> RegValue {
        w.factors().iter().fold(RegValue::one(), |acc, f| {
            acc.mul(&self.counterterm_irreducible(f))
        })
    }

    /// `S_R[(Xx)] = −R[φ((Xx))] − R[m (S_R ⊗ φ) P_2 Δ[(Xx)]]`
    fn counterterm_irreducible(&self, w: &IrreducibleWord) -> RegValue {
        if let Some(v) = self.counterterms.read().expect("memo lock").get(w) {
            return v.clone();
        }
        let whole = Word::from(w.clone());
        let mut inner = phi(&whole);
        for ((u, v), q) in project_both(&self.hopf.coproduct(&whole)).iter() {
            inner = inner.add(&self.counterterm(u).mul(&phi(v)).scale(q));
        }
        let value = self.scheme.apply(&inner).neg();
        self.counterterms
            .write()
            .expect("memo lock")
            .entry(w.clone())
            .or_insert_with(|| value.clone());
        value
    }

    /// `m (S_R ⊗ φ) Δ[w]`: bare value, subtractions and overall counter term.
    pub fn renormalize(&self, w: &Word) -> Result<RegValue, NotIrreducible> {
        self.require_irreducible(w)?;
        Ok(self.contract(w, |_| true))
    }

    /// `m (S_R ⊗ φ) P_R Δ[w]`: `w` with its subdivergences subtracted, but
    /// without its own counter term.
    pub fn bar_value(&self, w: &Word) -> Result<RegValue, NotIrreducible> {
        self.require_irreducible(w)?;
        Ok(self.contract(w, |v| !v.is_unit()))
    }

    fn contract(&self, w: &Word, keep_quotient: impl Fn(&Word) -> bool) -> RegValue {
        let mut out = RegValue::zero();
        for ((u, v), q) in self.hopf.coproduct(w).iter() {
            if keep_quotient(v) {
                out = out.add(&self.counterterm(u).mul(&phi(v)).scale(q));
            }
        }
        out
    }

    fn require_irreducible(&self, w: &Word) -> Result<(), NotIrreducible> {
        if w.is_irreducible() {
            Ok(())
        } else {
            Err(NotIrreducible(w.to_string()))
        }
    }
}

/// Counter term by the BPHZ recursion over proper forests, without the
/// coproduct or antipode:
///
/// `Γ̄ = Γ + Σ_γ Z_γ · Γ/γ`, `Z_Γ = −t(Γ̄)`, `Z` multiplicative over disjoint
/// components, `t` = [`rmap`].
pub fn forest_formula(w: &Word) -> Result<RegValue, NotIrreducible> {
    let tree = w
        .as_irreducible()
        .ok_or_else(|| NotIrreducible(w.to_string()))?;
    let mut memo = HashMap::new();
    Ok(forest_counterterm(tree, &mut memo))
}

fn forest_counterterm(
    w: &IrreducibleWord,
    memo: &mut HashMap<IrreducibleWord, RegValue>,
) -> RegValue {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let mut bar = phi(&Word::from(w.clone()));
    for forest in w.subwords() {
        if forest.sub.is_unit() || forest.quotient.is_unit() {
            continue;
        }
        let z = forest.sub.factors().iter().fold(RegValue::one(), |acc, g| {
            acc.mul(&forest_counterterm(g, memo))
        });
        let weight = Rational::from_integer(forest.multiplicity.into());
        bar = bar.add(&z.mul(&phi(&forest.quotient)).scale(&weight));
    }
    let z = rmap(&bar).neg();
    memo.insert(w.clone(), z.clone());
    z
}

/// Default expansion window for a word: from its maximal pole order up to `ε^order`.
pub fn default_window(w: &Word, order: i32) -> (i32, i32) {
    (-(w.length() as i32), order)
}

/// Single-monomial check `q · ε^(−n)` used for counter-term shape.
pub fn as_pure_pole(v: &RegValue) -> Option<(Rational, i64)> {
    let mut terms = v.terms();
    let (k, r) = terms.next()?;
    if k != 0 || terms.next().is_some() || !r.num().is_monomial() || !r.den().is_monomial() {
        return None;
    }
    let num_deg = r.num().degree()? as i64;
    let den_deg = r.den().degree()? as i64;
    let den_lead = r.den().leading()?;
    debug_assert!(den_lead.is_one());
    Some((r.num().leading()?.clone(), num_deg - den_deg))
}
