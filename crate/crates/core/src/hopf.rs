//! Counit, unit, coproduct, antipode and the Hopf-axiom checks.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::parenword::{graft, parse, Alphabet, IrreducibleWord, ParseError, Word};
use crate::qalgebra::{flatten, tensor, LinComb, Rational, Tensor2, Tensor3};

/// `ē`: the coefficient of the unit word.
pub fn counit(a: &LinComb) -> Rational {
    a.coeff(&Word::unit())
}

/// `E`: `q ↦ q·e`.
pub fn unit(q: Rational) -> LinComb {
    LinComb::term(q, Word::unit())
}

/// `P = (id − E∘ē) ⊗ id`: drops terms whose first slot is `e`.
pub fn project_left(t: &Tensor2) -> Tensor2 {
    t.filter(|(u, _)| !u.is_unit())
}

/// `P_2 = P_1 ⊗ P_1`: drops terms with `e` in either slot.
pub fn project_both(t: &Tensor2) -> Tensor2 {
    t.filter(|(u, v)| !u.is_unit() && !v.is_unit())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `S[(Xx)] = −(Xx) − m[(S ⊗ id) P_2 Δ[(Xx)]]`
    Left,
    /// `S[(Xx)] = −(Xx) − m[(id ⊗ S) P_2 Δ[(Xx)]]`
    Right,
}

/// Write-once cache; a miss is recomputed outside the lock.
#[derive(Debug)]
struct Memo<K, V> {
    enabled: bool,
    table: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    fn new(enabled: bool) -> Self {
        Memo {
            enabled,
            table: RwLock::new(HashMap::new()),
        }
    }

    fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> V {
        if !self.enabled {
            return compute();
        }
        if let Some(v) = self.table.read().expect("memo lock").get(key) {
            return v.clone();
        }
        let v = compute();
        self.table
            .write()
            .expect("memo lock")
            .entry(key.clone())
            .or_insert_with(|| v.clone());
        v
    }

    fn len(&self) -> usize {
        self.table.read().expect("memo lock").len()
    }
}

/// Alphabet plus memo tables for `Δ` and `S`, keyed by canonical word.
#[derive(Debug)]
pub struct HopfContext {
    alphabet: Alphabet,
    delta: Memo<IrreducibleWord, Tensor2>,
    antipode_left: Memo<IrreducibleWord, LinComb>,
    antipode_right: Memo<IrreducibleWord, LinComb>,
}

impl HopfContext {
    pub fn new(alphabet: Alphabet) -> Self {
        Self::with_memo(alphabet, true)
    }

    /// Same maps, every call recomputed from scratch.
    pub fn without_memo(alphabet: Alphabet) -> Self {
        Self::with_memo(alphabet, false)
    }

    fn with_memo(alphabet: Alphabet, enabled: bool) -> Self {
        HopfContext {
            alphabet,
            delta: Memo::new(enabled),
            antipode_left: Memo::new(enabled),
            antipode_right: Memo::new(enabled),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn parse(&self, text: &str) -> Result<Word, ParseError> {
        parse(text, &self.alphabet)
    }

    /// Number of cached coproducts and antipodes.
    pub fn memo_sizes(&self) -> (usize, usize, usize) {
        (
            self.delta.len(),
            self.antipode_left.len(),
            self.antipode_right.len(),
        )
    }

    /// `Δ` by structural recursion, extended multiplicatively over factors.
    pub fn coproduct(&self, w: &Word) -> Tensor2 {
        w.factors().iter().fold(unit_tensor(), |acc, f| {
            acc.mul(&self.coproduct_irreducible(f))
        })
    }

    /// `Δ[(Xx)] = (Xx)⊗e + e⊗(Xx) + (id ⊗ B_x) P Δ[X]`
    pub fn coproduct_irreducible(&self, w: &IrreducibleWord) -> Tensor2 {
        self.delta.get_or_compute(w, || {
            let whole = Word::from(w.clone());
            let mut out = Tensor2::zero();
            out.add_term((whole.clone(), Word::unit()), Rational::one());
            out.add_term((Word::unit(), whole), Rational::one());
            let inner = self.coproduct(&w.inner());
            for ((u, v), q) in project_left(&inner).iter() {
                out.add_term((u.clone(), Word::from(graft(v, w.root()))), q.clone());
            }
            out
        })
    }

    pub fn coproduct_lin(&self, a: &LinComb) -> Tensor2 {
        a.map_linear(|w| self.coproduct(w))
    }

    /// `Δ` as the sum over subwords `U ⊗ w/U`, weighted by selection count.
    pub fn coproduct_sweedler(&self, w: &Word) -> Tensor2 {
        w.factors().iter().fold(unit_tensor(), |acc, f| {
            let factor: Tensor2 = f
                .subwords()
                .into_iter()
                .map(|s| {
                    (
                        (s.sub, s.quotient),
                        Rational::from_integer(s.multiplicity.into()),
                    )
                })
                .collect();
            acc.mul(&factor)
        })
    }

    pub fn antipode(&self, w: &Word, side: Side) -> LinComb {
        w.factors().iter().fold(unit(Rational::one()), |acc, f| {
            acc.mul(&self.antipode_irreducible(f, side))
        })
    }

    pub fn antipode_left(&self, w: &Word) -> LinComb {
        self.antipode(w, Side::Left)
    }

    pub fn antipode_right(&self, w: &Word) -> LinComb {
        self.antipode(w, Side::Right)
    }

    pub fn antipode_lin(&self, a: &LinComb, side: Side) -> LinComb {
        a.map_linear(|w| self.antipode(w, side))
    }

    fn antipode_irreducible(&self, w: &IrreducibleWord, side: Side) -> LinComb {
        let memo = match side {
            Side::Left => &self.antipode_left,
            Side::Right => &self.antipode_right,
        };
        memo.get_or_compute(w, || {
            let whole = Word::from(w.clone());
            let reduced = project_both(&self.coproduct(&whole));
            let correction = flatten(&self.antipode_in_slot(&reduced, side));
            LinComb::term(-Rational::one(), whole).sub(&correction)
        })
    }

    /// `(S ⊗ id)` for [`Side::Left`], `(id ⊗ S)` for [`Side::Right`].
    pub fn antipode_in_slot(&self, t: &Tensor2, side: Side) -> Tensor2 {
        t.map_linear(|(u, v)| match side {
            Side::Left => tensor(&self.antipode(u, side), &LinComb::monomial(v.clone())),
            Side::Right => tensor(&LinComb::monomial(u.clone()), &self.antipode(v, side)),
        })
    }

    /// `m` after [`HopfContext::antipode_in_slot`].
    pub fn contract_with_antipode(&self, t: &Tensor2, side: Side) -> LinComb {
        flatten(&self.antipode_in_slot(t, side))
    }

    /// `m(S⊗id)Δ[w] = m(id⊗S)Δ[w] = E∘ē[w]`.
    pub fn hopf_axiom_check(&self, w: &Word) -> bool {
        let delta = self.coproduct(w);
        let expected = unit(counit(&LinComb::monomial(w.clone())));
        self.contract_with_antipode(&delta, Side::Left) == expected
            && self.contract_with_antipode(&delta, Side::Right) == expected
    }

    /// `(Δ ⊗ id)Δ[w]`
    pub fn coproduct_then_left(&self, w: &Word) -> Tensor3 {
        self.coproduct(w).map_linear(|(u, v)| {
            self.coproduct(u)
                .iter()
                .map(|((a, b), q)| ((a.clone(), b.clone(), v.clone()), q.clone()))
                .collect()
        })
    }

    /// `(id ⊗ Δ)Δ[w]`
    pub fn coproduct_then_right(&self, w: &Word) -> Tensor3 {
        self.coproduct(w).map_linear(|(u, v)| {
            self.coproduct(v)
                .iter()
                .map(|((a, b), q)| ((u.clone(), a.clone(), b.clone()), q.clone()))
                .collect()
        })
    }

    pub fn coassociativity_check(&self, w: &Word) -> bool {
        self.coproduct_then_left(w) == self.coproduct_then_right(w)
    }

    /// `(id ⊗ ē)Δ[w] = w = (ē ⊗ id)Δ[w]`.
    pub fn counit_axiom_check(&self, w: &Word) -> bool {
        let delta = self.coproduct(w);
        let left: LinComb = delta
            .iter()
            .filter(|((_, v), _)| v.is_unit())
            .map(|((u, _), q)| (u.clone(), q.clone()))
            .collect();
        let right: LinComb = delta
            .iter()
            .filter(|((u, _), _)| u.is_unit())
            .map(|((_, v), q)| (v.clone(), q.clone()))
            .collect();
        let expected = LinComb::monomial(w.clone());
        left == expected && right == expected
    }
}

fn unit_tensor() -> Tensor2 {
    Tensor2::monomial((Word::unit(), Word::unit()))
}

/// `true` iff every coefficient of `a` has sign `(−1)^(number of factors)`.
pub fn alternating_signs(a: &LinComb) -> bool {
    a.iter().all(|(w, q)| {
        let negative = *q < Rational::zero();
        negative == (w.factors().len() % 2 == 1)
    })
}
