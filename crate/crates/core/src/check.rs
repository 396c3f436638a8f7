//! Exhaustive invariant suites over enumerated words.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::hopf::{alternating_signs, HopfContext, Side};
use crate::parenword::{enumerate_words, parse, Alphabet, Word};
use crate::qalgebra::LinComb;
use crate::toymodel::{
    as_pure_pole, forest_formula, laurent_expand, phi, quadrature_oracle, rmap, ToyModel,
};

/// Which suites run, and up to which word length the costlier ones go.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub max_len: usize,
    /// Toy-model suites only see irreducible words up to this length.
    pub toy_max_len: usize,
    /// Quadrature agreement only sees irreducible words up to this length.
    pub quadrature_max_len: usize,
    pub quadrature_points: Vec<(f64, f64)>,
    pub quadrature_rel_tol: f64,
}

impl CheckOptions {
    pub fn new(max_len: usize) -> Self {
        let mut points = Vec::new();
        for c in [1.0, 2.0, std::f64::consts::E] {
            for eps in [0.1, 0.25] {
                points.push((c, eps));
            }
        }
        CheckOptions {
            max_len,
            toy_max_len: max_len,
            quadrature_max_len: max_len.min(3),
            quadrature_points: points,
            quadrature_rel_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub alphabet: String,
    pub max_len: usize,
    pub word_count: usize,
    pub irreducible_count: usize,
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "alphabet {{{}}}, max length {}: {} words ({} irreducible)",
            self.alphabet, self.max_len, self.word_count, self.irreducible_count
        )?;
        for s in &self.suites {
            let status = if s.passed() { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "  [{status}] {:<28} {:>6} checked, {} failed",
                s.name,
                s.checked,
                s.failures.len()
            )?;
            for failure in s.failures.iter().take(5) {
                writeln!(f, "         {failure}")?;
            }
        }
        if self.passed() {
            write!(f, "all suites pass")
        } else {
            let failed = self.suites.iter().filter(|s| !s.passed()).count();
            write!(f, "{failed} suite(s) failed")
        }
    }
}

type Verdict = Result<(), String>;

fn suite(
    name: &'static str,
    words: &[Word],
    check: impl Fn(&Word) -> Verdict + Sync,
) -> SuiteReport {
    let mut failures: Vec<(Word, String)> = words
        .par_iter()
        .filter_map(|w| check(w).err().map(|msg| (w.clone(), msg)))
        .collect();
    failures.sort_by(|a, b| a.0.cmp(&b.0));
    SuiteReport {
        name,
        checked: words.len(),
        failures: failures
            .into_iter()
            .map(|(w, msg)| format!("{w}: {msg}"))
            .collect(),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every suite on all words of length `<= opts.max_len`.
pub fn run_checks(alphabet: &Alphabet, opts: &CheckOptions) -> CheckReport {
    let hopf = HopfContext::new(alphabet.clone());
    let words = enumerate_words(alphabet, opts.max_len);
    let irreducible: Vec<Word> = words
        .iter()
        .filter(|w| w.is_irreducible())
        .cloned()
        .collect();
    let mut suites = hopf_suites(&hopf, &words);

    let toy_words: Vec<Word> = irreducible
        .iter()
        .filter(|w| w.length() <= opts.toy_max_len)
        .cloned()
        .collect();
    suites.extend(toy_suites(&hopf, &toy_words));

    let quad_words: Vec<Word> = irreducible
        .iter()
        .filter(|w| w.length() <= opts.quadrature_max_len)
        .cloned()
        .collect();
    suites.push(quadrature_suite(
        &quad_words,
        &opts.quadrature_points,
        opts.quadrature_rel_tol,
    ));

    CheckReport {
        alphabet: alphabet.to_spec(),
        max_len: opts.max_len,
        word_count: words.len(),
        irreducible_count: irreducible.len(),
        suites,
    }
}

pub fn hopf_suites(hopf: &HopfContext, words: &[Word]) -> Vec<SuiteReport> {
    let alphabet = hopf.alphabet();
    vec![
        suite("round-trip", words, |w| {
            let back = parse(&w.to_string(), alphabet).map_err(|e| e.to_string())?;
            ensure(&back == w, || format!("re-parsed as {back}"))
        }),
        suite("subword grading", words, |w| {
            let Some(tree) = w.as_irreducible() else {
                return Ok(());
            };
            let pairs = tree.subwords();
            for p in &pairs {
                ensure(p.sub.length() + p.quotient.length() == w.length(), || {
                    format!("{} ⊗ {} has wrong total length", p.sub, p.quotient)
                })?;
            }
            let units = pairs
                .iter()
                .filter(|p| p.sub.is_unit() && &p.quotient == w)
                .count();
            let wholes = pairs
                .iter()
                .filter(|p| &p.sub == w && p.quotient.is_unit())
                .count();
            ensure(units == 1 && wholes == 1, || {
                "e or w missing from subwords".into()
            })
        }),
        suite("coproduct grading", words, |w| {
            for ((u, v), _) in hopf.coproduct(w).iter() {
                ensure(u.length() + v.length() == w.length(), || {
                    format!("term {u} ⊗ {v}")
                })?;
            }
            Ok(())
        }),
        suite("coproduct routes agree", words, |w| {
            ensure(hopf.coproduct(w) == hopf.coproduct_sweedler(w), || {
                "recursive and subword coproducts differ".into()
            })
        }),
        suite("coproduct multiplicative", words, |w| {
            let Some((first, rest)) = w.factors().split_first() else {
                return Ok(());
            };
            let x = Word::from(first.clone());
            let y = Word::new(rest.to_vec());
            ensure(
                hopf.coproduct(w) == hopf.coproduct(&x).mul(&hopf.coproduct(&y)),
                || format!("Δ[{x}·{y}] ≠ Δ[{x}]Δ[{y}]"),
            )
        }),
        suite("coassociativity", words, |w| {
            ensure(hopf.coassociativity_check(w), || "(Δ⊗id)Δ ≠ (id⊗Δ)Δ".into())
        }),
        suite("counit axioms", words, |w| {
            ensure(hopf.counit_axiom_check(w), || {
                "counit contraction failed".into()
            })
        }),
        suite("antipode left = right", words, |w| {
            ensure(hopf.antipode_left(w) == hopf.antipode_right(w), || {
                "left and right recursions differ".into()
            })
        }),
        suite("antipode multiplicative", words, |w| {
            let Some((first, rest)) = w.factors().split_first() else {
                return Ok(());
            };
            let x = Word::from(first.clone());
            let y = Word::new(rest.to_vec());
            ensure(
                hopf.antipode_left(w) == hopf.antipode_left(&x).mul(&hopf.antipode_left(&y)),
                || "S[XY] ≠ S[X]S[Y]".into(),
            )
        }),
        suite("antipode sign pattern", words, |w| {
            ensure(alternating_signs(&hopf.antipode_left(w)), || {
                "sign not (−1)^factors".into()
            })
        }),
        suite("antipode involution", words, |w| {
            let twice = hopf.antipode_lin(&hopf.antipode_left(w), Side::Left);
            ensure(twice == LinComb::monomial(w.clone()), || "S∘S ≠ id".into())
        }),
        suite("hopf axiom", words, |w| {
            ensure(hopf.hopf_axiom_check(w), || {
                "m(S⊗id)Δ or m(id⊗S)Δ ≠ E∘ē".into()
            })
        }),
    ]
}

pub fn toy_suites(hopf: &HopfContext, irreducible: &[Word]) -> Vec<SuiteReport> {
    let model = ToyModel::new(hopf);
    let model = &model;
    vec![
        suite("pole order of φ", irreducible, |w| {
            let n = w.length() as i32;
            let s = laurent_expand(&phi(w), -n, 0).map_err(|e| e.to_string())?;
            ensure(s.lowest_nonzero() == Some(-n), || {
                format!("lowest power {:?}", s.lowest_nonzero())
            })
        }),
        suite("counterterm shape", irreducible, |w| {
            let z = model.counterterm(w);
            match as_pure_pole(&z) {
                Some((_, p)) if p == -(w.length() as i64) => Ok(()),
                _ => Err(format!("S_R = {z}")),
            }
        }),
        suite("finiteness", irreducible, |w| {
            let v = model.renormalize(w).map_err(|e| e.to_string())?;
            let s = laurent_expand(&v, -(w.length() as i32), 0).map_err(|e| e.to_string())?;
            ensure(s.is_finite(), || format!("poles {:?}", s.pole_part()))
        }),
        suite("forest formula = S_R", irreducible, |w| {
            let z = forest_formula(w).map_err(|e| e.to_string())?;
            ensure(z == model.counterterm(w), || {
                format!("forest {z} vs S_R {}", model.counterterm(w))
            })
        }),
        suite("scheme consistency", irreducible, |w| {
            let bar = model.bar_value(w).map_err(|e| e.to_string())?;
            let z = model.counterterm(w);
            let ren = model.renormalize(w).map_err(|e| e.to_string())?;
            ensure(z == rmap(&bar).neg(), || "Z ≠ −R(Γ̄)".into())?;
            ensure(ren == bar.add(&z), || "Γ_ren ≠ Γ̄ + Z".into())
        }),
    ]
}

pub fn quadrature_suite(irreducible: &[Word], points: &[(f64, f64)], rel_tol: f64) -> SuiteReport {
    let mut report = suite("quadrature agreement", irreducible, |w| {
        let exact = phi(w);
        for &(c, eps) in points {
            let want = exact.eval_f64(c, eps);
            let got = quadrature_oracle(w, c, eps).map_err(|e| e.to_string())?;
            let rel = ((got - want) / want).abs();
            ensure(rel <= rel_tol, || {
                format!("c={c}, ε={eps}: {got} vs {want} (rel {rel:e})")
            })?;
        }
        Ok(())
    });
    report.checked *= points.len();
    report
}
