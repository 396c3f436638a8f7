//! Acceptance gate. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use rayon::prelude::*;

use hopfren::hopf::{counit, unit, Side};
use hopfren::parenword::enumerate_words;
use hopfren::qalgebra::{flatten, rational};
use hopfren::toymodel::{
    default_window, forest_formula, laurent_expand, phi, quadrature_oracle, rmap, LogPolynomial,
    RationalFunction, RegValue, ToyModel,
};
use hopfren::{Alphabet, HopfContext, LinComb, Rational, Tensor2, Word};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn letters(n: u32) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn word(hopf: &HopfContext, s: &str) -> Word {
    hopf.parse(s)
        .unwrap_or_else(|e| panic!("cannot parse {s}: {e}"))
}

fn irreducible_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    enumerate_words(alphabet, max_len)
        .into_iter()
        .filter(Word::is_irreducible)
        .collect()
}

fn first_failures(failures: &[String]) -> String {
    failures
        .iter()
        .take(3)
        .cloned()
        .collect::<Vec<_>>()
        .join("; ")
}

/// Coproducts of the two worked examples, every letter choice.
fn coproduct_regression() -> Outcome {
    let start = Instant::now();
    let hopf = HopfContext::new(Alphabet::numbered(3));
    let names = letters(3);
    let mut failures = Vec::new();
    let mut checked = 0;
    let one = Rational::one;

    for i in &names {
        for j in &names {
            let w = word(&hopf, &format!("(({i}){j})"));
            let mut expected = Tensor2::zero();
            expected.add_term((w.clone(), Word::unit()), one());
            expected.add_term((Word::unit(), w.clone()), one());
            expected.add_term(
                (
                    word(&hopf, &format!("({i})")),
                    word(&hopf, &format!("({j})")),
                ),
                one(),
            );
            for (route, got) in [
                ("recursive", hopf.coproduct(&w)),
                ("sweedler", hopf.coproduct_sweedler(&w)),
            ] {
                checked += 1;
                if got != expected {
                    failures.push(format!("{route} Δ{w} = {got}"));
                }
            }
            for k in &names {
                let w = word(&hopf, &format!("(({i})({j}){k})"));
                let mut expected = Tensor2::zero();
                expected.add_term((w.clone(), Word::unit()), one());
                expected.add_term((Word::unit(), w.clone()), one());
                expected.add_term(
                    (
                        word(&hopf, &format!("({i})")),
                        word(&hopf, &format!("(({j}){k})")),
                    ),
                    one(),
                );
                expected.add_term(
                    (
                        word(&hopf, &format!("({j})")),
                        word(&hopf, &format!("(({i}){k})")),
                    ),
                    one(),
                );
                expected.add_term(
                    (
                        word(&hopf, &format!("({i})({j})")),
                        word(&hopf, &format!("({k})")),
                    ),
                    one(),
                );
                for (route, got) in [
                    ("recursive", hopf.coproduct(&w)),
                    ("sweedler", hopf.coproduct_sweedler(&w)),
                ] {
                    checked += 1;
                    if got != expected {
                        failures.push(format!("{route} Δ{w} = {got}"));
                    }
                }
            }
        }
    }

    // The canonical instance term by term, all coefficients exactly 1.
    let w = word(&hopf, "((x1)(x2)x3)");
    let delta = hopf.coproduct(&w);
    let unit_coeffs = delta.len() == 5 && delta.iter().all(|(_, q)| q.is_one());
    if !unit_coeffs {
        failures.push(format!("Δ{w} = {delta}"));
    }

    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(1);
    if !fast {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{checked} coproducts over letters x1..x3, {elapsed:.2?} {}",
            first_failures(&failures)
        ),
    )
}

fn r(v: &RegValue) -> RegValue {
    rmap(v)
}

fn phi_of(hopf: &HopfContext, s: &str) -> RegValue {
    phi(&word(hopf, s))
}

/// `S_R` from the twisted recursion against the closed R-nestings.
fn counterterm_structure() -> Outcome {
    let hopf = HopfContext::new(Alphabet::numbered(3));
    let toy = ToyModel::new(&hopf);
    let names = letters(3);
    let mut failures = Vec::new();
    let mut checked = 0;

    for i in &names {
        for j in &names {
            // −R[((xi)xj)] + R[R[(xi)] (xj)]
            let w = word(&hopf, &format!("(({i}){j})"));
            let displayed =
                r(&phi(&w))
                    .neg()
                    .add(&r(&r(&phi_of(&hopf, &format!("({i})")))
                        .mul(&phi_of(&hopf, &format!("({j})")))));
            checked += 1;
            if toy.counterterm(&w) != displayed {
                failures.push(format!("S_R{w}"));
            }

            for k in &names {
                // −R[w] + R[R[(xi)]((xj)xk)] + R[R[(xj)]((xi)xk)] − R[R[(xi)]R[(xj)](xk)]
                let w = word(&hopf, &format!("(({i})({j}){k})"));
                let ri = r(&phi_of(&hopf, &format!("({i})")));
                let rj = r(&phi_of(&hopf, &format!("({j})")));
                let displayed = r(&phi(&w))
                    .neg()
                    .add(&r(&ri.mul(&phi_of(&hopf, &format!("(({j}){k})")))))
                    .add(&r(&rj.mul(&phi_of(&hopf, &format!("(({i}){k})")))))
                    .sub(&r(&ri.mul(&rj).mul(&phi_of(&hopf, &format!("({k})")))));
                checked += 1;
                if toy.counterterm(&w) != displayed {
                    failures.push(format!("S_R{w}"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{checked} counter terms over letters x1..x3 {}",
            first_failures(&failures)
        ),
    )
}

/// `m(S ⊗ id)Δ = m(id ⊗ S)Δ = E∘ē` on every word of length ≤ 6 over {x1, x2}.
fn hopf_axiom_suite() -> Outcome {
    let start = Instant::now();
    let hopf = HopfContext::new(Alphabet::numbered(2));
    let words = enumerate_words(hopf.alphabet(), 6);
    let mut failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let delta = hopf.coproduct(w);
            let left = flatten(&hopf.antipode_in_slot(&delta, Side::Left));
            let right = flatten(&hopf.antipode_in_slot(&delta, Side::Right));
            let expected = unit(counit(&LinComb::monomial(w.clone())));
            (left != expected || right != expected).then(|| w.to_string())
        })
        .collect();
    failures.sort();
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        failures.is_empty() && words.len() >= 1000,
        format!(
            "{} words, {elapsed:.2?} {}",
            words.len(),
            first_failures(&failures)
        ),
    )
}

/// Coassociativity, counit axioms, Δ-route equality, S left = S right.
fn coalgebra_suite() -> Outcome {
    let start = Instant::now();
    let hopf = HopfContext::new(Alphabet::numbered(2));
    let words = enumerate_words(hopf.alphabet(), 6);
    let mut failures: Vec<String> = words
        .par_iter()
        .flat_map_iter(|w| {
            let delta = hopf.coproduct(w);
            let mut bad = Vec::new();
            if hopf.coproduct_then_left(w) != hopf.coproduct_then_right(w) {
                bad.push(format!("coassociativity {w}"));
            }
            let lhs: LinComb = delta
                .iter()
                .filter(|((u, _), _)| u.is_unit())
                .map(|((_, v), q)| (v.clone(), q.clone()))
                .collect();
            let rhs: LinComb = delta
                .iter()
                .filter(|((_, v), _)| v.is_unit())
                .map(|((u, _), q)| (u.clone(), q.clone()))
                .collect();
            let id = LinComb::monomial(w.clone());
            if lhs != id || rhs != id {
                bad.push(format!("counit {w}"));
            }
            if delta != hopf.coproduct_sweedler(w) {
                bad.push(format!("routes {w}"));
            }
            if hopf.antipode_left(w) != hopf.antipode_right(w) {
                bad.push(format!("antipode {w}"));
            }
            bad
        })
        .collect();
    failures.sort();
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} words, {:.2?} {}",
            words.len(),
            start.elapsed(),
            first_failures(&failures)
        ),
    )
}

/// No negative powers of ε survive renormalization.
fn finiteness_suite() -> Outcome {
    let hopf = HopfContext::new(Alphabet::numbered(3));
    let toy = ToyModel::new(&hopf);
    let words = irreducible_up_to(hopf.alphabet(), 5);
    let mut failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let v = toy.renormalize(w).expect("irreducible");
            let (min_pow, _) = default_window(w, 0);
            match laurent_expand(&v, min_pow, 0) {
                Ok(series) => {
                    let poles_vanish =
                        (min_pow..0).all(|p| series.coefficient(p).is_some_and(|c| c.is_zero()));
                    (!poles_vanish).then(|| format!("{w} has poles"))
                }
                Err(e) => Some(format!("{w}: {e}")),
            }
        })
        .collect();
    failures.sort();
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} irreducible words over x1..x3 {}",
            words.len(),
            first_failures(&failures)
        ),
    )
}

/// `−∫_1^c dx x^(−1−ε) (1 − x^(−2ε))/(2ε) (1 − x^(−ε))/ε` by composite Simpson.
fn finite_integral(c: f64, eps: f64) -> f64 {
    let n = 4000;
    let h = (c - 1.0) / n as f64;
    let f = |x: f64| {
        -x.powf(-1.0 - eps) * (1.0 - x.powf(-2.0 * eps)) / (2.0 * eps) * (1.0 - x.powf(-eps)) / eps
    };
    let mut sum = f(1.0) + f(c);
    for i in 1..n {
        let x = 1.0 + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    sum * h / 3.0
}

fn worked_example() -> Outcome {
    let hopf = HopfContext::new(Alphabet::numbered(2));
    let toy = ToyModel::new(&hopf);
    let w = word(&hopf, "((x1)(x2)x1)");
    let mut failures = Vec::new();

    let v = toy.renormalize(&w).expect("irreducible");
    let series = match laurent_expand(&v, -3, 0) {
        Ok(s) => s,
        Err(e) => return Outcome::new(false, format!("expansion failed: {e}")),
    };
    for p in -3..0 {
        if !series.coefficient(p).is_some_and(|c| c.is_zero()) {
            failures.push(format!("ε^{p} coefficient nonzero"));
        }
    }
    let constant = series.coefficient(0).unwrap_or_default();
    let expected = LogPolynomial::monomial(rational(-1, 3), 3);
    if constant != expected {
        failures.push(format!("ε^0 coefficient {constant}"));
    }

    let ln2 = 2f64.ln();
    let closed_form = -ln2.powi(3) / 3.0;
    let numeric = constant.eval_f64(ln2);
    if (numeric - closed_form).abs() > 1e-12 {
        failures.push(format!("numeric {numeric} vs {closed_form}"));
    }

    // The regulated value against the finite integral it represents.
    for eps in [0.1, 0.25] {
        let exact = v.eval_f64(2.0, eps);
        let integral = finite_integral(2.0, eps);
        if (exact - integral).abs() > 1e-10 {
            failures.push(format!("ε = {eps}: {exact} vs integral {integral}"));
        }
    }

    let z = toy.counterterm(&w);
    let expected_z = RegValue::term(0, RationalFunction::eps_power(rational(-5, 24), -3));
    if z != expected_z {
        failures.push(format!("counter term {z}"));
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "ε^0 = {constant}, at c = 2: {numeric:.12} (closed form {closed_form:.12}), Z = {z} {}",
            first_failures(&failures)
        ),
    )
}

/// Independent forest recursion equals the twisted antipode.
fn forest_equivalence() -> Outcome {
    let hopf = HopfContext::new(Alphabet::numbered(3));
    let toy = ToyModel::new(&hopf);
    let words = irreducible_up_to(hopf.alphabet(), 5);
    let mut failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let z = forest_formula(w).expect("irreducible");
            (z != toy.counterterm(w)).then(|| w.to_string())
        })
        .collect();
    failures.sort();
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} irreducible words over x1..x3 {}",
            words.len(),
            first_failures(&failures)
        ),
    )
}

fn quadrature_agreement() -> Outcome {
    let start = Instant::now();
    let alphabet = Alphabet::numbered(3);
    let words = irreducible_up_to(&alphabet, 3);
    let points = [(1.0, 0.1), (1.0, 0.25), (2.0, 0.1), (2.0, 0.25)];
    let cases: Vec<(&Word, f64, f64)> = words
        .iter()
        .flat_map(|w| points.iter().map(move |&(c, eps)| (w, c, eps)))
        .collect();
    let mut worst = 0f64;
    let mut failures = Vec::new();
    for (w, c, eps) in &cases {
        let exact = phi(w).eval_f64(*c, *eps);
        match quadrature_oracle(w, *c, *eps) {
            Ok(numeric) => {
                let rel = ((numeric - exact) / exact).abs();
                worst = worst.max(rel);
                if rel.is_nan() || rel > 1e-6 {
                    failures.push(format!("{w} at ({c}, {eps}): rel {rel:.2e}"));
                }
            }
            Err(e) => failures.push(format!("{w} at ({c}, {eps}): {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} cases, worst relative error {worst:.2e}, {elapsed:.2?} {}",
            cases.len(),
            first_failures(&failures)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("coproduct regression", coproduct_regression),
        ("counter-term structure", counterterm_structure),
        ("Hopf axiom, length ≤ 6", hopf_axiom_suite),
        (
            "coalgebra axioms and route equality, length ≤ 6",
            coalgebra_suite,
        ),
        ("toy-model finiteness, length ≤ 5", finiteness_suite),
        ("worked example ((x1)(x2)x1)", worked_example),
        (
            "forest formula = counter term, length ≤ 5",
            forest_equivalence,
        ),
        ("quadrature oracle, length ≤ 3", quadrature_agreement),
    ];
    let mut all = true;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        all &= outcome.passed;
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {}: {name} ({})",
            n + 1,
            outcome.detail.trim_end()
        );
    }
    if all {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
