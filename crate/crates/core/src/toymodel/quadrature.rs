//! Numeric evaluation of the toy-model integrals by adaptive Gauss–Kronrod
//! quadrature, used as an independent check of the exact values.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::parenword::{IrreducibleWord, Word};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("quadrature did not converge: estimated error {error:e} exceeds tolerance {tolerance:e} after {subdivisions} subdivisions")]
    ConvergenceFailure {
        error: f64,
        tolerance: f64,
        subdivisions: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_subdivisions: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Estimate {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += wk * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

struct Interval {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive G7–K15: bisects the interval with the largest error
/// estimate until the total error meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate, QuadratureError> {
    let first = gauss_kronrod(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Interval { a, b, est: first });
    let mut total = first;
    let mut subdivisions = 0;
    loop {
        let tolerance = cfg.abs_tol.max(cfg.rel_tol * total.value.abs());
        if !total.value.is_finite() || !total.error.is_finite() {
            return Err(QuadratureError::ConvergenceFailure {
                error: total.error,
                tolerance,
                subdivisions,
            });
        }
        if total.error <= tolerance {
            return Ok(total);
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(QuadratureError::ConvergenceFailure {
                error: total.error,
                tolerance,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        total.value += left.value + right.value - worst.est.value;
        total.error += left.error + right.error - worst.est.error;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            est: left,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            est: right,
        });
        subdivisions += 1;
        if total.error < 0.0 {
            total.error = heap.iter().map(|i| i.est.error).sum();
        }
    }
}

/// `∫_a^∞ f(y) dy` through `y = a · s^(−q)`, `s ∈ (0, 1]`, so that
/// `dy = q · y · ds / s`. `q = 1` is `y = a/(1 − t)` with `s = 1 − t`.
pub fn integrate_semi_infinite(
    f: impl Fn(f64) -> f64,
    a: f64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate, QuadratureError> {
    integrate(
        |s| {
            let y = a * s.powf(-q);
            if !y.is_finite() {
                return 0.0;
            }
            let fy = f(y);
            if fy == 0.0 {
                0.0
            } else {
                fy * q * y / s
            }
        },
        0.0,
        1.0,
        cfg,
    )
}

/// Numeric `φ(w)[c]` at regulator `eps`, with the default tolerance.
pub fn quadrature_oracle(w: &Word, c: f64, eps: f64) -> Result<f64, QuadratureError> {
    quadrature_oracle_with(w, c, eps, &QuadratureConfig::default())
}

pub fn quadrature_oracle_with(
    w: &Word,
    c: f64,
    eps: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    if !(c.is_finite() && c >= 1.0) {
        return Err(QuadratureError::InvalidArgument(format!(
            "c must be >= 1, got {c}"
        )));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(QuadratureError::InvalidArgument(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    word_value(w.factors(), c, eps, cfg)
}

fn word_value(
    factors: &[IrreducibleWord],
    at: f64,
    eps: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    factors
        .iter()
        .try_fold(1.0, |acc, f| Ok(acc * tree_value(f, at, eps, cfg)?))
}

/// `(X x_j)[a] = ∫_a^∞ dy y^(−1−jε) X[y]`
fn tree_value(
    w: &IrreducibleWord,
    at: f64,
    eps: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    let exponent = -1.0 - f64::from(w.root().weight()) * eps;
    let children = w.children();
    // With q = 1/ε every power-law factor y^(−kε) becomes s^k, so the
    // mapped integrand has no endpoint singularity at s = 0.
    let q = 1.0 / eps;
    let failure = std::cell::RefCell::new(None);
    let est = integrate_semi_infinite(
        |y| match word_value(children, y, eps, cfg) {
            Ok(inner) => y.powf(exponent) * inner,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        at,
        q,
        cfg,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est?.value)
}
