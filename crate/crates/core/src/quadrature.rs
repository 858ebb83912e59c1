//! Deterministic adaptive quadrature and convergence-controlled Matsubara sums.
//!
//! Integration uses 21-point Gauss–Kronrod panels with QUADPACK-style error
//! estimates and bisection of the worst panel. Semi-infinite integrals are
//! truncated at a fixed distance past the lower limit, which is sufficient
//! for integrands decaying at least like e^{-y}.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Kronrod abscissae on [-1, 1] (non-negative half, descending, centre last).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_478_126,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights paired with XGK[1], XGK[3], …, XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Maximum number of panels before giving up.
pub const SUBDIVISION_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_centre = f(centre)?;
    let mut res_k = WGK[10] * f_centre;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_centre - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

/// Adaptive integration of a fallible integrand over [lo, hi] from the
/// given initial breakpoints (which must include lo and hi, ascending).
fn adaptive<F>(mut f: F, breakpoints: &[f64], rel_tol: f64, abs_tol: f64) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut panels = Vec::with_capacity(64);
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            panels.push(gauss_kronrod(&mut f, w[0], w[1])?);
        }
    }
    let mut evaluations = 21 * panels.len();
    loop {
        let value = compensated_total(panels.iter().map(|p| p.value));
        let error = compensated_total(panels.iter().map(|p| p.error));
        let target = abs_tol.max(rel_tol * value.abs());
        if !(value.is_finite() && error.is_finite()) {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature (non-finite integrand)",
                estimate: value,
                error,
            });
        }
        if error <= target {
            return Ok(IntegralResult {
                value,
                abs_error_estimate: error,
                evaluations,
            });
        }
        // Worst panel; first index wins ties so the sequence is reproducible.
        let (worst, _) = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| splittable(p))
            .fold((usize::MAX, -1.0), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        if worst == usize::MAX || panels.len() >= SUBDIVISION_LIMIT {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                estimate: value,
                error,
            });
        }
        let p = panels[worst];
        let mid = 0.5 * (p.lo + p.hi);
        let left = gauss_kronrod(&mut f, p.lo, mid)?;
        let right = gauss_kronrod(&mut f, mid, p.hi)?;
        evaluations += 42;
        panels[worst] = left;
        panels.insert(worst + 1, right);
    }
}

fn splittable(p: &Panel) -> bool {
    let mid = 0.5 * (p.lo + p.hi);
    let scale = p.lo.abs().max(p.hi.abs()).max(f64::MIN_POSITIVE);
    mid > p.lo && mid < p.hi && (p.hi - p.lo) > 1e3 * f64::EPSILON * scale && p.error > 0.0
}

/// ∫_lo^hi f with relative tolerance `rel_tol` (and optional absolute floor).
pub fn integrate<F>(f: F, lo: f64, hi: f64, rel_tol: f64, abs_tol: f64) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::invalid("bounds", "finite bounds required; use integrate_semi_infinite"));
    }
    if hi < lo {
        let r = integrate(f, hi, lo, rel_tol, abs_tol)?;
        return Ok(IntegralResult { value: -r.value, ..r });
    }
    adaptive(f, &[lo, hi], rel_tol, abs_tol)
}

/// Truncation length past the lower limit for an e^{-y}-decaying integrand.
pub fn tail_span(rel_tol: f64) -> f64 {
    40f64.max((1.0 / rel_tol).ln() + 10.0)
}

/// ∫_lower^∞ f for integrands that decay at least like e^{-y}.
///
/// The range is cut at `lower + tail_span(rel_tol)` and pre-split at
/// offsets 0.5, 1, 2, 4, … so that structure near the lower limit is
/// resolved from the start.
pub fn integrate_semi_infinite<F>(f: F, lower: f64, rel_tol: f64, abs_tol: f64) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lower.is_finite() && lower >= 0.0) {
        return Err(Error::invalid("lower", format!("must be finite and non-negative, got {lower}")));
    }
    let span = tail_span(rel_tol);
    let mut points = vec![lower];
    let mut offset = 0.5;
    while offset < span {
        points.push(lower + offset);
        offset *= 2.0;
    }
    points.push(lower + span);
    adaptive(f, &points, rel_tol, abs_tol)
}

/// Neumaier's compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

pub fn compensated_total<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// A term value together with its absolute numerical error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, error: 0.0 }
    }
}

impl From<IntegralResult> for Estimate {
    fn from(r: IntegralResult) -> Self {
        Estimate {
            value: r.value,
            error: r.abs_error_estimate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    /// Number of terms accumulated, counting l = 0.
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    /// Accumulated term errors plus a geometric estimate of the dropped tail.
    pub error_estimate: f64,
}

/// Consecutive small terms required before stopping.
const CONSECUTIVE_SMALL: usize = 3;
/// Hard cap on the Matsubara index.
pub const MAX_MATSUBARA_INDEX: usize = 1_000_000;
/// Terms evaluated per parallel batch.
const BATCH: usize = 32;

/// ½·term(0) + Σ_{l≥1} term(l), accumulated in ascending l.
///
/// Stops once |term(l)| ≤ rel_tol·|sum| for three consecutive l with
/// l ≥ l_floor. Terms may be evaluated in parallel batches; accumulation
/// order is fixed, so the result does not depend on the thread count.
pub fn matsubara_sum<F>(term: F, rel_tol: f64, l_floor: usize) -> Result<SumResult>
where
    F: Fn(usize) -> Result<Estimate> + Sync,
{
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::new();
    let mut small_run = 0usize;
    let mut previous = f64::NAN;
    let mut next = 0usize;
    loop {
        let end = (next + BATCH).min(MAX_MATSUBARA_INDEX + 1);
        if next >= end {
            break;
        }
        let batch: Vec<Result<Estimate>> = (next..end).into_par_iter().map(&term).collect();
        for (offset, est) in batch.into_iter().enumerate() {
            let l = next + offset;
            let est = est?;
            let weight = if l == 0 { 0.5 } else { 1.0 };
            let t = weight * est.value;
            value.add(t);
            error.add(weight * est.error);
            let total = value.value();
            if l >= 1 && t.abs() <= rel_tol * total.abs() {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if small_run >= CONSECUTIVE_SMALL && l >= l_floor {
                let ratio = (t / previous).abs();
                let tail = if ratio < 1.0 { t.abs() * ratio / (1.0 - ratio) } else { t.abs() };
                return Ok(SumResult {
                    value: total,
                    terms_used: l + 1,
                    last_term_magnitude: t.abs(),
                    error_estimate: error.value() + tail,
                });
            }
            previous = t;
        }
        next = end;
    }
    Err(Error::NonConvergence {
        what: "Matsubara sum",
        estimate: value.value(),
        error: previous.abs(),
    })
}

/// ½·term(0) + Σ_{l=1}^{count-1} term(l): exactly `count` terms, no stopping rule.
pub fn primed_sum<F>(term: F, count: usize) -> Result<SumResult>
where
    F: Fn(usize) -> Result<Estimate> + Sync,
{
    let terms: Vec<Result<Estimate>> = (0..count).into_par_iter().map(&term).collect();
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::new();
    let mut last = 0.0;
    for (l, est) in terms.into_iter().enumerate() {
        let est = est?;
        let weight = if l == 0 { 0.5 } else { 1.0 };
        value.add(weight * est.value);
        error.add(weight * est.error);
        last = (weight * est.value).abs();
    }
    Ok(SumResult {
        value: value.value(),
        terms_used: count,
        last_term_magnitude: last,
        error_estimate: error.value(),
    })
}
