// Published coefficients, kept digit for digit.
#![allow(clippy::excessive_precision)]

//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature and fixed
//! Gauss–Legendre rules.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances and limits for every adaptive integral in the crate.
///
/// `split_point` is the upper end `X₀` of the finite segment of the
/// form-factor integrals; beyond it the integrand is replaced by its
/// asymptote, integrated in closed form. `max_subdivisions` bounds how many
/// times any one subinterval may be bisected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub split_point: f64,
    pub max_subdivisions: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            split_point: 40.0,
            max_subdivisions: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, split_point: f64, max_subdivisions: u32) -> Result<Self> {
        let spec = QuadratureSpec {
            abs_tol,
            rel_tol,
            split_point,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Domain(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Domain(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return Err(Error::Domain(format!(
                "split_point must be positive, got {}",
                self.split_point
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Both tolerances scaled by `factor`.
    pub fn with_tolerances_scaled(&self, factor: f64) -> Self {
        QuadratureSpec {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }

    pub fn with_split_point(&self, split_point: f64) -> Self {
        QuadratureSpec { split_point, ..*self }
    }
}

/// An integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
    pub intervals: usize,
}

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

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_467_812_506,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut resg = 0.0;
    let mut f1 = [0.0; 10];
    let mut f2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (lo, hi) = (f(center - dx), f(center + dx));
        f1[j] = lo;
        f2[j] = hi;
        resk += WGK[j] * (lo + hi);
        resabs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (lo + hi);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((f1[j] - reskh).abs() + (f2[j] - reskh).abs());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

const MAX_PANELS: usize = 200_000;

/// ∫_a^b f on a finite interval, refined until the error estimate is below
/// `max(abs_tol, rel_tol·|value|)`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Adaptive integration over consecutive panels `[p0, p1], [p1, p2], ...`.
/// Supplying breakpoints ahead of time helps strongly oscillating integrands.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::Domain("need at least two integration limits".into()));
    }
    if points.windows(2).any(|w| !(w[0] < w[1])) || points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain(format!(
            "integration limits must be finite and increasing: {points:?}"
        )));
    }
    let (a, b) = (points[0], points[points.len() - 1]);

    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        let (value, err) = gk21(&f, w[0], w[1]);
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            err,
            depth: 0,
        });
    }
    let mut frozen: Vec<Panel> = Vec::new();

    loop {
        let (value, err) = totals(heap.iter().chain(frozen.iter()));
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        let intervals = heap.len() + frozen.len();
        if err <= target {
            return Ok(Estimate {
                value,
                abs_err: err,
                intervals,
            });
        }
        let worst = match heap.pop() {
            Some(p) if intervals < MAX_PANELS => p,
            _ => {
                return Err(Error::NonConvergence {
                    a,
                    b,
                    estimate: value,
                    error: err,
                    intervals,
                })
            }
        };
        if worst.depth >= spec.max_subdivisions {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, err) = gk21(&f, lo, hi);
            heap.push(Panel {
                a: lo,
                b: hi,
                value,
                err,
                depth: worst.depth + 1,
            });
        }
    }
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (f64, f64) {
    panels.fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err))
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on Pₙ.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Integrand, limits, exact value.
    type Case = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);

    #[test]
    fn elementary_integrals_with_conservative_errors() {
        let spec = QuadratureSpec::default();
        let cases: [Case; 3] = [
            (Box::new(|x| x * x), 0.0, 1.0, 1.0 / 3.0),
            (Box::new(f64::sin), 0.0, PI, 2.0),
            (
                Box::new(|x: f64| (-x).exp() / (1.0 + x * x)),
                0.0,
                40.0,
                0.621_449_624_235_813,
            ),
        ];
        for (f, a, b, exact) in cases {
            let r = integrate_adaptive(f, a, b, &spec).unwrap();
            assert!(
                (r.value - exact).abs() <= r.abs_err.max(1e-15),
                "{} vs {}",
                r.value,
                exact
            );
            assert!((r.value - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn nonconvergence_is_reported() {
        let spec = QuadratureSpec::new(1e-14, 1e-14, 40.0, 2).unwrap();
        let r = integrate_adaptive(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &spec);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn invalid_specs() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 40.0, 60).is_err());
        assert!(QuadratureSpec::new(1e-10, -1.0, 40.0, 60).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 0.0, 60).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 40.0, 0).is_err());
        let spec = QuadratureSpec::default();
        assert!(integrate_adaptive(|x| x, 1.0, 0.0, &spec).is_err());
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            let deg = 2 * n - 1;
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((q - exact).abs() < 1e-13, "n = {n}: {q} vs {exact}");
        }
    }
}
