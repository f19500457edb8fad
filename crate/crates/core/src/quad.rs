//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the
//! summed estimate meets `max(abs_tol, rel_tol * |value|)`. Error scaling
//! follows QUADPACK's QK15.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Tabulated G7-K15 nodes and weights, kept at their published digits.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
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

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-14,
            rel: 1e-11,
            max_subdivisions: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
            subdivisions: self.subdivisions + rhs.subdivisions,
        }
    }
}

impl Estimate {
    pub fn zero() -> Self {
        Estimate {
            value: 0.0,
            error: 0.0,
            subdivisions: 0,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Estimate {
            value: c * self.value,
            error: c.abs() * self.error,
            subdivisions: self.subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<Estimate> {
    integrate_with_breaks(f, &[a, b], tol)
}

/// Integrates `f` over `[points[0], points.last()]`, starting the
/// bisection from the given break points.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: &Tolerance,
) -> Result<Estimate> {
    if points.len() < 2 || points.windows(2).all(|w| w[0] == w[1]) {
        return Ok(Estimate::zero());
    }
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let s = kronrod15(&f, w[0], w[1]);
        value += s.value;
        error += s.error;
        heap.push(s);
    }
    let mut subdivisions = 0;
    loop {
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target {
            break;
        }
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                subdivisions,
                error_estimate: error,
                requested: target,
            });
        }
        if subdivisions >= tol.max_subdivisions {
            return Err(Error::Quadrature {
                subdivisions,
                error_estimate: error,
                requested: target,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // segment cannot be split further in floating point
            heap.push(worst);
            return Err(Error::Quadrature {
                subdivisions,
                error_estimate: error,
                requested: target,
            });
        }
        let left = kronrod15(&f, worst.a, mid);
        let right = kronrod15(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // resum to keep the running totals free of drift
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(Estimate {
        value,
        error,
        subdivisions,
    })
}

/// Break points `a, a + h, a + 3h, a + 7h, ...` up to `b`, so that features
/// near `a` on any scale down to `h` are seen by the first sweep.
pub fn graded_breaks(a: f64, b: f64, h: f64) -> Vec<f64> {
    let mut points = vec![a];
    let mut step = h;
    while a + step < b {
        points.push(a + step);
        step *= 2.0;
    }
    points.push(b);
    points
}

/// Integrates `f` over `[a, b]`, starting from [`graded_breaks`] with the
/// finest spacing a relative `1e-9` of the interval.
pub fn integrate_graded<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    if b <= a {
        return Ok(Estimate::zero());
    }
    integrate_with_breaks(f, &graded_breaks(a, b, 1e-9 * (b - a).max(a.abs())), tol)
}

/// Integrates `f` over `[start, inf)` for `start > 0` through the map
/// `x = start / u`, `u in (0, 1]`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    assert!(start > 0.0, "integrate_to_infinity needs a positive start");
    integrate(
        |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let x = start / u;
            let v = f(x) * start / (u * u);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        tol,
    )
}
