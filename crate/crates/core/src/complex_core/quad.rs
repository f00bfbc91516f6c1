//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex-valued
//! integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::Complex;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Value types the integrator can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, f: f64) -> Self;
    fn norm(self) -> f64;
}

impl QuadValue for Complex {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn norm(self) -> f64 {
        Complex::norm(self)
    }
}

impl<const N: usize> QuadValue for [Complex; N] {
    fn zero() -> Self {
        [Complex::new(0.0, 0.0); N]
    }
    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
        self
    }
    fn scale(mut self, f: f64) -> Self {
        for a in self.iter_mut() {
            *a *= f;
        }
        self
    }
    fn norm(self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: f64,
    pub evaluations: usize,
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    abs_value: f64,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Segment<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc.scale(WGK[7]);
    let mut g = fc.scale(WG[3]);
    let mut abs = fc.norm() * WGK[7];
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        let pair = f1.add(f2);
        k = k.add(pair.scale(w));
        abs += (f1.norm() + f2.norm()) * w;
        if i % 2 == 1 {
            g = g.add(pair.scale(WG[i / 2]));
        }
    }
    let value = k.scale(h);
    let error = k.add(g.scale(-1.0)).scale(h).norm();
    Segment {
        a,
        b,
        value,
        abs_value: abs * h.abs(),
        error,
    }
}

/// Integrate `f` over `[a, b]`, starting from `pieces` equal subintervals and
/// bisecting the worst one until the summed error estimate is below
/// `max(abs_tol, rel_tol * ∫|f|)`.
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<QuadResult<T>> {
    let pieces = pieces.max(1);
    let mut heap = BinaryHeap::with_capacity(pieces * 4);
    let width = (b - a) / pieces as f64;
    for i in 0..pieces {
        let lo = a + width * i as f64;
        let hi = if i + 1 == pieces { b } else { lo + width };
        heap.push(kronrod(&f, lo, hi));
    }
    let mut evaluations = 15 * pieces;
    loop {
        let (total, abs_total, err) = heap.iter().fold((T::zero(), 0.0, 0.0), |(v, av, e), s| {
            (v.add(s.value), av + s.abs_value, e + s.error)
        });
        let target = abs_tol.max(rel_tol * abs_total);
        if err <= target {
            return Ok(QuadResult {
                value: total,
                abs_error: err,
                evaluations,
            });
        }
        if heap.len() >= max_segments {
            return Err(Error::convergence(
                "integrate",
                format!("error estimate {err:e} above target {target:e} after {} segments", heap.len()),
            ));
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::convergence("integrate", "segment width underflow"));
        }
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
        evaluations += 30;
    }
}

/// `∫_{-∞}^{∞} f(r) dr` for an integrand decaying like `|r|^{decay_exponent}`.
///
/// The line is folded onto `[0, ∞)` as `f(r) + f(-r)`, so odd integrands
/// integrate to zero. The tail `[1, ∞)` is mapped to `(0, 1]` by `r = 1/u`.
pub fn quad_realline<F: Fn(f64) -> Complex>(f: F, decay_exponent: f64, tol: f64) -> Result<QuadResult<Complex>> {
    if !(decay_exponent < -1.0) {
        return Err(Error::convergence(
            "quad_realline",
            format!("decay exponent {decay_exponent} does not give an integrable tail"),
        ));
    }
    let folded = |x: f64| f(x) + f(-x);
    let head = integrate(folded, 0.0, 1.0, 4, 0.5 * tol, 0.0, 4000)?;
    let tail = integrate(
        |u: f64| {
            let x = 1.0 / u;
            folded(x) * (x * x)
        },
        0.0,
        1.0,
        8,
        0.5 * tol,
        0.0,
        4000,
    )?;
    Ok(QuadResult {
        value: head.value + tail.value,
        abs_error: head.abs_error + tail.abs_error,
        evaluations: head.evaluations + tail.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lorentzian_squared() {
        let r = quad_realline(|x| Complex::new(1.0 / (1.0 + x * x).powi(2), 0.0), -4.0, 1e-12).unwrap();
        assert!((r.value.re - PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn gaussian() {
        let r = quad_realline(|x| Complex::new((-x * x).exp(), 0.0), -10.0, 1e-12).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let r = quad_realline(|x| Complex::new(x / (1.0 + x.powi(4)), 0.0), -3.0, 1e-12).unwrap();
        assert!(r.value.norm() < 1e-15);
    }

    #[test]
    fn insufficient_decay_rejected() {
        assert!(quad_realline(|x| Complex::new(1.0 / (1.0 + x.abs()), 0.0), -1.0, 1e-8).is_err());
    }

    #[test]
    fn finite_interval_oscillatory() {
        // ∫_0^{10} e^{i 7 x} dx
        let r = integrate(|x| Complex::new(0.0, 7.0 * x).exp(), 0.0, 10.0, 4, 1e-13, 0.0, 1000).unwrap();
        let exact = (Complex::new(0.0, 70.0).exp() - 1.0) / Complex::new(0.0, 7.0);
        assert!((r.value - exact).norm() < 1e-12);
    }
}
