use std::f64::consts::LN_2;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The bump `W(u) = exp(-1/(1 - (2u - 3)^2))` on `(1, 2)`, zero elsewhere.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BumpWindow;

impl BumpWindow {
    pub fn eval(&self, u: f64) -> f64 {
        let x = 2.0 * u - 3.0;
        if x.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - x * x)).exp()
        }
    }
}

/// Mellin transform `int W(u) u^s du/u = int_0^{ln 2} W(e^v) e^{sv} dv`.
///
/// The integrand is flat at both ends, so the trapezoid rule converges
/// faster than any power; the step is halved until successive values agree.
pub fn mellin_window(w: &BumpWindow, s: Complex64) -> Complex64 {
    let f = |v: f64| w.eval(v.exp()) * (s * v).exp();
    let mut n = 32usize.max((s.im.abs() * LN_2 / 2.0).ceil() as usize).next_power_of_two();
    let mut h = LN_2 / n as f64;
    let mut sum: Complex64 = (1..n).map(|k| f(k as f64 * h)).sum();
    let mut value = sum * h;
    loop {
        let mid: Complex64 = (0..n).map(|k| f((2 * k + 1) as f64 * h / 2.0)).sum();
        sum += mid;
        n *= 2;
        h /= 2.0;
        let next = sum * h;
        let scale = (1..n)
            .step_by((n / 64).max(1))
            .map(|k| f(k as f64 * h).norm())
            .fold(0.0f64, f64::max)
            * LN_2;
        let diff = (next - value).norm();
        value = next;
        if diff <= 1e-15 * scale.max(value.norm()) || n >= 1 << 20 {
            return value;
        }
    }
}

const SAMPLES: usize = 4096;

static SAMPLED: OnceLock<Vec<f64>> = OnceLock::new();

/// Fixed-grid transform of the bump, accurate for `|Im s|` up to about `2e4`;
/// used inside kernels that need many transform values.
pub fn mellin_window_sampled(s: Complex64) -> Complex64 {
    let h = LN_2 / SAMPLES as f64;
    let samples = SAMPLED.get_or_init(|| {
        let w = BumpWindow;
        (0..SAMPLES).map(|k| w.eval((k as f64 * h).exp())).collect()
    });
    let step = (s * h).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut z = Complex64::new(1.0, 0.0);
    for (k, &wk) in samples.iter().enumerate() {
        if k % 64 == 0 {
            z = (s * (k as f64 * h)).exp();
        }
        acc += wk * z;
        z *= step;
    }
    acc * h
}
