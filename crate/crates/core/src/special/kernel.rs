use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::arch::{ln_gamma_factor, ArchimedeanData};
use super::gamma::log_gamma;
use super::window::{mellin_window_sampled, BumpWindow};
use crate::util::CompensatedSum;
use crate::{Error, Result};

/// Default abscissa of the right contour for AFE kernels.
pub const DEFAULT_ABSCISSA: f64 = 1.25;

const MAX_HALVINGS: usize = 14;
const MAX_HEIGHT: f64 = 1e5;
const GRID_STEP: f64 = 0.01;

/// The function `K` integrated against `y^{-s}` on a vertical line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum KernelShape {
    /// `gamma(point + u) / exp(log_scale)` with `gamma(s) = pi^{-ds/2} prod Gamma((s + m)/2)`.
    Gamma {
        params: Vec<Complex64>,
        point: Complex64,
        log_scale: Complex64,
    },
    /// `Gamma((w - s + 1/2)/2) / Gamma((-w + s + 1/2)/2) * W~(-w)`.
    Psi1 { s: Complex64, window: BumpWindow },
    /// `G_pi(w - s + 1/2) / G_pi(-w + s + 1/2) * W~(-w)`.
    Psi2 {
        s: Complex64,
        arch: ArchimedeanData,
        window: BumpWindow,
    },
}

impl KernelShape {
    /// `gamma(point + u) / gamma(point)`.
    pub fn normalized_gamma(params: &[Complex64], point: Complex64) -> Result<Self> {
        Ok(Self::Gamma {
            params: params.to_vec(),
            point,
            log_scale: ln_gamma_factor(point, params)?,
        })
    }

    fn eval(&self, w: Complex64) -> Result<Complex64> {
        match self {
            Self::Gamma {
                params,
                point,
                log_scale,
            } => Ok((ln_gamma_factor(point + w, params)? - log_scale).exp()),
            Self::Psi1 { s, .. } => {
                let num = log_gamma((w - s + 0.5) * 0.5)?;
                let den = match log_gamma((-w + s + 0.5) * 0.5) {
                    Ok(v) => v,
                    Err(Error::Pole { .. }) => return Ok(Complex64::new(0.0, 0.0)),
                    Err(e) => return Err(e),
                };
                Ok((num - den).exp() * mellin_window_sampled(-w))
            }
            Self::Psi2 { s, arch, .. } => {
                let params = arch.parameters();
                let num = ln_gamma_factor(w - s + 0.5, &params)?;
                let den = match ln_gamma_factor(-w + s + 0.5, &params) {
                    Ok(v) => v,
                    Err(Error::Pole { .. }) => return Ok(Complex64::new(0.0, 0.0)),
                    Err(e) => return Err(e),
                };
                Ok((num - den).exp() * mellin_window_sampled(-w))
            }
        }
    }

    /// Largest real part of a pole of the shape itself (the `1/s` measure excluded).
    pub(crate) fn rightmost_pole(&self) -> f64 {
        match self {
            Self::Gamma { params, point, .. } => params
                .iter()
                .map(|m| -(point + m).re)
                .fold(f64::NEG_INFINITY, f64::max),
            Self::Psi1 { s, .. } => s.re - 0.5,
            Self::Psi2 { s, arch, .. } => arch
                .parameters()
                .iter()
                .map(|m| (s - 0.5 - m).re)
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// A vertical-line integral `(1/2 pi i) int_{(c)} y^{-s} K(s) ds [/s]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub shape: KernelShape,
    pub abscissa: f64,
    /// Initial trapezoid step; halved until successive sums agree.
    pub step: f64,
    /// Truncation height; chosen from the integrand decay when `None`.
    pub height: Option<f64>,
    pub divide_by_s: bool,
    /// Relative agreement required between successive step halvings.
    pub tolerance: f64,
    /// Automatic heights cut the line where `|K|` drops below this fraction
    /// of its peak.
    pub tail_ratio: f64,
}

impl KernelSpec {
    pub fn new(shape: KernelShape) -> Self {
        let (abscissa, divide_by_s) = match shape {
            KernelShape::Gamma { .. } => (DEFAULT_ABSCISSA, true),
            KernelShape::Psi1 { .. } => (1.0, false),
            KernelShape::Psi2 { .. } => (1.0, true),
        };
        Self {
            shape,
            abscissa,
            step: 0.5,
            height: None,
            divide_by_s,
            tolerance: 1e-12,
            tail_ratio: 1e-17,
        }
    }

    /// The AFE weight `V` attached to `arch` at `point`.
    pub fn afe_weight(arch: &ArchimedeanData, point: Complex64) -> Result<Self> {
        Ok(Self::new(KernelShape::normalized_gamma(
            &arch.parameters(),
            point,
        )?))
    }

    pub fn with_abscissa(mut self, c: f64) -> Self {
        self.abscissa = c;
        self
    }

    pub fn with_height(mut self, t: f64) -> Self {
        self.height = Some(t);
        self
    }

    fn integrand_factor(&self, s: Complex64) -> Result<Complex64> {
        let k = self.shape.eval(s)?;
        Ok(if self.divide_by_s { k / s } else { k })
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0)
            || self.height.is_some_and(|t| !(t > 0.0))
            || !(self.tolerance > 0.0)
            || !(self.tail_ratio > 0.0)
        {
            return Err(Error::Domain(
                "kernel step, height and tolerance must be positive".into(),
            ));
        }
        let barrier = self.shape.rightmost_pole();
        if self.abscissa <= barrier || (self.divide_by_s && self.abscissa == 0.0) {
            return Err(Error::Domain(format!(
                "abscissa {} is not pole-free (shape poles up to {barrier})",
                self.abscissa
            )));
        }
        Ok(())
    }

    /// Contour left of `0` together with the residue of `K(s)/s` at `s = 0`,
    /// when every other pole lies strictly to the left.
    fn left_shift(&self) -> Result<Option<(KernelSpec, Complex64)>> {
        let sigma = self.shape.rightmost_pole();
        if !self.divide_by_s || sigma >= 0.0 {
            return Ok(None);
        }
        let residue = self.shape.eval(Complex64::new(0.0, 0.0))?;
        let mut left = self.clone();
        left.abscissa = sigma / 2.0;
        Ok(Some((left, residue)))
    }

    pub fn with_tail_ratio(mut self, r: f64) -> Self {
        self.tail_ratio = r;
        self
    }

    /// Height beyond which `|K(c + it)|` stays below `tail_ratio` of its peak.
    fn auto_height(&self) -> Result<f64> {
        let c = self.abscissa;
        let mut peak = self.integrand_factor(Complex64::new(c, 0.0))?.norm();
        let mut height: f64 = 0.0;
        for sign in [1.0, -1.0] {
            let mut t = 0.0;
            let mut quiet = 0;
            loop {
                let v = self.integrand_factor(Complex64::new(c, sign * t))?.norm();
                peak = peak.max(v);
                if v < self.tail_ratio * peak {
                    quiet += 1;
                    if quiet >= 32 {
                        break;
                    }
                } else {
                    quiet = 0;
                    height = height.max(t);
                }
                t += 0.25 + t / 200.0;
                if t > self.max_height() {
                    return Err(Error::NonConvergent(format!(
                        "integrand does not decay on Re s = {c} up to height {}",
                        self.max_height()
                    )));
                }
            }
        }
        Ok(height + 1.0)
    }

    /// The sampled window transform is only resolved up to this height.
    fn max_height(&self) -> f64 {
        match self.shape {
            KernelShape::Gamma { .. } => MAX_HEIGHT,
            _ => 2e4,
        }
    }

    fn resolved_height(&self) -> Result<f64> {
        match self.height {
            Some(t) => Ok(t),
            None => self.auto_height(),
        }
    }
}

/// Outcome of one vertical-line quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// Difference between the last two step halvings.
    pub error_estimate: f64,
    pub step: f64,
    pub height: f64,
}

fn sample(spec: &KernelSpec, ts: &[f64]) -> Result<Vec<(Complex64, Complex64)>> {
    let c = spec.abscissa;
    ts.par_iter()
        .map(|&t| {
            let s = Complex64::new(c, t);
            spec.integrand_factor(s).map(|k| (s, k))
        })
        .collect()
}

fn accumulate(nodes: &[(Complex64, Complex64)], ly: f64) -> (Complex64, f64) {
    let mut acc = CompensatedSum::new();
    let mut l1 = 0.0;
    for &(s, k) in nodes {
        let v = (-s * ly).exp() * k;
        l1 += v.norm();
        acc.add(v);
    }
    (acc.value(), l1)
}

/// Trapezoid quadrature of `(1/2 pi) int_{-T}^{T} y^{-(c+it)} K(c+it) dt`
/// with step halving.
pub fn vertical_line_transform(spec: &KernelSpec, y: f64) -> Result<QuadratureResult> {
    Ok(vertical_line_transform_batch(spec, &[y])?[0])
}

/// [`vertical_line_transform`] at several arguments, sharing the kernel
/// evaluations; each argument is refined until it converges on its own.
pub fn vertical_line_transform_batch(spec: &KernelSpec, ys: &[f64]) -> Result<Vec<QuadratureResult>> {
    if let Some(y) = ys.iter().find(|y| !(**y > 0.0) || !y.is_finite()) {
        return Err(Error::Domain(format!("kernel argument {y} must be positive")));
    }
    spec.validate()?;
    let height = spec.resolved_height()?;
    let lys: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mut h = spec.step;
    let mut n = (height / h).ceil() as i64;
    let ts: Vec<f64> = (-n..=n).map(|k| k as f64 * h).collect();
    let nodes = sample(spec, &ts)?;
    let mut state: Vec<(Complex64, f64)> = lys
        .par_iter()
        .map(|&ly| accumulate(&nodes, ly))
        .collect();
    let mut values: Vec<Complex64> = state.iter().map(|(s, _)| s * h / (2.0 * PI)).collect();
    let mut done: Vec<Option<QuadratureResult>> = vec![None; ys.len()];
    for _ in 0..MAX_HALVINGS {
        let mids: Vec<f64> = (-n..n).map(|k| (k as f64 + 0.5) * h).collect();
        let nodes = sample(spec, &mids)?;
        h /= 2.0;
        n *= 2;
        let updates: Vec<(Complex64, f64)> = lys
            .par_iter()
            .zip(&done)
            .map(|(&ly, d)| {
                if d.is_some() {
                    (Complex64::new(0.0, 0.0), 0.0)
                } else {
                    accumulate(&nodes, ly)
                }
            })
            .collect();
        for (i, (dsum, dl1)) in updates.into_iter().enumerate() {
            if done[i].is_some() {
                continue;
            }
            state[i].0 += dsum;
            state[i].1 += dl1;
            let next = state[i].0 * h / (2.0 * PI);
            let diff = (next - values[i]).norm();
            values[i] = next;
            // phases t ln y lose about eps * t |ln y| in absolute accuracy
            let floor = 4.0 * f64::EPSILON * (1.0 + height * (1.0 + lys[i].abs())) * state[i].1 * h
                / (2.0 * PI);
            if diff <= spec.tolerance * next.norm() || diff <= floor {
                done[i] = Some(QuadratureResult {
                    value: next,
                    error_estimate: diff,
                    step: h,
                    height,
                });
            }
        }
        if done.iter().all(Option::is_some) {
            return Ok(done.into_iter().flatten().collect());
        }
    }
    let y = ys[done.iter().position(Option::is_none).unwrap_or(0)];
    Err(Error::NonConvergent(format!(
        "step halving did not settle at y = {y}"
    )))
}

/// Evaluates the kernel on the best contour: left of `0` plus residue for
/// `y < 1` when the pole structure allows it, the configured line otherwise.
pub fn eval_direct(spec: &KernelSpec, y: f64) -> Result<QuadratureResult> {
    if y < 1.0 {
        if let Some((left, residue)) = spec.left_shift()? {
            let mut r = vertical_line_transform(&left, y)?;
            r.value += residue;
            return Ok(r);
        }
    }
    vertical_line_transform(spec, y)
}

/// Precomputed nodes `(s_k, weight_k)` of one contour.
struct Nodes {
    points: Vec<(Complex64, Complex64)>,
    residue: Complex64,
}

impl Nodes {
    fn build(spec: &KernelSpec, residue: Complex64, samples: &[f64]) -> Result<Self> {
        let mut step = f64::INFINITY;
        for &y in samples {
            step = step.min(vertical_line_transform(spec, y)?.step);
        }
        let height = spec.resolved_height()?;
        let n = (height / step).ceil() as i64;
        let c = spec.abscissa;
        let w = step / (2.0 * PI);
        let points = (-n..=n)
            .into_par_iter()
            .map(|k| {
                let s = Complex64::new(c, k as f64 * step);
                spec.integrand_factor(s).map(|f| (s, f * w))
            })
            .collect::<Result<_>>()?;
        Ok(Self { points, residue })
    }

    /// Value and derivative in `ln y`.
    fn eval(&self, ly: f64) -> (Complex64, Complex64) {
        let mut v = CompensatedSum::new();
        let mut d = CompensatedSum::new();
        for &(s, w) in &self.points {
            let term = (-s * ly).exp() * w;
            v.add(term);
            d.add(-s * term);
        }
        (v.value() + self.residue, d.value())
    }
}

/// Kernel values on a logarithmic grid with cubic Hermite interpolation
/// (using exact derivatives), truncated where the kernel is negligible.
#[derive(Debug, Clone)]
pub struct KernelTable {
    spec: KernelSpec,
    u0: f64,
    values: Vec<Complex64>,
    derivs: Vec<Complex64>,
    cutoff: f64,
    scale: f64,
}

static TABLE_CACHE: OnceLock<Mutex<HashMap<String, Arc<KernelTable>>>> = OnceLock::new();

impl KernelTable {
    /// Tabulates `spec` on `[y_min, cutoff]`, the cutoff being the point past
    /// which `|K| < rel_cutoff * max |K|`.
    pub fn build(spec: KernelSpec, y_min: f64, rel_cutoff: f64) -> Result<Self> {
        if !(y_min > 0.0 && y_min < 1.0) {
            return Err(Error::Domain(format!("table floor {y_min} outside (0, 1)")));
        }
        spec.validate()?;
        let mut scale = eval_direct(&spec, y_min)?.value.norm();
        let mut y = 1.0;
        let mut quiet = 0;
        let y_hi = loop {
            let v = eval_direct(&spec, y)?.value.norm();
            scale = scale.max(v);
            if v < rel_cutoff * scale {
                quiet += 1;
                if quiet >= 2 {
                    break y;
                }
            } else {
                quiet = 0;
            }
            y *= 2.0;
            if y > 1e12 {
                return Err(Error::NonConvergent("kernel does not decay for large y".into()));
            }
        };
        let left = spec.left_shift()?;
        let (right_lo, left_nodes) = match &left {
            Some((lspec, residue)) => (
                1.0,
                Some(Nodes::build(lspec, *residue, &[y_min, y_min.sqrt(), 1.0])?),
            ),
            None => (y_min, None),
        };
        let right_nodes = Nodes::build(
            &spec,
            Complex64::new(0.0, 0.0),
            &[right_lo, (right_lo * y_hi).sqrt(), y_hi],
        )?;
        let u0 = y_min.ln();
        let count = ((y_hi.ln() - u0) / GRID_STEP).ceil() as usize + 2;
        let (values, derivs): (Vec<_>, Vec<_>) = (0..count)
            .into_par_iter()
            .map(|i| {
                let u = u0 + i as f64 * GRID_STEP;
                match &left_nodes {
                    Some(ln) if u < 0.0 => ln.eval(u),
                    _ => right_nodes.eval(u),
                }
            })
            .unzip();
        scale = values.iter().map(|v| v.norm()).fold(scale, f64::max);
        let last = values
            .iter()
            .rposition(|v| v.norm() >= rel_cutoff * scale)
            .unwrap_or(0);
        let cutoff = (u0 + (last + 1).min(count - 1) as f64 * GRID_STEP).exp();
        Ok(Self {
            spec,
            u0,
            values,
            derivs,
            cutoff,
            scale,
        })
    }

    /// Memoized table with the standard truncation `1e-15`.
    pub fn cached(spec: &KernelSpec, y_min: f64) -> Result<Arc<Self>> {
        let key = format!("{spec:?}|{y_min:e}");
        let cache = TABLE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("kernel cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(Self::build(spec.clone(), y_min, 1e-15)?);
        Ok(Arc::clone(
            cache
                .lock()
                .expect("kernel cache poisoned")
                .entry(key)
                .or_insert(table),
        ))
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    /// Beyond this argument the kernel is treated as zero.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn y_min(&self) -> f64 {
        self.u0.exp()
    }

    /// Largest tabulated magnitude.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        if y >= self.cutoff {
            return Complex64::new(0.0, 0.0);
        }
        let u = y.ln();
        let x = (u - self.u0) / GRID_STEP;
        if x < 0.0 {
            return self
                .eval_direct(y)
                .map(|r| r.value)
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        }
        let i = (x.floor() as usize).min(self.values.len() - 2);
        let t = x - i as f64;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        self.values[i] * h00
            + self.derivs[i] * (h10 * GRID_STEP)
            + self.values[i + 1] * h01
            + self.derivs[i + 1] * (h11 * GRID_STEP)
    }

    pub fn eval_direct(&self, y: f64) -> Result<QuadratureResult> {
        eval_direct(&self.spec, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ArchimedeanData;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn degree4_weight() -> KernelSpec {
        let arch = ArchimedeanData::sym2_holomorphic(12).with_dirichlet_factor();
        KernelSpec::afe_weight(&arch, c(0.5, 0.0)).unwrap()
    }

    #[test]
    fn degree_one_weight_is_incomplete_gamma() {
        // at point 4 the weight is Gamma(2, pi y^2) / Gamma(2)
        let spec = KernelSpec::new(
            KernelShape::normalized_gamma(&[c(0.0, 0.0)], c(4.0, 0.0)).unwrap(),
        );
        for y in [0.2, 0.7, 1.3] {
            let v = eval_direct(&spec, y).unwrap().value;
            let expect = (-PI * y * y).exp() * (1.0 + PI * y * y);
            assert!((v - expect).norm() < 1e-11, "y = {y}: {v} vs {expect}");
        }
    }

    #[test]
    fn small_argument_limit() {
        let spec = degree4_weight();
        let v = eval_direct(&spec, 1e-8).unwrap().value;
        assert!((v - 1.0).norm() < 1e-3);
        let right = vertical_line_transform(&spec, 1e-8).unwrap().value;
        assert!((right - 1.0).norm() < 1e-3);
    }

    #[test]
    fn rapid_decay() {
        let spec = degree4_weight();
        let v = vertical_line_transform(&spec, 1e6).unwrap().value;
        assert!(v.norm() < 1e-6);
    }

    #[test]
    fn step_halving_agreement() {
        let spec = degree4_weight();
        for y in [0.1, 1.0, 10.0] {
            let r = vertical_line_transform(&spec, y).unwrap();
            assert!(r.error_estimate < 1e-10, "y = {y}: {}", r.error_estimate);
        }
    }

    #[test]
    fn contour_shift_invariance() {
        let spec = degree4_weight();
        for y in [0.3, 1.0, 4.0, 25.0] {
            let a = vertical_line_transform(&spec, y).unwrap().value;
            let b = vertical_line_transform(&spec.clone().with_abscissa(2.0), y).unwrap().value;
            let d = vertical_line_transform(&spec.clone().with_abscissa(0.6), y).unwrap().value;
            assert!((a - b).norm() < 1e-9 && (a - d).norm() < 1e-9, "y = {y}");
        }
    }

    #[test]
    fn left_contour_agrees_with_right() {
        let spec = degree4_weight();
        for y in [0.05, 0.5] {
            let a = vertical_line_transform(&spec, y).unwrap().value;
            let b = eval_direct(&spec, y).unwrap().value;
            assert!((a - b).norm() < 1e-11, "y = {y}");
        }
    }

    #[test]
    fn poles_on_contour_rejected() {
        for c in [-0.5, -0.7, 0.0] {
            let spec = degree4_weight().with_abscissa(c);
            assert!(vertical_line_transform(&spec, 1.0).is_err());
        }
        assert!(vertical_line_transform(&degree4_weight(), 0.0).is_err());
    }

    #[test]
    fn non_decaying_spec_rejected() {
        let grow = KernelSpec {
            shape: KernelShape::Gamma {
                params: vec![],
                point: c(0.0, 0.0),
                log_scale: c(0.0, 0.0),
            },
            ..KernelSpec::new(KernelShape::normalized_gamma(&[c(0.0, 0.0)], c(0.5, 0.0)).unwrap())
        };
        assert!(matches!(
            vertical_line_transform(&grow, 2.0),
            Err(Error::NonConvergent(_))
        ));
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let table = KernelTable::build(degree4_weight(), 1e-6, 1e-15).unwrap();
        assert!(table.cutoff() > 1.0 && table.cutoff() < 1e4);
        for y in [2e-6, 3.3e-3, 0.42, 0.999, 1.0, 1.7, 9.9] {
            let a = table.eval(y);
            let b = table.eval_direct(y).unwrap().value;
            assert!((a - b).norm() < 1e-10, "y = {y}: {a} vs {b}");
        }
        assert_eq!(table.eval(table.cutoff() * 1.01), c(0.0, 0.0));
        assert!(table.eval(table.cutoff() * 0.99).norm() < 1e-13);
    }

    #[test]
    fn psi1_matches_cosine_transform() {
        // at s = 1/2 the gamma ratio is the Mellin transform of 2 cos(2x) / sqrt(pi)
        let psi1 = KernelSpec::new(KernelShape::Psi1 {
            s: c(0.5, 0.0),
            window: BumpWindow,
        })
        .with_tail_ratio(1e-13);
        let reference = [
            (1.0, -0.153_921_738_228_033_66),
            (3.0, -0.060_984_265_241_386_14),
            (10.0, 0.001_616_089_584_023_812_3),
        ];
        for (y, expect) in reference {
            let v = vertical_line_transform(&psi1, y).unwrap().value;
            assert!((v - expect).norm() < 1e-9, "y = {y}: {v}");
        }
        let far = psi1.clone().with_abscissa(2.0).with_tail_ratio(1e-10);
        let v = vertical_line_transform(&far, 3.0).unwrap().value;
        assert!((v - reference[1].1).norm() < 1e-6);
    }

    #[test]
    fn psi_kernels_decay() {
        let slope = |spec: &KernelSpec, ys: &[f64]| {
            let vs: Vec<f64> = vertical_line_transform_batch(spec, ys)
                .unwrap()
                .iter()
                .map(|r| r.value.norm())
                .collect();
            crate::util::fit_power_law(ys, &vs).unwrap().exponent
        };
        let psi1 = KernelSpec::new(KernelShape::Psi1 {
            s: c(0.5, 0.0),
            window: BumpWindow,
        })
        .with_tail_ratio(1e-13);
        let ys: Vec<f64> = (0..17).map(|k| 10.0 * 2f64.powf(k as f64 / 4.0)).collect();
        assert!(slope(&psi1, &ys) < -3.0);
        // the degree-3 ratio oscillates on the scale y^{1/3}, so its decay
        // sets in slowly; over five octaves it is only about y^{-1.8}
        let psi2 = KernelSpec::new(KernelShape::Psi2 {
            s: c(0.5, 0.0),
            arch: ArchimedeanData::real([0.1, 0.2, -0.3]).unwrap(),
            window: BumpWindow,
        })
        .with_tail_ratio(1e-13);
        let ys: Vec<f64> = (0..6).map(|k| 10.0 * 8f64.powi(k)).collect();
        let b = slope(&psi2, &ys);
        assert!(b < -1.5, "{b}");
    }
}
