use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Lanczos sum, valid for `Re z >= 1/2`.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln sin(pi z)` without overflow for large `|Im z|` (any branch).
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im > 1.0 {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        -i * PI * z + (1.0 - (2.0 * i * PI * z).exp()).ln() + Complex64::new(0.5, 0.0).ln()
            + i * (PI / 2.0)
    } else if z.im < -1.0 {
        // sin(pi z) = (-i/2) e^{i pi z} (1 - e^{-2 i pi z})
        i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln() + Complex64::new(0.5, 0.0).ln()
            - i * (PI / 2.0)
    } else {
        (PI * z).sin().ln()
    }
}

/// Logarithm of the gamma function.
///
/// For `Re z >= 1/2` this is the branch continuous from the positive real
/// axis; to the left the reflection formula is used and the imaginary part
/// is only determined modulo `2 pi`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma at non-finite {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole {
            function: "gamma",
            at: z.to_string(),
        });
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}
