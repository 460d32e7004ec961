use num_complex::Complex64;

use crate::{Error, Result};

/// `B_{2j}` for `j = 1..=12`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Euler-Maclaurin evaluation; at `s = 1` the polar term is replaced by
/// `-ln(N + a)`, the part of the expansion that depends on `a`.
pub(crate) fn hurwitz_zeta_finite_part(s: Complex64, a: f64) -> Complex64 {
    let n = 30usize.max((2.0 * s.norm()).ceil() as usize);
    let mut head = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        head += (-s * (k as f64 + a).ln()).exp();
    }
    let x = n as f64 + a;
    let lx = x.ln();
    let x_s = (-s * lx).exp();
    let polar = if (s - 1.0).norm() == 0.0 {
        Complex64::new(-lx, 0.0)
    } else {
        x_s * x / (s - 1.0)
    };
    let mut tail = Complex64::new(0.0, 0.0);
    // rising factorial s(s+1)...(s+2j-2) / (2j)! times x^{-s-2j+1}
    let mut coeff = s / 2.0 / x;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j + 1;
        tail += *b * coeff;
        let k = 2 * j;
        coeff *= (s + (k - 1) as f64) * (s + k as f64) / ((k + 1) as f64 * (k + 2) as f64 * x * x);
    }
    head + polar + 0.5 * x_s + tail * x_s
}

/// Hurwitz zeta `sum_{k >= 0} (k + a)^{-s}` for `0 < a <= 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz parameter {a} outside (0, 1]")));
    }
    if (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: s.to_string(),
        });
    }
    Ok(hurwitz_zeta_finite_part(s, a))
}
