use moment_lab::special::{hurwitz_zeta, log_gamma};
use moment_lab::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn wrapped(z: Complex64) -> Complex64 {
    Complex64::new(z.re, (z.im + PI).rem_euclid(TAU) - PI)
}

proptest! {
    #[test]
    fn log_gamma_recurrence(re in 0.5f64..30.0, im in -60.0f64..60.0) {
        let z = Complex64::new(re, im);
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        prop_assert!(wrapped(d).norm() < 1e-11 * (1.0 + z.norm()));
    }

    #[test]
    fn log_gamma_conjugate_symmetry(re in 0.5f64..30.0, im in -60.0f64..60.0) {
        let z = Complex64::new(re, im);
        prop_assert!((log_gamma(z.conj()).unwrap() - log_gamma(z).unwrap().conj()).norm() < 1e-11);
    }

    #[test]
    fn hurwitz_duplication(sr in -1.5f64..4.0, si in -20.0f64..20.0, a in 0.05f64..1.0) {
        let s = Complex64::new(sr, si);
        prop_assume!((s - 1.0).norm() > 1e-2);
        let halves = hurwitz_zeta(s, a / 2.0).unwrap() + hurwitz_zeta(s, (a + 1.0) / 2.0).unwrap();
        let whole = Complex64::new(2.0, 0.0).powc(s) * hurwitz_zeta(s, a).unwrap();
        prop_assert!((halves - whole).norm() < 1e-10 * (1.0 + whole.norm()), "{} vs {}", halves, whole);
    }
}
