use std::sync::OnceLock;

use moment_lab::arith::gcd;
use moment_lab::coeffs::{read_table, sym2_delta_table, synthetic_random, write_table, GL3CoefficientTable};
use proptest::prelude::*;

fn table() -> &'static GL3CoefficientTable {
    static T: OnceLock<GL3CoefficientTable> = OnceLock::new();
    T.get_or_init(|| sym2_delta_table(1 << 14).unwrap())
}

proptest! {
    #[test]
    fn multiplicative_on_coprime_pairs(m in 1usize..128, n in 1usize..128) {
        prop_assume!(gcd(m as u64, n as u64) == 1);
        let t = table();
        let lhs = t.a(m * n).unwrap();
        prop_assert!((lhs - t.a(m).unwrap() * t.a(n).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn real_and_self_dual(n in 1usize..(1 << 14)) {
        let t = table();
        prop_assert_eq!(t.a(n).unwrap().im, 0.0);
        prop_assert_eq!(t.a(n).unwrap(), t.a_dual(n).unwrap());
    }

    #[test]
    fn seeded_tables_repeat(seed in any::<u64>()) {
        let a = synthetic_random(64, seed).unwrap();
        let b = synthetic_random(64, seed).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }
}

#[test]
fn text_round_trip_is_exact() {
    let t = sym2_delta_table(500).unwrap();
    let mut buf = Vec::new();
    write_table(&t, &mut buf).unwrap();
    let back = read_table(buf.as_slice()).unwrap();
    assert_eq!(back.values(), t.values());
    assert_eq!(back.arch, t.arch);
}

#[test]
fn rankin_selberg_average_is_bounded() {
    let t = table();
    let n = t.len();
    let mean = t.values().iter().map(|a| a.norm_sqr()).sum::<f64>() / n as f64;
    assert!(mean > 0.1 && mean < 10.0, "{mean}");
}
