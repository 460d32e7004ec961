//! Ramanujan's `tau(n)` from `Delta = q prod (1 - q^n)^24 = q J(q)^8`, where
//! `J = prod (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}` is Jacobi's series.

use rayon::prelude::*;

use crate::{Error, Result};

/// Largest supported truncation; `|tau(n)| < 2^126` holds well past it.
pub const TAU_BUDGET: usize = 1 << 21;

const NAIVE_LIMIT: usize = 2048;

/// `tau(1), ..., tau(n_max)` (index 0 holds `tau(1)`).
pub fn tau_coefficients(n_max: usize) -> Result<Vec<i128>> {
    if n_max == 0 {
        return Err(Error::Domain("tau needs at least one coefficient".into()));
    }
    if n_max > TAU_BUDGET {
        return Err(Error::Resource(format!(
            "tau up to {n_max} exceeds the series budget {TAU_BUDGET}"
        )));
    }
    let j2 = jacobi_squared(n_max);
    let j8 = if n_max <= NAIVE_LIMIT {
        let j4 = square_naive(&j2);
        square_naive(&j4)
    } else {
        let j4 = ntt::square(&j2);
        ntt::square(&j4)
    };
    Ok(j8)
}

/// `J^2` truncated to `len` terms, by sparse convolution.
fn jacobi_squared(len: usize) -> Vec<i128> {
    let mut terms = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 < len {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push((k * (k + 1) / 2, sign * (2 * k as i128 + 1)));
        k += 1;
    }
    let mut out = vec![0i128; len];
    for &(e1, c1) in &terms {
        for &(e2, c2) in &terms {
            if e1 + e2 >= len {
                break;
            }
            out[e1 + e2] += c1 * c2;
        }
    }
    out
}

fn square_naive(a: &[i128]) -> Vec<i128> {
    let len = a.len();
    (0..len)
        .map(|k| (0..=k).map(|i| a[i] * a[k - i]).sum())
        .collect()
}

mod ntt {
    use super::*;

    /// NTT-friendly primes below `2^62` with `2^24 | p - 1`, and generators.
    pub(super) const PRIMES: [(u64, u64); 3] = [
        (4_611_686_018_326_724_609, 3),
        (4_611_686_018_309_947_393, 5),
        (4_611_686_018_058_289_153, 5),
    ];

    /// Montgomery arithmetic modulo an odd `p < 2^62` with `R = 2^64`.
    #[derive(Clone, Copy)]
    pub(super) struct Mont {
        p: u64,
        p_inv_neg: u64,
        r2: u64,
    }

    impl Mont {
        pub(super) fn new(p: u64) -> Self {
            let mut inv = 1u64;
            for _ in 0..6 {
                inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
            }
            let r2 = ((1u128 << 64) % p as u128 * ((1u128 << 64) % p as u128) % p as u128) as u64;
            Self {
                p,
                p_inv_neg: inv.wrapping_neg(),
                r2,
            }
        }

        #[inline]
        pub(super) fn reduce(&self, t: u128) -> u64 {
            let m = (t as u64).wrapping_mul(self.p_inv_neg);
            let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
            if u >= self.p {
                u - self.p
            } else {
                u
            }
        }

        #[inline]
        pub(super) fn mul(&self, a: u64, b: u64) -> u64 {
            self.reduce(a as u128 * b as u128)
        }

        pub(super) fn to_mont(&self, a: u64) -> u64 {
            self.mul(a % self.p, self.r2)
        }

        pub(super) fn from_mont(&self, a: u64) -> u64 {
            self.reduce(a as u128)
        }

        #[inline]
        fn add(&self, a: u64, b: u64) -> u64 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        }

        #[inline]
        fn sub(&self, a: u64, b: u64) -> u64 {
            if a >= b {
                a - b
            } else {
                a + self.p - b
            }
        }

        fn pow(&self, base: u64, mut e: u64) -> u64 {
            let mut acc = self.to_mont(1);
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul(acc, b);
                }
                b = self.mul(b, b);
                e >>= 1;
            }
            acc
        }

        /// In-place iterative transform on Montgomery residues.
        fn transform(&self, a: &mut [u64], root: u64, invert: bool) {
            let n = a.len();
            let mut j = 0;
            for i in 1..n {
                let mut bit = n >> 1;
                while j & bit != 0 {
                    j ^= bit;
                    bit >>= 1;
                }
                j |= bit;
                if i < j {
                    a.swap(i, j);
                }
            }
            let root = if invert {
                self.pow(root, self.p - 2)
            } else {
                root
            };
            let mut len = 2;
            while len <= n {
                let w_len = self.pow(root, (n / len) as u64);
                let half = len / 2;
                let mut twiddles = Vec::with_capacity(half);
                let mut w = self.to_mont(1);
                for _ in 0..half {
                    twiddles.push(w);
                    w = self.mul(w, w_len);
                }
                let block = len.max(1 << 14).min(n);
                a.par_chunks_mut(block).for_each(|outer| {
                    for chunk in outer.chunks_mut(len) {
                        let (lo, hi) = chunk.split_at_mut(half);
                        for k in 0..half {
                            let u = lo[k];
                            let v = self.mul(hi[k], twiddles[k]);
                            lo[k] = self.add(u, v);
                            hi[k] = self.sub(u, v);
                        }
                    }
                });
                len <<= 1;
            }
            if invert {
                let n_inv = self.pow(self.to_mont(n as u64), self.p - 2);
                a.par_iter_mut().for_each(|x| *x = self.mul(*x, n_inv));
            }
        }

        /// Cyclic square of `a` (zero-padded to `size`), returned in plain form.
        pub(super) fn square(&self, a: &[i128], size: usize, generator: u64) -> Vec<u64> {
            let p = self.p as i128;
            let mut buf = vec![0u64; size];
            buf.par_iter_mut().zip(a.par_iter()).for_each(|(b, &x)| {
                *b = self.to_mont(x.rem_euclid(p) as u64);
            });
            let root = self.pow(self.to_mont(generator), (self.p - 1) / size as u64);
            self.transform(&mut buf, root, false);
            buf.par_iter_mut().for_each(|x| *x = self.mul(*x, *x));
            self.transform(&mut buf, root, true);
            buf.par_iter_mut().for_each(|x| *x = self.from_mont(*x));
            buf
        }
    }

    /// First `a.len()` coefficients of `a^2`, exact while they stay below `2^126`.
    pub(super) fn square(a: &[i128]) -> Vec<i128> {
        let len = a.len();
        let size = (2 * len).next_power_of_two();
        let residues: Vec<Vec<u64>> = PRIMES
            .iter()
            .map(|&(p, g)| Mont::new(p).square(a, size, g))
            .collect();
        let (p1, p2, p3) = (PRIMES[0].0, PRIMES[1].0, PRIMES[2].0);
        let m2 = Mont::new(p2);
        let m3 = Mont::new(p3);
        let inv_p1_mod_p2 = m2.to_mont(crate::arith::mod_inv(p1 % p2, p2).expect("coprime"));
        let inv_p1p2_mod_p3 = m3.to_mont(
            crate::arith::mod_inv((p1 as u128 * p2 as u128 % p3 as u128) as u64, p3)
                .expect("coprime"),
        );
        let p1p2 = p1 as u128 * p2 as u128;
        (0..len)
            .into_par_iter()
            .map(|k| {
                let (r1, r2, r3) = (residues[0][k], residues[1][k], residues[2][k]);
                // Garner: x = r1 + p1 t2 + p1 p2 t3
                let t2 = m2.from_mont(m2.mul(m2.to_mont((r2 + p2 - r1 % p2) % p2), inv_p1_mod_p2));
                let partial = (r1 as u128 + p1 as u128 * t2 as u128) % p3 as u128;
                let d3 = (r3 as u128 + p3 as u128 - partial) % p3 as u128;
                let t3 = m3.from_mont(m3.mul(m3.to_mont(d3 as u64), inv_p1p2_mod_p3));
                let low = r1 as i128 + (p1 as i128) * (t2 as i128);
                let high = (p1p2 as i128).wrapping_mul(t3 as i128);
                let x = low.wrapping_add(high);
                if t3 > p3 / 2 {
                    // subtract P = p1 p2 p3, modulo 2^128
                    x.wrapping_sub((p1p2 as i128).wrapping_mul(p3 as i128))
                } else {
                    x
                }
            })
            .collect()
    }
}
