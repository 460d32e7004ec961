//! Exact integer arithmetic used by the character groups and the Hecke
//! combinatorics.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::{Error, Result};

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes strictly inside `(lo, hi)`.
    pub fn in_open_interval(&self, lo: f64, hi: f64) -> Vec<u64> {
        self.primes
            .iter()
            .copied()
            .filter(|&p| (p as f64) > lo && (p as f64) < hi)
            .collect()
    }
}

/// Sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::EmptyDomain(format!("no primes below {limit}")));
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(PrimeTable { limit, primes })
}

/// Smallest prime factor of every integer up to `limit` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= limit {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Prime factorisation as `(p, k)` pairs with ascending `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(format!("{what} is undefined at 0")));
    }
    Ok(())
}

pub fn mobius(n: u64) -> Result<i32> {
    require_positive(n, "mobius")?;
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    require_positive(n, "euler_phi")?;
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// Divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    require_positive(n, "divisors")?;
    let mut divs = vec![1u64];
    for (p, k) in factorize(n) {
        let current = divs.len();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Smallest generator of `(Z/pZ)^*`.
pub fn primitive_root(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let order = p - 1;
    let prime_divisors: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
    (2..p)
        .find(|&g| prime_divisors.iter().all(|&r| mod_pow(g, order / r, p) != 1))
        .ok_or_else(|| Error::Domain(format!("no primitive root modulo {p}")))
}

/// Discrete-log table for `(Z/pZ)^*` against its smallest primitive root.
#[derive(Debug)]
pub struct DlogTable {
    pub p: u64,
    pub generator: u64,
    /// `log[a]` for `1 <= a < p`; `log[0]` is unused.
    log: Vec<u32>,
    /// `power[k] = g^k mod p` for `0 <= k < p - 1`.
    power: Vec<u32>,
}

impl DlogTable {
    fn build(p: u64) -> Result<Self> {
        let generator = primitive_root(p)?;
        let order = (p - 1) as usize;
        let mut log = vec![0u32; p as usize];
        let mut power = Vec::with_capacity(order);
        let mut x = 1u64;
        for k in 0..order {
            power.push(x as u32);
            log[x as usize] = k as u32;
            x = x * generator % p;
        }
        Ok(Self {
            p,
            generator,
            log,
            power,
        })
    }

    /// Exponent of `a` against the stored generator; `a` must be a unit.
    pub fn log(&self, a: u64) -> Option<u32> {
        let r = a % self.p;
        (r != 0).then(|| self.log[r as usize])
    }

    pub fn power(&self, k: u64) -> u64 {
        self.power[(k % (self.p - 1)) as usize] as u64
    }

    pub fn order(&self) -> u64 {
        self.p - 1
    }
}

static DLOG_CACHE: OnceLock<Mutex<HashMap<u64, Arc<DlogTable>>>> = OnceLock::new();

/// Memoized discrete-log table for the odd prime `p`.
pub fn dlog_table(p: u64) -> Result<Arc<DlogTable>> {
    let cache = DLOG_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("dlog cache poisoned").get(&p) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(DlogTable::build(p)?);
    cache
        .lock()
        .expect("dlog cache poisoned")
        .entry(p)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Exponent `k` in `[0, p-2]` with `g^k = a (mod p)`.
pub fn discrete_log(p: u64, g: u64, a: u64) -> Result<u64> {
    require_odd_prime(p)?;
    if gcd(a % p, p) != 1 {
        return Err(Error::Domain(format!("{a} is not a unit modulo {p}")));
    }
    let table = dlog_table(p)?;
    if table.generator == g % p {
        return Ok(table.log(a).expect("unit") as u64);
    }
    let target = a % p;
    let mut x = 1u64;
    for k in 0..p - 1 {
        if x == target {
            return Ok(k);
        }
        x = x * (g % p) % p;
    }
    Err(Error::Domain(format!("{g} does not generate (Z/{p}Z)^*")))
}
