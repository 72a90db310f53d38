//! Arithmetic of perimeter gaps in products of two directed cycles.
//!
//! `C_{n1}□C_{n2}` is Hamiltonian only if `d = gcd(n1, n2) >= 2` splits as
//! `d1 + d2` with `gcd(n1, d1) = gcd(n2, d2) = 1`. When no such split exists
//! every cycle length is a multiple of `d` and the gap is at least `d`.
//! A witness `(n1, n2)` for `d` is built from a prime pair `q ≡ 1 (mod p)`
//! with `q^25 < p^41`, giving gaps of order `ln(n1·n2)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest `d` accepted by the bipartition search.
pub const SEARCH_MAX_D: u64 = 40;
/// Largest `p` accepted by the prime-pair search.
pub const MOTOHASHI_MAX_P: u64 = 1_000_000;
/// Exponent bound `q < p^{41/25}`.
pub const THETA: (u32, u32) = (41, 25);
/// Floor asserted on `d / ln n` for every constructed row.
pub const RATIO_FLOOR: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumGapError {
    #[error("{what} must be at most {max}, got {got}")]
    BoundTooLarge { what: &'static str, max: u64, got: u64 },
    #[error("({p}, {q}) is not an admissible prime pair: {reason}")]
    NotPair { p: u64, q: u64, reason: String },
    #[error("size guard p^2 > p + q fails for ({p}, {q})")]
    Guard { p: u64, q: u64 },
    #[error("constructed certificate is invalid: {0}")]
    InvalidCertificate(String),
}

fn as_string<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Primes `< x`, ascending.
pub fn primes_below(x: u64) -> Vec<u64> {
    let x = x as usize;
    if x < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; x];
    let mut i = 2;
    while i * i < x {
        if !composite[i] {
            for j in (i * i..x).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (2..x).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_big(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let t = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, t, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub d1: u64,
    pub d2: u64,
    pub g1: u64,
    pub g2: u64,
}

impl SplitCheck {
    /// Some side shares a factor.
    pub fn blocked(&self) -> bool {
        self.g1 >= 2 || self.g2 >= 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrotterErdos {
    pub n1: u64,
    pub n2: u64,
    pub d: u64,
    pub holds: bool,
    /// Smallest `d1` whose split is coprime on both sides.
    pub split: Option<(u64, u64)>,
}

pub fn trotter_erdos_necessary(n1: u64, n2: u64) -> TrotterErdos {
    let d = gcd(n1, n2);
    let split = if d >= 2 {
        (1..d).map(|d1| (d1, d - d1)).find(|&(d1, d2)| gcd(n1, d1) == 1 && gcd(n2, d2) == 1)
    } else {
        None
    };
    TrotterErdos { n1, n2, d, holds: split.is_some(), split }
}

/// `gcd(n1, n2)` when the condition fails with `gcd >= 2`, else 0.
pub fn divisibility_gap_bound(n1: u64, n2: u64) -> u64 {
    let t = trotter_erdos_necessary(n1, n2);
    if !t.holds && t.d >= 2 {
        t.d
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub d: u64,
    #[serde(serialize_with = "as_string")]
    pub n1: BigUint,
    #[serde(serialize_with = "as_string")]
    pub n2: BigUint,
    #[serde(serialize_with = "as_string")]
    pub gcd: BigUint,
    pub splits: Vec<SplitCheck>,
    pub valid: bool,
    pub reason: Option<String>,
}

fn small_gcd(n: &BigUint, k: u64) -> u64 {
    gcd((n % k).to_u64().expect("residue below k"), k)
}

pub fn prime_partitionable_check(d: u64, n1: &BigUint, n2: &BigUint) -> WitnessCertificate {
    assert!(d >= 2, "d must be at least 2");
    let splits: Vec<SplitCheck> = (1..d)
        .into_par_iter()
        .map(|d1| {
            let d2 = d - d1;
            SplitCheck { d1, d2, g1: small_gcd(n1, d1), g2: small_gcd(n2, d2) }
        })
        .collect();
    let g = gcd_big(n1, n2);
    let reason = if g != BigUint::from(d) {
        Some(format!("gcd(n1, n2) = {g}, not {d}"))
    } else {
        splits
            .iter()
            .find(|s| !s.blocked())
            .map(|s| format!("split ({}, {}) is coprime on both sides", s.d1, s.d2))
    };
    WitnessCertificate { d, n1: n1.clone(), n2: n2.clone(), gcd: g, splits, valid: reason.is_none(), reason }
}

/// Rechecks a certificate with the library gcd.
pub fn revalidate(cert: &WitnessCertificate) -> bool {
    let d = BigUint::from(cert.d);
    let gcd_ok = cert.n1.gcd(&cert.n2) == d;
    let splits_ok = cert.splits.len() as u64 == cert.d - 1
        && cert.splits.iter().enumerate().all(|(i, s)| {
            let g1 = cert.n1.gcd(&BigUint::from(s.d1));
            let g2 = cert.n2.gcd(&BigUint::from(s.d2));
            s.d1 == i as u64 + 1 && s.d1 + s.d2 == cert.d && g1 == BigUint::from(s.g1) && g2 == BigUint::from(s.g2)
        });
    let all_blocked = cert.splits.iter().all(|s| {
        !cert.n1.gcd(&BigUint::from(s.d1)).is_one() || !cert.n2.gcd(&BigUint::from(s.d2)).is_one()
    });
    splits_ok && cert.valid == (gcd_ok && all_blocked)
}

fn product(d: u64, primes: impl Iterator<Item = u64>) -> BigUint {
    primes.fold(BigUint::from(d), |acc, p| acc * p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionHit {
    pub d: u64,
    /// Primes below `d` multiplied into `n1`; the rest go to `n2`.
    pub p1: Vec<u64>,
    pub certificate: WitnessCertificate,
}

/// For each `2 <= d <= d_max`, the first bipartition `P1 ⊔ P2` of the primes
/// below `d` (binary counter, bit `i` puts the `i`-th prime in `P1`) for which
/// `n_i = d·∏P_i` is a witness.
pub fn search_prime_partitionable(d_max: u64) -> Result<Vec<PartitionHit>, NumGapError> {
    if d_max > SEARCH_MAX_D {
        return Err(NumGapError::BoundTooLarge { what: "d_max", max: SEARCH_MAX_D, got: d_max });
    }
    let hits: Vec<Option<PartitionHit>> = (2..=d_max)
        .into_par_iter()
        .map(|d| {
            let primes = primes_below(d);
            let k = primes.len();
            (0u64..1 << k).into_par_iter().find_map_first(|mask| {
                let side = |bit: u64| primes.iter().enumerate().filter(move |(i, _)| mask >> i & 1 == bit).map(|(_, &p)| p);
                let n1 = product(d, side(1));
                let n2 = product(d, side(0));
                let cert = prime_partitionable_check(d, &n1, &n2);
                cert.valid.then(|| PartitionHit { d, p1: side(1).collect(), certificate: cert })
            })
        })
        .collect();
    Ok(hits.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MotohashiPair {
    pub p: u64,
    pub q: u64,
    pub bound_ok: bool,
}

/// `q^25 < p^41`, exactly.
pub fn theta_bound(p: u64, q: u64) -> bool {
    BigUint::from(q).pow(THETA.1) < BigUint::from(p).pow(THETA.0)
}

fn smallest_prime_one_mod(p: u64) -> u64 {
    let step = if p == 2 { 1 } else { 2 * p };
    let mut q = if p == 2 { 3 } else { 2 * p + 1 };
    while !is_prime(q) {
        q += step;
    }
    q
}

/// For each prime `p <= p_max`, the smallest prime `q ≡ 1 (mod p)`, kept when
/// `q^25 < p^41`.
pub fn motohashi_pairs(p_max: u64) -> Result<Vec<MotohashiPair>, NumGapError> {
    if p_max > MOTOHASHI_MAX_P {
        return Err(NumGapError::BoundTooLarge { what: "p_max", max: MOTOHASHI_MAX_P, got: p_max });
    }
    Ok(primes_below(p_max + 1)
        .into_par_iter()
        .filter_map(|p| {
            let q = smallest_prime_one_mod(p);
            theta_bound(p, q).then_some(MotohashiPair { p, q, bound_ok: true })
        })
        .collect())
}

/// Natural logarithm of a big integer from its leading 64 bits.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma34 {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    #[serde(serialize_with = "as_string")]
    pub n1: BigUint,
    #[serde(serialize_with = "as_string")]
    pub n2: BigUint,
    #[serde(serialize_with = "as_string")]
    pub n: BigUint,
    pub ln_n: f64,
    /// `d / ln n`.
    pub ratio: f64,
    /// `e^d / n`.
    pub e_d_over_n: f64,
    pub certificate: WitnessCertificate,
}

pub fn lemma34_construct(p: u64, q: u64) -> Result<Lemma34, NumGapError> {
    let not_pair = |reason: &str| NumGapError::NotPair { p, q, reason: reason.into() };
    if !is_prime(p) || !is_prime(q) {
        return Err(not_pair("both must be prime"));
    }
    if q % p != 1 {
        return Err(not_pair("q is not 1 mod p"));
    }
    if !theta_bound(p, q) {
        return Err(not_pair("q^25 >= p^41"));
    }
    if p as u128 * p as u128 <= p as u128 + q as u128 {
        return Err(NumGapError::Guard { p, q });
    }
    let d = p + q;
    let n1 = BigUint::from(d) * p * q;
    let n2 = product(d, primes_below(d).into_iter().filter(|&z| z != p && z != q));
    let certificate = prime_partitionable_check(d, &n1, &n2);
    if !certificate.valid {
        return Err(NumGapError::InvalidCertificate(certificate.reason.unwrap_or_default()));
    }
    let n = &n1 * &n2;
    let ln_n = ln_big(&n);
    Ok(Lemma34 {
        p,
        q,
        d,
        ratio: d as f64 / ln_n,
        e_d_over_n: (d as f64 - ln_n).exp(),
        ln_n,
        n1,
        n2,
        n,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem11Report {
    pub p_max: u64,
    pub rows: Vec<Lemma34>,
    pub min_ratio: Option<f64>,
    /// Every row has `d / ln n >= 0.9`.
    pub ratio_floor_holds: bool,
    /// Ratios never increase from one row to the next.
    pub monotone: bool,
}

/// Rows for every pair with `p <= p_max` that passes the size guard.
pub fn theorem11_report(p_max: u64) -> Result<Theorem11Report, NumGapError> {
    let rows: Vec<Lemma34> = motohashi_pairs(p_max)?
        .into_par_iter()
        .filter(|m| m.p * m.p > m.p + m.q)
        .map(|m| lemma34_construct(m.p, m.q))
        .collect::<Result<_, _>>()?;
    let min_ratio = rows.iter().map(|r| r.ratio).reduce(f64::min);
    Ok(Theorem11Report {
        p_max,
        ratio_floor_holds: rows.iter().all(|r| r.ratio >= RATIO_FLOOR),
        monotone: rows.windows(2).all(|w| w[1].ratio <= w[0].ratio),
        min_ratio,
        rows,
    })
}

impl Theorem11Report {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,q,d,n1,n2,n,ln_n,ratio,e_d_over_n\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{:.6},{:.6},{:.6e}\n",
                r.p, r.q, r.d, r.n1, r.n2, r.n, r.ln_n, r.ratio, r.e_d_over_n
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_gcd() {
        assert_eq!(primes_below(16), vec![2, 3, 5, 7, 11, 13]);
        assert!(primes_below(2).is_empty());
        assert_eq!(primes_below(3), vec![2]);
        assert_eq!(gcd(880, 8736), 16);
        let sieve = primes_below(10_000);
        assert_eq!(sieve, (0..10_000).filter(|&k| is_prime(k)).collect::<Vec<_>>());
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn necessity_examples() {
        let t = trotter_erdos_necessary(2, 2);
        assert!(t.holds);
        assert_eq!(t.split, Some((1, 1)));
        assert!(!trotter_erdos_necessary(2, 3).holds);
        assert!(!trotter_erdos_necessary(880, 8736).holds);
        assert_eq!(divisibility_gap_bound(880, 8736), 16);
        assert_eq!(divisibility_gap_bound(2, 2), 0);
        assert_eq!(divisibility_gap_bound(2, 4), 0);
    }

    #[test]
    fn certificates() {
        let c = prime_partitionable_check(16, &880u32.into(), &8736u32.into());
        assert!(c.valid);
        assert_eq!(c.splits.len(), 15);
        assert!(revalidate(&c));
        let bad = prime_partitionable_check(5, &30u32.into(), &5u32.into());
        assert!(!bad.valid);
        assert!(revalidate(&bad));
        let tiny = prime_partitionable_check(2, &2u32.into(), &4u32.into());
        assert!(!tiny.valid);
        assert!(tiny.reason.unwrap().contains("(1, 1)"));
        let mut forged = c.clone();
        forged.splits[3].g1 = 7;
        assert!(!revalidate(&forged));
    }

    #[test]
    fn search_first_hit() {
        let hits = search_prime_partitionable(20).unwrap();
        assert_eq!(hits[0].d, 16);
        assert!(hits.iter().all(|h| revalidate(&h.certificate)));
        assert!(search_prime_partitionable(41).is_err());
    }

    #[test]
    fn pairs_and_construction() {
        let pairs = motohashi_pairs(10).unwrap();
        assert!(pairs.contains(&MotohashiPair { p: 2, q: 3, bound_ok: true }));
        assert!(pairs.contains(&MotohashiPair { p: 5, q: 11, bound_ok: true }));
        assert!(pairs.iter().all(|m| m.p != 3));
        let w = lemma34_construct(5, 11).unwrap();
        assert_eq!((w.d, w.n1.clone(), w.n2.clone()), (16, 880u32.into(), 8736u32.into()));
        assert!((w.ln_n - 15.855).abs() < 0.01);
        assert!(w.ratio >= 1.0);
        assert_eq!(lemma34_construct(2, 3).unwrap_err(), NumGapError::Guard { p: 2, q: 3 });
        assert!(theorem11_report(4).unwrap().rows.is_empty());
    }

    #[test]
    fn ln_of_large_values() {
        let n = BigUint::from(3u32).pow(200);
        assert!((ln_big(&n) - 200.0 * 3f64.ln()).abs() < 1e-9);
    }
}
