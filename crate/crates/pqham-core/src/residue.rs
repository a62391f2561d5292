//! Sequence functions over the prime divisors of `p - 1`, the split search that decides
//! whether an even quartic takes a square value at a primitive root, the exceptional
//! sequence tables, and the small-prime quartic exceptions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed};

use crate::error::{invalid, Result};
use crate::field::{is_prime, prime_divisors, primes_below, PrimeField};

/// Search ceiling for the bound on `x` in the split inequality.
pub const BOUND_CEILING: u64 = 1_000_000;

/// Increasing sequence of distinct primes starting at 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSequence {
    primes: Vec<u64>,
}

impl PrimeSequence {
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.first() != Some(&2) {
            return Err(invalid("prime sequence must start with 2"));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("prime sequence must be strictly increasing"));
        }
        if let Some(q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(invalid(format!("{q} is not prime")));
        }
        Ok(PrimeSequence { primes })
    }

    /// The prime divisors of `p - 1`.
    pub fn of_prime(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(invalid(format!("{p} is not an odd prime")));
        }
        PrimeSequence::new(prime_divisors(p - 1))
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `q_i` with 1-based index.
    pub fn q(&self, i: usize) -> u64 {
        self.primes[i - 1]
    }

    fn product(&self, from: usize, to: usize) -> u128 {
        self.primes[from..to].iter().map(|&q| q as u128).product()
    }
}

impl core::fmt::Display for PrimeSequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, q) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

/// A coprime factorisation `s·t` of the radical of `p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StPair {
    pub s: u64,
    pub t: u64,
}

/// Which suffix of the sequence forms `t` for a recorded bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitType {
    /// `t = q_{m-1} q_m`
    LastTwo,
    /// `t = q_m`
    LastOne,
    /// `t = 1`
    Empty,
    /// Any other suffix product.
    ExplicitT(u64),
}

impl core::fmt::Display for SplitType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SplitType::LastTwo => f.write_str("1"),
            SplitType::LastOne => f.write_str("2"),
            SplitType::Empty => f.write_str("3"),
            SplitType::ExplicitT(t) => write!(f, "t={t}"),
        }
    }
}

/// One row of the exceptional-sequence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub sequence: PrimeSequence,
    /// Smallest integer `k` such that every `x >= k` satisfies the split inequality.
    pub bound_k: u64,
    pub split_type: SplitType,
    pub split: StPair,
    /// Primes `p <= bound_k` whose `p - 1` has exactly this prime-divisor set.
    pub primes_le_k: Vec<u64>,
    /// Those of `primes_le_k` with `p ≡ 1 (mod 4)` and `(p + 1)/2` prime.
    pub quasi_primes: Vec<u64>,
}

fn ratio(n: u128, d: u128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `d(n, m) = 2 ∏_{i=n}^{m} (1 - 1/q_i)` as an exact rational; an empty product
/// (`n = m + 1`) gives 2.
pub fn d_fn(n: usize, m: usize, seq: &PrimeSequence) -> Result<BigRational> {
    if n < 1 || m > seq.len() || n > m + 1 {
        return Err(invalid(format!(
            "d({n},{m}) out of range for a sequence of length {}",
            seq.len()
        )));
    }
    let (num, den) = seq.primes[n - 1..m]
        .iter()
        .fold((2u128, 1u128), |(a, b), &q| {
            (a * (q as u128 - 1), b * q as u128)
        });
    Ok(ratio(num, den))
}

/// `c_r(n, m) = 2r √(q_1⋯q_{n-1} / (q_n⋯q_m))`.
pub fn c_fn(r: u64, n: usize, m: usize, seq: &PrimeSequence) -> Result<f64> {
    if n < 1 || m > seq.len() || n > m {
        return Err(invalid(format!(
            "c({n},{m}) out of range for a sequence of length {}",
            seq.len()
        )));
    }
    let num = seq.product(0, n - 1) as f64;
    let den = seq.product(n - 1, m) as f64;
    Ok(2.0 * r as f64 * Float::sqrt(num / den))
}

/// The unique `k` with `d(k-1, m) <= 1 < d(k, m)`; always at least 2.
pub fn k_of(seq: &PrimeSequence) -> usize {
    let m = seq.len();
    let one = BigRational::one();
    (2..=m + 1)
        .find(|&k| d_fn(k - 1, m, seq).unwrap() <= one && d_fn(k, m, seq).unwrap() > one)
        .expect("d(1,m) <= 1 < d(m+1,m) = 2")
}

/// Exact check of `d(k+1, m) - c_4(k+1, m) > 1` for `k = k(m)`.
pub fn lemma_m_gt_holds(seq: &PrimeSequence) -> bool {
    let m = seq.len();
    let k = k_of(seq);
    if k + 1 > m {
        return false;
    }
    let lhs = d_fn(k + 1, m, seq).unwrap() - BigRational::one();
    if !lhs.is_positive() {
        return false;
    }
    // c_4^2 = 64 * q_1⋯q_k / (q_{k+1}⋯q_m)
    let c2 = ratio(64 * seq.product(0, k), seq.product(k, m));
    lhs.clone() * lhs > c2
}

fn phi_of_squarefree(t_primes: &[u64]) -> u128 {
    t_primes.iter().map(|&q| q as u128 - 1).product()
}

/// `2φ(t)/t > 1 + (4s-2)√x/(x-1) + (4s+2)/(x-1)` with `t` squarefree, decided exactly.
fn split_inequality(s: u128, t_primes: &[u64], x: u128) -> bool {
    let t: u128 = t_primes.iter().map(|&q| q as u128).product();
    let phi = phi_of_squarefree(t_primes);
    if x < 2 {
        return false;
    }
    // Cheap float screen; only near-ties fall through to big-integer arithmetic.
    let (sf, tf, xf, pf) = (s as f64, t as f64, x as f64, phi as f64);
    let lhs = 2.0 * pf / tf;
    let rhs = 1.0 + ((4.0 * sf - 2.0) * Float::sqrt(xf) + 4.0 * sf + 2.0) / (xf - 1.0);
    let gap = lhs - rhs;
    if gap.abs() > 1e-9 * rhs.abs().max(1.0) {
        return gap > 0.0;
    }
    // Multiply through by t(x-1) > 0 and isolate the radical: A > B√x.
    let (s, t, x, phi) = (
        BigInt::from(s),
        BigInt::from(t),
        BigInt::from(x),
        BigInt::from(phi),
    );
    let a: BigInt = (BigInt::from(2) * &phi - &t) * (&x - 1) - &t * (BigInt::from(4) * &s + 2);
    let b: BigInt = &t * (BigInt::from(4) * &s - 2);
    if !a.is_positive() {
        return false;
    }
    &a * &a > &b * &b * x
}

/// The inequality of [`corollary1_holds`] for general `r`, with `t` given by its primes.
fn corollary_inequality(r: u64, s: u64, t_primes: &[u64], p: u64) -> bool {
    if r == 4 {
        return split_inequality(s as u128, t_primes, p as u128);
    }
    let t: u128 = t_primes.iter().map(|&q| q as u128).product();
    let phi = phi_of_squarefree(t_primes);
    let (s, t, x, phi, r) = (
        BigInt::from(s),
        BigInt::from(t),
        BigInt::from(p),
        BigInt::from(phi),
        BigInt::from(r),
    );
    let a: BigInt = (BigInt::from(2) * &phi - &t) * (&x - 1) - &t * (&r * &s + 2);
    let b: BigInt = &t * (&r * &s - 2);
    if !a.is_positive() {
        return false;
    }
    if b.is_negative() {
        return true;
    }
    &a * &a > &b * &b * x
}

/// Condition (iii) of the split criterion for `s, t` relative to the prime `p`.
pub fn corollary1_holds(s: u64, t: u64, p: u64, r: u64) -> Result<bool> {
    if !is_prime(p) || p < 3 {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    if s == 0 || t == 0 || s.gcd(&t) != 1 {
        return Err(invalid(format!(
            "s={s}, t={t} are not coprime positive integers"
        )));
    }
    let mut st = prime_divisors(s);
    let t_primes = prime_divisors(t);
    st.extend_from_slice(&t_primes);
    st.sort_unstable();
    if st != prime_divisors(p - 1) {
        return Err(invalid(format!(
            "s·t={} does not have the prime divisors of p-1={}",
            s * t,
            p - 1
        )));
    }
    Ok(corollary_inequality(r, s, &t_primes, p))
}

fn split_at(seq: &PrimeSequence, n: usize) -> (u128, &[u64]) {
    (seq.product(0, n), &seq.primes[n..])
}

/// The first split `s = q_1⋯q_n`, `t = q_{n+1}⋯q_m` (in increasing `n`) satisfying the
/// criterion for `p`, if any.
pub fn find_split(p: u64) -> Result<Option<StPair>> {
    let seq = PrimeSequence::of_prime(p)?;
    for n in 0..=seq.len() {
        let (s, t_primes) = split_at(&seq, n);
        if split_inequality(s, t_primes, p as u128) {
            let t = t_primes.iter().product();
            return Ok(Some(StPair { s: s as u64, t }));
        }
    }
    Ok(None)
}

/// Whether no split of the sequence satisfies the criterion at `x = q_1⋯q_m + 1`.
pub fn is_exceptional(seq: &PrimeSequence) -> bool {
    let rad = seq.product(0, seq.len());
    (0..=seq.len()).all(|n| {
        let (s, t_primes) = split_at(seq, n);
        !split_inequality(s, t_primes, rad + 1)
    })
}

/// Smallest integer `k >= 2` such that every integer `x >= k` satisfies the split inequality
/// (the ceiling of the real threshold), or `None` when the inequality fails at the ceiling.
///
/// The right-hand side is strictly decreasing in `x > 1`, so the satisfying integers form
/// an up-ray and the boundary is located by bisection.
pub fn split_bound(s: u128, t_primes: &[u64], ceiling: u64) -> Option<u64> {
    if !split_inequality(s, t_primes, ceiling as u128) {
        return None;
    }
    if split_inequality(s, t_primes, 2) {
        return Some(2);
    }
    let (mut fail, mut hold) = (2u64, ceiling);
    while hold - fail > 1 {
        let mid = fail + (hold - fail) / 2;
        if split_inequality(s, t_primes, mid as u128) {
            hold = mid;
        } else {
            fail = mid;
        }
    }
    Some(hold)
}

/// Reference scan for [`split_bound`]: walks down from the ceiling until the first failure.
pub fn split_bound_by_scan(s: u128, t_primes: &[u64], ceiling: u64) -> Option<u64> {
    if !split_inequality(s, t_primes, ceiling as u128) {
        return None;
    }
    let mut x = ceiling;
    while x >= 2 {
        if !split_inequality(s, t_primes, x as u128) {
            return Some(x + 1);
        }
        x -= 1;
    }
    Some(2)
}

fn split_type(seq: &PrimeSequence, n: usize) -> SplitType {
    let m = seq.len();
    match m - n {
        0 => SplitType::Empty,
        1 => SplitType::LastOne,
        2 => SplitType::LastTwo,
        _ => SplitType::ExplicitT(seq.product(n, m) as u64),
    }
}

/// Best bound over all splits; ties go to the larger `n` (shorter `t`).
pub fn best_bound(seq: &PrimeSequence) -> Option<(u64, usize)> {
    let mut best: Option<(u64, usize)> = None;
    for n in (0..=seq.len()).rev() {
        let (s, t_primes) = split_at(seq, n);
        if let Some(k) = split_bound(s, t_primes, BOUND_CEILING) {
            if best.map_or(true, |(bk, _)| k < bk) {
                best = Some((k, n));
            }
        }
    }
    best
}

/// Sequences enumerated under the four shape cases: `(prefix, k, max length)`.
const SHAPE_CASES: [(&[u64], usize, usize, usize); 4] = [
    (&[2, 3, 5], 4, 9, 9),
    (&[2, 5], 3, 1, 7),
    (&[2, 3], 3, 1, 7),
    (&[2], 2, 1, 5),
];

/// All sequences with `q_m < qm_cap` admitted by the shape filter, in enumeration order.
pub fn shape_filtered_sequences(qm_cap: u64) -> Vec<PrimeSequence> {
    let pool: Vec<u64> = primes_below(qm_cap);
    let mut out = Vec::new();
    for &(prefix, k, min_len, max_len) in SHAPE_CASES.iter() {
        let last = *prefix.last().unwrap();
        let tail: Vec<u64> = pool.iter().copied().filter(|&q| q > last).collect();
        let mut cur: Vec<u64> = prefix.to_vec();
        extend(
            &tail,
            0,
            &mut cur,
            min_len.max(prefix.len()),
            max_len,
            &mut |seq| {
                let seq = PrimeSequence {
                    primes: seq.to_vec(),
                };
                if k_of_fast(&seq) == k && seq.len() <= 2 * k + 1 {
                    out.push(seq);
                }
            },
        );
    }
    out.sort();
    out.dedup();
    out
}

fn extend(
    tail: &[u64],
    from: usize,
    cur: &mut Vec<u64>,
    min_len: usize,
    max_len: usize,
    f: &mut impl FnMut(&[u64]),
) {
    if cur.len() >= min_len {
        f(cur);
    }
    if cur.len() == max_len {
        return;
    }
    for i in from..tail.len() {
        cur.push(tail[i]);
        extend(tail, i + 1, cur, min_len, max_len, f);
        cur.pop();
    }
}

/// `k_of` on 128-bit integers; sequences here have products far below `2^128`.
fn k_of_fast(seq: &PrimeSequence) -> usize {
    let m = seq.len();
    // d(n,m) <= 1  <=>  2 ∏(q-1) <= ∏ q over indices n..=m
    let le_one = |n: usize| {
        let (a, b) = seq.primes[n - 1..m]
            .iter()
            .fold((2u128, 1u128), |(a, b), &q| {
                (a * (q as u128 - 1), b * q as u128)
            });
        a <= b
    };
    (2..=m + 1)
        .find(|&k| le_one(k - 1) && (k > m || !le_one(k)))
        .unwrap()
}

/// Primes `p <= k` with the prime-divisor set of `p - 1` equal to `seq`.
pub fn primes_with_sequence(seq: &PrimeSequence, k: u64) -> Vec<u64> {
    primes_below(k + 1)
        .into_iter()
        .filter(|&p| p > 2 && prime_divisors(p - 1) == seq.primes)
        .collect()
}

/// The exceptional sequences with `q_m < qm_cap` together with their best bounds.
pub fn exceptional_table(qm_cap: u64) -> Vec<BoundRecord> {
    shape_filtered_sequences(qm_cap)
        .into_iter()
        .filter(is_exceptional)
        .map(|sequence| {
            let (bound_k, n) =
                best_bound(&sequence).expect("every exceptional sequence has a bound");
            let (s, _) = split_at(&sequence, n);
            let t = sequence.product(n, sequence.len()) as u64;
            let primes_le_k = primes_with_sequence(&sequence, bound_k);
            let quasi_primes = primes_le_k
                .iter()
                .copied()
                .filter(|&p| p % 4 == 1 && is_prime(p.div_ceil(2)))
                .collect();
            BoundRecord {
                split_type: split_type(&sequence, n),
                split: StPair { s: s as u64, t },
                sequence,
                bound_k,
                primes_le_k,
                quasi_primes,
            }
        })
        .collect()
}

/// `sequence;k;type;primes` record, primes comma-separated (`-` when empty).
pub fn record_csv(r: &BoundRecord) -> String {
    let primes = if r.primes_le_k.is_empty() {
        String::from("-")
    } else {
        r.primes_le_k
            .iter()
            .map(|p| format!("{p}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{};{};{};{}", r.sequence, r.bound_k, r.split_type, primes)
}

/// Some primitive root `β` with `c4·β⁴ + c2·β² + c0` a square or zero.
pub fn primitive_square_witness(c4: u64, c2: u64, c0: u64, f: &PrimeField) -> Result<Option<u64>> {
    if c0 % f.p() == 0 {
        return Err(invalid("the constant term must be nonzero"));
    }
    Ok(f.primitive_roots().into_iter().find(|&b| {
        let b2 = f.mul(b, b);
        let v = f.add(f.add(f.mul(c4, f.mul(b2, b2)), f.mul(c2, b2)), c0 % f.p());
        f.legendre(v) >= 0
    }))
}

/// All `k ∈ F` for which no primitive root `β` makes `β⁴ + kβ² + 1` a square or zero.
pub fn quartic_exceptions(f: &PrimeField) -> Vec<u64> {
    let p = f.p();
    let sq4: Vec<(u64, u64)> = f
        .primitive_roots()
        .into_iter()
        .map(|b| {
            let b2 = f.mul(b, b);
            (b2, f.mul(b2, b2))
        })
        .collect();
    let table = f.character_table();
    (0..p)
        .filter(|&k| {
            sq4.iter().all(|&(b2, b4)| {
                let v = f.add(f.add(b4, f.mul(k, b2)), 1);
                table[v as usize] == crate::field::ResidueClass::NonSquare
            })
        })
        .collect()
}

/// `ξ ∈ S*∩(S*+1)` with `k = 2(1-2ξ)` (sign `+1`) or `k = -2(1-2ξ)` (sign `-1`).
pub fn quartic_xi_witnesses(f: &PrimeField, k: u64, sign: i8) -> Vec<u64> {
    (1..f.p())
        .filter(|&xi| f.is_square(xi) && f.is_square(f.sub(xi, 1)))
        .filter(|&xi| {
            let v = f.mul(2, f.sub(1, f.mul(2, xi)));
            let v = if sign < 0 { f.neg(v) } else { v };
            v == k % f.p()
        })
        .collect()
}
