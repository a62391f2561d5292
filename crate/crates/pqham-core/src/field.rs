//! Arithmetic in prime fields `F_p` and the quadratic-residue machinery.
//!
//! Values are `u64` in `[0, p)`; products are widened to `u128`. The modulus is
//! capped at `2^31 - 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{invalid, Error, Result};

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Deterministic trial-division primality test (fine for the sizes used here).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, increasing.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes below `limit`, increasing.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    prime_divisors(n)
        .iter()
        .fold(n, |acc, &q| acc / q * (q - 1))
}

/// Quadratic character of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueClass {
    Zero,
    Square,
    NonSquare,
}

/// The prime field `F_p` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Wraps a residue (any integer) as a field element.
    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            p: self.p,
        }
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Legendre symbol as `0`, `1` or `-1`.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            0
        } else if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn classify(&self, a: u64) -> ResidueClass {
        match self.legendre(a) {
            0 => ResidueClass::Zero,
            1 => ResidueClass::Square,
            _ => ResidueClass::NonSquare,
        }
    }

    #[inline]
    pub fn is_square(&self, a: u64) -> bool {
        self.legendre(a) == 1
    }

    #[inline]
    pub fn is_nonsquare(&self, a: u64) -> bool {
        self.legendre(a) == -1
    }

    /// Lookup table of the quadratic character, indexed by residue.
    pub fn character_table(&self) -> Vec<ResidueClass> {
        let mut t = vec![ResidueClass::NonSquare; self.p as usize];
        t[0] = ResidueClass::Zero;
        for x in 1..=(self.p - 1) / 2 {
            t[self.mul(x, x) as usize] = ResidueClass::Square;
        }
        t
    }

    /// Square roots of `a`, smaller root first. `{0}` for zero, empty for non-squares.
    pub fn sqrt(&self, a: u64) -> Vec<u64> {
        let a = a % self.p;
        if a == 0 {
            return vec![0];
        }
        if !self.is_square(a) {
            return Vec::new();
        }
        let r = self.tonelli_shanks(a);
        let s = self.p - r;
        if r < s {
            vec![r, s]
        } else {
            vec![s, r]
        }
    }

    fn tonelli_shanks(&self, a: u64) -> u64 {
        let p = self.p;
        if p % 4 == 3 {
            return self.pow(a, (p + 1) / 4);
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = self.smallest_nonsquare();
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    pub fn smallest_nonsquare(&self) -> u64 {
        (2..self.p)
            .find(|&x| self.is_nonsquare(x))
            .expect("odd prime field has non-squares")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        let n = self.p - 1;
        let mut ord = n;
        for q in prime_divisors(n) {
            while ord % q == 0 && self.pow(a, ord / q) == 1 {
                ord /= q;
            }
        }
        ord
    }

    /// All generators of `F*`, increasing.
    pub fn primitive_roots(&self) -> Vec<u64> {
        let n = self.p - 1;
        let qs = prime_divisors(n);
        (1..self.p)
            .filter(|&g| qs.iter().all(|&q| self.pow(g, n / q) != 1))
            .collect()
    }

    pub fn smallest_primitive_root(&self) -> u64 {
        let n = self.p - 1;
        let qs = prime_divisors(n);
        (2..self.p)
            .find(|&g| qs.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    pub fn residue_intersections(&self) -> ResidueIntersections {
        let t = self.character_table();
        let p = self.p;
        let cls = |x: u64| t[(x % p) as usize];
        let mut r = ResidueIntersections::default();
        for x in 1..p {
            let here = cls(x);
            let below = cls(x + p - 1);
            let above = cls(x + 1);
            if here == ResidueClass::Square && below == ResidueClass::Square {
                r.s_s_plus += 1;
            }
            if here == ResidueClass::NonSquare && below == ResidueClass::NonSquare {
                r.n_n_plus += 1;
            }
            if here == ResidueClass::Square && below == ResidueClass::NonSquare {
                r.s_n_plus += 1;
            }
            if here == ResidueClass::Square && above == ResidueClass::NonSquare {
                r.s_n_minus += 1;
            }
        }
        for x in 0..p {
            if cls(x + p - 1) == ResidueClass::Square && cls(p - x) == ResidueClass::Square {
                r.splus_cap_minus_s += 1;
            }
        }
        r
    }

    /// Ordered solutions of `x^2 + y^2 = k` for `k != 0`.
    pub fn sum_two_squares_count(&self, k: u64) -> Result<u64> {
        let k = k % self.p;
        if k == 0 {
            return Err(invalid("sum_two_squares_count needs k != 0"));
        }
        let t = self.character_table();
        let mut n = 0u64;
        for x in 0..self.p {
            let rest = self.sub(k, self.mul(x, x));
            n += match t[rest as usize] {
                ResidueClass::Zero => 1,
                ResidueClass::Square => 2,
                ResidueClass::NonSquare => 0,
            };
        }
        Ok(n)
    }

    /// The smaller square root of `-1`, when `p ≡ 1 (mod 4)`.
    pub fn sqrt_minus_one(&self) -> Option<u64> {
        self.sqrt(self.p - 1).first().copied()
    }

    /// For `p ≡ 1 (mod 8)` and `x != 0`, one of `x, ix, ix^2` whose square plus one is a
    /// nonzero square.
    pub fn triple_square_witness(&self, x: u64) -> Result<u64> {
        if self.p % 8 != 1 {
            return Err(invalid("triple_square_witness needs p ≡ 1 (mod 8)"));
        }
        let x = x % self.p;
        if x == 0 {
            return Err(invalid("triple_square_witness needs x != 0"));
        }
        let i = self.sqrt_minus_one().expect("p ≡ 1 (mod 8)");
        let cands = [x, self.mul(i, x), self.mul(i, self.mul(x, x))];
        cands
            .into_iter()
            .find(|&z| self.is_square(self.add(1, self.mul(z, z))))
            .ok_or_else(|| invalid("no witness among x, ix, ix^2"))
    }

    /// `|A ∪ B|` and `|A|` for `A = S*∩(S*+1)`, `B = S*∩(S*−1)`.
    pub fn ab_square_counts(&self) -> (usize, usize) {
        self.ab_counts(ResidueClass::Square)
    }

    /// `|A ∪ B|` and `|A|` for `A = S*∩(N*+1)`, `B = S*∩(N*−1)`.
    pub fn ab_nonsquare_counts(&self) -> (usize, usize) {
        self.ab_counts(ResidueClass::NonSquare)
    }

    fn ab_counts(&self, shifted: ResidueClass) -> (usize, usize) {
        let t = self.character_table();
        let p = self.p;
        let (mut union, mut a) = (0, 0);
        for x in 1..p {
            if t[x as usize] != ResidueClass::Square {
                continue;
            }
            let in_a = t[((x + p - 1) % p) as usize] == shifted;
            let in_b = t[((x + 1) % p) as usize] == shifted;
            a += in_a as usize;
            union += (in_a || in_b) as usize;
        }
        (union, a)
    }
}

/// Cardinalities of the shifted residue-class intersections.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ResidueIntersections {
    /// `|S* ∩ (S*+1)|`
    pub s_s_plus: u64,
    /// `|N* ∩ (N*+1)|`
    pub n_n_plus: u64,
    /// `|S* ∩ (N*+1)|`
    pub s_n_plus: u64,
    /// `|S* ∩ (N*−1)|`
    pub s_n_minus: u64,
    /// `|(S*+1) ∩ (−S*)|`
    pub splus_cap_minus_s: u64,
}

/// An element of `F_p` carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    p: u64,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn classify(self) -> ResidueClass {
        self.field().classify(self.value)
    }

    pub fn sqrt(self) -> Vec<FieldElement> {
        self.field()
            .sqrt(self.value)
            .into_iter()
            .map(|value| FieldElement { value, p: self.p })
            .collect()
    }

    pub fn inv(self) -> FieldElement {
        FieldElement {
            value: self.field().inv(self.value),
            p: self.p,
        }
    }

    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }

    fn same(self, o: FieldElement) {
        debug_assert_eq!(self.p, o.p, "mixed moduli");
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        self.same(o);
        FieldElement {
            value: self.field().add(self.value, o.value),
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        self.same(o);
        FieldElement {
            value: self.field().sub(self.value, o.value),
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: FieldElement) -> FieldElement {
        self.same(o);
        FieldElement {
            value: self.field().mul(self.value, o.value),
            p: self.p,
        }
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, o: FieldElement) -> FieldElement {
        self.same(o);
        FieldElement {
            value: self.field().div(self.value, o.value),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}
