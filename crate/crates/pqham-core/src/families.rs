//! Metacirculants and Fermat graphs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::field::is_prime;
use crate::graph::Graph;

/// The array `(m, n, alpha, T_0, ..., T_mu)` with `mu = floor(m/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetacirculantSpec {
    pub m: usize,
    pub n: usize,
    pub alpha: usize,
    pub t: Vec<BTreeSet<usize>>,
}

/// A metacirculant with its semiregular `rho` and the normalising `sigma`.
///
/// Vertex `v_i^r` (orbit `i`, position `r`) is `i * n + r`.
#[derive(Clone, Debug)]
pub struct Metacirculant {
    pub spec: MetacirculantSpec,
    pub graph: Graph,
    pub rho: Vec<usize>,
    pub sigma: Vec<usize>,
}

fn scale(set: &BTreeSet<usize>, a: usize, n: usize) -> BTreeSet<usize> {
    set.iter().map(|&x| x * a % n).collect()
}

fn negate(set: &BTreeSet<usize>, n: usize) -> BTreeSet<usize> {
    set.iter().map(|&x| (n - x) % n).collect()
}

fn pow_mod(a: usize, e: usize, n: usize) -> usize {
    (0..e).fold(1 % n, |acc, _| acc * a % n)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl MetacirculantSpec {
    pub fn new(m: usize, n: usize, alpha: usize, t: Vec<Vec<usize>>) -> Result<Self> {
        let spec = MetacirculantSpec {
            m,
            n,
            alpha,
            t: t.into_iter().map(|s| s.into_iter().collect()).collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn mu(&self) -> usize {
        self.m / 2
    }

    /// Checks the defining constraints, naming the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let (m, n, a) = (self.m, self.n, self.alpha);
        if m == 0 || n < 2 {
            return Err(invalid("need m >= 1 and n >= 2"));
        }
        if a == 0 || a >= n || gcd(a, n) != 1 {
            return Err(invalid(format!("alpha = {a} is not a unit of Z_{n}")));
        }
        if self.t.len() != self.mu() + 1 {
            return Err(invalid(format!(
                "expected {} connection sets T_0..T_mu",
                self.mu() + 1
            )));
        }
        if self.t.iter().flatten().any(|&x| x >= n) {
            return Err(invalid("connection set entry out of range"));
        }
        if self.t[0].contains(&0) {
            return Err(invalid("constraint 0 not in T_0 violated"));
        }
        if self.t[0] != negate(&self.t[0], n) {
            return Err(invalid("constraint T_0 = -T_0 violated"));
        }
        let am = pow_mod(a, m, n);
        for (i, ti) in self.t.iter().enumerate() {
            if scale(ti, am, n) != *ti {
                return Err(invalid(format!(
                    "constraint alpha^m T_{i} = T_{i} violated"
                )));
            }
        }
        if m % 2 == 0 {
            let mu = self.mu();
            if scale(&self.t[mu], pow_mod(a, mu, n), n) != negate(&self.t[mu], n) {
                return Err(invalid("constraint alpha^mu T_mu = -T_mu violated"));
            }
        }
        Ok(())
    }

    /// `T_k` for any `k` in `Z_m`, using `T_{-k} = -alpha^{-k} T_k`.
    pub fn t_of(&self, k: usize) -> BTreeSet<usize> {
        let (m, n) = (self.m, self.n);
        let k = k % m;
        if k <= self.mu() {
            return self.t[k].clone();
        }
        let j = m - k;
        let inv = (1..n).find(|&x| x * self.alpha % n == 1).unwrap();
        negate(&scale(&self.t[j], pow_mod(inv, j, n), n), n)
    }
}

/// Builds the metacirculant and checks that `rho` and `sigma` are automorphisms.
pub fn metacirculant(spec: &MetacirculantSpec) -> Result<Metacirculant> {
    spec.validate()?;
    let (m, n, a) = (spec.m, spec.n, spec.alpha);
    let ts: Vec<BTreeSet<usize>> = (0..m).map(|k| spec.t_of(k)).collect();
    let mut edges = Vec::new();
    for i in 0..m {
        let ai = pow_mod(a, i, n);
        for j in 0..m {
            for &d in &ts[(j + m - i) % m] {
                let s = d * ai % n;
                for r in 0..n {
                    let (x, y) = (i * n + r, j * n + (r + s) % n);
                    if x != y {
                        edges.push((x, y));
                    } else {
                        return Err(invalid("connection sets produce a loop"));
                    }
                }
            }
        }
    }
    let graph = Graph::from_edges_dedup(m * n, &edges)?;
    for (x, y) in graph.edges() {
        let (i, r, j, s) = (x / n, x % n, y / n, y % n);
        let back = scale(&ts[(i + m - j) % m], pow_mod(a, j, n), n);
        if !back.contains(&((r + n - s) % n)) {
            return Err(invalid(
                "connection sets are not consistent with an undirected graph",
            ));
        }
    }
    let rho: Vec<usize> = (0..m * n).map(|v| (v / n) * n + (v % n + 1) % n).collect();
    let sigma: Vec<usize> = (0..m * n)
        .map(|v| ((v / n + 1) % m) * n + (v % n) * a % n)
        .collect();
    if !graph.is_automorphism(&rho) {
        return Err(invalid("rho is not an automorphism"));
    }
    if !graph.is_automorphism(&sigma) {
        return Err(invalid("sigma is not an automorphism"));
    }
    Ok(Metacirculant {
        spec: spec.clone(),
        graph,
        rho,
        sigma,
    })
}

/// The Galois field `GF(2^d)` for `d` in `{2, 4, 8}`, elements as bit-polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2n {
    pub size: usize,
    pub modulus: usize,
    /// Smallest multiplicative generator.
    pub w: usize,
}

impl Gf2n {
    /// Fixed irreducible polynomials: `x^2+x+1`, `x^4+x+1`, `x^8+x^4+x^3+x+1`.
    pub fn new(size: usize) -> Result<Self> {
        let modulus = match size {
            4 => 0b111,
            16 => 0b1_0011,
            256 => 0b1_0001_1011,
            _ => return Err(invalid(format!("GF({size}) is not supported"))),
        };
        let mut f = Gf2n {
            size,
            modulus,
            w: 0,
        };
        f.w = (2..size).find(|&g| f.order(g) == size - 1).unwrap();
        Ok(f)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        a ^ b
    }

    pub fn mul(&self, mut a: usize, mut b: usize) -> usize {
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & self.size != 0 {
                a ^= self.modulus;
            }
        }
        r
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.size {
                return 0;
            }
        }
        k
    }
}

/// Parameters of `F(p, q, S, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatSpec {
    pub p: usize,
    pub q: usize,
    pub s: BTreeSet<usize>,
    pub t: BTreeSet<usize>,
}

/// A Fermat graph with its `(p, q)`-semiregular automorphism.
///
/// Point `v` of the projective line is `0..p-1` for field elements and `p-1` for infinity;
/// vertex `(v, r)` is `v * q + r`.
#[derive(Clone, Debug)]
pub struct FermatGraph {
    pub spec: FermatSpec,
    pub field: Gf2n,
    pub graph: Graph,
    /// `(v, r) -> (w^k v, r + 1)` with `k = 1 (mod q)` and `w^k` of order `q`.
    pub phi: Vec<usize>,
    pub k: usize,
}

impl FermatSpec {
    pub fn new(p: usize, q: usize, s: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        let spec = FermatSpec {
            p,
            q,
            s: s.into_iter().collect(),
            t: t.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let (p, q) = (self.p, self.q);
        if ![5, 17, 257].contains(&p) {
            return Err(invalid(format!("p = {p} is not a supported Fermat prime")));
        }
        if !is_prime(q as u64) || (p - 2) % q != 0 {
            return Err(invalid(format!("q = {q} is not a prime divisor of p - 2")));
        }
        if self
            .s
            .iter()
            .chain(self.t.iter())
            .any(|&x| x == 0 || x >= q)
        {
            return Err(invalid("S and T must lie in GF(q)*"));
        }
        if self.s.iter().any(|&x| !self.s.contains(&(q - x))) {
            return Err(invalid("S must be symmetric"));
        }
        if self.t.is_empty() || self.t.len() == q - 1 {
            return Err(invalid("T must be a nonempty proper subset of GF(q)*"));
        }
        Ok(())
    }
}

/// Builds `F(p, q, S, T)` from the neighbour rules, with `i` ranging over `Z_{p-2}`.
pub fn fermat_graph(spec: &FermatSpec) -> Result<FermatGraph> {
    spec.validate()?;
    let (p, q) = (spec.p, spec.q);
    let field = Gf2n::new(p - 1)?;
    let inf = p - 1;
    let powers: Vec<usize> = (0..p - 2).map(|i| field.pow(field.w, i)).collect();
    let id = |v: usize, r: usize| v * q + r % q;
    let graph = Graph::from_neighbor_fn(p * q, |x| {
        let (v, r) = (x / q, x % q);
        let mut out = Vec::new();
        for &s in &spec.s {
            out.push(id(v, r + s));
        }
        if v == inf {
            for y in 0..inf {
                for &t in &spec.t {
                    out.push(id(y, r + t));
                }
            }
        } else {
            for &t in &spec.t {
                out.push(id(inf, r + q - t));
            }
            for (i, &wi) in powers.iter().enumerate() {
                for &t in &spec.t {
                    out.push(id(field.add(v, wi), (q - r) + t + 2 * i));
                }
            }
        }
        out
    })?;
    let k = (0..p - 2)
        .find(|&k| k % q == 1 && field.order(powers[k]) == q)
        .ok_or_else(|| invalid("no semiregular multiplier"))?;
    let lambda = powers[k];
    let phi: Vec<usize> = (0..p * q)
        .map(|x| {
            let (v, r) = (x / q, x % q);
            let v2 = if v == inf { inf } else { field.mul(lambda, v) };
            id(v2, r + 1)
        })
        .collect();
    if !graph.is_automorphism(&phi) {
        return Err(invalid("the (p,q)-semiregular map is not an automorphism"));
    }
    Ok(FermatGraph {
        spec: spec.clone(),
        field,
        graph,
        phi,
        k,
    })
}

/// The fibre shift `(v, r) -> (v, r + 1)`.
pub fn fermat_fibre_shift(p: usize, q: usize) -> Vec<usize> {
    (0..p * q).map(|x| (x / q) * q + (x % q + 1) % q).collect()
}

/// Every valid `(S, T)` pair for the given `(p, q)`, in a fixed order.
pub fn fermat_specs(p: usize, q: usize) -> Vec<FermatSpec> {
    let half: Vec<usize> = (1..=q / 2).collect();
    let mut out = Vec::new();
    for smask in 0..(1usize << half.len()) {
        let mut s = Vec::new();
        for (b, &x) in half.iter().enumerate() {
            if smask >> b & 1 == 1 {
                s.push(x);
                s.push(q - x);
            }
        }
        for tmask in 1..(1usize << (q - 1)) - 1 {
            let t: Vec<usize> = (1..q).filter(|&x| tmask >> (x - 1) & 1 == 1).collect();
            if let Ok(spec) = FermatSpec::new(p, q, s.clone(), t) {
                out.push(spec);
            }
        }
    }
    out
}

/// Prime `(m, n)` pairs and a small fixed corpus of connection sets, restricted to valid
/// connected instances with `m * n <= max_order`.
pub fn metacirculant_corpus(max_order: usize) -> Vec<MetacirculantSpec> {
    let primes: Vec<usize> = (2..=max_order / 2)
        .filter(|&x| is_prime(x as u64))
        .collect();
    let mut out = Vec::new();
    for &m in &primes {
        for &n in &primes {
            if m == n || m * n > max_order {
                continue;
            }
            let mut alphas = vec![1];
            if let Some(a) = (2..n).find(|&a| pow_mod(a, m, n) == 1) {
                alphas.push(a);
            }
            if n > 2 && !alphas.contains(&(n - 1)) {
                alphas.push(n - 1);
            }
            let mu = m / 2;
            for &alpha in &alphas {
                let mut candidates: Vec<Vec<Vec<usize>>> = Vec::new();
                let mut a = vec![Vec::new(); mu + 1];
                if n > 2 {
                    a[0] = vec![1, n - 1];
                }
                if mu >= 1 {
                    a[mu] = vec![0];
                }
                candidates.push(a);
                if mu >= 1 {
                    let mut b = vec![Vec::new(); mu + 1];
                    b[1] = vec![0, 1];
                    candidates.push(b);
                }
                for t in candidates {
                    let Ok(spec) = MetacirculantSpec::new(m, n, alpha, t) else {
                        continue;
                    };
                    if let Ok(mc) = metacirculant(&spec) {
                        if mc.graph.is_connected() && mc.graph.regular_valency().unwrap_or(0) >= 2 {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}
