//! Semiregular automorphisms, quotient multigraphs, Frucht symbols and cycle lifting.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Multigraph};
use crate::perm::cycle_type;

/// Orbits of a semiregular permutation, each listed from its least vertex by successive application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    pos: Vec<usize>,
}

impl OrbitPartition {
    fn of(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        let mut orbits = Vec::new();
        for s in 0..n {
            if orbit_of[s] != usize::MAX {
                continue;
            }
            let mut o = Vec::new();
            let mut x = s;
            while orbit_of[x] == usize::MAX {
                orbit_of[x] = orbits.len();
                pos[x] = o.len();
                o.push(x);
                x = perm[x];
            }
            orbits.push(o);
        }
        OrbitPartition {
            orbits,
            orbit_of,
            pos,
        }
    }

    /// `(orbit index, position)` of a vertex; position `t` means the vertex is `rho^t(base)`.
    pub fn locate(&self, v: usize) -> (usize, usize) {
        (self.orbit_of[v], self.pos[v])
    }

    /// The vertex `rho^t(base_i)`.
    pub fn vertex(&self, i: usize, t: usize) -> usize {
        let o = &self.orbits[i];
        o[t % o.len()]
    }
}

/// An `(m, n)`-semiregular automorphism of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregularAut {
    pub perm: Vec<usize>,
    pub m: usize,
    pub n: usize,
    pub orbits: OrbitPartition,
}

/// `(m, n)` if `perm` is an automorphism of `g` whose cycles all have the same length `n >= 2`.
pub fn verify_semiregular(g: &Graph, perm: &[usize]) -> Option<(usize, usize)> {
    if !g.is_automorphism(perm) {
        return None;
    }
    let ct = cycle_type(perm);
    let n = *ct.first()?;
    (n >= 2 && ct.iter().all(|&c| c == n)).then_some((ct.len(), n))
}

impl SemiregularAut {
    pub fn new(g: &Graph, perm: Vec<usize>) -> Result<Self> {
        if !g.is_automorphism(&perm) {
            return Err(Error::NotAutomorphism(String::from(
                "permutation does not preserve edges",
            )));
        }
        let (m, n) = verify_semiregular(g, &perm)
            .ok_or_else(|| Error::NotSemiregular(format!("cycle type {:?}", cycle_type(&perm))))?;
        let orbits = OrbitPartition::of(&perm);
        Ok(SemiregularAut { perm, m, n, orbits })
    }
}

/// The quotient multigraph: `d(A)` as loop valency, `d(A, B)` as edge multiplicity.
pub fn quotient(g: &Graph, rho: &SemiregularAut) -> Multigraph {
    let mut q = Multigraph::new(rho.m);
    for (i, orbit) in rho.orbits.orbits.iter().enumerate() {
        let b = orbit[0];
        let mut counts = vec![0usize; rho.m];
        for &w in g.neighbors(b) {
            counts[rho.orbits.locate(w).0] += 1;
        }
        for (j, &c) in counts.iter().enumerate() {
            if j == i {
                q.add_loop_valency(i, c).unwrap();
            } else if j > i {
                q.add_edges(i, j, c).unwrap();
            }
        }
    }
    q
}

/// Connection sets `S_{i,j} = {t : u_i ~ rho^t(u_j)}` relative to base vertices `u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FruchtSymbol {
    pub n: usize,
    pub bases: Vec<usize>,
    pub sets: Vec<Vec<Vec<usize>>>,
}

impl FruchtSymbol {
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize, j: usize) -> &[usize] {
        &self.sets[i][j]
    }

    /// Plain-text matrix, one row per line, sets in braces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.sets {
            let cells: Vec<String> = row
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        String::from("{}")
                    } else {
                        let items: Vec<String> = s.iter().map(|t| format!("{t}")).collect();
                        format!("{{{}}}", items.join(","))
                    }
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The symbol of `g` relative to `rho` and one base vertex per orbit (defaults to the least vertex).
pub fn symbol(g: &Graph, rho: &SemiregularAut, bases: Option<&[usize]>) -> Result<FruchtSymbol> {
    let m = rho.m;
    let n = rho.n;
    let bases: Vec<usize> = match bases {
        Some(b) => b.to_vec(),
        None => rho.orbits.orbits.iter().map(|o| o[0]).collect(),
    };
    if bases.len() != m {
        return Err(invalid(format!(
            "{} base vertices for {} orbits",
            bases.len(),
            m
        )));
    }
    let mut offset = vec![0usize; m];
    let mut covered = vec![false; m];
    for &b in &bases {
        if b >= g.order() {
            return Err(Error::VertexOutOfRange(b));
        }
        let (o, t) = rho.orbits.locate(b);
        if covered[o] {
            return Err(invalid("two base vertices in one orbit"));
        }
        covered[o] = true;
        offset[o] = t;
    }
    let order: Vec<usize> = bases.iter().map(|&b| rho.orbits.locate(b).0).collect();
    let mut sets = vec![vec![Vec::new(); m]; m];
    for (i, &b) in bases.iter().enumerate() {
        for &w in g.neighbors(b) {
            let (o, t) = rho.orbits.locate(w);
            let j = order.iter().position(|&x| x == o).unwrap();
            sets[i][j].push((t + n - offset[o]) % n);
        }
    }
    for row in sets.iter_mut() {
        for s in row.iter_mut() {
            s.sort_unstable();
        }
    }
    Ok(FruchtSymbol { n, bases, sets })
}

/// Rebuilds a graph from a symbol: vertex `j * n + t` stands for `rho^t(u_j)`.
pub fn from_symbol(sym: &FruchtSymbol) -> Result<Graph> {
    let (m, n) = (sym.m(), sym.n);
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for &t in &sym.sets[i][j] {
                if t >= n {
                    return Err(invalid("connection value out of range"));
                }
                for s in 0..n {
                    edges.push((i * n + s, j * n + (s + t) % n));
                }
            }
        }
    }
    let g = Graph::from_edges_dedup(m * n, &edges)?;
    Ok(g)
}

/// Result of lifting a quotient cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    /// One cycle of length `k * n` in the original graph.
    FullCycle(Vec<usize>),
    /// `n` disjoint cycles of length `k`.
    DisjointCycles { count: usize, length: usize },
}

/// Lifts the closed walk through orbits `walk[0], walk[1], ...` using voltages `t_i` from
/// `S_{walk[i], walk[i+1]}`.
pub fn lift_closed_walk(
    sym: &FruchtSymbol,
    g: &Graph,
    rho: &SemiregularAut,
    walk: &[usize],
    voltages: &[usize],
) -> Result<LiftOutcome> {
    let k = walk.len();
    let n = sym.n;
    if k == 0 || voltages.len() != k {
        return Err(invalid(
            "walk and voltages must have the same nonzero length",
        ));
    }
    for i in 0..k {
        let (a, b) = (walk[i], walk[(i + 1) % k]);
        if !sym.sets[a][b].contains(&voltages[i]) {
            return Err(invalid(format!(
                "no edge between orbits {a} and {b} with voltage {}",
                voltages[i]
            )));
        }
    }
    if k == 2 && (voltages[0] + voltages[1]) % n == 0 {
        return Err(invalid("a 2-cycle must use two distinct parallel edges"));
    }
    let base_offset: Vec<usize> = sym.bases.iter().map(|&b| rho.orbits.locate(b).1).collect();
    let orbit_index: Vec<usize> = sym.bases.iter().map(|&b| rho.orbits.locate(b).0).collect();
    let vertex = |i: usize, t: usize| rho.orbits.vertex(orbit_index[i], base_offset[i] + t);
    let total: usize = voltages.iter().sum::<usize>() % n;
    if total == 0 {
        return Ok(LiftOutcome::DisjointCycles {
            count: n,
            length: k,
        });
    }
    let mut cycle = Vec::with_capacity(k * n);
    let mut pos = 0usize;
    for _ in 0..n {
        for i in 0..k {
            cycle.push(vertex(walk[i], pos));
            pos = (pos + voltages[i]) % n;
        }
    }
    let order = cycle_len_of(&cycle);
    if order != k * n {
        return Ok(LiftOutcome::DisjointCycles {
            count: n / gcd(total, n),
            length: k * gcd(total, n),
        });
    }
    debug_assert!(cycle.windows(2).all(|w| g.has_edge(w[0], w[1])));
    Ok(LiftOutcome::FullCycle(cycle))
}

fn cycle_len_of(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Voltages along `walk` whose sum is nonzero mod `n`, by exhaustive enumeration with early exit.
pub fn find_lifting_voltages(sym: &FruchtSymbol, walk: &[usize]) -> Option<Vec<usize>> {
    let k = walk.len();
    let n = sym.n;
    let options: Vec<&[usize]> = (0..k)
        .map(|i| sym.set(walk[i], walk[(i + 1) % k]))
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return None;
    }
    let mut choice = vec![0usize; k];
    loop {
        let v: Vec<usize> = (0..k).map(|i| options[i][choice[i]]).collect();
        let sum = v.iter().sum::<usize>() % n;
        if sum != 0 && gcd(sum, n) == 1 {
            return Some(v);
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Absorbs isolated quotient vertices into one cycle, or joins two cycles through two of them.
///
/// `adjacent(a, b)` reports quotient adjacency. Every isolate must be adjacent to every cycle vertex.
pub fn stitch_isolates(
    cycle_a: &[usize],
    cycle_b: Option<&[usize]>,
    isolates: &[usize],
    adjacent: impl Fn(usize, usize) -> bool,
) -> Result<Vec<usize>> {
    let all: Vec<usize> = cycle_a
        .iter()
        .chain(cycle_b.unwrap_or(&[]).iter())
        .copied()
        .collect();
    for &w in isolates {
        if let Some(&c) = all.iter().find(|&&c| !adjacent(w, c)) {
            return Err(invalid(format!(
                "isolate {w} is not adjacent to cycle vertex {c}"
            )));
        }
    }
    let mut rest = isolates.iter().copied();
    // segments of consecutive original cycle vertices; an isolate may go between any two of them
    let mut out: Vec<usize>;
    let mut gaps: Vec<usize>;
    match cycle_b {
        None => {
            if cycle_a.len() < 2 {
                return Err(invalid("cycle too short"));
            }
            out = cycle_a.to_vec();
            gaps = (0..cycle_a.len()).collect();
        }
        Some(b) => {
            let (Some(w1), Some(w2)) = (rest.next(), rest.next()) else {
                return Err(invalid("joining two cycles needs at least two isolates"));
            };
            out = Vec::with_capacity(all.len() + isolates.len());
            out.push(w1);
            out.extend_from_slice(cycle_a);
            out.push(w2);
            out.extend_from_slice(b);
            // gaps after positions of consecutive original vertices
            gaps = (1..cycle_a.len())
                .chain(cycle_a.len() + 2..cycle_a.len() + 1 + b.len())
                .collect();
        }
    }
    let remaining: Vec<usize> = rest.collect();
    if remaining.len() > gaps.len() {
        return Err(invalid(format!(
            "{} isolates but only {} insertion points",
            remaining.len(),
            gaps.len()
        )));
    }
    // insert from the back so earlier gap indices stay valid
    gaps.truncate(remaining.len());
    for (&gap, &w) in gaps.iter().zip(remaining.iter()).rev() {
        out.insert(gap + 1, w);
    }
    Ok(out)
}
