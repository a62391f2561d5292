//! Simple graphs, multigraphs, Hamilton certificates and isomorphism search.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};

/// A finite simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and bad endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("repeated edge at vertex {u}")));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from an edge list, silently merging repeated edges. Loops are still rejected.
    pub fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from a symmetric neighbour function.
    pub fn from_neighbor_fn(n: usize, mut f: impl FnMut(usize) -> Vec<usize>) -> Result<Self> {
        let mut adj = Vec::with_capacity(n);
        for u in 0..n {
            let mut list = f(u);
            list.sort_unstable();
            list.dedup();
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange(v));
            }
            if list.binary_search(&u).is_ok() {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            adj.push(list);
        }
        let g = Graph { adj };
        for u in 0..n {
            for &v in g.neighbors(u) {
                if !g.has_edge(v, u) {
                    return Err(invalid(format!(
                        "neighbour rule not symmetric on ({u},{v})"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| {
            l.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// The common valency, if the graph is regular and nonempty.
    pub fn regular_valency(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Connected components as a vertex labelling `0..count`.
    pub fn components(&self) -> (usize, Vec<usize>) {
        self.components_without(usize::MAX)
    }

    fn components_without(&self, removed: usize) -> (usize, Vec<usize>) {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if s == removed || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if v != removed && comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().0 == 1
    }

    /// Connected with at least three vertices and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        let n = self.order();
        n >= 3 && self.is_connected() && (0..n).all(|v| self.components_without(v).0 == 1)
    }

    /// Image graph under the relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.order())?;
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.order(), &edges)
    }

    /// Whether `perm` maps edges onto edges.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        check_permutation(perm, self.order()).is_ok()
            && self.edges().all(|(u, v)| self.has_edge(perm[u], perm[v]))
    }

    /// Induced subgraph on `vertices` (relabelled by position).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|w| index.get(w).copied())
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { adj }
    }

    /// Line graph, vertices numbered by [`Graph::edges`] order.
    pub fn line_graph(&self) -> Graph {
        let edges: Vec<_> = self.edges().collect();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); self.order()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            at[u].push(i);
            at[v].push(i);
        }
        let mut list = Vec::new();
        for inc in &at {
            for a in 0..inc.len() {
                for b in a + 1..inc.len() {
                    list.push((inc[a], inc[b]));
                }
            }
        }
        Graph::from_edges_dedup(edges.len(), &list).expect("line graph of a simple graph")
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges_dedup(n, &edges).expect("cycle")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path")
    }

    pub fn complete(n: usize) -> Graph {
        Graph {
            adj: (0..n)
                .map(|u| (0..n).filter(|&v| v != u).collect())
                .collect(),
        }
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, &e).expect("petersen")
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(invalid(format!(
            "permutation has length {} for {} points",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || seen[x] {
            return Err(invalid("not a permutation"));
        }
        seen[x] = true;
    }
    Ok(())
}

/// A multigraph on `0..n`: edge multiplicities plus per-vertex loop valency.
///
/// `loop_valency(v)` counts the contribution of loops to the valency of `v` (a quotient
/// vertex whose orbit induces a cycle has loop valency 2).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Multigraph {
    n: usize,
    mult: BTreeMap<(usize, usize), usize>,
    loops: Vec<usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            mult: BTreeMap::new(),
            loops: vec![0; n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Adds `count` parallel edges between distinct `u` and `v`.
    pub fn add_edges(&mut self, u: usize, v: usize, count: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        if u == v {
            return Err(invalid("use add_loop_valency for loops"));
        }
        if count > 0 {
            *self.mult.entry((u.min(v), u.max(v))).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn add_loop_valency(&mut self, v: usize, valency: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v));
        }
        self.loops[v] += valency;
        Ok(())
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.mult.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn loop_valency(&self, v: usize) -> usize {
        self.loops[v]
    }

    /// Edges `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.mult.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn valency(&self, v: usize) -> usize {
        self.loops[v]
            + self
                .edges()
                .filter(|&(a, b, _)| a == v || b == v)
                .map(|(_, _, c)| c)
                .sum::<usize>()
    }

    /// The simple graph obtained by dropping loops and collapsing parallel edges.
    pub fn underlying(&self) -> Graph {
        let e: Vec<_> = self.mult.keys().copied().collect();
        Graph::from_edges(self.n, &e).expect("keys are distinct non-loop pairs")
    }
}

/// A Hamilton cycle given as a cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonCertificate {
    pub cycle: Vec<usize>,
}

impl HamiltonCertificate {
    pub fn order(&self) -> usize {
        self.cycle.len()
    }

    /// Checks the certificate against `g`: a permutation of all vertices with cyclically consecutive entries adjacent.
    pub fn verify(&self, g: &Graph) -> bool {
        verify_hamilton_cycle(g, &self.cycle)
    }
}

/// Independent Hamilton-cycle check.
pub fn verify_hamilton_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.order();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Independent Hamilton-path check between the first and last entries.
pub fn verify_hamilton_path(g: &Graph, path: &[usize]) -> bool {
    let n = g.order();
    if path.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in path {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Colour refinement on the disjoint union of `g` and `h` (vertices of `h` shifted by `g.order()`).
fn refine(g: &Graph, h: &Graph, colors: &mut Vec<usize>) {
    let ng = g.order();
    let nbrs = |v: usize| -> &[usize] {
        if v < ng {
            g.neighbors(v)
        } else {
            h.neighbors(v - ng)
        }
    };
    let off = |v: usize| if v < ng { 0 } else { ng };
    let mut classes = distinct(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(colors.len());
        for v in 0..colors.len() {
            let mut s: Vec<usize> = nbrs(v).iter().map(|&w| colors[w + off(v)]).collect();
            s.sort_unstable();
            sigs.push((colors[v], s));
        }
        let mut keys: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        keys.sort();
        keys.dedup();
        let new: Vec<usize> = sigs
            .iter()
            .map(|s| keys.binary_search(&s).unwrap())
            .collect();
        let c = keys.len();
        *colors = new;
        if c == classes {
            return;
        }
        classes = c;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn balanced(colors: &[usize], ng: usize) -> bool {
    let mut a: Vec<usize> = colors[..ng].to_vec();
    let mut b: Vec<usize> = colors[ng..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// An isomorphism `g -> h` as a vertex map, with optional forced pairs.
///
/// Individualisation-refinement backtracking; exhaustive, so `None` proves non-isomorphism.
pub fn find_isomorphism_with(
    g: &Graph,
    h: &Graph,
    forced: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let ng = g.order();
    if ng != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut colors: Vec<usize> = (0..ng)
        .map(|v| g.degree(v))
        .chain((0..ng).map(|v| h.degree(v)))
        .collect();
    for (fresh, &(a, b)) in (2 * ng + 1..).zip(forced) {
        if a >= ng || b >= ng {
            return None;
        }
        colors[a] = fresh;
        colors[ng + b] = fresh;
    }
    refine(g, h, &mut colors);
    if !balanced(&colors, ng) {
        return None;
    }
    iso_search(g, h, colors)
}

/// An isomorphism `g -> h`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    find_isomorphism_with(g, h, &[])
}

fn iso_search(g: &Graph, h: &Graph, colors: Vec<usize>) -> Option<Vec<usize>> {
    let ng = g.order();
    let mut count = BTreeMap::new();
    for &c in &colors[..ng] {
        *count.entry(c).or_insert(0usize) += 1;
    }
    let target = count
        .iter()
        .filter(|(_, &k)| k > 1)
        .min_by_key(|(_, &k)| k)
        .map(|(&c, _)| c);
    let Some(cell) = target else {
        let mut pos = BTreeMap::new();
        for v in 0..ng {
            pos.insert(colors[ng + v], v);
        }
        let map: Vec<usize> = (0..ng).map(|v| pos[&colors[v]]).collect();
        return g
            .edges()
            .all(|(u, v)| h.has_edge(map[u], map[v]))
            .then_some(map);
    };
    let a = (0..ng).find(|&v| colors[v] == cell).unwrap();
    let fresh = colors.iter().max().unwrap() + 1;
    for b in (0..ng).filter(|&v| colors[ng + v] == cell) {
        let mut c = colors.clone();
        c[a] = fresh;
        c[ng + b] = fresh;
        refine(g, h, &mut c);
        if balanced(&c, ng) {
            if let Some(m) = iso_search(g, h, c) {
                return Some(m);
            }
        }
    }
    None
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Orbits of the full automorphism group, as a vertex labelling by least orbit member.
///
/// Each merge is witnessed by an explicit automorphism; separations are proven by
/// exhaustive search.
pub fn automorphism_orbits(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for v in 0..n {
        for w in 0..v {
            if find(&mut parent, v) != v {
                break;
            }
            if find(&mut parent, w) != w {
                continue;
            }
            if let Some(phi) = find_isomorphism_with(g, g, &[(w, v)]) {
                for (x, &y) in phi.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Whether the automorphism group is transitive on vertices.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    let n = g.order();
    if n == 0 || g.regular_valency().is_none() {
        return n == 0;
    }
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut stack = vec![0usize];
    let mut autos: Vec<Vec<usize>> = Vec::new();
    for target in 1..n {
        if reached[target] {
            continue;
        }
        let Some(phi) = find_isomorphism_with(g, g, &[(0, target)]) else {
            return false;
        };
        autos.push(phi);
        stack.extend((0..n).filter(|&x| reached[x]));
        while let Some(x) = stack.pop() {
            for a in &autos {
                if !reached[a[x]] {
                    reached[a[x]] = true;
                    stack.push(a[x]);
                }
            }
        }
    }
    true
}
