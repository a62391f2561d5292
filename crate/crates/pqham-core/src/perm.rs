//! Transitive permutation actions: orbits, orbitals, suborbits and orbital graphs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{check_permutation, Graph};

/// Composition `x -> b[a[x]]` (apply `a` first).
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

pub fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn power(a: &[usize], k: usize) -> Vec<usize> {
    let mut out = identity(a.len());
    for _ in 0..k {
        out = compose(&out, a);
    }
    out
}

/// Cycle lengths of a permutation, in order of least element.
pub fn cycle_type(a: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = a[x];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Order of a permutation.
pub fn order(a: &[usize]) -> usize {
    cycle_type(a).into_iter().fold(1, |l, c| l / gcd(l, c) * c)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A suborbit: an orbit of the base-point stabiliser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suborbit {
    pub points: Vec<usize>,
    /// Index of the paired suborbit.
    pub paired: usize,
}

impl Suborbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A transitive action given by generating permutations, with its suborbit decomposition.
///
/// Suborbits are listed with the trivial one first, then by increasing size and least point.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub generators: Vec<Vec<usize>>,
    pub base: usize,
    pub labels: Vec<String>,
    orbital: Vec<u32>,
    pub suborbits: Vec<Suborbit>,
    suborbit_of: Vec<usize>,
}

impl CosetSpace {
    /// Builds the action, rejecting non-permutations and intransitive generator sets.
    pub fn new(
        degree: usize,
        generators: Vec<Vec<usize>>,
        base: usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        for g in &generators {
            check_permutation(g, degree)?;
        }
        if base >= degree {
            return Err(Error::VertexOutOfRange(base));
        }
        if orbit(&generators, degree, base).len() != degree {
            return Err(invalid("action is not transitive"));
        }
        let orbital = orbitals(&generators, degree);
        let mut classes: Vec<(u32, usize)> = (0..degree)
            .map(|y| (orbital[base * degree + y], y))
            .collect();
        classes.sort_unstable();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut last = u32::MAX;
        for (c, y) in classes {
            if c != last {
                groups.push(Vec::new());
                last = c;
            }
            groups.last_mut().unwrap().push(y);
        }
        groups.sort_by_key(|g| (!g.contains(&base), g.len(), g[0]));
        let mut suborbit_of = vec![0; degree];
        for (i, g) in groups.iter().enumerate() {
            for &y in g {
                suborbit_of[y] = i;
            }
        }
        let mut class_to_suborbit = alloc::collections::BTreeMap::new();
        for (i, g) in groups.iter().enumerate() {
            class_to_suborbit.insert(orbital[base * degree + g[0]], i);
        }
        // relabel every orbital by the suborbit where it meets the base row
        let orbital: Vec<u32> = orbital
            .iter()
            .map(|c| class_to_suborbit[c] as u32)
            .collect();
        let suborbits = groups
            .into_iter()
            .map(|points| {
                // the orbital of (y, base) meets the base row in the paired suborbit
                let paired = orbital[points[0] * degree + base] as usize;
                Suborbit { paired, points }
            })
            .collect();
        let labels = if labels.len() == degree {
            labels
        } else {
            (0..degree).map(|i| format!("{i}")).collect()
        };
        Ok(CosetSpace {
            generators,
            base,
            labels,
            orbital,
            suborbits,
            suborbit_of,
        })
    }

    pub fn degree(&self) -> usize {
        self.suborbit_of.len()
    }

    /// Index of the suborbit containing `y`.
    pub fn suborbit_of(&self, y: usize) -> usize {
        self.suborbit_of[y]
    }

    pub fn is_self_paired(&self, i: usize) -> bool {
        self.suborbits[i].paired == i
    }

    /// Suborbit lengths in listing order.
    pub fn subdegrees(&self) -> Vec<usize> {
        self.suborbits.iter().map(Suborbit::len).collect()
    }

    /// Index of the suborbit that the ordered pair `(x, y)` belongs to.
    pub fn pair_class(&self, x: usize, y: usize) -> usize {
        self.orbital[x * self.degree() + y] as usize
    }

    /// The orbital graph of a union of suborbits: `x ~ y` iff `(x, y)` lies in one of them.
    pub fn orbital_graph(&self, union: &[usize]) -> Result<Graph> {
        let set: BTreeSet<usize> = union.iter().copied().collect();
        if set.iter().any(|&i| i >= self.suborbits.len()) {
            return Err(invalid("suborbit index out of range"));
        }
        if set.contains(&0) {
            return Err(invalid("the trivial suborbit would give loops"));
        }
        if set
            .iter()
            .any(|&i| !set.contains(&self.suborbits[i].paired))
        {
            return Err(Error::NotSelfPaired);
        }
        let n = self.degree();
        let mut wanted = vec![false; self.suborbits.len()];
        for &i in &set {
            wanted[i] = true;
        }
        Graph::from_neighbor_fn(n, |x| {
            (0..n)
                .filter(|&y| wanted[self.orbital[x * n + y] as usize])
                .collect()
        })
    }

    /// Self-paired suborbit unions of the form `{S}` or `{S, S'}` with `S'` paired to `S`.
    pub fn basic_unions(&self) -> Vec<Vec<usize>> {
        (1..self.suborbits.len())
            .filter(|&i| self.suborbits[i].paired >= i)
            .map(|i| {
                let j = self.suborbits[i].paired;
                if j == i {
                    vec![i]
                } else {
                    vec![i, j]
                }
            })
            .collect()
    }
}

/// Orbit of `x` under the group generated by `gens`.
pub fn orbit(gens: &[Vec<usize>], degree: usize, x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let y = out[i];
        for g in gens {
            if !seen[g[y]] {
                seen[g[y]] = true;
                out.push(g[y]);
            }
        }
        i += 1;
    }
    out
}

/// Orbits on ordered pairs, as a class label for each index `x * degree + y`.
fn orbitals(gens: &[Vec<usize>], degree: usize) -> Vec<u32> {
    let total = degree * degree;
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        let mut y = x;
        while p[y as usize] != r {
            let nx = p[y as usize];
            p[y as usize] = r;
            y = nx;
        }
        r
    }
    for g in gens {
        for x in 0..degree {
            for y in 0..degree {
                let a = find(&mut parent, (x * degree + y) as u32);
                let b = find(&mut parent, (g[x] * degree + g[y]) as u32);
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
    }
    (0..total as u32).map(|i| find(&mut parent, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a7_like_s5_on_pairs() -> CosetSpace {
        // S5 on 2-subsets of {0..5}: the Petersen action
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        let idx = |a: usize, b: usize| {
            pairs
                .iter()
                .position(|&p| p == (a.min(b), a.max(b)))
                .unwrap()
        };
        let act = |s: [usize; 5]| {
            pairs
                .iter()
                .map(|&(a, b)| idx(s[a], s[b]))
                .collect::<Vec<_>>()
        };
        CosetSpace::new(
            10,
            vec![act([1, 2, 3, 4, 0]), act([1, 0, 2, 3, 4])],
            0,
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn petersen_from_pairs() {
        let sp = a7_like_s5_on_pairs();
        assert_eq!(sp.subdegrees(), vec![1, 3, 6]);
        assert!(sp.is_self_paired(1) && sp.is_self_paired(2));
        let g = sp.orbital_graph(&[1]).unwrap();
        assert!(crate::graph::are_isomorphic(&g, &Graph::petersen()));
    }

    #[test]
    fn cyclic_pairing() {
        // Z7 regular action: suborbits are singletons {t}, paired with {-t}
        let rot: Vec<usize> = (0..7).map(|i| (i + 1) % 7).collect();
        let sp = CosetSpace::new(7, vec![rot], 0, Vec::new()).unwrap();
        assert_eq!(sp.subdegrees(), vec![1; 7]);
        let one = sp.suborbit_of(1);
        assert_eq!(sp.suborbits[sp.suborbits[one].paired].points, vec![6]);
        assert_eq!(sp.orbital_graph(&[one]), Err(Error::NotSelfPaired));
        let c7 = sp.orbital_graph(&[one, sp.suborbit_of(6)]).unwrap();
        assert_eq!(c7.regular_valency(), Some(2));
    }

    #[test]
    fn perm_helpers() {
        let a = vec![1, 2, 0, 4, 3];
        assert_eq!(order(&a), 6);
        assert_eq!(compose(&a, &inverse(&a)), identity(5));
        assert_eq!(power(&a, 6), identity(5));
    }
}
