//! `PSL(2, p)` as 2x2 matrices modulo `±I`, subgroup search and coset actions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::field::PrimeField;
use crate::perm::CosetSpace;

/// A matrix `[[a, b], [c, d]]` stored row-major.
pub type Mat = [u64; 4];

/// The group `PSL(2, p)` with canonical representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Psl2 {
    pub f: PrimeField,
}

impl Psl2 {
    pub fn new(p: u64) -> Result<Self> {
        Ok(Psl2 {
            f: PrimeField::new(p)?,
        })
    }

    pub fn p(&self) -> u64 {
        self.f.p()
    }

    /// Of `M` and `-M`, the one whose first nonzero entry lies in `[1, (p-1)/2]`.
    pub fn canon(&self, m: Mat) -> Mat {
        let p = self.p();
        let first = m.iter().copied().find(|&x| x != 0).unwrap_or(0);
        if first <= (p - 1) / 2 {
            m
        } else {
            m.map(|x| self.f.neg(x))
        }
    }

    /// Canonical form of a matrix given with arbitrary integer entries.
    pub fn mat(&self, a: i64, b: i64, c: i64, d: i64) -> Result<Mat> {
        let m = [
            self.f.reduce(a),
            self.f.reduce(b),
            self.f.reduce(c),
            self.f.reduce(d),
        ];
        if self.det(m) != 1 {
            return Err(invalid(format!("determinant of {m:?} is not 1")));
        }
        Ok(self.canon(m))
    }

    pub fn det(&self, m: Mat) -> u64 {
        self.f.sub(self.f.mul(m[0], m[3]), self.f.mul(m[1], m[2]))
    }

    pub fn mul(&self, x: Mat, y: Mat) -> Mat {
        let f = &self.f;
        self.canon([
            f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
            f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
            f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
            f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
        ])
    }

    pub fn inv(&self, m: Mat) -> Mat {
        self.canon([m[3], self.f.neg(m[1]), self.f.neg(m[2]), m[0]])
    }

    pub fn identity(&self) -> Mat {
        [1, 0, 0, 1]
    }

    pub fn order(&self, m: Mat) -> usize {
        let id = self.identity();
        let mut x = m;
        let mut k = 1;
        while x != id {
            x = self.mul(x, m);
            k += 1;
        }
        k
    }

    /// Standard generators `[[1,1],[0,1]]` and `[[0,-1],[1,0]]`.
    pub fn generators(&self) -> Vec<Mat> {
        let p = self.p();
        vec![self.canon([1, 1, 0, 1]), self.canon([0, p - 1, 1, 0])]
    }

    /// All elements in lexicographic order of canonical form.
    pub fn elements(&self) -> Vec<Mat> {
        let p = self.p();
        let f = &self.f;
        let mut out = Vec::with_capacity((p * (p * p - 1) / 2) as usize);
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    if a != 0 {
                        let d = f.div(f.add(1, f.mul(b, c)), a);
                        let m = [a, b, c, d];
                        if self.canon(m) == m {
                            out.push(m);
                        }
                    } else if b != 0 && f.mul(b, c) == p - 1 {
                        for d in 0..p {
                            let m = [a, b, c, d];
                            if self.canon(m) == m {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[Mat]) -> Vec<Mat> {
        let mut seen = BTreeMap::new();
        let id = self.identity();
        seen.insert(id, ());
        let mut queue = vec![id];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y, ()).is_none() {
                    queue.push(y);
                }
            }
            i += 1;
        }
        queue.sort_unstable();
        queue
    }

    /// First `(a, b)` in scan order with `|a| = 2`, `|b| = 3`, `|ab| = k` generating a group of order `size`.
    fn triangle_subgroup(&self, k: usize, size: usize) -> Option<Vec<Mat>> {
        let elems = self.elements();
        let orders: Vec<usize> = elems.iter().map(|&m| self.order(m)).collect();
        let a = elems[orders.iter().position(|&o| o == 2)?];
        for (i, &b) in elems.iter().enumerate() {
            if orders[i] == 3 && self.order(self.mul(a, b)) == k {
                let h = self.closure(&[a, b]);
                if h.len() == size {
                    return Some(h);
                }
            }
        }
        None
    }

    /// A copy of `A_4`: the first `(2,3,3)` generating pair in scan order.
    pub fn a4(&self) -> Option<Vec<Mat>> {
        self.triangle_subgroup(3, 12)
    }

    /// A copy of `A_5`: the first `(2,3,5)` generating pair in scan order.
    pub fn a5(&self) -> Option<Vec<Mat>> {
        self.triangle_subgroup(5, 60)
    }

    /// The dihedral subgroup of diagonal and anti-diagonal matrices.
    pub fn dihedral(&self) -> Vec<Mat> {
        let p = self.p();
        let f = &self.f;
        let mut out: Vec<Mat> = (1..p)
            .flat_map(|x| {
                let xi = f.inv(x);
                [self.canon([x, 0, 0, xi]), self.canon([0, f.neg(x), xi, 0])]
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Least canonical element of the right coset `Hg`.
    pub fn coset_key(&self, h: &[Mat], g: Mat) -> Mat {
        h.iter().map(|&x| self.mul(x, g)).min().unwrap()
    }

    /// Right multiplication on right cosets of `h`, with the standard generators.
    pub fn coset_action(&self, h: &[Mat]) -> Result<CosetSpace> {
        Ok(self.coset_action_with(h, &[])?.0)
    }

    /// As [`Psl2::coset_action`], also returning the permutations induced by `extra`.
    pub fn coset_action_with(
        &self,
        h: &[Mat],
        extra: &[Mat],
    ) -> Result<(CosetSpace, Vec<Vec<usize>>)> {
        let mut sorted = h.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if self.closure(&sorted) != sorted {
            return Err(invalid("subgroup is not closed under multiplication"));
        }
        let gens = self.generators();
        let mut index: BTreeMap<Mat, usize> = BTreeMap::new();
        let mut reps: Vec<Mat> = Vec::new();
        let start = self.coset_key(h, self.identity());
        index.insert(start, 0);
        reps.push(self.identity());
        let mut perms: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut i = 0;
        while i < reps.len() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(reps[i], g);
                let key = self.coset_key(h, y);
                let next = index.len();
                let j = *index.entry(key).or_insert_with(|| {
                    reps.push(y);
                    next
                });
                perms[gi].push(j);
            }
            i += 1;
        }
        let extra_perms = extra
            .iter()
            .map(|&m| {
                reps.iter()
                    .map(|&r| index[&self.coset_key(h, self.mul(r, m))])
                    .collect()
            })
            .collect();
        let labels = reps
            .iter()
            .map(|m| format!("[{} {}; {} {}]", m[0], m[1], m[2], m[3]))
            .collect();
        Ok((CosetSpace::new(reps.len(), perms, 0, labels)?, extra_perms))
    }

    /// The first element of order `k` in scan order.
    pub fn element_of_order(&self, k: usize) -> Option<Mat> {
        self.elements().into_iter().find(|&m| self.order(m) == k)
    }
}

fn triples() -> Vec<[usize; 3]> {
    (0..7)
        .flat_map(|a| (a + 1..7).flat_map(move |b| (b + 1..7).map(move |c| [a, b, c])))
        .collect()
}

/// The permutation of the 35 three-subsets (in lexicographic order) induced by `s` on `{0, ..., 6}`.
pub fn triple_permutation(s: [usize; 7]) -> Vec<usize> {
    let triples = triples();
    let index = |mut t: [usize; 3]| {
        t.sort_unstable();
        triples.iter().position(|&x| x == t).unwrap()
    };
    triples
        .iter()
        .map(|t| index([s[t[0]], s[t[1]], s[t[2]]]))
        .collect()
}

/// `A_7` acting on the 35 three-subsets of `{0, ..., 6}`, subsets in lexicographic order.
pub fn a7_on_triples() -> CosetSpace {
    let seven = triple_permutation([1, 2, 3, 4, 5, 6, 0]);
    let three = triple_permutation([1, 2, 0, 3, 4, 5, 6]);
    let labels = triples()
        .iter()
        .map(|t| format!("{{{},{},{}}}", t[0], t[1], t[2]))
        .collect();
    CosetSpace::new(35, vec![seven, three], 0, labels).expect("A7 is transitive on triples")
}
