//! `PSL(2, q²)` acting on the cosets of `PGL(2, q)`, modelled as the orthogonal group of
//! `Q(x) = x₁x₂ - x₃² + θx₄²` acting on the points `⟨x⟩` with `Q(x) = 1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::graph::{Graph, Multigraph};
use crate::perm::{orbit, CosetSpace};
use crate::quotient::{quotient, SemiregularAut};

/// A vector over `F_q` in the basis `v₁, ..., v₄`.
pub type Vec4 = [u64; 4];

/// `a + bα` with `α² = θ`.
type Fq2 = (u64, u64);

/// The model for one prime `q`.
#[derive(Clone, Debug)]
pub struct OmegaModel {
    pub f: PrimeField,
    /// The non-square defining the form and `F_{q²} = F_q(√θ)`.
    pub theta: u64,
    /// Canonical representative of each point.
    pub points: Vec<Vec4>,
    index: BTreeMap<Vec4, usize>,
    pub space: CosetSpace,
    /// `λ ∈ {0, ..., (q-1)/2}` naming each suborbit `Δ_{±λ}`; entry 0 is the trivial suborbit.
    pub lambdas: Vec<Option<u64>>,
    /// `x ↦ (x₁ + x₂ + 2x₃, x₂, x₂ + x₃, x₄)`.
    pub rho: Vec<usize>,
}

/// Block valencies of the quotient by `ρ` for one `Δ_λ` graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockValencies {
    pub lambda: u64,
    /// Blocks with `x₂ = 0`.
    pub i_blocks: Vec<usize>,
    /// Blocks with `x₂ ≠ 0`.
    pub l_blocks: Vec<usize>,
    /// `d(B, B')` over all `B ∈ I`, `B' ∈ L`, deduplicated.
    pub i_to_l: Vec<usize>,
    /// `d(B)` over all `B ∈ L`, deduplicated.
    pub inside_l: Vec<usize>,
    /// For each `L` block, the number of other `L` blocks at multiplicity 1 and 2 (deduplicated).
    pub l_mult_one: Vec<usize>,
    pub l_mult_two: Vec<usize>,
    /// `2` if `q ≡ 1, 3 (mod 8)`, else `0`.
    pub epsilon: usize,
}

impl OmegaModel {
    pub fn new(q: u64) -> Result<Self> {
        let f = PrimeField::new(q)?;
        if q < 5 || !is_prime((q * q).div_ceil(2)) {
            return Err(invalid(format!("q = {q} needs q >= 5 and (q²+1)/2 prime")));
        }
        let theta = f.smallest_nonsquare();
        let mut points = Vec::new();
        for x1 in 0..q {
            for x2 in 0..q {
                for x3 in 0..q {
                    for x4 in 0..q {
                        let x = [x1, x2, x3, x4];
                        if quadratic_form(&f, theta, x) == 1 && canonical(&f, x) == x {
                            points.push(x);
                        }
                    }
                }
            }
        }
        let index: BTreeMap<Vec4, usize> =
            points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut model = OmegaModel {
            f,
            theta,
            points,
            index,
            space: CosetSpace::new(1, vec![vec![0]], 0, Vec::new())?,
            lambdas: Vec::new(),
            rho: Vec::new(),
        };
        let alpha: Fq2 = (0, 1);
        let gens = [
            [(1, 0), (1, 0), (0, 0), (1, 0)],
            [(1, 0), alpha, (0, 0), (1, 0)],
            [(0, 0), (1, 0), (q - 1, 0), (0, 0)],
        ];
        let perms: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| model.permutation(&model.matrix_of(g)))
            .collect::<Result<_>>()?;
        model.rho = perms[0].clone();
        let base = model.index[&[1, 1, 0, 0]];
        let labels = model
            .points
            .iter()
            .map(|x| format!("<{},{},{},{}>", x[0], x[1], x[2], x[3]))
            .collect();
        model.space = CosetSpace::new(model.points.len(), perms, base, labels)?;
        let mut lambdas = vec![None];
        for s in model.space.suborbits.iter().skip(1) {
            let ls: Vec<u64> = s.points.iter().map(|&y| model.lambda_of(y)).collect();
            if ls.iter().any(|&l| l != ls[0]) {
                return Err(invalid("a suborbit meets two values of λ"));
            }
            lambdas.push(Some(ls[0]));
        }
        model.lambdas = lambdas;
        Ok(model)
    }

    pub fn q(&self) -> u64 {
        self.f.p()
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// The symmetric form `(x, y) = x₂y₁ + x₁y₂ - 2x₃y₃ + 2θx₄y₄`.
    pub fn bilinear(&self, x: Vec4, y: Vec4) -> u64 {
        let f = &self.f;
        let t = [
            f.mul(x[1], y[0]),
            f.mul(x[0], y[1]),
            f.neg(f.mul(2, f.mul(x[2], y[2]))),
            f.mul(2 * self.theta % self.q(), f.mul(x[3], y[3])),
        ];
        t.iter().fold(0, |a, &b| f.add(a, b))
    }

    pub fn base(&self) -> usize {
        self.space.base
    }

    /// `λ ∈ {0, ..., (q-1)/2}` with `(x, v) = ±2λ` for the base point `v`.
    pub fn lambda_of(&self, point: usize) -> u64 {
        let f = &self.f;
        let l = f.div(
            self.bilinear(self.points[point], self.points[self.base()]),
            2,
        );
        l.min(f.neg(l))
    }

    /// Index of the suborbit `Δ_{±λ}`, excluding the base point.
    pub fn suborbit(&self, lambda: u64) -> Option<usize> {
        let f = &self.f;
        let l = lambda % self.q();
        let l = l.min(f.neg(l));
        self.lambdas.iter().position(|&x| x == Some(l))
    }

    pub fn graph(&self, lambda: u64) -> Result<Graph> {
        let s = self
            .suborbit(lambda)
            .ok_or_else(|| invalid(format!("no suborbit for λ = {lambda}")))?;
        self.space.orbital_graph(&[s])
    }

    /// Generators of the normaliser of `⟨ρ⟩`: upper unitriangular matrices and `diag(α, 1/α)`.
    pub fn normalizer_generators(&self) -> Result<Vec<Vec<usize>>> {
        let alpha_inv = fq2_inv(&self.f, self.theta, (0, 1));
        let gens = [
            [(1, 0), (1, 0), (0, 0), (1, 0)],
            [(1, 0), (0, 1), (0, 0), (1, 0)],
            [(0, 1), (0, 0), (0, 0), alpha_inv],
        ];
        gens.iter()
            .map(|&g| self.permutation(&self.matrix_of(g)))
            .collect()
    }

    /// Orbit lengths of the normaliser of `⟨ρ⟩`, sorted.
    pub fn normalizer_orbit_lengths(&self) -> Result<Vec<usize>> {
        let gens = self.normalizer_generators()?;
        let n = self.order();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for x in 0..n {
            if !seen[x] {
                let o = orbit(&gens, n, x);
                for &y in &o {
                    seen[y] = true;
                }
                lens.push(o.len());
            }
        }
        lens.sort_unstable();
        Ok(lens)
    }

    /// `ρ` as a semiregular automorphism of the `Δ_λ` graph.
    pub fn semiregular(&self, g: &Graph) -> Result<SemiregularAut> {
        SemiregularAut::new(g, self.rho.clone())
    }

    /// Whether a block (an orbit of `ρ`, given by its index in `rho.orbits`) lies in `I`.
    pub fn is_i_block(&self, rho: &SemiregularAut, block: usize) -> bool {
        self.points[rho.orbits.orbits[block][0]][1] == 0
    }

    /// Block statistics of the quotient of the `Δ_λ` graph by `ρ`.
    pub fn block_valencies(&self, lambda: u64) -> Result<BlockValencies> {
        let g = self.graph(lambda)?;
        let rho = self.semiregular(&g)?;
        let quo: Multigraph = quotient(&g, &rho);
        let (i_blocks, l_blocks): (Vec<usize>, Vec<usize>) =
            (0..rho.m).partition(|&b| self.is_i_block(&rho, b));
        let dedup = |mut v: Vec<usize>| {
            v.sort_unstable();
            v.dedup();
            v
        };
        let i_to_l = dedup(
            i_blocks
                .iter()
                .flat_map(|&a| l_blocks.iter().map(move |&b| (a, b)))
                .map(|(a, b)| quo.multiplicity(a, b))
                .collect(),
        );
        let inside_l = dedup(l_blocks.iter().map(|&b| quo.loop_valency(b)).collect());
        let count = |k: usize| {
            dedup(
                l_blocks
                    .iter()
                    .map(|&a| {
                        l_blocks
                            .iter()
                            .filter(|&&b| b != a && quo.multiplicity(a, b) == k)
                            .count()
                    })
                    .collect(),
            )
        };
        let (l_mult_one, l_mult_two) = (count(1), count(2));
        let q = self.q();
        Ok(BlockValencies {
            lambda,
            i_blocks,
            l_blocks,
            i_to_l,
            inside_l,
            l_mult_one,
            l_mult_two,
            epsilon: if q % 8 == 1 || q % 8 == 3 { 2 } else { 0 },
        })
    }

    fn matrix_of(&self, g: [Fq2; 4]) -> [Vec4; 4] {
        let basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        basis.map(|v| self.apply(g, v))
    }

    /// `v·g` through `(w ⊗ w')g = wg ⊗ w'g^φ`, with `w₁g = a w₁ + c w₂`, `w₂g = b w₁ + d w₂`.
    fn apply(&self, g: [Fq2; 4], x: Vec4) -> Vec4 {
        let (f, th) = (&self.f, self.theta);
        let c = [[(x[0], 0), (x[2], x[3])], [(x[2], f.neg(x[3])), (x[1], 0)]];
        let gm = [[g[0], g[1]], [g[2], g[3]]];
        let gb = gm.map(|r| r.map(|e| (e.0, f.neg(e.1))));
        let mut out = [[(0, 0); 2]; 2];
        for k in 0..2 {
            for l in 0..2 {
                let mut s = (0, 0);
                for i in 0..2 {
                    for j in 0..2 {
                        s = fq2_add(
                            f,
                            s,
                            fq2_mul(f, th, fq2_mul(f, th, c[i][j], gm[k][i]), gb[l][j]),
                        );
                    }
                }
                out[k][l] = s;
            }
        }
        let half = f.inv(2);
        let x3 = fq2_mul(f, th, fq2_add(f, out[0][1], out[1][0]), (half, 0));
        let diff = fq2_add(f, out[0][1], (f.neg(out[1][0].0), f.neg(out[1][0].1)));
        // diff = 2α x₄
        let x4 = fq2_mul(f, th, diff, fq2_inv(f, th, (0, 2)));
        debug_assert!(out[0][0].1 == 0 && out[1][1].1 == 0 && x3.1 == 0 && x4.1 == 0);
        [out[0][0].0, out[1][1].0, x3.0, x4.0]
    }

    fn permutation(&self, m: &[Vec4; 4]) -> Result<Vec<usize>> {
        let f = &self.f;
        self.points
            .iter()
            .map(|x| {
                let mut y = [0u64; 4];
                for (i, row) in m.iter().enumerate() {
                    for k in 0..4 {
                        y[k] = f.add(y[k], f.mul(x[i], row[k]));
                    }
                }
                self.index
                    .get(&canonical(f, y))
                    .copied()
                    .ok_or_else(|| Error::NotAutomorphism(format!("{y:?} has Q != 1")))
            })
            .collect()
    }
}

/// `Q(x) = x₁x₂ - x₃² + θx₄²`.
pub fn quadratic_form(f: &PrimeField, theta: u64, x: Vec4) -> u64 {
    f.add(
        f.sub(f.mul(x[0], x[1]), f.mul(x[2], x[2])),
        f.mul(theta, f.mul(x[3], x[3])),
    )
}

fn canonical(f: &PrimeField, x: Vec4) -> Vec4 {
    let first = x.iter().copied().find(|&v| v != 0).unwrap_or(0);
    if first <= (f.p() - 1) / 2 {
        x
    } else {
        x.map(|v| f.neg(v))
    }
}

fn fq2_add(f: &PrimeField, a: Fq2, b: Fq2) -> Fq2 {
    (f.add(a.0, b.0), f.add(a.1, b.1))
}

fn fq2_mul(f: &PrimeField, theta: u64, a: Fq2, b: Fq2) -> Fq2 {
    (
        f.add(f.mul(a.0, b.0), f.mul(theta, f.mul(a.1, b.1))),
        f.add(f.mul(a.0, b.1), f.mul(a.1, b.0)),
    )
}

fn fq2_inv(f: &PrimeField, theta: u64, a: Fq2) -> Fq2 {
    // (a + bα)(a - bα) = a² - θb²
    let norm = f.sub(f.mul(a.0, a.0), f.mul(theta, f.mul(a.1, a.1)));
    let n = f.inv(norm);
    (f.mul(a.0, n), f.neg(f.mul(a.1, n)))
}
