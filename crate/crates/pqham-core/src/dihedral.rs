//! `PSL(2, p)` acting on cosets of the dihedral subgroup `D_{p-1}`, in the character model.
//!
//! Points are `∞` (the subgroup itself) and classes of characters `(ξ, η) ∈ F × F*` under
//! `(ξ, η) ≈ (1 - ξ, ξη/(ξ - 1))`. The point with character `(ξ, η)` is the coset of
//! `[[1, η], [(ξ - 1)/η, ξ]]`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::PrimeField;
use crate::graph::Graph;
use crate::perm::CosetSpace;
use crate::psl2::{Mat, Psl2};
use crate::quotient::{quotient, SemiregularAut};

/// Quadratic class of the `η` coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A named union of points: `S_0^± ∪ S_1^±`, `S_ξ`, or `S_ξ^±`, with `ξ ≤ 1 - ξ` as integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuborbitName {
    ZeroOne(Sign),
    Full(u64),
    Half(u64, Sign),
}

impl fmt::Display for SuborbitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SuborbitName::ZeroOne(s) => write!(f, "S0{0}S1{0}", s.symbol()),
            SuborbitName::Full(xi) => write!(f, "S{xi}"),
            SuborbitName::Half(xi, s) => write!(f, "S{xi}{}", s.symbol()),
        }
    }
}

impl SuborbitName {
    /// Parses `S0+S1+`, `S0-S1-`, `S<ξ>`, `S<ξ>+`, `S<ξ>-` (`S0+` and `S1+` name the same union).
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let t = text.trim();
        let bad = || invalid(format!("cannot parse suborbit name {t:?}"));
        let body = t.strip_prefix('S').ok_or_else(bad)?;
        match body {
            "0+S1+" | "0+" | "1+" => return Ok(SuborbitName::ZeroOne(Sign::Plus)),
            "0-S1-" | "0-" | "1-" => return Ok(SuborbitName::ZeroOne(Sign::Minus)),
            _ => {}
        }
        let (digits, sign) = match body.as_bytes().last() {
            Some(b'+') => (&body[..body.len() - 1], Some(Sign::Plus)),
            Some(b'-') => (&body[..body.len() - 1], Some(Sign::Minus)),
            _ => (body, None),
        };
        let xi: u64 = digits.parse().map_err(|_| bad())?;
        if xi >= p || xi <= 1 {
            return Err(bad());
        }
        let f = PrimeField::new(p)?;
        let other = f.sub(1, xi);
        if other < xi {
            // re-express through the other representative, which flips the sign class by ξ/(ξ-1)
            let flip = f.is_nonsquare(f.div(xi, f.sub(xi, 1)));
            let sign = sign.map(|s| if flip { flip_sign(s) } else { s });
            return Ok(match sign {
                None => SuborbitName::Full(other),
                Some(s) => SuborbitName::Half(other, s),
            });
        }
        Ok(match sign {
            None => SuborbitName::Full(xi),
            Some(s) => SuborbitName::Half(xi, s),
        })
    }

    pub fn xi(&self) -> Option<u64> {
        match *self {
            SuborbitName::ZeroOne(_) => None,
            SuborbitName::Full(x) | SuborbitName::Half(x, _) => Some(x),
        }
    }
}

fn flip_sign(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

/// Which `η` values a component admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EtaClass {
    All,
    Only(Sign),
}

/// Quotient valencies indexed by `x ∈ {1, ..., (p-1)/2}` standing for `V_x = V_{-x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub d_inf: usize,
    /// `d(V_∞, V_x)` at index `x - 1`.
    pub d_inf_x: Vec<usize>,
    /// `d(V_y)` at index `y - 1`.
    pub d_y: Vec<usize>,
    /// `d(V_y, V_x)` at `[y - 1][x - 1]`, zero on the diagonal.
    pub d_yx: Vec<Vec<usize>>,
}

/// One row of the `T^±` tables: primitive roots `τ` (as `±τ`, stored in `1..=(p-1)/2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauRow {
    pub xi: u64,
    pub t_plus: Vec<u64>,
    pub t_plus_square: Vec<u64>,
    pub t_minus: Vec<u64>,
    pub t_minus_square: Vec<u64>,
}

/// The action of `G = PSL(2, p)` on the cosets of `H = D_{p-1}`.
#[derive(Clone, Debug)]
pub struct DihedralModel {
    pub group: Psl2,
    /// Canonical character of each point; `None` is `∞`.
    pub chars: Vec<Option<(u64, u64)>>,
    index: BTreeMap<(u64, u64), usize>,
    pub space: CosetSpace,
    /// Name of each suborbit; entry 0 (the trivial suborbit) is `None`.
    pub names: Vec<Option<SuborbitName>>,
    /// Primitive root `g` defining `σ = diag(g, 1/g)`.
    pub g: u64,
    /// `z = g^{-2}`, a generator of the nonzero squares with `σ(V_x) = V_{xz}`.
    pub z: u64,
}

impl DihedralModel {
    pub fn new(p: u64) -> Result<Self> {
        let group = Psl2::new(p)?;
        if p % 4 != 1 {
            return Err(invalid(format!("p = {p} is not 1 mod 4")));
        }
        let f = group.f;
        let mut chars = vec![None];
        for xi in 0..p {
            for eta in 1..p {
                if canonical(&f, xi, eta) == (xi, eta) {
                    chars.push(Some((xi, eta)));
                }
            }
        }
        let mut index = BTreeMap::new();
        for (i, c) in chars.iter().enumerate() {
            if let Some((xi, eta)) = *c {
                index.insert((xi, eta), i);
                if xi > 1 {
                    index.insert(partner(&f, xi, eta), i);
                }
            }
        }
        let g = f.smallest_primitive_root();
        let z = f.inv(f.mul(g, g));
        let mut model = DihedralModel {
            group,
            chars,
            index,
            space: CosetSpace::new(1, vec![vec![0]], 0, Vec::new())?,
            names: Vec::new(),
            g,
            z,
        };
        let gens: Vec<Vec<usize>> = group
            .generators()
            .into_iter()
            .map(|g| model.right_multiplication(g))
            .collect();
        let labels = model.chars.iter().map(|c| model_label(*c)).collect();
        model.space = CosetSpace::new(model.chars.len(), gens, 0, labels)?;
        let names = (0..model.space.suborbits.len())
            .map(|i| {
                if i == 0 {
                    Ok(None)
                } else {
                    model.identify(&model.space.suborbits[i].points).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        model.names = names;
        Ok(model)
    }

    pub fn p(&self) -> u64 {
        self.group.p()
    }

    pub fn field(&self) -> PrimeField {
        self.group.f
    }

    pub fn order(&self) -> usize {
        self.chars.len()
    }

    /// Canonical character of the coset `Hm`, `None` for `H` itself.
    pub fn character(&self, m: Mat) -> Option<(u64, u64)> {
        let f = &self.group.f;
        let [a, b, c, d] = m;
        if a != 0 && b != 0 {
            Some(canonical(f, f.mul(a, d), f.div(b, a)))
        } else if c != 0 && d != 0 {
            Some(canonical(f, f.neg(f.mul(b, c)), f.div(d, c)))
        } else {
            None
        }
    }

    /// Point index of a character (either representative).
    pub fn point(&self, xi: u64, eta: u64) -> Option<usize> {
        self.index.get(&(xi, eta)).copied()
    }

    pub fn point_of(&self, m: Mat) -> usize {
        match self.character(m) {
            None => 0,
            Some(c) => self.index[&c],
        }
    }

    /// Representative matrix of a point.
    pub fn representative(&self, point: usize) -> Mat {
        let f = &self.group.f;
        match self.chars[point] {
            None => self.group.identity(),
            Some((xi, eta)) => self.group.canon([1, eta, f.div(f.sub(xi, 1), eta), xi]),
        }
    }

    /// The permutation `Hg -> Hgm`.
    pub fn right_multiplication(&self, m: Mat) -> Vec<usize> {
        (0..self.chars.len())
            .map(|i| self.point_of(self.group.mul(self.representative(i), m)))
            .collect()
    }

    /// `ρ = [[1, 1], [0, 1]]` acting on points.
    pub fn rho(&self) -> Vec<usize> {
        self.right_multiplication(self.group.canon([1, 1, 0, 1]))
    }

    /// `σ = diag(g, 1/g)` acting on points; it fixes `V_∞` and maps `V_x` to `V_{xz}`.
    pub fn sigma(&self) -> Vec<usize> {
        let f = &self.group.f;
        self.right_multiplication(self.group.canon([self.g, 0, 0, f.inv(self.g)]))
    }

    /// `x ∈ {1, ..., (p-1)/2}` with the point in `V_x`, or `None` for `V_∞`.
    pub fn orbit_label(&self, point: usize) -> Option<u64> {
        let f = &self.group.f;
        let (xi, eta) = self.chars[point]?;
        if xi == 1 {
            return None;
        }
        let x = f.div(eta, f.sub(1, xi));
        Some(x.min(f.neg(x)))
    }

    fn components(&self, name: SuborbitName) -> Vec<(u64, EtaClass)> {
        match name {
            SuborbitName::ZeroOne(s) => vec![(0, EtaClass::Only(s)), (1, EtaClass::Only(s))],
            SuborbitName::Full(xi) => vec![(xi, EtaClass::All)],
            SuborbitName::Half(xi, s) => vec![(xi, EtaClass::Only(s))],
        }
    }

    fn admits(&self, class: EtaClass, eta: u64) -> bool {
        match class {
            EtaClass::All => true,
            EtaClass::Only(Sign::Plus) => self.group.f.is_square(eta),
            EtaClass::Only(Sign::Minus) => self.group.f.is_nonsquare(eta),
        }
    }

    /// The points of a named set.
    pub fn points_of(&self, name: SuborbitName) -> Vec<usize> {
        let p = self.p();
        let set: BTreeSet<usize> = self
            .components(name)
            .into_iter()
            .flat_map(|(xi, class)| {
                (1..p)
                    .filter(move |&eta| self.admits(class, eta))
                    .map(move |eta| self.index[&(xi, eta)])
            })
            .collect();
        set.into_iter().collect()
    }

    fn identify(&self, points: &[usize]) -> Result<SuborbitName> {
        let f = &self.group.f;
        let (xi, eta) =
            self.chars[points[0]].ok_or_else(|| invalid("trivial suborbit has no name"))?;
        let sign_of = |e: u64| {
            if f.is_square(e) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        };
        let candidates = if xi <= 1 {
            vec![SuborbitName::ZeroOne(sign_of(eta))]
        } else {
            vec![SuborbitName::Full(xi), SuborbitName::Half(xi, sign_of(eta))]
        };
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        candidates
            .into_iter()
            .find(|&c| self.points_of(c) == sorted)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "suborbit through ({xi}, {eta}) has no standard name"
                ))
            })
    }

    /// Suborbit indices whose union is the named set.
    pub fn union_of(&self, name: SuborbitName) -> Result<Vec<usize>> {
        if let Some(i) = self.names.iter().position(|n| *n == Some(name)) {
            return Ok(vec![i]);
        }
        if let SuborbitName::Full(xi) = name {
            let parts: Vec<usize> = [Sign::Plus, Sign::Minus]
                .iter()
                .filter_map(|&s| {
                    self.names
                        .iter()
                        .position(|n| *n == Some(SuborbitName::Half(xi, s)))
                })
                .collect();
            if parts.len() == 2 {
                return Ok(parts);
            }
        }
        Err(invalid(format!(
            "{name} is not a union of suborbits for p = {}",
            self.p()
        )))
    }

    /// Named basic self-paired unions: each self-paired suborbit, and each pair of paired suborbits.
    pub fn basic_unions(&self) -> Vec<SuborbitName> {
        self.space
            .basic_unions()
            .into_iter()
            .map(|u| {
                let n = self.names[u[0]].unwrap();
                match (u.len(), n) {
                    (2, SuborbitName::Half(xi, _)) => SuborbitName::Full(xi),
                    _ => n,
                }
            })
            .collect()
    }

    /// The orbital graph, built by multiplying representatives: `Hg ~ Hwg` for `w` in the set.
    pub fn graph(&self, name: SuborbitName) -> Result<Graph> {
        let union = self.union_of(name)?;
        if union
            .iter()
            .any(|&i| !union.contains(&self.space.suborbits[i].paired))
        {
            return Err(Error::NotSelfPaired);
        }
        let ws: Vec<Mat> = self
            .points_of(name)
            .into_iter()
            .map(|i| self.representative(i))
            .collect();
        Graph::from_neighbor_fn(self.order(), |x| {
            let r = self.representative(x);
            ws.iter()
                .map(|&w| self.point_of(self.group.mul(w, r)))
                .collect()
        })
    }

    /// The row of the basic-graph table a named union belongs to, if any.
    pub fn row(&self, name: SuborbitName) -> Option<u8> {
        let f = &self.group.f;
        let p = self.p();
        let half = f.inv(2);
        match name {
            SuborbitName::ZeroOne(Sign::Plus) => Some(3),
            SuborbitName::ZeroOne(Sign::Minus) => Some(4),
            SuborbitName::Full(xi) if xi == half => (p % 8 == 5).then_some(5),
            SuborbitName::Half(xi, s) if xi == half => {
                (p % 8 == 1).then_some(if s == Sign::Plus { 6 } else { 7 })
            }
            SuborbitName::Full(xi) => {
                let (a, b) = (f.is_square(xi), f.is_square(f.sub(xi, 1)));
                if a != b {
                    Some(1)
                } else if !a {
                    Some(2)
                } else {
                    None
                }
            }
            SuborbitName::Half(xi, s) => (f.is_square(xi) && f.is_square(f.sub(xi, 1)))
                .then_some(if s == Sign::Plus { 8 } else { 9 }),
        }
    }

    /// Empirical quotient valencies from the constructed graph and `ρ`.
    pub fn empirical_quotient(&self, name: SuborbitName) -> Result<QuotientData> {
        let g = self.graph(name)?;
        let rho = SemiregularAut::new(&g, self.rho())?;
        let q = quotient(&g, &rho);
        let h = ((self.p() - 1) / 2) as usize;
        // orbit index -> label slot (0 for V_∞, x for V_x)
        let slot: Vec<usize> = rho
            .orbits
            .orbits
            .iter()
            .map(|o| self.orbit_label(o[0]).map_or(0, |x| x as usize))
            .collect();
        let mut data = QuotientData {
            d_inf: 0,
            d_inf_x: vec![0; h],
            d_y: vec![0; h],
            d_yx: vec![vec![0; h]; h],
        };
        for (i, &si) in slot.iter().enumerate() {
            if si == 0 {
                data.d_inf = q.loop_valency(i);
            } else {
                data.d_y[si - 1] = q.loop_valency(i);
            }
            for (j, &sj) in slot.iter().enumerate() {
                if i == j {
                    continue;
                }
                let m = q.multiplicity(i, j);
                match (si, sj) {
                    (0, x) => data.d_inf_x[x - 1] = m,
                    (_, 0) => {}
                    (y, x) => data.d_yx[y - 1][x - 1] = m,
                }
            }
        }
        Ok(data)
    }

    /// Analytic quotient valencies: the table values for `V_∞`, and root counts of the
    /// adjacency equations for every other pair of orbits.
    pub fn analytic_quotient(&self, name: SuborbitName) -> Result<QuotientData> {
        let row = self.row(name).ok_or_else(|| {
            Error::Unsupported(format!("{name} is not a basic union listed in the table"))
        })?;
        let p = self.p();
        let h = ((p - 1) / 2) as usize;
        let (d_inf, _) = infinity_valencies(&self.group.f, row, 1);
        let d_inf_x = (1..=h as u64)
            .map(|x| infinity_valencies(&self.group.f, row, x).1)
            .collect();
        let d_y = (1..=h as u64)
            .map(|y| self.equation_count(name, y, y))
            .collect();
        let d_yx = (1..=h as u64)
            .map(|y| {
                (1..=h as u64)
                    .map(|x| {
                        if x == y {
                            0
                        } else {
                            self.equation_count(name, y, x)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(QuotientData {
            d_inf,
            d_inf_x,
            d_y,
            d_yx,
        })
    }

    /// Number of neighbours in `V_x` of the point `(0, y) ∈ V_y`, by solving the adjacency
    /// equations for `η`.
    ///
    /// A set element `(ξ, η)` sends `(0, y)` to a point of character
    /// `((ξ-1)(y-η)/η, y²/(y-η))`, which lies in `V_x` iff its second coordinate is `s·x` times
    /// one minus its first, for `s = ±1`. That is the quadratic
    /// `s x ξ η² + (y² - s x (2ξ-1) y) η + s x (ξ-1) y² = 0`.
    pub fn equation_count(&self, name: SuborbitName, y: u64, x: u64) -> usize {
        let f = &self.group.f;
        let half = f.inv(2);
        let mut total = 0;
        for (xi, class) in self.components(name) {
            let mut roots = 0;
            for s in [1u64, f.neg(1)] {
                let sx = f.mul(s, x);
                let a = f.mul(sx, xi);
                let b = f.sub(f.mul(y, y), f.mul(f.mul(sx, f.sub(f.mul(2, xi), 1)), y));
                let c = f.mul(f.mul(sx, f.sub(xi, 1)), f.mul(y, y));
                for eta in solve_quadratic(f, a, b, c) {
                    if eta != 0 && eta != y && self.admits(class, eta) {
                        roots += 1;
                    }
                }
            }
            // (1/2, η) and (1/2, -η) are the same point
            total += if xi == half { roots / 2 } else { roots };
        }
        total
    }

    /// The `T^±` table for a prime: for every `ξ` with `ξ, ξ - 1` nonzero squares and `ξ ≠ 1/2`,
    /// the primitive roots `τ` at which `τ⁴ ± 2(1-2ξ)τ² + 1` is a square or zero, and those for which
    /// the corresponding `η` values are squares.
    pub fn tau_table(p: u64) -> Result<Vec<TauRow>> {
        let f = PrimeField::new(p)?;
        let half = f.inv(2);
        let roots: Vec<u64> = f
            .primitive_roots()
            .into_iter()
            .filter(|&t| t <= (p - 1) / 2)
            .collect();
        let sq_or_zero = |v: u64| v == 0 || f.is_square(v);
        let mut out = Vec::new();
        for xi in 2..p {
            if xi == half || !f.is_square(xi) || !f.is_square(f.sub(xi, 1)) {
                continue;
            }
            let c = f.mul(2, f.sub(1, f.mul(2, xi)));
            let mut row = TauRow {
                xi,
                t_plus: vec![],
                t_plus_square: vec![],
                t_minus: vec![],
                t_minus_square: vec![],
            };
            for &tau in &roots {
                let x = f.mul(tau, tau);
                for minus in [false, true] {
                    let lin = if minus {
                        f.neg(f.mul(c, x))
                    } else {
                        f.mul(c, x)
                    };
                    let fx = f.add(f.add(f.mul(x, x), lin), 1);
                    if !sq_or_zero(fx) {
                        continue;
                    }
                    let square = eta_table_values(&f, x, fx).iter().any(|&e| f.is_square(e));
                    let (list, squares) = if minus {
                        (&mut row.t_minus, &mut row.t_minus_square)
                    } else {
                        (&mut row.t_plus, &mut row.t_plus_square)
                    };
                    list.push(tau);
                    if square {
                        squares.push(tau);
                    }
                }
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// `1 - 2/(1 + x ± √d)` over both square roots of `d`, skipping zero denominators.
pub fn eta_table_values(f: &PrimeField, x: u64, d: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f
        .sqrt(d)
        .into_iter()
        .filter_map(|r| {
            let den = f.add(f.add(1, x), r);
            (den != 0).then(|| f.sub(1, f.div(2, den)))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Roots of `a t² + b t + c` in `F`, without multiplicity.
fn solve_quadratic(f: &PrimeField, a: u64, b: u64, c: u64) -> Vec<u64> {
    let mut out = if a == 0 {
        if b == 0 {
            Vec::new()
        } else {
            vec![f.div(f.neg(c), b)]
        }
    } else {
        let disc = f.sub(f.mul(b, b), f.mul(4, f.mul(a, c)));
        f.sqrt(disc)
            .into_iter()
            .map(|r| f.div(f.sub(r, b), f.mul(2, a)))
            .collect()
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// `(d(V_∞), d(V_∞, V_x))` in closed form for the basic rows 1 to 9.
pub fn infinity_valencies(f: &PrimeField, row: u8, x: u64) -> (usize, usize) {
    let p = f.p() as usize;
    let sq = f.is_square(x);
    match row {
        1 | 2 => (0, 2),
        3 => ((p - 1) / 2, if sq { 2 } else { 0 }),
        4 => ((p - 1) / 2, if sq { 0 } else { 2 }),
        5 => (0, 1),
        6 => (0, usize::from(sq)),
        7 => (0, usize::from(!sq)),
        8 => (0, if sq { 2 } else { 0 }),
        9 => (0, if sq { 0 } else { 2 }),
        _ => (0, 0),
    }
}

/// `d(V_y)` as a function of `ξ` alone, for `S_ξ` (and `S_{1/2}`).
pub fn inside_valency(f: &PrimeField, xi: u64) -> usize {
    let p = f.p();
    if xi == f.inv(2) {
        return if p % 8 == 5 { 0 } else { 2 };
    }
    match (f.is_square(xi), f.is_square(f.sub(xi, 1))) {
        (false, false) => 0,
        (true, true) => 4,
        _ => 2,
    }
}

/// `(S* ∪ {0}) ∩ (S* ∪ {0} + 1)`.
pub fn square_pair_set(f: &PrimeField) -> Vec<u64> {
    let ok = |v: u64| v == 0 || f.is_square(v);
    (0..f.p()).filter(|&v| ok(v) && ok(f.sub(v, 1))).collect()
}

/// Row-1 condition: exactly one of `ξ`, `ξ - 1` is a square.
pub fn row1_condition(f: &PrimeField, xi: u64) -> bool {
    f.is_square(xi) != f.is_square(f.sub(xi, 1))
}

/// Full-length condition for `S_ξ`: `1/ξ - 1` is a non-square.
pub fn full_length_condition(f: &PrimeField, xi: u64) -> bool {
    f.is_nonsquare(f.sub(f.inv(xi), 1))
}

fn canonical(f: &PrimeField, xi: u64, eta: u64) -> (u64, u64) {
    if xi <= 1 {
        (xi, eta)
    } else {
        (xi, eta).min(partner(f, xi, eta))
    }
}

fn partner(f: &PrimeField, xi: u64, eta: u64) -> (u64, u64) {
    (f.sub(1, xi), f.div(f.mul(xi, eta), f.sub(xi, 1)))
}

fn model_label(c: Option<(u64, u64)>) -> String {
    match c {
        None => String::from("inf"),
        Some((xi, eta)) => format!("({xi},{eta})"),
    }
}
