//! Strategy dispatch producing checkable Hamilton certificates per family.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::dihedral::{DihedralModel, SuborbitName};
use crate::error::{invalid, Error, Result};
use crate::families::{
    fermat_graph, fermat_specs, metacirculant, metacirculant_corpus, FermatSpec, MetacirculantSpec,
};
use crate::field::is_prime;
use crate::gp::{gp, gp_is_hamiltonian, u as gp_u, v as gp_v};
use crate::graph::{are_isomorphic, verify_hamilton_cycle, Graph, HamiltonCertificate, Multigraph};
use crate::omega::OmegaModel;
use crate::perm::CosetSpace;
use crate::psl2::Psl2;
use crate::psl2::{a7_on_triples, triple_permutation};
use crate::quotient::{
    find_lifting_voltages, lift_closed_walk, quotient, stitch_isolates, symbol, FruchtSymbol,
    LiftOutcome, SemiregularAut,
};
use crate::search::{
    chvatal_certifies, hamilton_cycle, hamilton_cycle_where, hamilton_path, jackson_certifies,
    Outcome, DEFAULT_BUDGET,
};

/// A family instance to certify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDescriptor {
    Metacirculant(MetacirculantSpec),
    Fermat(FermatSpec),
    /// `A_7` on triples; union of suborbit indices.
    TableRow3 {
        union: Vec<usize>,
    },
    /// `PSL(2, 61)` on the cosets of `A_5`.
    TableRow4 {
        union: Vec<usize>,
    },
    /// `PSL(2, q²)` on the cosets of `PGL(2, q)`, suborbit `Δ_{±λ}`.
    OmegaCase {
        q: u64,
        lambda: u64,
    },
    /// `PSL(2, p)` on the cosets of `D_{p-1}`.
    DihedralCase {
        p: u64,
        name: SuborbitName,
    },
    /// `PSL(2, 13)` on the cosets of `A_4`.
    TableRow7 {
        union: Vec<usize>,
    },
}

impl FamilyDescriptor {
    /// Vertex count, without building the graph.
    pub fn order(&self) -> usize {
        match self {
            FamilyDescriptor::Metacirculant(s) => s.m * s.n,
            FamilyDescriptor::Fermat(s) => s.p * s.q,
            FamilyDescriptor::TableRow3 { .. } => 35,
            FamilyDescriptor::TableRow4 { .. } => 1891,
            FamilyDescriptor::OmegaCase { q, .. } => (q * (q * q + 1) / 2) as usize,
            FamilyDescriptor::DihedralCase { p, .. } => (p * (p + 1) / 2) as usize,
            FamilyDescriptor::TableRow7 { .. } => 91,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            FamilyDescriptor::Metacirculant(_) => "metacirculant",
            FamilyDescriptor::Fermat(_) => "fermat",
            FamilyDescriptor::TableRow3 { .. } => "a7-triples",
            FamilyDescriptor::TableRow4 { .. } => "psl2-61-a5",
            FamilyDescriptor::OmegaCase { .. } => "omega",
            FamilyDescriptor::DihedralCase { .. } => "dihedral",
            FamilyDescriptor::TableRow7 { .. } => "psl2-13-a4",
        }
    }
}

fn set_text(s: &alloc::collections::BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn list_text(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    items.join("+")
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Metacirculant(s) => {
                let ts: Vec<String> = s.t.iter().map(set_text).collect();
                write!(
                    out,
                    "metacirculant({},{},{};{})",
                    s.m,
                    s.n,
                    s.alpha,
                    ts.join(";")
                )
            }
            FamilyDescriptor::Fermat(s) => {
                write!(
                    out,
                    "fermat({},{};S={};T={})",
                    s.p,
                    s.q,
                    set_text(&s.s),
                    set_text(&s.t)
                )
            }
            FamilyDescriptor::TableRow3 { union } => {
                write!(out, "a7-triples[{}]", list_text(union))
            }
            FamilyDescriptor::TableRow4 { union } => {
                write!(out, "psl2-61-a5[{}]", list_text(union))
            }
            FamilyDescriptor::OmegaCase { q, lambda } => {
                write!(out, "omega(q={q},lambda={lambda})")
            }
            FamilyDescriptor::DihedralCase { p, name } => write!(out, "dihedral(p={p},{name})"),
            FamilyDescriptor::TableRow7 { union } => {
                write!(out, "psl2-13-a4[{}]", list_text(union))
            }
        }
    }
}

/// The coset space behind a table row with candidate semiregular automorphisms for lifting.
#[derive(Clone, Debug)]
pub struct TableSpace {
    pub space: CosetSpace,
    pub rhos: Vec<Vec<usize>>,
}

/// Rows 3 (`A_7` on triples), 4 (`PSL(2,61)/A_5`) and 7 (`PSL(2,13)/A_4`). Each candidate has
/// prime order dividing the degree and no conjugate in the stabiliser, so it acts semiregularly.
pub fn table_space(row: u8) -> Result<TableSpace> {
    let psl = |p: u64, h: Option<Vec<[u64; 4]>>, other: usize| -> Result<TableSpace> {
        let g = Psl2::new(p)?;
        let h = h.ok_or_else(|| invalid("stabiliser not found"))?;
        let m = g
            .element_of_order(other)
            .ok_or_else(|| invalid(format!("no element of order {other}")))?;
        let (space, extra) = g.coset_action_with(&h, &[m])?;
        let rhos = vec![space.generators[0].clone(), extra[0].clone()];
        Ok(TableSpace { space, rhos })
    };
    match row {
        3 => {
            let space = a7_on_triples();
            let five = triple_permutation([1, 2, 3, 4, 0, 5, 6]);
            let rhos = vec![five, space.generators[0].clone()];
            Ok(TableSpace { space, rhos })
        }
        4 => {
            let g = Psl2::new(61)?;
            psl(61, g.a5(), 31)
        }
        7 => {
            let g = Psl2::new(13)?;
            psl(13, g.a4(), 7)
        }
        _ => Err(invalid(format!("table row {row} has no coset space here"))),
    }
}

/// A constructed instance with semiregular automorphisms to try for lifting, preferred first.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub rhos: Vec<Vec<usize>>,
}

/// Builds the graph of a descriptor.
pub fn instance(desc: &FamilyDescriptor) -> Result<Instance> {
    let coset = |row: u8, union: &[usize]| -> Result<Instance> {
        let ts = table_space(row)?;
        if union
            .iter()
            .any(|&i| i == 0 || i >= ts.space.suborbits.len())
        {
            return Err(invalid(format!("suborbit index out of range in {union:?}")));
        }
        Ok(Instance {
            graph: ts.space.orbital_graph(union)?,
            rhos: ts.rhos,
        })
    };
    match desc {
        FamilyDescriptor::Metacirculant(s) => {
            let mc = metacirculant(s)?;
            Ok(Instance {
                graph: mc.graph,
                rhos: vec![mc.rho],
            })
        }
        FamilyDescriptor::Fermat(s) => {
            let fg = fermat_graph(s)?;
            Ok(Instance {
                graph: fg.graph,
                rhos: vec![fg.phi],
            })
        }
        FamilyDescriptor::TableRow3 { union } => coset(3, union),
        FamilyDescriptor::TableRow4 { union } => coset(4, union),
        FamilyDescriptor::TableRow7 { union } => coset(7, union),
        FamilyDescriptor::OmegaCase { q, lambda } => {
            let m = OmegaModel::new(*q)?;
            Ok(Instance {
                graph: m.graph(*lambda)?,
                rhos: vec![m.rho.clone()],
            })
        }
        FamilyDescriptor::DihedralCase { p, name } => {
            let m = DihedralModel::new(*p)?;
            Ok(Instance {
                graph: m.graph(*name)?,
                rhos: vec![m.rho()],
            })
        }
    }
}

/// Order, valency and SHA-256 of the sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub valency: Option<usize>,
    pub hash: [u8; 32],
}

impl Fingerprint {
    pub fn of(g: &Graph) -> Self {
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.sort_unstable();
        let mut h = Sha256::new();
        for (a, b) in edges {
            h.update((a as u64).to_le_bytes());
            h.update((b as u64).to_le_bytes());
        }
        Fingerprint {
            order: g.order(),
            valency: g.regular_valency(),
            hash: h.finalize().into(),
        }
    }

    pub fn hash_hex(&self) -> String {
        self.hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Which construction produced the cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Quotient cycle through a double edge, lifted (dihedral rows 1-5).
    DihedralQuotient,
    /// Generalized Petersen subgraph of the quotient with `V_∞` spliced in (dihedral rows 6-9).
    GeneralizedPetersen,
    /// A lifted cycle on some orbits and a cycle on the rest, joined by exchanging two edges.
    LiftAndMerge,
    /// Reduced block quotient, isolates stitched in, lifted.
    OmegaStitch,
    /// Quotient search through a double edge, lifted.
    QuotientLift,
    /// Budgeted search on the graph itself.
    DirectSearch,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::DihedralQuotient => "dihedral-quotient",
            Strategy::GeneralizedPetersen => "generalized-petersen",
            Strategy::LiftAndMerge => "lift-and-merge",
            Strategy::OmegaStitch => "omega-stitch",
            Strategy::QuotientLift => "quotient-lift",
            Strategy::DirectSearch => "direct-search",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Strategy::DihedralQuotient,
            Strategy::GeneralizedPetersen,
            Strategy::LiftAndMerge,
            Strategy::OmegaStitch,
            Strategy::QuotientLift,
            Strategy::DirectSearch,
        ]
        .into_iter()
        .find(|x| x.name() == s)
    }
}

/// A Hamilton cycle with the fingerprint of its graph and a key=value trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub fingerprint: Fingerprint,
    pub hamilton: HamiltonCertificate,
    pub strategy: Strategy,
    pub trace: Vec<(String, String)>,
}

/// Fingerprint match and Hamilton cycle check.
pub fn verify(g: &Graph, cert: &Certificate) -> bool {
    Fingerprint::of(g) == cert.fingerprint && verify_hamilton_cycle(g, &cert.hamilton.cycle)
}

/// Search budgets for [`prove`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Node expansions per search call.
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
        }
    }
}

type Trace = Vec<(String, String)>;

fn note(trace: &mut Trace, key: &str, value: impl ToString) {
    trace.push((key.to_string(), value.to_string()));
}

fn join<T: ToString>(xs: &[T]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    v.join(",")
}

/// Certifies a descriptor. The Petersen graph is rejected after a completed exhaustive search.
pub fn prove(desc: &FamilyDescriptor, opts: &Options) -> Result<Certificate> {
    let inst = instance(desc)?;
    prove_instance(desc, &inst, opts)
}

/// Like [`prove`] for an already built instance.
pub fn prove_instance(
    desc: &FamilyDescriptor,
    inst: &Instance,
    opts: &Options,
) -> Result<Certificate> {
    let g = &inst.graph;
    if g.order() == 10 && are_isomorphic(g, &Graph::petersen()) {
        return match hamilton_cycle(g, opts.budget) {
            Outcome::Absent => Err(Error::NotHamiltonian),
            Outcome::BudgetExhausted => Err(Error::BudgetExhausted(String::from("petersen check"))),
            Outcome::Found(_) => Err(invalid(
                "search reported a Hamilton cycle of the Petersen graph",
            )),
        };
    }
    let mut trace: Trace = Vec::new();
    note(&mut trace, "family", desc);
    let primary = match desc {
        FamilyDescriptor::DihedralCase { p, name } => {
            let model = DihedralModel::new(*p)?;
            match model.row(*name) {
                Some(r) if r <= 5 => {
                    note(&mut trace, "row", r);
                    Some((
                        Strategy::DihedralQuotient,
                        dihedral_quotient(g, &model, opts, &mut trace),
                    ))
                }
                Some(r) => {
                    note(&mut trace, "row", r);
                    match dihedral_gp(g, &model, opts, &mut trace) {
                        Ok(c) => Some((Strategy::GeneralizedPetersen, Ok(c))),
                        Err(e) => {
                            note(&mut trace, "generalized-petersen.failed", e);
                            let merged = lift_and_merge(g, &model.rho(), opts, &mut trace);
                            Some((Strategy::LiftAndMerge, merged))
                        }
                    }
                }
                None => None,
            }
        }
        FamilyDescriptor::OmegaCase { q, lambda } => {
            let model = OmegaModel::new(*q)?;
            Some((
                Strategy::OmegaStitch,
                omega_stitch(g, &model, *lambda, opts, &mut trace),
            ))
        }
        _ => None,
    };
    let had_primary = primary.is_some();
    if let Some((strategy, result)) = primary {
        match result {
            Ok(cycle) => return finish(g, cycle, strategy, trace),
            Err(e) => note(&mut trace, &format!("{}.failed", strategy.name()), e),
        }
    }
    for rho in &inst.rhos {
        match quotient_lift(g, rho, opts, &mut trace) {
            Ok(cycle) => return finish(g, cycle, Strategy::QuotientLift, trace),
            Err(e) => note(&mut trace, "quotient-lift.failed", e),
        }
    }
    if !had_primary {
        for rho in &inst.rhos {
            match lift_and_merge(g, rho, opts, &mut trace) {
                Ok(cycle) => return finish(g, cycle, Strategy::LiftAndMerge, trace),
                Err(e) => note(&mut trace, "lift-and-merge.failed", e),
            }
        }
    }
    match hamilton_cycle(g, opts.budget) {
        Outcome::Found(c) => finish(g, c.cycle, Strategy::DirectSearch, trace),
        Outcome::Absent => Err(Error::NotHamiltonian),
        Outcome::BudgetExhausted => Err(Error::BudgetExhausted(format!(
            "{desc}: no strategy produced a cycle"
        ))),
    }
}

fn finish(
    g: &Graph,
    cycle: Vec<usize>,
    strategy: Strategy,
    mut trace: Trace,
) -> Result<Certificate> {
    if !verify_hamilton_cycle(g, &cycle) {
        return Err(Error::BadCertificate(format!(
            "{} produced a non-Hamilton cycle",
            strategy.name()
        )));
    }
    note(&mut trace, "strategy", strategy.name());
    Ok(Certificate {
        fingerprint: Fingerprint::of(g),
        hamilton: HamiltonCertificate { cycle },
        strategy,
        trace,
    })
}

struct QuotientView {
    rho: SemiregularAut,
    sym: FruchtSymbol,
    quo: Multigraph,
    und: Graph,
}

fn view(g: &Graph, rho: &[usize]) -> Result<QuotientView> {
    let rho = SemiregularAut::new(g, rho.to_vec())?;
    let sym = symbol(g, &rho, None)?;
    let quo = quotient(g, &rho);
    let und = quo.underlying();
    Ok(QuotientView { rho, sym, quo, und })
}

/// Lifts a quotient walk, recording it in the trace.
fn lift(g: &Graph, v: &QuotientView, walk: &[usize], trace: &mut Trace) -> Result<Vec<usize>> {
    let volts = find_lifting_voltages(&v.sym, walk)
        .ok_or_else(|| invalid("no voltage assignment with nonzero sum"))?;
    match lift_closed_walk(&v.sym, g, &v.rho, walk, &volts)? {
        LiftOutcome::FullCycle(c) => {
            note(trace, "quotient_cycle", join(walk));
            note(trace, "voltages", join(&volts));
            Ok(c)
        }
        LiftOutcome::DisjointCycles { count, length } => Err(invalid(format!(
            "lift splits into {count} cycles of length {length}"
        ))),
    }
}

/// A quotient Hamilton cycle through a pinned double edge (or a loop for one orbit), lifted.
fn quotient_cycle_lift(
    g: &Graph,
    v: &QuotientView,
    opts: &Options,
    trace: &mut Trace,
) -> Result<Vec<usize>> {
    let m = v.rho.m;
    note(trace, "rho", format!("{}x{}", m, v.rho.n));
    if m == 1 {
        return lift(g, v, &[0], trace);
    }
    let doubles: Vec<(usize, usize)> = v
        .quo
        .edges()
        .filter(|&(_, _, k)| k >= 2)
        .map(|(a, b, _)| (a, b))
        .collect();
    if doubles.is_empty() {
        return Err(invalid("quotient has no edge of multiplicity >= 2"));
    }
    for &(a, b) in &doubles {
        let walk = if m == 2 {
            vec![a, b]
        } else {
            match hamilton_path(&v.und, a, b, opts.budget)? {
                Outcome::Found(p) => p,
                _ => continue,
            }
        };
        note(trace, "double_edge", format!("{a}-{b}"));
        return lift(g, v, &walk, trace);
    }
    Err(invalid("no quotient Hamilton cycle through a double edge"))
}

/// Strategy (d): quotient by a semiregular automorphism, cycle through a double edge, lift.
fn quotient_lift(
    g: &Graph,
    rho: &[usize],
    opts: &Options,
    trace: &mut Trace,
) -> Result<Vec<usize>> {
    let v = view(g, rho)?;
    quotient_cycle_lift(g, &v, opts, trace)
}

/// Strategy (a): as (d) on the dihedral quotient, recording the degree condition on the quotient.
fn dihedral_quotient(
    g: &Graph,
    model: &DihedralModel,
    opts: &Options,
    trace: &mut Trace,
) -> Result<Vec<usize>> {
    let v = view(g, &model.rho())?;
    note(trace, "quotient_chvatal", chvatal_certifies(&v.und));
    quotient_cycle_lift(g, &v, opts, trace)
}

/// Parameters of a generalized Petersen subgraph of the dihedral quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpEmbedding {
    pub n: usize,
    pub k: usize,
    /// Quotient vertex of `u_j` and `v_j`.
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    /// Rim step, inner step and spoke offset in powers of `z`.
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// Whether the rim lies on the orbits `V_x` with `x` a square.
    pub rim_on_squares: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Quotient vertex index of `V_x` for each `x ∈ 1..=(p-1)/2` (slot 0 is `V_∞`).
fn dihedral_slots(model: &DihedralModel, rho: &SemiregularAut) -> Vec<usize> {
    let h = ((model.p() - 1) / 2) as usize;
    let mut slot = vec![0usize; h + 1];
    for (i, o) in rho.orbits.orbits.iter().enumerate() {
        slot[model.orbit_label(o[0]).map_or(0, |x| x as usize)] = i;
    }
    slot
}

/// Locates `GP(n, k)` with `n = (p-1)/4` in the quotient minus `V_∞`, using `σ`-orbits of single edges.
pub fn gp_embedding(model: &DihedralModel, und: &Graph, slot: &[usize]) -> Option<GpEmbedding> {
    let f = model.field();
    let n = ((model.p() - 1) / 4) as usize;
    if n < 3 {
        return None;
    }
    let label = |x: u64| x.min(f.neg(x)) as usize;
    let zpow: Vec<u64> = (0..n as u64).map(|i| f.pow(model.z, i)).collect();
    let squares: Vec<usize> = zpow.iter().map(|&w| slot[label(w)]).collect();
    let nonsquares: Vec<usize> = zpow
        .iter()
        .map(|&w| slot[label(f.mul(model.g, w))])
        .collect();
    for rim_on_squares in [true, false] {
        let (a, b) = if rim_on_squares {
            (&squares, &nonsquares)
        } else {
            (&nonsquares, &squares)
        };
        let Some(r) = (1..n).find(|&r| gcd(r, n) == 1 && und.has_edge(a[0], a[r])) else {
            continue;
        };
        let Some(s) = (1..n).find(|&s| und.has_edge(b[0], b[s])) else {
            continue;
        };
        let Some(t) = (0..n).find(|&t| und.has_edge(a[0], b[t])) else {
            continue;
        };
        let rinv = (1..n).find(|&x| x * r % n == 1).unwrap();
        let k = s * rinv % n;
        let outer: Vec<usize> = (0..n).map(|j| a[j * r % n]).collect();
        let inner: Vec<usize> = (0..n).map(|j| b[(j * r + t) % n]).collect();
        return Some(GpEmbedding {
            n,
            k,
            outer,
            inner,
            r,
            s,
            t,
            rim_on_squares,
        });
    }
    None
}

/// Every edge of `GP(n, k)` under the embedding is a quotient edge.
pub fn gp_embedding_is_subgraph(e: &GpEmbedding, und: &Graph) -> bool {
    let n = e.n;
    (0..n).all(|j| {
        und.has_edge(e.outer[j], e.outer[(j + 1) % n])
            && und.has_edge(e.inner[j], e.inner[(j + e.k) % n])
            && und.has_edge(e.outer[j], e.inner[j])
    })
}

/// Strategy (b): Hamilton cycle or path of the embedded `GP(n, k)`, `V_∞` spliced in, lifted.
fn dihedral_gp(
    g: &Graph,
    model: &DihedralModel,
    opts: &Options,
    trace: &mut Trace,
) -> Result<Vec<usize>> {
    if !g.is_automorphism(&model.sigma()) {
        return Err(invalid("sigma is not an automorphism"));
    }
    let v = view(g, &model.rho())?;
    let slot = dihedral_slots(model, &v.rho);
    let inf = slot[0];
    let e = gp_embedding(model, &v.und, &slot)
        .ok_or_else(|| invalid("no sigma-invariant GP subgraph"))?;
    if !gp_embedding_is_subgraph(&e, &v.und) {
        return Err(invalid("GP embedding is not a quotient subgraph"));
    }
    note(trace, "gp", format!("GP({},{})", e.n, e.k));
    note(
        trace,
        "gp_rim",
        format!(
            "{} step={}",
            if e.rim_on_squares {
                "squares"
            } else {
                "nonsquares"
            },
            e.r
        ),
    );
    note(trace, "gp_inner_step", e.s);
    note(trace, "gp_spoke_offset", e.t);
    note(trace, "gp_hamiltonian", gp_is_hamiltonian(e.n, e.k));
    let gpg = gp(e.n, e.k, true)?;
    let to_quotient = |w: usize| {
        if w < e.n {
            e.outer[w]
        } else {
            e.inner[w - e.n]
        }
    };
    debug_assert!((0..e.n as i64).all(|i| gp_u(e.n, i) < e.n && gp_v(e.n, i) >= e.n));
    let liftable = |walk: &[usize]| find_lifting_voltages(&v.sym, walk).is_some();
    // V_∞ between two consecutive cycle vertices adjacent to it
    let mut found: Option<Vec<usize>> = None;
    let splice = |cyc: &[usize]| -> Option<Vec<usize>> {
        let q: Vec<usize> = cyc.iter().map(|&w| to_quotient(w)).collect();
        let len = q.len();
        (0..len).find_map(|i| {
            let (x, y) = (q[i], q[(i + 1) % len]);
            if v.und.has_edge(inf, x) && v.und.has_edge(inf, y) {
                let mut walk = q[i + 1..].to_vec();
                walk.extend_from_slice(&q[..=i]);
                walk.push(inf);
                liftable(&walk).then_some(walk)
            } else {
                None
            }
        })
    };
    if let Outcome::Found(c) = hamilton_cycle_where(&gpg, opts.budget, |c| {
        found = splice(c);
        found.is_some()
    }) {
        let walk = found.take().unwrap_or_else(|| splice(&c.cycle).unwrap());
        note(trace, "gp_splice", "cycle");
        return lift(g, &v, &walk, trace);
    }
    // otherwise a Hamilton path of GP(n, k) whose ends are both adjacent to V_∞
    let ends: Vec<usize> = (0..2 * e.n)
        .filter(|&w| v.und.has_edge(inf, to_quotient(w)))
        .collect();
    for (i, &x) in ends.iter().enumerate() {
        for &y in &ends[i + 1..] {
            let mut walk_found = None;
            let res = crate::search::hamilton_path_where(&gpg, x, y, opts.budget, |p| {
                let mut walk: Vec<usize> = p.iter().map(|&w| to_quotient(w)).collect();
                walk.push(inf);
                let ok = liftable(&walk);
                if ok {
                    walk_found = Some(walk);
                }
                ok
            })?;
            if res.is_found() {
                note(trace, "gp_splice", "path");
                return lift(g, &v, &walk_found.unwrap(), trace);
            }
        }
    }
    Err(invalid("no liftable GP cycle or path through V_inf"))
}

/// Strategy (c): delete single edges between `L` blocks when `λ = 0`, cover each component of the
/// reduced `L` quotient by a cycle, stitch the `I` blocks in, lift.
fn omega_stitch(
    g: &Graph,
    model: &OmegaModel,
    lambda: u64,
    opts: &Options,
    trace: &mut Trace,
) -> Result<Vec<usize>> {
    let v = view(g, &model.rho)?;
    let (iso, lb): (Vec<usize>, Vec<usize>) =
        (0..v.rho.m).partition(|&b| model.is_i_block(&v.rho, b));
    let min_mult = if lambda == 0 { 2 } else { 1 };
    let mut edges = Vec::new();
    for (x, &a) in lb.iter().enumerate() {
        for (y, &b) in lb.iter().enumerate().skip(x + 1) {
            if v.quo.multiplicity(a, b) >= min_mult {
                edges.push((x, y));
            }
        }
    }
    let reduced = Graph::from_edges(lb.len(), &edges)?;
    let q = model.q();
    note(trace, "i_blocks", iso.len());
    note(trace, "l_blocks", lb.len());
    let val = reduced.regular_valency();
    note(
        trace,
        "reduced_valency",
        val.map_or(String::from("irregular"), |k| k.to_string()),
    );
    if lambda == 0 && q % 4 == 1 {
        let eps = if q % 8 == 1 || q % 8 == 3 { 2 } else { 0 };
        let bound = ((q * q - 3 * q - 2 * (1 + eps)) / 4) as usize;
        if val != Some(bound) {
            return Err(invalid(format!(
                "reduced valency {val:?}, expected {bound}"
            )));
        }
    }
    let (count, comp) = reduced.components();
    note(trace, "components", count);
    if count > 2 {
        return Err(invalid(format!("reduced quotient has {count} components")));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for c in 0..count {
        let verts: Vec<usize> = (0..lb.len()).filter(|&x| comp[x] == c).collect();
        let sub = reduced.induced(&verts);
        note(
            trace,
            &format!("component{c}_jackson"),
            jackson_certifies(&sub),
        );
        let cyc = hamilton_cycle(&sub, opts.budget)
            .found()
            .ok_or_else(|| invalid(format!("component {c} has no Hamilton cycle within budget")))?;
        cycles.push(cyc.cycle.iter().map(|&x| lb[verts[x]]).collect());
    }
    let walk = stitch_isolates(
        &cycles[0],
        cycles.get(1).map(|c| c.as_slice()),
        &iso,
        |a, b| v.und.has_edge(a, b),
    )?;
    note(trace, "stitched", join(&walk));
    lift(g, &v, &walk, trace)
}

/// Joins two disjoint cycles by replacing an edge `ab` of one and `cd` of the other with `ac`, `bd`
/// (or `ad`, `bc`).
pub fn merge_cycles(g: &Graph, c1: &[usize], c2: &[usize]) -> Option<Vec<usize>> {
    let (k1, k2) = (c1.len(), c2.len());
    for i in 0..k1 {
        let (a, b) = (c1[i], c1[(i + 1) % k1]);
        for j in 0..k2 {
            let (c, d) = (c2[j], c2[(j + 1) % k2]);
            let mut out: Vec<usize> = c1[..=i].to_vec();
            if g.has_edge(a, c) && g.has_edge(b, d) {
                // c back around to d
                out.extend((0..k2).map(|s| c2[(j + k2 - s) % k2]));
            } else if g.has_edge(a, d) && g.has_edge(b, c) {
                // d forward around to c
                out.extend((0..k2).map(|s| c2[(j + 1 + s) % k2]));
            } else {
                continue;
            }
            out.extend_from_slice(&c1[i + 1..]);
            return Some(out);
        }
    }
    None
}

/// Node budget of each inner search of [`lift_and_merge`].
const MERGE_BUDGET: u64 = 20_000;
/// Quotient cycles tried by [`lift_and_merge`] over all orbit subsets.
const MERGE_ATTEMPTS: usize = 64;
/// Complementary cycles tried against one quotient cycle.
const MERGE_PARTNERS: usize = 32;
/// Lifts kept per quotient cycle.
const MERGE_LIFTS: usize = 16;

/// Voltage assignments along `walk` whose lift is a single cycle, at most [`MERGE_LIFTS`].
fn all_lifts(g: &Graph, v: &QuotientView, walk: &[usize]) -> Result<Vec<Vec<usize>>> {
    let k = walk.len();
    let options: Vec<&[usize]> = (0..k)
        .map(|i| v.sym.set(walk[i], walk[(i + 1) % k]))
        .collect();
    let total: usize = options.iter().map(|o| o.len()).product();
    let mut out = Vec::new();
    for mut code in 0..total.min(4096) {
        let volts: Vec<usize> = options
            .iter()
            .map(|o| {
                let x = o[code % o.len()];
                code /= o.len();
                x
            })
            .collect();
        if k == 2 && (volts[0] + volts[1]) % v.rho.n == 0 {
            continue;
        }
        if let LiftOutcome::FullCycle(c) = lift_closed_walk(&v.sym, g, &v.rho, walk, &volts)? {
            out.push(c);
            if out.len() == MERGE_LIFTS {
                break;
            }
        }
    }
    Ok(out)
}

/// Whether some edge `ab` inside the orbits of `mask` and `cd` outside them have `a ~ c`, `b ~ d`.
fn has_crossing_square(g: &Graph, v: &QuotientView, mask: u32) -> bool {
    let inside = |x: usize| mask >> v.rho.orbits.locate(x).0 & 1 == 1;
    g.edges().any(|(a, b)| {
        inside(a)
            && inside(b)
            && g.neighbors(a).iter().any(|&c| {
                !inside(c)
                    && g.neighbors(c)
                        .iter()
                        .any(|&d| !inside(d) && g.has_edge(b, d))
            })
    })
}

/// Orbit subsets `U` (largest first): a liftable Hamilton cycle of the quotient on `U`, a Hamilton
/// cycle of the graph induced on the remaining orbits, and an edge exchange joining them.
fn lift_and_merge(
    g: &Graph,
    rho: &[usize],
    opts: &Options,
    trace: &mut Trace,
) -> Result<Vec<usize>> {
    let v = view(g, rho)?;
    let m = v.rho.m;
    if m > 16 {
        return Err(invalid(format!(
            "{m} orbits is too many to enumerate subsets"
        )));
    }
    let budget = opts.budget.min(MERGE_BUDGET);
    let attempts = core::cell::Cell::new(0usize);
    let mut subsets: Vec<u32> = (1..(1u32 << m) - 1).collect();
    subsets.sort_by_key(|&s| (core::cmp::Reverse(s.count_ones()), s));
    for s in subsets {
        let inside: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 0).collect();
        let rest: Vec<usize> = outside
            .iter()
            .flat_map(|&o| v.rho.orbits.orbits[o].iter().copied())
            .collect();
        let rest_graph = g.induced(&rest);
        if rest.len() < 3 || !rest_graph.is_connected() || !has_crossing_square(g, &v, s) {
            continue;
        }
        let mut result: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut error: Option<Error> = None;
        // tries one quotient cycle: all of its lifts against complementary cycles
        let mut attempt = |walk: Vec<usize>| -> bool {
            attempts.set(attempts.get() + 1);
            let lifts = match all_lifts(g, &v, &walk) {
                Ok(l) => l,
                Err(e) => {
                    error = Some(e);
                    return false;
                }
            };
            if lifts.is_empty() {
                return false;
            }
            let mut merged = None;
            let mut partners = 0;
            hamilton_cycle_where(&rest_graph, budget, |c| {
                let c2: Vec<usize> = c.iter().map(|&x| rest[x]).collect();
                merged = lifts.iter().find_map(|c1| merge_cycles(g, c1, &c2));
                partners += 1;
                merged.is_some() || partners == MERGE_PARTNERS
            });
            match merged {
                Some(c) => {
                    result = Some((walk, c));
                    true
                }
                None => false,
            }
        };
        match inside.len() {
            1 | 2 => {
                attempt(inside.clone());
            }
            _ => {
                let sub = v.und.induced(&inside);
                hamilton_cycle_where(&sub, budget, |c| {
                    attempt(c.iter().map(|&x| inside[x]).collect())
                        || attempts.get() >= MERGE_ATTEMPTS
                });
            }
        }
        if let Some(e) = error {
            return Err(e);
        }
        if let Some((walk, c)) = result {
            note(trace, "rho", format!("{}x{}", m, v.rho.n));
            note(trace, "lifted_orbits", join(&walk));
            note(trace, "merged_orbits", join(&outside));
            return Ok(c);
        }
        if attempts.get() >= MERGE_ATTEMPTS {
            break;
        }
    }
    Err(invalid(
        "no lifted cycle and complementary cycle could be merged",
    ))
}

/// Table rows without an explicit construction: the two orthogonal families and `M_22`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row12 {
    Orthogonal { epsilon: i8, d: u32 },
    M22,
}

/// Order and each stated valency paired with whether it reaches a third of the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValencyCheck {
    pub order: usize,
    pub valencies: Vec<(usize, bool)>,
}

/// Checks the valency hypothesis `k >= n/3` for the orbital graphs of rows 1 and 2.
pub fn row12_valency_check(row: Row12) -> Result<ValencyCheck> {
    let (order, vals) = match row {
        Row12::Orthogonal { epsilon, d } => {
            if !(epsilon == 1 || epsilon == -1) || !(2..=31).contains(&d) {
                return Err(invalid("epsilon must be ±1 and 2 <= d <= 31"));
            }
            let two = 1i64 << d;
            let p = two - epsilon as i64;
            let q = two / 2 + epsilon as i64;
            if !is_prime(p as u64) || !is_prime(q as u64) {
                return Err(invalid(format!("({p}, {q}) is not a pair of primes")));
            }
            let vals = if epsilon == 1 {
                vec![q * q - q - 2, q * q - 2 * q + 1]
            } else {
                vec![q * q + q - 2, q * q + 2 * q + 1]
            };
            (
                (p * q) as usize,
                vals.into_iter().map(|x| x as usize).collect::<Vec<_>>(),
            )
        }
        Row12::M22 => (77, vec![16, 60]),
    };
    Ok(ValencyCheck {
        order,
        valencies: vals.into_iter().map(|k| (k, 3 * k >= order)).collect(),
    })
}

/// The Petersen graph as a metacirculant.
pub fn petersen_spec() -> MetacirculantSpec {
    MetacirculantSpec::new(2, 5, 2, vec![vec![1, 4], vec![0]]).expect("valid spec")
}

/// Every implemented descriptor of order at most `max_order`; `slow` admits `PSL(2,61)/A_5`.
pub fn survey_descriptors(max_order: usize, slow: bool) -> Result<Vec<FamilyDescriptor>> {
    let mut out: Vec<FamilyDescriptor> = Vec::new();
    let mut mc = metacirculant_corpus(max_order);
    if max_order >= 10 && !mc.contains(&petersen_spec()) {
        mc.push(petersen_spec());
    }
    out.extend(mc.into_iter().map(FamilyDescriptor::Metacirculant));
    for (p, q) in [(5usize, 3usize), (17, 3), (17, 5)] {
        if p * q <= max_order {
            out.extend(fermat_specs(p, q).into_iter().map(FamilyDescriptor::Fermat));
        }
    }
    let mut coset_rows = vec![(3u8, 35usize), (7, 91)];
    if slow {
        coset_rows.push((4, 1891));
    }
    for (row, order) in coset_rows {
        if order <= max_order {
            for union in table_space(row)?.space.basic_unions() {
                out.push(match row {
                    3 => FamilyDescriptor::TableRow3 { union },
                    4 => FamilyDescriptor::TableRow4 { union },
                    _ => FamilyDescriptor::TableRow7 { union },
                });
            }
        }
    }
    for q in (5u64..)
        .step_by(2)
        .take_while(|q| (q * (q * q + 1) / 2) as usize <= max_order)
    {
        if is_prime(q) && is_prime((q * q).div_ceil(2)) {
            for lambda in 0..=(q - 1) / 2 {
                out.push(FamilyDescriptor::OmegaCase { q, lambda });
            }
        }
    }
    for p in (13u64..)
        .step_by(4)
        .take_while(|p| (p * (p + 1) / 2) as usize <= max_order)
    {
        if is_prime(p) {
            for name in DihedralModel::new(p)?.basic_unions() {
                out.push(FamilyDescriptor::DihedralCase { p, name });
            }
        }
    }
    out.retain(|d| d.order() <= max_order);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_certificates() {
        let c6 = Graph::cycle(6);
        let cert = Certificate {
            fingerprint: Fingerprint::of(&c6),
            hamilton: HamiltonCertificate {
                cycle: vec![0, 1, 2, 3, 4, 5],
            },
            strategy: Strategy::DirectSearch,
            trace: Vec::new(),
        };
        assert!(verify(&c6, &cert));
        let mut short = cert.clone();
        short.hamilton.cycle.pop();
        assert!(!verify(&c6, &short));
        let mut bad = cert.clone();
        bad.hamilton.cycle = vec![0, 2, 1, 3, 4, 5];
        assert!(!verify(&c6, &bad));
        assert!(!verify(&Graph::complete(6), &cert));
    }

    #[test]
    fn row12() {
        let a = row12_valency_check(Row12::Orthogonal { epsilon: 1, d: 3 }).unwrap();
        assert_eq!(
            a,
            ValencyCheck {
                order: 35,
                valencies: vec![(18, true), (16, true)]
            }
        );
        let b = row12_valency_check(Row12::Orthogonal { epsilon: -1, d: 4 }).unwrap();
        assert_eq!(
            b,
            ValencyCheck {
                order: 119,
                valencies: vec![(54, true), (64, true)]
            }
        );
        let m = row12_valency_check(Row12::M22).unwrap();
        assert_eq!(m.valencies, vec![(16, false), (60, true)]);
        assert!(row12_valency_check(Row12::Orthogonal { epsilon: 1, d: 4 }).is_err());
    }

    #[test]
    fn petersen_rejected() {
        let d = FamilyDescriptor::Metacirculant(petersen_spec());
        assert_eq!(prove(&d, &Options::default()), Err(Error::NotHamiltonian));
    }
}
