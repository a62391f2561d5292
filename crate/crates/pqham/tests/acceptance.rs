//! Acceptance report: one PASS/FAIL line per criterion with its runtime limit.
//!
//! Known failures are pinned by their exact detail text. They print `FAIL (expected)` and keep the
//! exit status at zero; any other failure, or a known failure that starts passing, exits 1.
//! Criterion 9 runs only with `--slow` or `PQHAM_SLOW=1`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use pqham::survey;
use pqham_core::dihedral::{DihedralModel, SuborbitName};
use pqham_core::engine::{
    instance, petersen_spec, prove, prove_instance, survey_descriptors, table_space, verify,
    Certificate, FamilyDescriptor, Options, Strategy,
};
use pqham_core::families::fermat_specs;
use pqham_core::field::{primes_below, PrimeField};
use pqham_core::gp::{gp, gp2_path_admissible, gp_is_hamiltonian};
use pqham_core::graph::{verify_hamilton_path, Graph};
use pqham_core::omega::OmegaModel;
use pqham_core::residue::{exceptional_table, quartic_exceptions, quartic_xi_witnesses};
use pqham_core::search::{hamilton_cycle, hamilton_path, Outcome, DEFAULT_BUDGET};
use pqham_core::Error;

type Check = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    slow: bool,
    /// Exact failure detail of a known, analysed failure.
    known_failure: Option<&'static str>,
    run: fn() -> Check,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Cycle check against an edge list only.
fn is_hamilton_cycle(g: &Graph, c: &[usize]) -> bool {
    let e: HashSet<(usize, usize)> = g.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let distinct: HashSet<usize> = c.iter().copied().collect();
    c.len() == g.order()
        && distinct.len() == c.len()
        && (0..c.len()).all(|i| e.contains(&(c[i], c[(i + 1) % c.len()])))
}

fn certify(d: &FamilyDescriptor) -> Result<(Graph, Certificate), String> {
    let inst = instance(d).map_err(|e| format!("{d}: {e}"))?;
    let cert = prove_instance(d, &inst, &Options::default()).map_err(|e| format!("{d}: {e}"))?;
    ensure(
        verify(&inst.graph, &cert) && is_hamilton_cycle(&inst.graph, &cert.hamilton.cycle),
        || format!("{d}: certificate rejected"),
    )?;
    Ok((inst.graph, cert))
}

fn trace<'a>(c: &'a Certificate, key: &str) -> Option<&'a str> {
    c.trace
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

// ---- 1: exceptional sequences ----

fn numbers(s: &str) -> Vec<u64> {
    s.split_whitespace().map(|x| x.parse().unwrap()).collect()
}

fn c1_tables() -> Check {
    let printed: Vec<(Vec<u64>, u64, String, Vec<u64>)> =
        include_str!("../../pqham-core/tests/data/exceptional_rows.txt")
            .lines()
            .filter(|l| !l.starts_with('#') && !l.is_empty())
            .map(|l| {
                let c: Vec<&str> = l.split(';').collect();
                (
                    numbers(c[0]),
                    c[1].parse().unwrap(),
                    c[2].replace('t', "t="),
                    numbers(c[3]),
                )
            })
            .collect();
    let table = exceptional_table(131);
    let got: BTreeSet<Vec<u64>> = table.iter().map(|r| r.sequence.primes().to_vec()).collect();
    let want: BTreeSet<Vec<u64>> = printed.iter().map(|r| r.0.clone()).collect();
    ensure(table.len() == 54 && got == want, || {
        format!("{} sequences, set differs: {}", table.len(), got != want)
    })?;
    let mut diffs = Vec::new();
    for (seq, k, kind, primes) in &printed {
        let rec = table
            .iter()
            .find(|r| r.sequence.primes() == seq.as_slice())
            .unwrap();
        let ours = rec.split_type.to_string();
        if (rec.bound_k, ours.as_str()) != (*k, kind.as_str()) {
            diffs.push(format!(
                "{{{}}} {}/{} printed {}/{}",
                rec.sequence, rec.bound_k, ours, k, kind
            ));
        } else if &rec.primes_le_k != primes {
            diffs.push(format!("{{{}}} prime column", rec.sequence));
        }
    }
    if diffs.is_empty() {
        Ok(String::from("54 sequences, bounds and types exact"))
    } else {
        Err(format!(
            "{} of 54 rows differ: {}",
            diffs.len(),
            diffs.join("; ")
        ))
    }
}

// ---- 2: quartic exceptions ----

fn c2_quartic() -> Check {
    let listed: [(u64, &[u64]); 22] = [
        (5, &[4]),
        (13, &[1, 4, 5, 6, 7, 10]),
        (37, &[3, 28, 29]),
        (61, &[18, 37, 40]),
        (73, &[]),
        (157, &[]),
        (193, &[]),
        (277, &[]),
        (313, &[]),
        (397, &[]),
        (421, &[]),
        (457, &[]),
        (541, &[]),
        (613, &[]),
        (661, &[]),
        (673, &[]),
        (757, &[]),
        (1093, &[]),
        (1201, &[]),
        (1321, &[]),
        (1381, &[]),
        (4621, &[]),
    ];
    let mut diffs = Vec::new();
    for (p, want) in listed {
        let f = PrimeField::new(p).unwrap();
        let got = quartic_exceptions(&f);
        if got != want {
            diffs.push(format!("p={p} got {got:?} printed {want:?}"));
        }
    }
    for (p, k, xi, xi_bar) in [
        (13u64, 1u64, 10u64, 4u64),
        (37, 28, 12, 26),
        (61, 18, 57, 5),
    ] {
        let f = PrimeField::new(p).unwrap();
        if quartic_xi_witnesses(&f, k, 1) != [xi] || quartic_xi_witnesses(&f, k, -1) != [xi_bar] {
            diffs.push(format!("p={p} witnesses"));
        }
    }
    if diffs.is_empty() {
        Ok(String::from("22 primes and 3 witness pairs exact"))
    } else {
        Err(diffs.join("; "))
    }
}

// ---- 3: residue propositions below 10^4 ----

fn c3_residues() -> Check {
    let mut checked = 0;
    for p in primes_below(10_000).into_iter().filter(|&p| p > 2) {
        let f = PrimeField::new(p).unwrap();
        let mut is_sq = vec![false; p as usize];
        let mut roots = vec![0u64; p as usize];
        for x in 0..p {
            is_sq[(x * x % p) as usize] |= x != 0;
            roots[(x * x % p) as usize] += 1;
        }
        let sq = |x: u64| is_sq[(x % p) as usize];
        let ns = |x: u64| x % p != 0 && !sq(x);
        let count = |pred: &dyn Fn(u64) -> bool| (0..p).filter(|&x| pred(x)).count() as u64;

        let r = f.residue_intersections();
        let brute = [
            count(&|x| sq(x) && sq(x + p - 1)),
            count(&|x| ns(x) && ns(x + p - 1)),
            count(&|x| sq(x) && ns(x + p - 1)),
            count(&|x| sq(x) && ns(x + 1)),
            count(&|x| sq(x + p - 1) && sq(p - x)),
        ];
        let ours = [
            r.s_s_plus,
            r.n_n_plus,
            r.s_n_plus,
            r.s_n_minus,
            r.splus_cap_minus_s,
        ];
        ensure(ours == brute, || {
            format!("p={p}: intersections {ours:?} vs {brute:?}")
        })?;
        let closed = if p % 4 == 1 { (p - 5) / 4 } else { (p + 1) / 4 };
        ensure(r.splus_cap_minus_s == closed, || {
            format!("p={p}: closed form")
        })?;
        if p % 4 == 1 {
            ensure(
                ours[..4] == [(p - 5) / 4, (p - 1) / 4, (p - 1) / 4, (p - 1) / 4],
                || format!("p={p}: closed forms {ours:?}"),
            )?;
        }

        let pairs = if p % 4 == 1 { p - 1 } else { p + 1 };
        for k in [1, 2, p - 1] {
            let n: u64 = (0..p)
                .map(|a| roots[a as usize] * roots[((k + p - a) % p) as usize])
                .sum();
            ensure(n == pairs, || format!("p={p} k={k}: {n} pairs"))?;
            ensure(f.sum_two_squares_count(k) == Ok(pairs), || {
                format!("p={p} k={k}")
            })?;
        }

        if p % 4 == 1 && p > 5 {
            let a_s = (1..p).filter(|&x| sq(x) && sq(x + p - 1)).count();
            let u_s = (1..p)
                .filter(|&x| sq(x) && (sq(x + p - 1) || sq(x + 1)))
                .count();
            let a_n = (1..p).filter(|&x| sq(x) && ns(x + p - 1)).count();
            let u_n = (1..p)
                .filter(|&x| sq(x) && (ns(x + p - 1) || ns(x + 1)))
                .count();
            ensure(f.ab_square_counts() == (u_s, a_s) && u_s >= a_s + 2, || {
                format!("p={p}: square A/B")
            })?;
            ensure(
                f.ab_nonsquare_counts() == (u_n, a_n) && u_n >= a_n + 2,
                || format!("p={p}: non-square A/B"),
            )?;
        }

        if p % 8 == 1 {
            let i = (1..p).find(|&i| i * i % p == p - 1).unwrap();
            for x in 1..p {
                let w = f
                    .triple_square_witness(x)
                    .map_err(|e| format!("p={p} x={x}: {e}"))?;
                let cands = [
                    x,
                    i * x % p,
                    i * (x * x % p) % p,
                    (p - i) * x % p,
                    (p - i) * (x * x % p) % p,
                ];
                ensure(cands.contains(&w) && sq(1 + w * w), || {
                    format!("p={p} x={x}: {w}")
                })?;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} odd primes below 10000"))
}

// ---- 4: PSL(2,13) on the cosets of D_12 ----

fn c4_smallest_dihedral() -> Check {
    let m = DihedralModel::new(13).map_err(|e| e.to_string())?;
    let sp = &m.space;
    let find = |text: &str| {
        let name = SuborbitName::parse(text, 13).unwrap();
        (1..sp.suborbits.len())
            .find(|&i| m.names[i] == Some(name))
            .unwrap()
    };
    let full = (1..sp.suborbits.len())
        .filter(|&i| sp.suborbits[i].len() == 12 && sp.is_self_paired(i))
        .count();
    ensure(full == 5 && sp.suborbits.len() == 12, || {
        format!(
            "{full} self-paired of length 12 among {}",
            sp.suborbits.len() - 1
        )
    })?;
    for (name, len, self_paired) in [
        ("S4+", 6, true),
        ("S4-", 6, true),
        ("S6+", 6, false),
        ("S6-", 6, false),
        ("S7+", 3, false),
        ("S7-", 3, false),
    ] {
        let i = find(name);
        ensure(
            sp.suborbits[i].len() == len && sp.is_self_paired(i) == self_paired,
            || format!("{name}: length {}", sp.suborbits[i].len()),
        )?;
    }
    let unions = m.basic_unions();
    for &name in &unions {
        let (g, _) = certify(&FamilyDescriptor::DihedralCase { p: 13, name })?;
        ensure(g.order() == 91, || format!("{name}: order {}", g.order()))?;
    }
    Ok(format!(
        "suborbits match; {} basic graphs certified",
        unions.len()
    ))
}

// ---- 5: dihedral quotient data and the tau tables ----

type Printed = (
    u64,
    &'static [u64],
    &'static [u64],
    &'static [u64],
    &'static [u64],
);

/// Published rows, entries as `±τ` with `τ <= (p-1)/2`; `±31` is read as `∓30` mod 61.
const TAU_37: &[Printed] = &[
    (4, &[13, 17], &[13, 17], &[2, 13, 17, 18], &[2, 18]),
    (10, &[5, 15], &[], &[2, 18], &[]),
    (11, &[2, 13, 17, 18], &[13, 17], &[2, 5, 15, 18], &[5, 15]),
    (12, &[], &[], &[2, 5, 15, 18], &[2, 18]),
    (26, &[2, 5, 15, 18], &[2, 18], &[], &[]),
    (27, &[2, 5, 15, 18], &[5, 15], &[2, 13, 17, 18], &[13, 17]),
    (28, &[2, 18], &[], &[5, 15], &[]),
    (34, &[2, 13, 17, 18], &[2, 18], &[13, 17], &[13, 17]),
];

const TAU_61: &[Printed] = &[
    (4, &[2, 6, 10, 30], &[6, 10], &[2, 30], &[]),
    (5, &[6, 7, 10, 17, 18, 26], &[6, 7, 10, 26], &[], &[]),
    (
        13,
        &[2, 6, 7, 10, 17, 18, 26, 30],
        &[2, 7, 17, 18, 26],
        &[2, 6, 10, 30],
        &[],
    ),
    (14, &[2, 7, 26, 30], &[2, 30], &[7, 17, 18, 26], &[]),
    (15, &[7, 26], &[], &[2, 17, 18, 30], &[2, 30]),
    (16, &[2, 6, 10, 30], &[6, 10], &[6, 10, 17, 18], &[]),
    (20, &[6, 10, 17, 18], &[6, 10, 17, 18], &[17, 18], &[17, 18]),
    (42, &[17, 18], &[17, 18], &[6, 10, 17, 18], &[6, 10, 17, 18]),
    (46, &[6, 10, 17, 18], &[], &[2, 6, 10, 30], &[6, 10]),
    (47, &[2, 17, 18, 30], &[2, 30], &[7, 26], &[]),
    (48, &[7, 17, 18, 26], &[], &[2, 7, 26, 30], &[2, 30]),
    (
        49,
        &[2, 6, 10, 30],
        &[],
        &[2, 6, 7, 10, 17, 18, 26, 30],
        &[2, 7, 17, 18, 26, 30],
    ),
    (57, &[], &[], &[6, 7, 10, 17, 18, 26], &[6, 7, 10, 26]),
    (58, &[2, 30], &[], &[2, 6, 10, 30], &[6, 10]),
];

fn c5_dihedral_quotients() -> Check {
    let mut compared = 0;
    for p in [13u64, 37, 61, 73] {
        let m = DihedralModel::new(p).map_err(|e| e.to_string())?;
        let mut rows = BTreeSet::new();
        for name in m.basic_unions() {
            let row = m.row(name).ok_or_else(|| format!("p={p} {name}: no row"))?;
            rows.insert(row);
            let a = m.analytic_quotient(name).map_err(|e| e.to_string())?;
            let e = m.empirical_quotient(name).map_err(|e| e.to_string())?;
            ensure(a == e, || {
                format!("p={p} {name}: analytic and empirical differ")
            })?;
            compared += 1;
        }
        let want: Vec<u8> = if p % 8 == 1 {
            vec![1, 2, 3, 4, 6, 7, 8, 9]
        } else {
            vec![1, 2, 3, 4, 5, 8, 9]
        };
        ensure(rows.iter().copied().collect::<Vec<_>>() == want, || {
            format!("p={p}: rows {rows:?}")
        })?;
    }
    let columns = ["T+", "T+ square", "T-", "T- square"];
    let mut diffs = Vec::new();
    for (p, printed) in [(37u64, TAU_37), (61, TAU_61)] {
        let ours = DihedralModel::tau_table(p).map_err(|e| e.to_string())?;
        ensure(ours.len() == printed.len(), || {
            format!("p={p}: {} rows", ours.len())
        })?;
        for (r, &(xi, a, b, c, d)) in ours.iter().zip(printed) {
            ensure(r.xi == xi, || format!("p={p}: row xi={} vs {xi}", r.xi))?;
            let cols = [&r.t_plus, &r.t_plus_square, &r.t_minus, &r.t_minus_square];
            for (k, (got, want)) in cols.iter().zip([a, b, c, d]).enumerate() {
                if got.as_slice() != want {
                    diffs.push(format!(
                        "p={p} xi={xi} {}: computed {got:?} printed {want:?}",
                        columns[k]
                    ));
                }
            }
        }
    }
    if diffs.is_empty() {
        Ok(format!("{compared} quotients agree; tau tables agree"))
    } else {
        Err(format!(
            "{compared} quotients agree; tau tables: {}",
            diffs.join("; ")
        ))
    }
}

// ---- 6: the Omega model for q = 5 ----

fn c6_omega() -> Check {
    let m = OmegaModel::new(5).map_err(|e| e.to_string())?;
    ensure(m.order() == 65, || format!("|Omega| = {}", m.order()))?;
    let sizes: Vec<usize> = (0..=2)
        .map(|l| m.space.suborbits[m.suborbit(l).unwrap()].len())
        .collect();
    ensure(sizes == [10, 24, 30], || format!("sizes {sizes:?}"))?;
    let orbits = m.normalizer_orbit_lengths().map_err(|e| e.to_string())?;
    ensure(orbits == [5, 5, 5, 50], || {
        format!("normalizer orbits {orbits:?}")
    })?;
    for lambda in 0..=2u64 {
        let bv = m.block_valencies(lambda).map_err(|e| e.to_string())?;
        let want = if lambda == 0 { 1 } else { 2 };
        ensure(bv.i_to_l == [want], || {
            format!("lambda={lambda}: matching {:?}", bv.i_to_l)
        })?;
    }
    let bv = m.block_valencies(0).map_err(|e| e.to_string())?;
    ensure(
        (
            bv.epsilon,
            bv.inside_l.as_slice(),
            bv.l_mult_one.as_slice(),
            bv.l_mult_two.as_slice(),
        ) == (0, &[0][..], &[3][..], &[2][..]),
        || format!("lambda=0 blocks {bv:?}"),
    )?;
    for lambda in 0..=2 {
        let (g, _) = certify(&FamilyDescriptor::OmegaCase { q: 5, lambda })?;
        ensure(g.order() == 65, || String::from("order"))?;
    }
    Ok(String::from(
        "sizes 10/24/30, orbits 5,5,5,50, blocks match, 3 graphs certified",
    ))
}

// ---- 7: generalized Petersen criteria ----

fn c7_gp() -> Check {
    let mut graphs = 0;
    for n in 3..=14 {
        for k in 1..n {
            let g = gp(n, k, true).map_err(|e| e.to_string())?;
            let found = match hamilton_cycle(&g, DEFAULT_BUDGET) {
                Outcome::Found(c) => is_hamilton_cycle(&g, &c.cycle),
                Outcome::Absent => false,
                Outcome::BudgetExhausted => return Err(format!("GP({n},{k}): budget")),
            };
            ensure(found == gp_is_hamiltonian(n, k), || format!("GP({n},{k})"))?;
            graphs += 1;
        }
    }
    let mut pairs = 0;
    for n in (3..=20).filter(|&n| n != 4) {
        let g = gp(n, 2, false).map_err(|e| e.to_string())?;
        for x in 0..2 * n {
            for y in x + 1..2 * n {
                if gp2_path_admissible(n, x, y) {
                    match hamilton_path(&g, x, y, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
                        Outcome::Found(p) if verify_hamilton_path(&g, &p) => pairs += 1,
                        other => return Err(format!("GP({n},2) {x}-{y}: {other:?}")),
                    }
                }
            }
        }
    }
    Ok(format!(
        "{graphs} graphs agree; {pairs} admissible pairs joined"
    ))
}

// ---- 8: small certificates ----

fn c8_small() -> Check {
    let sp3 = table_space(3).map_err(|e| e.to_string())?.space;
    let four = sp3.suborbits.iter().position(|s| s.len() == 4).unwrap();
    let (g, _) = certify(&FamilyDescriptor::TableRow3 { union: vec![four] })?;
    ensure((g.order(), g.regular_valency()) == (35, Some(4)), || {
        String::from("O4")
    })?;

    let sp7 = table_space(7).map_err(|e| e.to_string())?.space;
    let mut a4 = 0;
    for i in (1..sp7.suborbits.len()).filter(|&i| sp7.suborbits[i].len() == 4) {
        let (g, _) = certify(&FamilyDescriptor::TableRow7 { union: vec![i] })?;
        ensure((g.order(), g.regular_valency()) == (91, Some(4)), || {
            format!("A4 suborbit {i}")
        })?;
        a4 += 1;
    }
    ensure(a4 >= 2, || format!("{a4} valency-4 graphs"))?;

    let fermat = fermat_specs(5, 3);
    for s in &fermat {
        let (g, _) = certify(&FamilyDescriptor::Fermat(s.clone()))?;
        ensure(g.order() == 15, || String::from("Fermat order"))?;
    }
    let pet = prove(
        &FamilyDescriptor::Metacirculant(petersen_spec()),
        &Options::default(),
    );
    ensure(pet == Err(Error::NotHamiltonian), || {
        format!("Petersen: {pet:?}")
    })?;
    Ok(format!(
        "O4, {a4} valency-4 A4 graphs, {} Fermat(5,3) graphs; Petersen rejected",
        fermat.len()
    ))
}

// ---- 9: PSL(2,61) on the cosets of A_5 ----

fn c9_psl61() -> Check {
    let ts = table_space(4).map_err(|e| e.to_string())?;
    let sp = &ts.space;
    ensure(sp.degree() == 1891, || format!("degree {}", sp.degree()))?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &sp.suborbits {
        *counts.entry(s.len()).or_default() += 1;
    }
    let want: BTreeMap<usize, usize> =
        [(1, 1), (6, 1), (10, 1), (12, 2), (20, 4), (30, 5), (60, 27)]
            .into_iter()
            .collect();
    ensure(counts == want, || format!("subdegrees {counts:?}"))?;
    let six = sp.suborbits.iter().position(|s| s.len() == 6).unwrap();
    let (g, cert) = certify(&FamilyDescriptor::TableRow4 { union: vec![six] })?;
    ensure(g.regular_valency() == Some(6), || String::from("valency"))?;
    ensure(
        cert.strategy == Strategy::QuotientLift && trace(&cert, "rho") == Some("31x61"),
        || format!("{} via {:?}", cert.strategy.name(), trace(&cert, "rho")),
    )?;
    Ok(String::from(
        "subdegrees match; valency-6 graph lifted from a 31-vertex quotient",
    ))
}

// ---- 10: survey ----

fn c10_survey() -> Check {
    let descs = survey_descriptors(255, false).map_err(|e| e.to_string())?;
    let rows = survey::run(&descs, &Options::default(), 0).map_err(|e| e.to_string())?;
    let failed: Vec<&survey::SurveyRow> = rows.iter().filter(|r| !r.certified()).collect();
    let petersen = FamilyDescriptor::Metacirculant(petersen_spec());
    let only_petersen = failed.len() == 1
        && failed[0].descriptor == petersen
        && failed[0].outcome == Err(Error::NotHamiltonian);
    ensure(only_petersen, || {
        let list: Vec<String> = failed
            .iter()
            .map(|r| format!("{} ({})", r.descriptor, r.outcome.as_ref().unwrap_err()))
            .collect();
        format!("uncertified: {}", list.join(", "))
    })?;
    let mut by_strategy: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &rows {
        if let Ok(s) = r.outcome {
            *by_strategy.entry(s).or_default() += 1;
        }
    }
    let mix: Vec<String> = by_strategy
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    Ok(format!(
        "{} of {} certified, Petersen rejected; {}",
        rows.len() - 1,
        rows.len(),
        mix.join(" ")
    ))
}

const KNOWN_C1: &str = "5 of 54 rows differ: {2} 56/3 printed 55/3; \
{2,3,5,7,23} 5146/t=805 printed 5145/t=805; {2,3,5,7,11} 8161/t=385 printed 8160/t=385; \
{2,3,5,7,19} 5580/t=665 printed 36145/1; {2,3,5,7,17} 5905/t=595 printed 37400/1";

const KNOWN_C2: &str = "p=5 got [0, 4] printed [4]";

const KNOWN_C5: &str = "119 quotients agree; tau tables: \
p=61 xi=13 T+ square: computed [2, 7, 17, 18, 26, 30] printed [2, 7, 17, 18, 26]";

fn criteria() -> Vec<Criterion> {
    let c = |id, name, limit, known_failure, run| Criterion {
        id,
        name,
        limit: secs(limit),
        slow: false,
        known_failure,
        run,
    };
    vec![
        c(
            1,
            "exceptional sequences",
            300,
            Some(KNOWN_C1),
            c1_tables as fn() -> Check,
        ),
        c(2, "quartic exceptions", 60, Some(KNOWN_C2), c2_quartic),
        c(3, "residue propositions below 10^4", 120, None, c3_residues),
        c(4, "PSL(2,13) on D12 cosets", 30, None, c4_smallest_dihedral),
        c(
            5,
            "dihedral quotients and tau tables",
            120,
            Some(KNOWN_C5),
            c5_dihedral_quotients,
        ),
        c(6, "Omega model q=5", 60, None, c6_omega),
        c(7, "generalized Petersen criteria", 300, None, c7_gp),
        c(8, "small certificates", 120, None, c8_small),
        Criterion {
            slow: true,
            ..c(9, "PSL(2,61) on A5 cosets", 600, None, c9_psl61)
        },
        c(10, "survey to order 255", 900, None, c10_survey),
    ]
}

fn main() {
    let slow = std::env::args().any(|a| a == "--slow")
        || std::env::var("PQHAM_SLOW").is_ok_and(|v| v == "1");
    let mut unexpected = 0;
    for c in criteria() {
        let label = format!("criterion {:>2} {}", c.id, c.name);
        if c.slow && !slow {
            println!("{label}: SKIP (needs --slow or PQHAM_SLOW=1)");
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let time = format!("{:.1}s of {}s", took.as_secs_f64(), c.limit.as_secs());
        let outcome = match outcome {
            Ok(_) if took > c.limit => Err(format!("over the time limit ({time})")),
            o => o,
        };
        match (outcome, c.known_failure) {
            (Ok(detail), None) => println!("{label}: PASS [{time}] {detail}"),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("{label}: PASS (unexpected, a known failure no longer occurs) [{time}] {detail}");
            }
            (Err(detail), Some(known)) if detail == known => {
                println!("{label}: FAIL (expected) [{time}] {detail}");
            }
            (Err(detail), _) => {
                unexpected += 1;
                println!("{label}: FAIL [{time}] {detail}");
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected outcome(s)");
        std::process::exit(1);
    }
}
