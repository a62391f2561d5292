use std::collections::HashSet;

use pqham_core::engine::FamilyDescriptor;
use pqham_core::engine::{instance, survey_descriptors, table_space};
use pqham_core::graph::{are_isomorphic, Graph, Multigraph};
use pqham_core::quotient::{
    find_lifting_voltages, from_symbol, lift_closed_walk, quotient, stitch_isolates, symbol,
    verify_semiregular, FruchtSymbol, LiftOutcome, SemiregularAut,
};
use pqham_core::search::{hamilton_path, Outcome, DEFAULT_BUDGET};

fn is_cycle(g: &Graph, c: &[usize]) -> bool {
    let e: HashSet<(usize, usize)> = g.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let distinct: HashSet<usize> = c.iter().copied().collect();
    distinct.len() == c.len() && (0..c.len()).all(|i| e.contains(&(c[i], c[(i + 1) % c.len()])))
}

/// The symbol of the odd graph relative to a `(7,5)`-semiregular automorphism, as printed.
fn printed_odd_symbol() -> FruchtSymbol {
    let e: Vec<usize> = vec![];
    let s = |v: &[usize]| v.to_vec();
    let rows = vec![
        vec![s(&e), s(&[0]), s(&e), s(&e), s(&[0]), s(&e), s(&[0, 4])],
        vec![s(&[0]), s(&e), s(&[0, 4]), s(&e), s(&e), s(&e), s(&[2])],
        vec![s(&e), s(&[0, 1]), s(&e), s(&[0, 3]), s(&e), s(&e), s(&e)],
        vec![s(&e), s(&e), s(&[0, 2]), s(&e), s(&[4]), s(&[0]), s(&e)],
        vec![s(&[0]), s(&e), s(&e), s(&[1]), s(&e), s(&[0, 2]), s(&e)],
        vec![s(&e), s(&e), s(&e), s(&[0]), s(&[0, 3]), s(&e), s(&[1])],
        vec![s(&[0, 1]), s(&[3]), s(&e), s(&e), s(&e), s(&[4]), s(&e)],
    ];
    FruchtSymbol {
        n: 5,
        bases: (0..7).map(|i| i * 5).collect(),
        sets: rows,
    }
}

fn odd_graph() -> Graph {
    let sp = table_space(3).unwrap().space;
    let four = sp.suborbits.iter().position(|s| s.len() == 4).unwrap();
    sp.orbital_graph(&[four]).unwrap()
}

#[test]
fn printed_odd_symbol_is_the_odd_graph() {
    let sym = printed_odd_symbol();
    let g = from_symbol(&sym).unwrap();
    assert_eq!((g.order(), g.regular_valency()), (35, Some(4)));
    assert!(are_isomorphic(&g, &odd_graph()));

    // the symbol's own rotation is (7,5)-semiregular, and its quotient has a 7-cycle through
    // a double edge that lifts to a Hamilton cycle
    let rot: Vec<usize> = (0..35).map(|v| v / 5 * 5 + (v % 5 + 1) % 5).collect();
    let rho = SemiregularAut::new(&g, rot).unwrap();
    assert_eq!((rho.m, rho.n), (7, 5));
    assert_eq!(symbol(&g, &rho, Some(&sym.bases)).unwrap(), sym);
    let quo = quotient(&g, &rho);
    for i in 0..7 {
        for j in 0..7 {
            if i != j {
                assert_eq!(quo.multiplicity(i, j), sym.set(i, j).len());
            }
        }
    }
    let walk = [0, 1, 2, 3, 4, 5, 6];
    assert!(walk
        .iter()
        .zip(walk.iter().cycle().skip(1))
        .any(|(&a, &b)| quo.multiplicity(a, b) == 2));
    let volts = find_lifting_voltages(&sym, &walk).unwrap();
    match lift_closed_walk(&sym, &g, &rho, &walk, &volts).unwrap() {
        LiftOutcome::FullCycle(c) => assert!(c.len() == 35 && is_cycle(&g, &c)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn semiregular_examples() {
    let p = Graph::petersen();
    let rot: Vec<usize> = (0..10).map(|v| v / 5 * 5 + (v % 5 + 1) % 5).collect();
    assert_eq!(verify_semiregular(&p, &rot), Some((2, 5)));
    let id: Vec<usize> = (0..10).collect();
    assert_eq!(verify_semiregular(&p, &id), None);
    let inst = instance(&FamilyDescriptor::TableRow3 {
        union: vec![table_space(3)
            .unwrap()
            .space
            .suborbits
            .iter()
            .position(|s| s.len() == 4)
            .unwrap()],
    })
    .unwrap();
    assert_eq!(verify_semiregular(&inst.graph, &inst.rhos[0]), Some((7, 5)));

    let c5 = Graph::cycle(5);
    let r5: Vec<usize> = (0..5).map(|v| (v + 1) % 5).collect();
    let rho = SemiregularAut::new(&c5, r5).unwrap();
    let sym = symbol(&c5, &rho, None).unwrap();
    assert_eq!(sym.sets, vec![vec![vec![1, 4]]]);

    let c6 = Graph::cycle(6);
    let r2: Vec<usize> = (0..6).map(|v| (v + 2) % 6).collect();
    let rho = SemiregularAut::new(&c6, r2).unwrap();
    let quo = quotient(&c6, &rho);
    assert_eq!(quo.order(), 2);
    assert_eq!((quo.multiplicity(0, 1), quo.loop_valency(0)), (2, 0));
}

#[test]
fn stitch_examples() {
    let cycle: Vec<usize> = (0..10).collect();
    let out = stitch_isolates(&cycle, None, &[10, 11, 12], |_, _| true).unwrap();
    let mut sorted = out.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..13).collect::<Vec<_>>());
    assert!(stitch_isolates(&cycle, None, &[10], |w, c| w == 10 && c == 0).is_err());
    let a: Vec<usize> = (0..4).collect();
    let b: Vec<usize> = (4..8).collect();
    let out = stitch_isolates(&a, Some(&b), &[8, 9, 10], |_, _| true).unwrap();
    assert_eq!(out.len(), 11);
    assert!(stitch_isolates(&a, Some(&b), &[8], |_, _| true).is_err());
}

/// Every quotient invariant, checked on one graph and semiregular automorphism.
fn check_quotient(name: &str, g: &Graph, perm: &[usize]) {
    let rho = SemiregularAut::new(g, perm.to_vec()).unwrap();
    let (m, n) = (rho.m, rho.n);
    let quo = quotient(g, &rho);
    let val = g.regular_valency().unwrap();
    for a in 0..m {
        let sum: usize = (0..m)
            .filter(|&b| b != a)
            .map(|b| quo.multiplicity(a, b))
            .sum();
        assert_eq!(quo.loop_valency(a) + sum, val, "{name}");
    }

    let sym = symbol(g, &rho, None).unwrap();
    for i in 0..m {
        let neg: Vec<usize> = {
            let mut v: Vec<usize> = sym.set(i, i).iter().map(|&t| (n - t) % n).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(neg, sym.set(i, i), "{name}");
        for j in 0..m {
            if i != j {
                assert_eq!(sym.set(i, j).len(), quo.multiplicity(i, j), "{name}");
            }
        }
    }

    // round trip: rho^t(u_i) is vertex i*n + t of the rebuilt graph
    let rebuilt = from_symbol(&sym).unwrap();
    let mut label = vec![usize::MAX; g.order()];
    for (i, &u) in sym.bases.iter().enumerate() {
        let mut x = u;
        for t in 0..n {
            label[x] = i * n + t;
            x = perm[x];
        }
    }
    assert_eq!(g.relabel(&label).unwrap(), rebuilt, "{name}");

    // lifting dichotomy: voltage sum decides, and a double edge always gives a full lift
    let und = quo.underlying();
    for (a, b, k) in quo.edges() {
        if k < 2 {
            continue;
        }
        let walk = if m == 2 {
            vec![a, b]
        } else {
            match hamilton_path(&und, a, b, DEFAULT_BUDGET).unwrap() {
                Outcome::Found(p) => p,
                _ => continue,
            }
        };
        let volts = find_lifting_voltages(&sym, &walk).unwrap_or_else(|| panic!("{name}"));
        match lift_closed_walk(&sym, g, &rho, &walk, &volts).unwrap() {
            LiftOutcome::FullCycle(c) => {
                assert_eq!(c.len(), walk.len() * n);
                assert!(is_cycle(g, &c), "{name}");
            }
            other => panic!("{name}: {other:?}"),
        }
        let kwalk = walk.len();
        if kwalk == 2 {
            continue;
        }
        let first: Vec<usize> = (0..kwalk)
            .map(|i| sym.set(walk[i], walk[(i + 1) % kwalk])[0])
            .collect();
        let winding = first.iter().sum::<usize>() % n;
        let out = lift_closed_walk(&sym, g, &rho, &walk, &first).unwrap();
        assert_eq!(
            matches!(out, LiftOutcome::FullCycle(_)),
            winding != 0,
            "{name}"
        );
        if winding == 0 {
            assert_eq!(
                out,
                LiftOutcome::DisjointCycles {
                    count: n,
                    length: kwalk
                }
            );
        }
    }
}

#[test]
fn quotients_of_every_small_instance() {
    let mut checked = 0;
    for d in survey_descriptors(91, false).unwrap() {
        let inst = instance(&d).unwrap();
        for rho in &inst.rhos {
            check_quotient(&d.to_string(), &inst.graph, rho);
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn fermat_fibres_cover_the_complete_graph() {
    for d in survey_descriptors(255, false)
        .unwrap()
        .into_iter()
        .filter(|d| d.family() == "fermat")
    {
        let FamilyDescriptor::Fermat(spec) = &d else {
            unreachable!()
        };
        let inst = instance(&d).unwrap();
        let (p, q) = (spec.p, spec.q);
        let rho = SemiregularAut::new(&inst.graph, inst.rhos[0].clone()).unwrap();
        assert_eq!((rho.m, rho.n), (p, q));
        // fibres {v} x GF(q) form an equitable partition whose quotient is K_p
        let g = &inst.graph;
        let mut fibre = Multigraph::new(p);
        for v in 0..p {
            let mut counts = vec![0usize; p];
            for &y in g.neighbors(v * q) {
                counts[y / q] += 1;
            }
            for r in 1..q {
                let mut c = vec![0usize; p];
                for &y in g.neighbors(v * q + r) {
                    c[y / q] += 1;
                }
                assert_eq!(c, counts, "{d}");
            }
            for (u, &c) in counts.iter().enumerate().skip(v + 1) {
                fibre.add_edges(v, u, c).unwrap();
            }
        }
        assert_eq!(fibre.underlying(), Graph::complete(p), "{d}");
    }
}

/// Fibre-preserving maps `(v, r) -> (v, f_v(r))` of order 3 without fixed points.
fn fibre_preserving_semiregular(g: &Graph, p: usize, q: usize) -> usize {
    assert_eq!(q, 3);
    let perms: [[usize; 3]; 2] = [[1, 2, 0], [2, 0, 1]];
    let mut found = 0;
    for code in 0..1usize << p {
        let f: Vec<usize> = (0..p * q)
            .map(|x| x / q * q + perms[code >> (x / q) & 1][x % q])
            .collect();
        if g.is_automorphism(&f) {
            found += 1;
        }
    }
    found
}

#[test]
fn smallest_fermat_graph_has_no_fibre_shift() {
    for d in survey_descriptors(15, false)
        .unwrap()
        .into_iter()
        .filter(|d| d.family() == "fermat")
    {
        let inst = instance(&d).unwrap();
        assert_eq!(fibre_preserving_semiregular(&inst.graph, 5, 3), 0, "{d}");
    }
}
