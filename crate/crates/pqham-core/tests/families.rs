use std::collections::BTreeSet;

use pqham_core::families::{
    fermat_fibre_shift, fermat_graph, fermat_specs, metacirculant, metacirculant_corpus,
    FermatSpec, MetacirculantSpec,
};
use pqham_core::graph::{are_isomorphic, is_vertex_transitive, Graph};
use pqham_core::perm::orbit;
use pqham_core::quotient::verify_semiregular;

/// Edge rule checked directly: `v_i^r ~ v_j^s` iff `s - r` lies in `alpha^i T_{j-i}`.
fn rule_graph(spec: &MetacirculantSpec) -> Graph {
    let (m, n) = (spec.m, spec.n);
    let pow = |e: usize| (0..e).fold(1 % n, |acc, _| acc * spec.alpha % n);
    Graph::from_neighbor_fn(m * n, |x| {
        let (i, r) = (x / n, x % n);
        (0..m * n)
            .filter(|&y| {
                let (j, s) = (y / n, y % n);
                let k = (j + m - i) % m;
                let diff = (s + n - r) % n;
                spec.t_of(k).iter().any(|&t| t * pow(i) % n == diff) && y != x
            })
            .collect()
    })
    .unwrap()
}

#[test]
fn metacirculant_examples() {
    let pet = MetacirculantSpec::new(2, 5, 2, vec![vec![1, 4], vec![0]]).unwrap();
    let mc = metacirculant(&pet).unwrap();
    assert!(are_isomorphic(&mc.graph, &Graph::petersen()));
    let circ = MetacirculantSpec::new(1, 7, 1, vec![vec![1, 6, 2, 5]]).unwrap();
    let c = metacirculant(&circ).unwrap().graph;
    assert!((0..7).all(|v| {
        let want: BTreeSet<usize> = [1, 6, 2, 5].iter().map(|&t| (v + t) % 7).collect();
        c.neighbors(v).iter().copied().collect::<BTreeSet<_>>() == want
    }));
    assert!(MetacirculantSpec::new(2, 5, 2, vec![vec![0, 1, 4], vec![0]]).is_err());
    assert!(MetacirculantSpec::new(2, 5, 2, vec![vec![1], vec![0]]).is_err());
}

#[test]
fn corpus_admits_transitive_rho_sigma() {
    let corpus = metacirculant_corpus(255);
    assert!(corpus.len() > 50);
    for spec in corpus {
        let mc = metacirculant(&spec).unwrap();
        let g = &mc.graph;
        assert_eq!(*g, rule_graph(&spec), "{spec:?}");
        assert_eq!(verify_semiregular(g, &mc.rho), Some((spec.m, spec.n)));
        assert!(g.is_automorphism(&mc.sigma));
        let gens = vec![mc.rho.clone(), mc.sigma.clone()];
        assert_eq!(orbit(&gens, g.order(), 0).len(), g.order(), "{spec:?}");
        assert!(g.regular_valency().is_some());
    }
}

#[test]
fn smallest_fermat_graph() {
    let spec = FermatSpec::new(5, 3, vec![], vec![1]).unwrap();
    let f = fermat_graph(&spec).unwrap();
    assert_eq!(f.graph.order(), 15);
    assert!(are_isomorphic(&f.graph, &Graph::petersen().line_graph()));
    assert!(!f.graph.is_automorphism(&fermat_fibre_shift(5, 3)));
    assert_eq!(verify_semiregular(&f.graph, &f.phi), Some((5, 3)));
    assert!(FermatSpec::new(17, 5, vec![], vec![]).is_err());
    assert!(FermatSpec::new(17, 5, vec![1], vec![1]).is_err());
    assert!(FermatSpec::new(7, 5, vec![], vec![1]).is_err());
}

#[test]
fn fermat_graphs_are_vertex_transitive() {
    for (p, q) in [(5, 3), (17, 3), (17, 5)] {
        let specs = fermat_specs(p, q);
        assert!(!specs.is_empty());
        for spec in specs.iter().take(6) {
            let f = fermat_graph(spec).unwrap();
            assert_eq!(f.graph.order(), p * q);
            assert_eq!(verify_semiregular(&f.graph, &f.phi), Some((p, q)));
            assert!(is_vertex_transitive(&f.graph), "{spec:?}");
        }
    }
}
