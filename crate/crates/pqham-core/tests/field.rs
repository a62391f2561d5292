use std::collections::BTreeSet;

use pqham_core::field::{is_prime, primes_below, totient, PrimeField, ResidueClass};
use proptest::prelude::*;

/// Nonzero squares by squaring every element.
fn squares(p: u64) -> BTreeSet<u64> {
    (1..p).map(|x| x * x % p).collect()
}

fn odd_primes(limit: u64) -> Vec<u64> {
    primes_below(limit).into_iter().filter(|&p| p > 2).collect()
}

#[test]
fn classify_examples() {
    let f13 = PrimeField::new(13).unwrap();
    assert_eq!(f13.elem(-1).classify(), ResidueClass::Square);
    let f7 = PrimeField::new(7).unwrap();
    assert_eq!(f7.elem(2).classify(), ResidueClass::Square);
    assert_eq!(f7.elem(0).classify(), ResidueClass::Zero);
    assert_eq!(f7.elem(3).classify(), ResidueClass::NonSquare);
}

#[test]
fn sqrt_examples() {
    assert_eq!(PrimeField::new(13).unwrap().sqrt(12), vec![5, 8]);
    assert_eq!(PrimeField::new(11).unwrap().sqrt(0), vec![0]);
    assert!(PrimeField::new(5).unwrap().sqrt(2).is_empty());
}

#[test]
fn primitive_root_examples() {
    assert_eq!(
        PrimeField::new(37).unwrap().primitive_roots(),
        vec![2, 5, 13, 15, 17, 18, 19, 20, 22, 24, 32, 35]
    );
    let f61 = PrimeField::new(61).unwrap();
    let mut expect: Vec<u64> = [2u64, 6, 7, 10, 17, 18, 26, 30]
        .iter()
        .flat_map(|&x| [x, 61 - x])
        .collect();
    expect.sort_unstable();
    assert_eq!(f61.primitive_roots(), expect);
    assert_eq!(PrimeField::new(5).unwrap().primitive_roots(), vec![2, 3]);
}

#[test]
fn intersection_examples() {
    assert_eq!(
        PrimeField::new(13)
            .unwrap()
            .residue_intersections()
            .s_s_plus,
        2
    );
    assert_eq!(
        PrimeField::new(11)
            .unwrap()
            .residue_intersections()
            .splus_cap_minus_s,
        3
    );
    assert_eq!(
        PrimeField::new(17)
            .unwrap()
            .residue_intersections()
            .n_n_plus,
        4
    );
}

#[test]
fn two_squares_examples() {
    assert_eq!(
        PrimeField::new(13).unwrap().sum_two_squares_count(1),
        Ok(12)
    );
    assert_eq!(PrimeField::new(7).unwrap().sum_two_squares_count(1), Ok(8));
    assert_eq!(PrimeField::new(5).unwrap().sum_two_squares_count(1), Ok(4));
    assert!(PrimeField::new(5)
        .unwrap()
        .sum_two_squares_count(0)
        .is_err());
}

#[test]
fn triple_witness_examples() {
    let f17 = PrimeField::new(17).unwrap();
    assert_eq!(f17.sqrt_minus_one(), Some(4));
    assert_eq!(f17.triple_square_witness(1), Ok(1));
    let w = f17.triple_square_witness(4).unwrap();
    assert!([4, 16, 13].contains(&w));
    assert!(squares(17).contains(&((1 + w * w) % 17)));
    assert!(PrimeField::new(41)
        .unwrap()
        .triple_square_witness(1)
        .is_ok());
    assert!(PrimeField::new(13)
        .unwrap()
        .triple_square_witness(1)
        .is_err());
}

#[test]
fn closed_forms_below_ten_thousand() {
    for p in odd_primes(10_000) {
        let f = PrimeField::new(p).unwrap();
        let s = squares(p);
        let sq = |x: u64| s.contains(&(x % p));
        let ns = |x: u64| x % p != 0 && !sq(x);

        // residue class sizes and the quadratic character of -1 and 2
        assert_eq!(s.len() as u64, (p - 1) / 2);
        assert_eq!(sq(p - 1), p % 4 == 1, "p={p}");
        assert_eq!(sq(2), p % 8 == 1 || p % 8 == 7, "p={p}");

        let r = f.residue_intersections();
        let shifted_neg: u64 = (0..p).filter(|&x| sq(x + p - 1) && sq(p - x)).count() as u64;
        assert_eq!(r.splus_cap_minus_s, shifted_neg);
        if p % 4 == 1 {
            assert_eq!(r.splus_cap_minus_s, (p - 5) / 4, "p={p}");
            assert_eq!(r.s_s_plus, (p - 5) / 4);
            assert_eq!(r.n_n_plus, (p - 1) / 4);
            assert_eq!(r.s_n_plus, (p - 1) / 4);
            assert_eq!(r.s_n_minus, (p - 1) / 4);
            let a_s: BTreeSet<u64> = (1..p).filter(|&x| sq(x) && sq(x + p - 1)).collect();
            let b_s: BTreeSet<u64> = (1..p).filter(|&x| sq(x) && sq(x + 1)).collect();
            let a_n: BTreeSet<u64> = (1..p).filter(|&x| sq(x) && ns(x + p - 1)).collect();
            let b_n: BTreeSet<u64> = (1..p).filter(|&x| sq(x) && ns(x + 1)).collect();
            assert_eq!(f.ab_square_counts(), (a_s.union(&b_s).count(), a_s.len()));
            assert_eq!(
                f.ab_nonsquare_counts(),
                (a_n.union(&b_n).count(), a_n.len())
            );
            if p > 5 {
                let (u, a) = f.ab_square_counts();
                assert!(u >= a + 2, "p={p}");
                let (u, a) = f.ab_nonsquare_counts();
                assert!(u >= a + 2, "p={p}");
            }
        } else {
            assert_eq!(r.splus_cap_minus_s, (p + 1) / 4, "p={p}");
        }

        let expect = if p % 4 == 1 { p - 1 } else { p + 1 };
        for k in [1, 2, p - 1] {
            assert_eq!(f.sum_two_squares_count(k), Ok(expect), "p={p} k={k}");
        }

        assert_eq!(f.primitive_roots().len() as u64, totient(p - 1), "p={p}");

        if p % 8 == 1 {
            let i = f.sqrt_minus_one().unwrap();
            assert_eq!(i * i % p, p - 1);
            assert!(i <= p - i);
            for x in 1..p.min(200) {
                let w = f.triple_square_witness(x).unwrap();
                assert!([x, i * x % p, i * (x * x % p) % p].contains(&w));
                assert!(sq(1 + w * w % p));
            }
        }
    }
}

#[test]
fn sqrt_below_ten_thousand() {
    for p in odd_primes(10_000) {
        let f = PrimeField::new(p).unwrap();
        for a in squares(p) {
            let r = f.sqrt(a);
            assert_eq!(r.len(), 2);
            assert!(r[0] < r[1] && r[0] + r[1] == p);
            assert_eq!(r[0] * r[0] % p, a, "p={p} a={a}");
        }
    }
}

#[test]
fn rejects_non_primes() {
    for n in [0, 1, 2, 9, 15, 1 << 31] {
        assert!(PrimeField::new(n).is_err(), "{n}");
    }
    assert!(is_prime((1 << 31) - 1));
}

fn prime_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(odd_primes(2000))
}

proptest! {
    #[test]
    fn multiplicative_character(p in prime_strategy(), a in 1u64..100_000, b in 1u64..100_000) {
        let f = PrimeField::new(p).unwrap();
        let (a, b) = (a % p, b % p);
        prop_assume!(a != 0 && b != 0);
        let ab = f.mul(a, b);
        prop_assert_eq!(f.is_square(ab), f.is_square(a) == f.is_square(b));
        prop_assert_eq!(i64::from(f.legendre(ab)), i64::from(f.legendre(a)) * i64::from(f.legendre(b)));
    }

    #[test]
    fn field_axioms(p in prime_strategy(), a in 0u64..100_000, b in 0u64..100_000) {
        let f = PrimeField::new(p).unwrap();
        let (a, b) = (a % p, b % p);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if b != 0 {
            prop_assert_eq!(f.mul(f.div(a, b), b), a);
            prop_assert_eq!(f.pow(b, p - 1), 1);
        }
    }

    #[test]
    fn sqrt_round_trip(p in prime_strategy(), x in 0u64..100_000) {
        let f = PrimeField::new(p).unwrap();
        let a = f.mul(x % p, x % p);
        let r = f.sqrt(a);
        prop_assert!(r.contains(&(x % p)));
        prop_assert!(r.iter().all(|&y| f.mul(y, y) == a));
    }
}
