use num_bigint::BigUint;

use super::*;
use crate::automata::{bits, TrackAlphabet};
use crate::towerpres::{encode_tuple, OrbitWalker, TowerBound, TupleV};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn xi_examples() {
    let unary = Presentation::unary();
    let b2 = Presentation::base_k(2).unwrap();
    assert_eq!(xi(&bits("101"), &b2, &unary).unwrap(), TowerBound::from(5));
    assert_eq!(xi(&bits("101"), &b2, &b2).unwrap(), TowerBound::from(3));
    let tower = Presentation::tower();
    let w = encode_tuple(&TupleV::small(0, 4, 0, 0).unwrap());
    assert_eq!(xi(&w, &tower, &unary).unwrap(), TowerBound::from(23));
}

#[test]
fn unary_basics() {
    let u = Presentation::unary();
    assert_eq!(u.decode(&[0, 0, 0]), Some(TowerBound::from(3)));
    assert_eq!(u.decode(&[]), Some(TowerBound::from(0)));
    let succ = u.successor().unwrap();
    let pair = TrackAlphabet::uniform(2, &["0"]);
    for k in 0..=50 {
        let w = pair.convolve(&[vec![0; k], vec![0; k + 1]]).unwrap();
        assert!(succ.accepts(&w).unwrap());
        let w = pair.convolve(&[vec![0; k], vec![0; k + 2]]).unwrap();
        assert!(!succ.accepts(&w).unwrap());
    }
}

#[test]
fn base_k_round_trip_and_successor() {
    let b4 = Presentation::base_k(4).unwrap();
    for n in 0..4u64.pow(6) {
        let w = b4.encode(&big(n)).unwrap();
        assert_eq!(b4.decode(&w), Some(TowerBound::from(n)));
    }
    let b2 = Presentation::base_k(2).unwrap();
    assert_eq!(b2.decode(&bits("101")), Some(TowerBound::from(5)));
    assert_eq!(b2.decode(&bits("10")), None);
    let succ = b2.successor().unwrap();
    let pair = TrackAlphabet::binary(2);
    for n in 0..200u64 {
        for m in 0..200u64 {
            let w = pair
                .convolve(&[b2.encode(&big(n)).unwrap(), b2.encode(&big(m)).unwrap()])
                .unwrap();
            assert_eq!(succ.accepts(&w).unwrap(), m == n + 1, "{n} {m}");
        }
    }
}

#[test]
fn s_of_n_examples() {
    let unary = Presentation::unary();
    let b2 = Presentation::base_k(2).unwrap();
    let ex = Strategy::Exhaustive { budget: 1 << 20 };
    assert_eq!(
        s_of_n(0, &b2, &unary, ex).unwrap().s_value,
        TowerBound::from(0)
    );
    let p = s_of_n(4, &b2, &unary, ex).unwrap();
    assert_eq!(p.s_value, TowerBound::from(15));
    assert_eq!(p.witnesses[0].0, "1111");
    assert_eq!(
        s_of_n(4, &b2, &unary, Strategy::Extremal).unwrap().s_value,
        TowerBound::from(15)
    );
    let limited = s_of_n(6, &b2, &unary, Strategy::Exhaustive { budget: 10 }).unwrap();
    assert!(limited.exhausted);
    for n in 0..10 {
        let p = s_of_n(n, &b2, &b2, ex).unwrap();
        assert!(p.s_value.at_least_tower(0) || n == 0);
        assert!(p.s_value.exact().unwrap() <= &big(n as u64));
    }
}

#[test]
fn orbit_assisted_rate() {
    let unary = Presentation::unary();
    let tower = Presentation::tower();
    let mut w = OrbitWalker::new(1 << 20);
    w.walk(300_000).unwrap();
    let p = s_of_n(3, &tower, &unary, Strategy::OrbitAssisted { walker: &w }).unwrap();
    assert!(p.s_value.at_least_tower(3));
    assert!(p.s_value.at_least_tower(9));
    let p1 = s_of_n(1, &tower, &unary, Strategy::OrbitAssisted { walker: &w }).unwrap();
    assert_eq!(p1.s_value, TowerBound::from(7));
    let csv = profiles_csv(&[p1, p]);
    assert!(csv.starts_with("n,s_value,witness\n1,7,"));
    assert!(csv.contains("\n3,T(9)+,"));
}

#[test]
fn exponential_growth_bounds() {
    let b2 = Presentation::base_k(2).unwrap();
    let r = lemma1_bound_check(&b2, 12).unwrap();
    assert!(r.passed());
    assert_eq!(r.sigma, 3);
    for row in &r.rows {
        assert_eq!(row.max_value, (big(1) << row.n) - 1u32);
    }
    assert!(lemma1_bound_check(&Presentation::unary(), 4).is_err());
}

#[test]
fn incompressibility_base4_vs_base2() {
    let b2 = Presentation::base_k(2).unwrap();
    let b4 = Presentation::base_k(4).unwrap();
    let r = incompressibility_check(&b4, &b2, 16, 30).unwrap();
    assert!(r.passed());
    assert!(r.fits_line(2, 1));
    assert!(r.gaps.iter().all(|&g| g == 1));
    let same = incompressibility_check(&b2, &b2, 12, 10).unwrap();
    for row in &same.rows {
        assert_eq!(row.s, row.n.max(1) as u64 * (row.n > 0) as u64);
    }
}

#[test]
fn bijectivize_keeps_bijective_language() {
    let b2 = Presentation::base_k(2).unwrap();
    let kept = bijectivize(b2.language(), b2.equality()).unwrap();
    assert_eq!(kept, b2.language().minimize());
}
