//! The search engine against plain enumeration of every weighting.

mod common;

use common::{brute_force, classes_of, girth_bruteforce, naive_member};
use num_bigint::BigUint;
use nsq::search::{count_members, ex_c3c4, max_product, max_sum, SearchOptions};
use nsq::{ConstraintSpec, Parallelism};

fn compare(n: usize, s: usize, q: u64) {
    let spec = ConstraintSpec::new(s, q).unwrap();
    let opts = SearchOptions::default().with_parallelism(Parallelism::Sequential).all_witnesses();
    let brute = brute_force(n, s, q);
    let ctx = format!("(n, s, q) = ({n}, {s}, {q})");

    let p = max_product(n, spec, &opts).unwrap();
    assert_eq!(p.value, brute.max_product, "product {ctx}");
    assert_eq!(classes_of(&p.witnesses), brute.product_classes, "product classes {ctx}");
    assert_eq!(p.witness_count_labeled, Some(brute.product_labeled), "labeled product witnesses {ctx}");

    let m = max_sum(n, spec, &opts).unwrap();
    assert_eq!(m.value, BigUint::from(brute.max_sum), "sum {ctx}");
    assert_eq!(classes_of(&m.witnesses), brute.sum_classes, "sum classes {ctx}");

    assert_eq!(count_members(n, spec, &opts).unwrap(), BigUint::from(brute.count), "count {ctx}");
}

#[test]
fn four_vertices_triples() {
    for q in 0..=7 {
        compare(4, 3, q);
    }
}

#[test]
fn four_vertices_quadruples() {
    for q in 0..=7 {
        compare(4, 4, q);
    }
}

#[test]
fn five_vertices() {
    for s in 3..=5 {
        for q in 0..=3 {
            compare(5, s, q);
        }
    }
}

#[test]
fn four_three_three_count() {
    assert_eq!(brute_force(4, 3, 3).count, 214);
}

#[test]
fn girth_five_numbers() {
    let opts = Parallelism::Sequential;
    for n in 0..=8 {
        assert_eq!(ex_c3c4(n, opts).unwrap().value, girth_bruteforce(n), "n = {n}");
    }
    assert_eq!(girth_bruteforce(7), 8);
}

#[test]
fn five_four_ten_sum() {
    // each pair lies in three of the five 4-sets, so 3 S <= 5 q
    let spec = ConstraintSpec::new(4, 10).unwrap();
    let best = max_sum(5, spec, &SearchOptions::default()).unwrap();
    assert_eq!(best.value, BigUint::from(5 * 10 / 3u32));
    let w = &best.witnesses[0];
    assert!(naive_member(5, 4, 10, w.weights()));
    assert_eq!(w.sum_total(), 16);
}
