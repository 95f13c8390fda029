mod common;

use common::p;
use evenwilf::enumeration::{avoidance_vector_with, count_avoiders_shape_with};
use evenwilf::shape::shapes_up_to_box;
use evenwilf::{CountOptions, Permutation, Symmetry};

fn patterns_up_to(k: usize) -> Vec<Permutation> {
    (1..=k).flat_map(Permutation::all).collect()
}

#[test]
fn pruned_counter_matches_filter_oracle() {
    let opts = CountOptions::default();
    for sigma in patterns_up_to(4) {
        let v = avoidance_vector_with(&sigma, 7, &opts).unwrap();
        for n in 0..=7 {
            assert_eq!(v.entries[n], common::count(n, &sigma), "σ = {sigma}, n = {n}");
        }
    }
}

#[test]
fn parallel_equals_serial() {
    for sigma in ["1234", "2413", "13524", "321", "4321", "12"] {
        let sigma = p(sigma);
        let par = avoidance_vector_with(&sigma, 10, &CountOptions::default()).unwrap();
        let ser = avoidance_vector_with(&sigma, 10, &CountOptions::serial()).unwrap();
        assert_eq!(par, ser, "{sigma}");
    }
    let shape = evenwilf::FerrersShape::square(7);
    for sigma in ["321", "2143"] {
        let sigma = p(sigma);
        assert_eq!(
            count_avoiders_shape_with(&shape, &sigma, &CountOptions::default()).unwrap(),
            count_avoiders_shape_with(&shape, &sigma, &CountOptions::serial()).unwrap()
        );
    }
}

#[test]
fn shape_counter_matches_filter_oracle() {
    let opts = CountOptions::default();
    let shapes: Vec<_> = shapes_up_to_box(5).collect();
    assert_eq!(shapes.len(), 1 + 2 + 5 + 14 + 42);
    let brute: Vec<_> = (1..=5).flat_map(common::shapes_with_rows).collect();
    assert_eq!(shapes, brute);
    for sigma in patterns_up_to(3).into_iter().chain([p("2143"), p("3412")]) {
        for shape in &shapes {
            assert_eq!(
                count_avoiders_shape_with(shape, &sigma, &opts).unwrap(),
                common::count_shape(shape, &sigma),
                "σ = {sigma}, λ = {shape}"
            );
        }
    }
}

#[test]
fn trivial_symmetries_of_counts() {
    let opts = CountOptions::default();
    for sigma in patterns_up_to(4) {
        let v = avoidance_vector_with(&sigma, 8, &opts).unwrap();
        for op in Symmetry::ALL {
            let w = avoidance_vector_with(&sigma.apply(op), 8, &opts).unwrap();
            assert_eq!(v.totals(), w.totals(), "{sigma} {op:?}");
        }
        for op in [Symmetry::Inverse, Symmetry::ReverseComplement] {
            let w = avoidance_vector_with(&sigma.apply(op), 8, &opts).unwrap();
            assert_eq!(v.evens(), w.evens(), "{sigma} {op:?}");
        }
        let r = avoidance_vector_with(&sigma.reverse(), 8, &opts).unwrap();
        for n in 0..=8 {
            let expect = if matches!(n % 4, 0 | 1) { v.entries[n].even } else { v.entries[n].odd };
            assert_eq!(r.entries[n].even, expect, "{sigma}, n = {n}");
        }
    }
}

#[test]
fn long_patterns_leave_everything() {
    let sigma = p("21453");
    let v = avoidance_vector_with(&sigma, 4, &CountOptions::default()).unwrap();
    for (n, c) in v.entries.iter().enumerate() {
        let fact: u64 = (1..=n as u64).product();
        assert_eq!(c.total, fact);
        if n >= 2 {
            assert_eq!(c.even, fact / 2);
        }
        assert!(c.is_consistent());
    }
}

#[test]
fn published_small_values() {
    let opts = CountOptions::default();
    let v = avoidance_vector_with(&p("123"), 4, &opts).unwrap();
    assert_eq!(v.entries[3].even, 2);
    assert_eq!(avoidance_vector_with(&p("321"), 3, &opts).unwrap().totals(), [1, 1, 2, 5]);
    assert_eq!(avoidance_vector_with(&p("1234"), 6, &opts).unwrap().entries[6].even, 258);
    assert_eq!(avoidance_vector_with(&p("4321"), 6, &opts).unwrap().entries[6].even, 255);
    let fig: evenwilf::FerrersShape = "5,5,5,3,2".parse().unwrap();
    assert!(evenwilf::Transversal::new(fig, p("45321")).unwrap().avoids(&p("231")));
}
