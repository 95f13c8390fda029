mod common;

use std::collections::HashSet;

use common::p;
use evenwilf::shape::shapes_up_to_box;
use evenwilf::transport::{color_cells, transport, FnMap, IdentityMap, PhiStar, PsiStar};
use evenwilf::{FerrersShape, Permutation, Transversal};

fn transversals(shape: &FerrersShape) -> impl Iterator<Item = Transversal> + '_ {
    shape
        .transversals()
        .into_iter()
        .map(move |w| Transversal::new(shape.clone(), w).unwrap())
}

fn small_patterns() -> Vec<Permutation> {
    (1..=3).flat_map(Permutation::all).collect()
}

#[test]
fn white_region_is_always_a_shape_with_a_transversal() {
    for shape in shapes_up_to_box(5) {
        for tr in transversals(&shape) {
            for sigma in small_patterns() {
                let c = color_cells(&tr, &sigma).unwrap();
                assert!(c.white_shape.is_transversal(&c.white_sub).unwrap());
                assert_eq!(c.white_rows.len(), c.white_cols.len());
            }
        }
    }
}

#[test]
fn avoiding_a_sum_means_the_white_part_avoids_the_head() {
    let heads = [p("1"), p("12"), p("21"), p("321"), p("213")];
    for shape in shapes_up_to_box(5) {
        for tr in transversals(&shape) {
            for alpha in &heads {
                for sigma in [p("1"), p("12"), p("21")] {
                    if tr.avoids(&alpha.direct_sum(&sigma).unwrap()) {
                        let c = color_cells(&tr, &sigma).unwrap();
                        let white = Transversal::new(c.white_shape.clone(), c.white_sub.clone()).unwrap();
                        assert!(white.avoids(alpha), "{tr:?} α={alpha} σ={sigma}");
                    }
                }
            }
        }
    }
}

#[test]
fn identity_inner_map_is_identity() {
    for shape in shapes_up_to_box(5) {
        for tr in transversals(&shape) {
            for sigma in small_patterns() {
                assert_eq!(transport(&IdentityMap, &tr, &sigma).unwrap(), tr);
            }
        }
    }
}

#[test]
fn phi3_transports_2134_avoiders_onto_3214_avoiders() {
    let square = FerrersShape::square(5);
    let (from, to) = (p("2134"), p("3214"));
    let sigma = p("1");
    let mut image = HashSet::new();
    let mut target = HashSet::new();
    for tr in transversals(&square) {
        if tr.avoids(&to) {
            target.insert(tr.perm().clone());
        }
        if !tr.avoids(&from) {
            continue;
        }
        let out = transport(&PhiStar(3), &tr, &sigma).unwrap();
        assert!(out.avoids(&to), "{} -> {}", tr.perm(), out.perm());
        assert_eq!(out.sign(), tr.sign());
        assert_eq!(transport(&PsiStar(3), &out, &sigma).unwrap(), tr);
        assert!(image.insert(out.perm().clone()), "not injective at {}", out.perm());
    }
    assert_eq!(image, target);
    let total = common::count(5, &from).total as usize;
    assert_eq!(image.len(), total);
}

#[test]
fn parity_change_is_confined_to_the_white_region() {
    // An inner map that may change sign: reverse the white sub-permutation
    // whenever the reversal is still a transversal.
    let flip = FnMap(|shape: &FerrersShape, perm: &Permutation| {
        let r = perm.reverse();
        Ok(if shape.is_transversal(&r)? { r } else { perm.clone() })
    });
    for shape in shapes_up_to_box(5) {
        for tr in transversals(&shape) {
            for sigma in [p("1"), p("21")] {
                let c = color_cells(&tr, &sigma).unwrap();
                let out = transport(&flip, &tr, &sigma).unwrap();
                if c.is_trivial() {
                    assert_eq!(out, tr);
                    continue;
                }
                let inner_out = if c.white_shape.is_transversal(&c.white_sub.reverse()).unwrap() {
                    c.white_sub.reverse()
                } else {
                    c.white_sub.clone()
                };
                assert_eq!(
                    out.sign() * tr.sign(),
                    inner_out.sign() * c.white_sub.sign(),
                    "{tr:?} σ={sigma}"
                );
            }
        }
    }
}
