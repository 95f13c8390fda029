mod common;

use std::collections::HashSet;

use evenwilf::bwx::{self, iteration_cap};
use evenwilf::enumeration::count_avoiders_shape_with;
use evenwilf::perm::{f, j};
use evenwilf::shape::shapes_up_to_box;
use evenwilf::{CountOptions, Transversal};

/// φ_t* and ψ_t* are inverse bijections between F_t- and J_t-avoiders of
/// every shape in the box, sign-preserving when t is odd.
fn check_box(t: usize, b: usize) {
    let (jt, ft) = (j(t), f(t));
    for shape in shapes_up_to_box(b) {
        let mut images = HashSet::new();
        for w in shape.transversals() {
            let tr = Transversal::new(shape.clone(), w).unwrap();
            if tr.avoids(&ft) {
                let (img, trace) = bwx::phi_star(&tr, t).unwrap();
                assert!(trace.applications <= iteration_cap(shape.rows(), t));
                assert!(img.avoids(&jt), "t={t} λ={shape} π={}", tr.perm());
                assert!(
                    !common::contains_in_shape(&shape, img.perm().as_slice(), jt.as_slice()),
                    "oracle disagrees on {}",
                    img.perm()
                );
                if t % 2 == 1 {
                    assert_eq!(img.sign(), tr.sign(), "t={t} λ={shape} π={}", tr.perm());
                    assert_eq!(trace.sign_flips, 0);
                } else {
                    assert_eq!(trace.sign_flips, trace.applications);
                }
                let (back, _) = bwx::psi_star(&img, t).unwrap();
                assert_eq!(back, tr);
                images.insert(img.perm().clone());
            }
            if tr.avoids(&jt) {
                let (pre, _) = bwx::psi_star(&tr, t).unwrap();
                assert!(pre.avoids(&ft));
                assert_eq!(bwx::phi_star(&pre, t).unwrap().0, tr);
            }
        }
        let cj = count_avoiders_shape_with(&shape, &jt, &CountOptions::serial()).unwrap();
        assert_eq!(images.len() as u64, cj.total, "t={t} λ={shape}");
    }
}

#[test]
fn round_trip_t3_box6() {
    check_box(3, 6);
}

#[test]
fn round_trip_t5_box6() {
    check_box(5, 6);
}

#[test]
fn even_t_still_bijective() {
    check_box(2, 5);
    check_box(4, 6);
}

#[test]
fn single_steps_change_sign_by_parity_of_t() {
    for t in 2..=5 {
        for shape in shapes_up_to_box(5) {
            for w in shape.transversals() {
                let tr = Transversal::new(shape.clone(), w).unwrap();
                if let Some((_, next)) = bwx::phi_step(&tr, t).unwrap() {
                    assert_eq!(tr.sign() * next.sign(), bwx::step_sign(t));
                }
                if let Some((_, next)) = bwx::psi_step(&tr, t).unwrap() {
                    assert_eq!(tr.sign() * next.sign(), bwx::step_sign(t));
                }
            }
        }
    }
}
