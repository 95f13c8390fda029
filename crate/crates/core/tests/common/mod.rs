//! Brute-force oracles written independently of the library internals.
#![allow(dead_code)]

use evenwilf::{CountTriple, FerrersShape, Permutation, Sign};
use itertools::Itertools;

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn inversions(w: &[u8]) -> usize {
    (0..w.len())
        .tuple_combinations()
        .filter(|&(i, j)| w[i] > w[j])
        .count()
}

pub fn sign(w: &[u8]) -> Sign {
    if inversions(w).is_multiple_of(2) {
        Sign::Even
    } else {
        Sign::Odd
    }
}

fn order_isomorphic(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// Occurrence positions of `pattern` in `text`.
pub fn occurrences<'a>(text: &'a [u8], pattern: &'a [u8]) -> impl Iterator<Item = Vec<usize>> + 'a {
    (0..text.len())
        .combinations(pattern.len())
        .filter(move |pos| {
            let vals: Vec<u8> = pos.iter().map(|&i| text[i]).collect();
            order_isomorphic(&vals, pattern)
        })
}

pub fn contains(text: &[u8], pattern: &[u8]) -> bool {
    occurrences(text, pattern).next().is_some()
}

/// Containment as a transversal of `shape`: the cell in the row of the
/// largest matched value and the column of the last matched entry must
/// belong to the shape.
pub fn contains_in_shape(shape: &FerrersShape, text: &[u8], pattern: &[u8]) -> bool {
    occurrences(text, pattern).any(|pos| {
        let max = pos.iter().map(|&i| text[i] as usize).max().unwrap_or(0);
        let last = *pos.last().unwrap_or(&0) + 1;
        shape.row_len(max) >= last
    })
}

/// All permutations of `1..=n` via itertools.
pub fn all_words(n: usize) -> Vec<Vec<u8>> {
    (1..=n as u8).permutations(n).collect()
}

pub fn count(n: usize, pattern: &Permutation) -> CountTriple {
    let mut c = CountTriple::default();
    for w in all_words(n) {
        if !contains(&w, pattern.as_slice()) {
            c.record(sign(&w));
        }
    }
    c
}

/// Transversals of `shape` by filtering all permutations.
pub fn transversals(shape: &FerrersShape) -> Vec<Vec<u8>> {
    let n = shape.rows();
    all_words(n)
        .into_iter()
        .filter(|w| w.iter().enumerate().all(|(i, &r)| shape.row_len(r as usize) > i))
        .collect()
}

pub fn count_shape(shape: &FerrersShape, pattern: &Permutation) -> CountTriple {
    let mut c = CountTriple::default();
    for w in transversals(shape) {
        if !contains_in_shape(shape, &w, pattern.as_slice()) {
            c.record(sign(&w));
        }
    }
    c
}

/// Every shape with exactly `n` rows and `n` columns at most whose
/// transversals exist, by brute force over weakly decreasing sequences.
pub fn shapes_with_rows(n: usize) -> Vec<FerrersShape> {
    (0..n)
        .map(|_| 1..=n)
        .multi_cartesian_product()
        .filter(|parts| parts.windows(2).all(|w| w[0] >= w[1]))
        .filter(|parts| parts.iter().enumerate().all(|(i, &l)| l >= n - i))
        .map(|parts| FerrersShape::new(parts).unwrap())
        .collect()
}
