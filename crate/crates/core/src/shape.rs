//! Ferrers shapes (French orientation) and their transversals.
//!
//! Rows are numbered from the bottom starting at 1 and `parts[0]` is the
//! length of the bottom row. A transversal places the graph point of
//! column `i` in row `π_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcher::PatternMatcher;
use crate::perm::{Permutation, Sign, MAX_LEN};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FerrersShape {
    parts: Vec<usize>,
}

impl FerrersShape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() > MAX_LEN {
            return Err(Error::InvalidShape(format!("more than {MAX_LEN} rows")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidShape("rows must have at least one cell".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(FerrersShape { parts })
    }

    /// The shape with no cells.
    pub fn empty() -> Self {
        FerrersShape { parts: Vec::new() }
    }

    pub fn square(n: usize) -> Self {
        FerrersShape { parts: vec![n; n] }
    }

    /// `(n, n-1, ..., 1)`: the smallest shape with `n` rows that has a transversal.
    pub fn staircase(n: usize) -> Self {
        FerrersShape {
            parts: (1..=n).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of 1-based row `r`; zero above the top row.
    pub fn row_len(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.parts.get(r - 1).copied().unwrap_or(0)
    }

    /// Number of cells in 1-based column `c`.
    pub fn column_height(&self, c: usize) -> usize {
        self.parts.partition_point(|&p| p >= c)
    }

    pub fn contains_cell(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && c <= self.row_len(r)
    }

    /// True iff the shape contains the staircase of the same height.
    pub fn admits_transversal(&self) -> bool {
        let n = self.rows();
        self.parts.iter().enumerate().all(|(i, &p)| p >= n - i)
    }

    pub fn is_transversal(&self, perm: &Permutation) -> Result<bool> {
        if perm.len() != self.rows() {
            return Err(Error::LengthMismatch {
                expected: self.rows(),
                actual: perm.len(),
            });
        }
        Ok(perm
            .as_slice()
            .iter()
            .enumerate()
            .all(|(i, &row)| i < self.row_len(row as usize)))
    }

    /// All transversals in lexicographic order.
    pub fn transversals(&self) -> Vec<Permutation> {
        let n = self.rows();
        let heights: Vec<usize> = (1..=n).map(|c| self.column_height(c)).collect();
        let mut out = Vec::new();
        let mut used = vec![false; n + 1];
        let mut word = Vec::with_capacity(n);
        fn walk(
            heights: &[usize],
            used: &mut [bool],
            word: &mut Vec<u8>,
            out: &mut Vec<Permutation>,
        ) {
            let col = word.len();
            if col == heights.len() {
                out.push(Permutation::from_word_unchecked(word.clone()));
                return;
            }
            for r in 1..=heights[col] {
                if !used[r] {
                    used[r] = true;
                    word.push(r as u8);
                    walk(heights, used, word, out);
                    word.pop();
                    used[r] = false;
                }
            }
        }
        walk(&heights, &mut used, &mut word, &mut out);
        out
    }
}

/// Every shape with exactly `n` rows, first part at most `n`, that admits a
/// transversal; lexicographic order of part lists.
pub fn shapes_in_box(n: usize) -> impl Iterator<Item = FerrersShape> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(n);
    fn walk(n: usize, parts: &mut Vec<usize>, out: &mut Vec<FerrersShape>) {
        let i = parts.len();
        if i == n {
            out.push(FerrersShape {
                parts: parts.clone(),
            });
            return;
        }
        let hi = parts.last().copied().unwrap_or(n);
        for p in (n - i)..=hi {
            parts.push(p);
            walk(n, parts, out);
            parts.pop();
        }
    }
    if n > 0 {
        walk(n, &mut parts, &mut out);
    }
    out.into_iter()
}

/// Shapes of every height `1..=b` that fit in a `b × b` box and admit a
/// transversal. This is the universe of a "box b" sweep.
pub fn shapes_up_to_box(b: usize) -> impl Iterator<Item = FerrersShape> {
    (1..=b).flat_map(shapes_in_box)
}

impl fmt::Display for FerrersShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FerrersShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FerrersShape({self})")
    }
}

impl FromStr for FerrersShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(FerrersShape::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<usize>()
                    .map_err(|_| Error::parse("shape", t, "not a positive integer"))
            })
            .collect::<Result<Vec<_>>>()?;
        FerrersShape::new(parts).map_err(|e| Error::parse("shape", s, e.to_string()))
    }
}

impl Serialize for FerrersShape {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FerrersShape {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A permutation whose graph lies inside a Ferrers shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Transversal {
    shape: FerrersShape,
    perm: Permutation,
}

impl Transversal {
    pub fn new(shape: FerrersShape, perm: Permutation) -> Result<Self> {
        if !shape.is_transversal(&perm)? {
            return Err(Error::NotTransversal {
                perm: perm.to_string(),
                shape: shape.to_string(),
            });
        }
        Ok(Transversal { shape, perm })
    }

    /// A permutation viewed as a transversal of its square.
    pub fn square(perm: Permutation) -> Self {
        Transversal {
            shape: FerrersShape::square(perm.len()),
            perm,
        }
    }

    pub(crate) fn new_unchecked(shape: FerrersShape, perm: Permutation) -> Self {
        debug_assert_eq!(shape.is_transversal(&perm).ok(), Some(true));
        Transversal { shape, perm }
    }

    pub fn shape(&self) -> &FerrersShape {
        &self.shape
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_parts(self) -> (FerrersShape, Permutation) {
        (self.shape, self.perm)
    }

    pub fn sign(&self) -> Sign {
        self.perm.sign()
    }

    /// Containment in the transversal sense: an occurrence `i_1 < ... < i_k`
    /// counts only if cell `(max value, i_k)` lies in the shape.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        shape_contains(&self.shape, self.perm.as_slice(), &PatternMatcher::new(pattern))
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }
}

pub(crate) fn shape_contains(shape: &FerrersShape, word: &[u8], matcher: &PatternMatcher) -> bool {
    let k = matcher.len();
    if k == 0 {
        return true;
    }
    (k..=word.len()).any(|col| {
        let cap = shape.column_height(col).min(u8::MAX as usize) as u8;
        matcher.occurs_ending_at(word, col - 1, cap)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sh(s: &str) -> FerrersShape {
        s.parse().unwrap()
    }

    #[test]
    fn figure_transversal() {
        let lambda = sh("5,5,5,3,2");
        assert!(lambda.is_transversal(&p("45321")).unwrap());
        let t = Transversal::new(lambda, p("45321")).unwrap();
        assert!(t.contains(&p("321")));
        assert!(!t.contains(&p("231")));
        assert!(p("45321").contains(&p("231")));
    }

    #[test]
    fn running_text_shape_misses_the_321() {
        // With (5,5,3,2,2) the last three entries do not fill a 3x3 square.
        let t = Transversal::new(sh("5,5,3,2,2"), p("45321")).unwrap();
        assert!(!t.contains(&p("321")));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            sh("3,3,3").is_transversal(&p("12")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn square_admits_everything() {
        let sq = FerrersShape::square(4);
        assert!(Permutation::all(4).all(|q| sq.is_transversal(&q).unwrap()));
        assert_eq!(sq.transversals().len(), 24);
    }

    #[test]
    fn staircase_has_only_the_decreasing_transversal() {
        for n in 1..=6 {
            let st = FerrersShape::staircase(n);
            let found: Vec<_> = Permutation::all(n)
                .filter(|q| st.is_transversal(q).unwrap())
                .collect();
            assert_eq!(found, vec![Permutation::decreasing(n)]);
            assert_eq!(st.transversals(), found);
        }
    }

    #[test]
    fn box_enumeration() {
        let v: Vec<String> = shapes_in_box(2).map(|s| s.to_string()).collect();
        assert_eq!(v, ["2,1", "2,2"]);
        let v: Vec<String> = shapes_in_box(3).map(|s| s.to_string()).collect();
        assert_eq!(v, ["3,2,1", "3,2,2", "3,3,1", "3,3,2", "3,3,3"]);
        let v: Vec<String> = shapes_in_box(1).map(|s| s.to_string()).collect();
        assert_eq!(v, ["1"]);
        assert_eq!(shapes_in_box(0).count(), 0);
    }

    #[test]
    fn box_enumeration_is_complete() {
        // Brute force over all weakly decreasing part lists in the box.
        use itertools::Itertools;
        for n in 1..=6 {
            let mut expect: Vec<FerrersShape> = (0..n)
                .map(|_| 1..=n)
                .multi_cartesian_product()
                .filter_map(|parts| FerrersShape::new(parts).ok())
                .filter(|s| s.admits_transversal())
                .collect();
            expect.sort();
            let got: Vec<_> = shapes_in_box(n).collect();
            assert_eq!(got, expect, "n={n}");
            assert!(got.iter().all(|s| !s.transversals().is_empty()));
        }
    }

    #[test]
    fn parse_errors() {
        assert!("3,4".parse::<FerrersShape>().is_err());
        assert!("3,0".parse::<FerrersShape>().is_err());
        let e = "3,x".parse::<FerrersShape>().unwrap_err();
        assert!(e.to_string().contains("`x`"));
        assert_eq!(sh("5,5,5,3,2").to_string(), "5,5,5,3,2");
    }

    #[test]
    fn column_heights() {
        let s = sh("5,5,5,3,2");
        let h: Vec<_> = (1..=6).map(|c| s.column_height(c)).collect();
        assert_eq!(h, [5, 5, 4, 3, 3, 0]);
    }
}
