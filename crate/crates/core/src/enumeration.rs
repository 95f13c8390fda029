//! Parity-split counting of pattern avoiders.
//!
//! Permutations are grown left to right in standardized form: a child of a
//! prefix of length `m` appends a new last entry of relative rank `r`
//! (`0..=m`), which adds `m - r` inversions. A child is pruned as soon as it
//! contains the pattern, and since containment is inherited by extensions
//! only occurrences ending at the new entry need checking. One walk to depth
//! `N` yields the counts for every `n <= N`.
//!
//! Transversals of a shape are grown column by column with actual row
//! values, restricted to the cells of each column.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::PatternMatcher;
use crate::perm::{Permutation, Sign};
use crate::shape::FerrersShape;

pub const DEFAULT_MAX_N: usize = 12;
pub const DEFAULT_MAX_BOX: usize = 8;

/// Depth of the prefix tree at which parallel work is split into tasks.
const SHARD_DEPTH: usize = 5;

/// Avoider counts split by sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountTriple {
    pub total: u64,
    pub even: u64,
    pub odd: u64,
}

impl CountTriple {
    pub fn new(even: u64, odd: u64) -> Self {
        CountTriple {
            total: even + odd,
            even,
            odd,
        }
    }

    pub fn record(&mut self, sign: Sign) {
        self.total += 1;
        match sign {
            Sign::Even => self.even += 1,
            Sign::Odd => self.odd += 1,
        }
    }

    pub fn merge(&mut self, other: &CountTriple) {
        self.total += other.total;
        self.even += other.even;
        self.odd += other.odd;
    }

    /// Count of the given parity.
    pub fn of(&self, sign: Sign) -> u64 {
        match sign {
            Sign::Even => self.even,
            Sign::Odd => self.odd,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.total == self.even + self.odd
    }
}

/// Counts for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceVector {
    pub pattern: Permutation,
    pub entries: Vec<CountTriple>,
}

impl AvoidanceVector {
    pub fn horizon(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn totals(&self) -> Vec<u64> {
        self.entries.iter().map(|c| c.total).collect()
    }

    pub fn evens(&self) -> Vec<u64> {
        self.entries.iter().map(|c| c.even).collect()
    }

    pub fn odds(&self) -> Vec<u64> {
        self.entries.iter().map(|c| c.odd).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    /// Split the search tree across the rayon pool.
    pub parallel: bool,
    /// Largest permutation length accepted.
    pub max_n: usize,
    /// Largest number of shape rows accepted.
    pub max_box: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            parallel: true,
            max_n: DEFAULT_MAX_N,
            max_box: DEFAULT_MAX_BOX,
        }
    }
}

impl CountOptions {
    pub fn serial() -> Self {
        CountOptions {
            parallel: false,
            ..Default::default()
        }
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn with_max_box(mut self, max_box: usize) -> Self {
        self.max_box = max_box;
        self
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::Budget {
                what: "n",
                value: n,
                max: self.max_n,
            });
        }
        Ok(())
    }
}

fn check_pattern(pattern: &Permutation) -> Result<()> {
    if pattern.is_empty() {
        return Err(Error::InvalidArgument(
            "pattern must have length at least 1".into(),
        ));
    }
    Ok(())
}

/// `(s_n, e_n, o_n)` for one `n`.
pub fn count_avoiders(n: usize, pattern: &Permutation) -> Result<CountTriple> {
    count_avoiders_with(n, pattern, &CountOptions::default())
}

pub fn count_avoiders_with(
    n: usize,
    pattern: &Permutation,
    opts: &CountOptions,
) -> Result<CountTriple> {
    Ok(avoidance_vector_with(pattern, n, opts)?.entries[n])
}

/// Counts for every `n <= max_n` from a single walk.
pub fn avoidance_vector(pattern: &Permutation, max_n: usize) -> Result<AvoidanceVector> {
    avoidance_vector_with(pattern, max_n, &CountOptions::default())
}

pub fn avoidance_vector_with(
    pattern: &Permutation,
    max_n: usize,
    opts: &CountOptions,
) -> Result<AvoidanceVector> {
    check_pattern(pattern)?;
    opts.check_n(max_n)?;
    let walker = PermWalker {
        matcher: PatternMatcher::new(pattern),
        depth: max_n,
    };
    let entries = if opts.parallel {
        walker.run_parallel()
    } else {
        walker.run_serial()
    };
    Ok(AvoidanceVector {
        pattern: pattern.clone(),
        entries,
    })
}

struct PermWalker {
    matcher: PatternMatcher,
    depth: usize,
}

impl PermWalker {
    fn run_serial(&self) -> Vec<CountTriple> {
        let mut counts = vec![CountTriple::default(); self.depth + 1];
        counts[0].record(Sign::Even);
        let mut prefix = Vec::with_capacity(self.depth);
        self.descend(&mut prefix, Sign::Even, self.depth, &mut counts);
        counts
    }

    fn run_parallel(&self) -> Vec<CountTriple> {
        let split = SHARD_DEPTH.min(self.depth);
        let mut counts = vec![CountTriple::default(); self.depth + 1];
        counts[0].record(Sign::Even);
        let mut frontier = Vec::new();
        let mut prefix = Vec::with_capacity(self.depth);
        self.collect_frontier(&mut prefix, Sign::Even, split, &mut counts, &mut frontier);
        let rest = frontier
            .into_par_iter()
            .map(|(mut prefix, sign)| {
                let mut local = vec![CountTriple::default(); self.depth + 1];
                prefix.reserve(self.depth - prefix.len());
                self.descend(&mut prefix, sign, self.depth, &mut local);
                local
            })
            .reduce(
                || vec![CountTriple::default(); self.depth + 1],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| x.merge(y));
                    a
                },
            );
        counts.iter_mut().zip(&rest).for_each(|(x, y)| x.merge(y));
        counts
    }

    /// Serially walks to depth `split`, counting along the way, and returns
    /// the avoiding nodes at that depth.
    fn collect_frontier(
        &self,
        prefix: &mut Vec<u8>,
        sign: Sign,
        split: usize,
        counts: &mut [CountTriple],
        frontier: &mut Vec<(Vec<u8>, Sign)>,
    ) {
        let m = prefix.len();
        if m == split {
            frontier.push((prefix.clone(), sign));
            return;
        }
        for r in 0..=m as u8 {
            if let Some(child_sign) = self.push_child(prefix, r, sign) {
                counts[m + 1].record(child_sign);
                self.collect_frontier(prefix, child_sign, split, counts, frontier);
            }
            pop_child(prefix, r);
        }
    }

    fn descend(&self, prefix: &mut Vec<u8>, sign: Sign, depth: usize, counts: &mut [CountTriple]) {
        let m = prefix.len();
        if m == depth {
            return;
        }
        for r in 0..=m as u8 {
            if let Some(child_sign) = self.push_child(prefix, r, sign) {
                counts[m + 1].record(child_sign);
                self.descend(prefix, child_sign, depth, counts);
            }
            pop_child(prefix, r);
        }
    }

    /// Appends an entry of relative rank `r`; returns the child's sign if it
    /// still avoids the pattern. The caller must always `pop_child`.
    #[inline]
    fn push_child(&self, prefix: &mut Vec<u8>, r: u8, sign: Sign) -> Option<Sign> {
        let m = prefix.len();
        for v in prefix.iter_mut() {
            if *v >= r {
                *v += 1;
            }
        }
        prefix.push(r);
        if self.matcher.occurs_ending_at(prefix, m, u8::MAX) {
            return None;
        }
        let added = m - r as usize;
        Some(if added.is_multiple_of(2) { sign } else { sign.flip() })
    }
}

#[inline]
fn pop_child(prefix: &mut Vec<u8>, r: u8) {
    prefix.pop();
    for v in prefix.iter_mut() {
        if *v > r {
            *v -= 1;
        }
    }
}

/// `(s_λ, e_λ, o_λ)`: transversals of `shape` avoiding `pattern` in the
/// transversal sense.
pub fn count_avoiders_shape(shape: &FerrersShape, pattern: &Permutation) -> Result<CountTriple> {
    count_avoiders_shape_with(shape, pattern, &CountOptions::default())
}

pub fn count_avoiders_shape_with(
    shape: &FerrersShape,
    pattern: &Permutation,
    opts: &CountOptions,
) -> Result<CountTriple> {
    check_pattern(pattern)?;
    let n = shape.rows();
    if n > opts.max_box {
        return Err(Error::Budget {
            what: "shape rows",
            value: n,
            max: opts.max_box,
        });
    }
    let walker = ShapeWalker {
        matcher: PatternMatcher::new(pattern),
        heights: (1..=n).map(|c| shape.column_height(c) as u8).collect(),
    };
    let mut total = CountTriple::default();
    if n == 0 {
        total.record(Sign::Even);
        return Ok(total);
    }
    if opts.parallel {
        let firsts: Vec<u8> = (1..=walker.heights[0]).collect();
        let parts: Vec<CountTriple> = firsts
            .into_par_iter()
            .map(|r| {
                let mut local = CountTriple::default();
                let mut word = Vec::with_capacity(n);
                if let Some(sign) = walker.push(&mut word, r, Sign::Even) {
                    walker.descend(&mut word, sign, &mut local);
                }
                local
            })
            .collect();
        parts.iter().for_each(|c| total.merge(c));
    } else {
        let mut word = Vec::with_capacity(n);
        walker.descend(&mut word, Sign::Even, &mut total);
    }
    Ok(total)
}

struct ShapeWalker {
    matcher: PatternMatcher,
    heights: Vec<u8>,
}

impl ShapeWalker {
    fn descend(&self, word: &mut Vec<u8>, sign: Sign, counts: &mut CountTriple) {
        let col = word.len();
        if col == self.heights.len() {
            counts.record(sign);
            return;
        }
        for r in 1..=self.heights[col] {
            if word.contains(&r) {
                continue;
            }
            if let Some(child) = self.push(word, r, sign) {
                self.descend(word, child, counts);
            }
            word.pop();
        }
    }

    /// Places row `r` in the next column; returns the new sign if the partial
    /// transversal still avoids the pattern. The caller must pop.
    fn push(&self, word: &mut Vec<u8>, r: u8, sign: Sign) -> Option<Sign> {
        let col = word.len();
        let added = word.iter().filter(|&&v| v > r).count();
        word.push(r);
        if self.matcher.occurs_ending_at(word, col, self.heights[col]) {
            return None;
        }
        Some(if added % 2 == 0 { sign } else { sign.flip() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Transversal;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(count_avoiders(3, &p("123")).unwrap().even, 2);
        assert_eq!(count_avoiders(3, &p("321")).unwrap().even, 3);
        assert_eq!(count_avoiders(6, &p("1234")).unwrap().even, 258);
        assert_eq!(count_avoiders(6, &p("4321")).unwrap().even, 255);
    }

    #[test]
    fn longer_pattern_than_n() {
        for n in 2..=6 {
            let c = count_avoiders(n, &p("1234567")).unwrap();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c, CountTriple::new(fact / 2, fact / 2));
        }
    }

    #[test]
    fn vectors() {
        assert_eq!(avoidance_vector(&p("321"), 3).unwrap().totals(), [1, 1, 2, 5]);
        assert_eq!(avoidance_vector(&p("123"), 4).unwrap().evens()[3], 2);
        assert!(avoidance_vector(&p("12"), 9)
            .unwrap()
            .totals()
            .iter()
            .all(|&t| t == 1));
    }

    #[test]
    fn shape_values() {
        let c = count_avoiders_shape(&FerrersShape::square(3), &p("321")).unwrap();
        assert_eq!((c.total, c.even), (5, 3));
        for n in 1..=6 {
            let st = FerrersShape::staircase(n);
            for sigma in [p("1"), p("21"), p("321"), p("12"), p("231")] {
                let c = count_avoiders_shape(&st, &sigma).unwrap();
                let only = Transversal::new(st.clone(), Permutation::decreasing(n)).unwrap();
                let expect = u64::from(only.avoids(&sigma));
                assert_eq!(c.total, expect, "n={n} σ={sigma}");
            }
        }
    }

    #[test]
    fn budgets() {
        let err = count_avoiders(13, &p("123")).unwrap_err();
        assert!(err.is_budget());
        assert!(count_avoiders_with(13, &p("12"), &CountOptions::default().with_max_n(13)).is_ok());
        let err = count_avoiders_shape(&FerrersShape::square(9), &p("12")).unwrap_err();
        assert!(err.is_budget());
        assert!(matches!(
            count_avoiders(3, &Permutation::empty()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn empty_shape_has_one_transversal() {
        let c = count_avoiders_shape(&FerrersShape::empty(), &p("1")).unwrap();
        assert_eq!(c, CountTriple::new(1, 0));
    }
}
