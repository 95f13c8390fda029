//! Permutations in one-line notation, sign, the symmetries of the square,
//! direct sums and classical pattern containment.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcher::PatternMatcher;

/// Longest permutation representable (values are stored as `u8`).
pub const MAX_LEN: usize = u8::MAX as usize;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    word: Vec<u8>,
}

/// Parity of a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Even,
    Odd,
}

impl Sign {
    pub fn from_inversions(inv: usize) -> Sign {
        if inv.is_multiple_of(2) {
            Sign::Even
        } else {
            Sign::Odd
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Even => Sign::Odd,
            Sign::Odd => Sign::Even,
        }
    }

    pub fn is_even(self) -> bool {
        self == Sign::Even
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Even
        } else {
            Sign::Odd
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Even => "even",
            Sign::Odd => "odd",
        })
    }
}

impl Permutation {
    /// Builds a permutation from a one-line word on `{1..n}`.
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n > MAX_LEN {
            return Err(Error::InvalidPermutation(format!(
                "length {n} exceeds {MAX_LEN}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    /// The permutation order-isomorphic to a sequence of distinct values.
    pub fn standardize(values: &[u8]) -> Permutation {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_unstable_by_key(|&i| values[i]);
        let mut word = vec![0u8; values.len()];
        for (rank, &i) in idx.iter().enumerate() {
            word[i] = (rank + 1) as u8;
        }
        Permutation { word }
    }

    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// `n(n-1)...1`
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u8> {
        self.word
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// Number of pairs `i < j` with `π_i > π_j`.
    pub fn inversions(&self) -> usize {
        // Fenwick tree over values seen so far.
        let n = self.word.len();
        let mut tree = vec![0u32; n + 1];
        let mut inv = 0usize;
        for (seen, &v) in self.word.iter().enumerate() {
            let mut i = v as usize;
            let mut not_larger = 0u32;
            while i > 0 {
                not_larger += tree[i];
                i &= i - 1;
            }
            inv += seen - not_larger as usize;
            let mut i = v as usize;
            while i <= n {
                tree[i] += 1;
                i += i & i.wrapping_neg();
            }
        }
        inv
    }

    pub fn sign(&self) -> Sign {
        Sign::from_inversions(self.inversions())
    }

    pub fn reverse(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }

    pub fn complement(&self) -> Permutation {
        let m = self.word.len() as u8 + 1;
        Permutation {
            word: self.word.iter().map(|&v| m - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0u8; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word }
    }

    pub fn apply(&self, op: Symmetry) -> Permutation {
        let n = self.word.len();
        let mut word = vec![0u8; n];
        for (i, &v) in self.word.iter().enumerate() {
            let (x, y) = op.map_point(n, i + 1, v as usize);
            word[x - 1] = y as u8;
        }
        Permutation { word }
    }

    /// `α ⊕ β`: β placed above and to the right of α.
    pub fn direct_sum(&self, other: &Permutation) -> Result<Permutation> {
        let k = self.word.len();
        if k + other.word.len() > MAX_LEN {
            return Err(Error::InvalidPermutation(format!(
                "direct sum longer than {MAX_LEN}"
            )));
        }
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + k as u8));
        Ok(Permutation { word })
    }

    /// Classical containment: some subsequence is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        if pattern.len() > self.len() {
            return false;
        }
        PatternMatcher::new(pattern).occurs_in(&self.word)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// Lexicographic successor, or `None` for the decreasing permutation.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut word = self.word.clone();
        let n = word.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && word[i - 1] > word[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while word[j] < word[i - 1] {
            j -= 1;
        }
        word.swap(i - 1, j);
        word[i..].reverse();
        Some(Permutation { word })
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        std::iter::successors(Some(Permutation::identity(n)), |p| p.next_lex())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        if self.word.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.word.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts a digit string (`"45321"`), whitespace- or comma-separated
    /// integers (`"10 3 1 ..."`), or `"e"`/empty for the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "e" || trimmed == "ε" {
            return Ok(Permutation::empty());
        }
        let word: Vec<u8> = if trimmed.contains(|c: char| c.is_whitespace() || c == ',') {
            trimmed
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| Error::parse("permutation", t, "not an integer in 1..=255"))
                })
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) => Ok(d as u8),
                    None => Err(Error::parse("permutation", &c.to_string(), "not a digit")),
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word).map_err(|e| Error::parse("permutation", trimmed, e.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One of the eight symmetries of the square acting on permutation graphs.
///
/// Composite names compose left to right: `ReverseComplementInverse` reverses,
/// then complements, then inverts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Identity,
    Reverse,
    Complement,
    Inverse,
    ReverseComplement,
    ReverseComplementInverse,
    ReverseInverse,
    ComplementInverse,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::Inverse,
        Symmetry::ReverseComplement,
        Symmetry::ReverseComplementInverse,
        Symmetry::ReverseInverse,
        Symmetry::ComplementInverse,
    ];

    /// Elementary steps in application order.
    fn steps(self) -> &'static [Symmetry] {
        use Symmetry::*;
        match self {
            Identity => &[],
            Reverse => &[Reverse],
            Complement => &[Complement],
            Inverse => &[Inverse],
            ReverseComplement => &[Reverse, Complement],
            ReverseComplementInverse => &[Reverse, Complement, Inverse],
            ReverseInverse => &[Reverse, Inverse],
            ComplementInverse => &[Complement, Inverse],
        }
    }

    /// Image of graph point `(x, y)` (position, value; both 1-based) in an
    /// `n × n` grid.
    pub fn map_point(self, n: usize, x: usize, y: usize) -> (usize, usize) {
        self.steps().iter().fold((x, y), |(x, y), step| match step {
            Symmetry::Reverse => (n + 1 - x, y),
            Symmetry::Complement => (x, n + 1 - y),
            Symmetry::Inverse => (y, x),
            _ => unreachable!("composite in step list"),
        })
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Symmetry) -> Symmetry {
        // (1, 2) in a 4-grid has eight distinct images, so it identifies the element.
        let target = {
            let (x, y) = self.map_point(4, 1, 2);
            next.map_point(4, x, y)
        };
        Symmetry::ALL
            .into_iter()
            .find(|s| s.map_point(4, 1, 2) == target)
            .expect("symmetries of the square form a group")
    }

    pub fn inverse_element(self) -> Symmetry {
        Symmetry::ALL
            .into_iter()
            .find(|s| self.then(*s) == Symmetry::Identity)
            .expect("every group element has an inverse")
    }

    pub fn name(self) -> &'static str {
        use Symmetry::*;
        match self {
            Identity => "identity",
            Reverse => "reverse",
            Complement => "complement",
            Inverse => "inverse",
            ReverseComplement => "rc",
            ReverseComplementInverse => "rc-inverse",
            ReverseInverse => "r-inverse",
            ComplementInverse => "c-inverse",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symmetry::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::parse("symmetry", s, "unknown symmetry name"))
    }
}

/// The canonical families `J_t`, `I_t` and `F_t = J_{t-1} ⊕ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternFamily {
    /// `t(t-1)...1`
    Decreasing(usize),
    /// `12...t`
    Increasing(usize),
    /// `(t-1)...21t`
    DecreasingPlusOne(usize),
}

impl PatternFamily {
    pub fn realize(self) -> Result<Permutation> {
        let t = match self {
            PatternFamily::Decreasing(t)
            | PatternFamily::Increasing(t)
            | PatternFamily::DecreasingPlusOne(t) => t,
        };
        if t == 0 || t > MAX_LEN {
            return Err(Error::InvalidArgument(format!(
                "pattern family size must be in 1..={MAX_LEN}, got {t}"
            )));
        }
        Ok(match self {
            PatternFamily::Decreasing(t) => Permutation::decreasing(t),
            PatternFamily::Increasing(t) => Permutation::identity(t),
            PatternFamily::DecreasingPlusOne(t) => Permutation::decreasing(t - 1)
                .direct_sum(&Permutation::identity(1))
                .expect("length already checked"),
        })
    }
}

/// `J_t`
pub fn j(t: usize) -> Permutation {
    Permutation::decreasing(t)
}

/// `F_t = J_{t-1} ⊕ 1`
pub fn f(t: usize) -> Permutation {
    assert!(t >= 1, "F_t needs t >= 1");
    PatternFamily::DecreasingPlusOne(t)
        .realize()
        .expect("valid family size")
}
