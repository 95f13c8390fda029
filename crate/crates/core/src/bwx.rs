//! The transversal maps trading copies of `J_t = t...21` for copies of
//! `F_t = (t-1)...21t` and back.
//!
//! A forward step selects the canonical `J_t` copy (smallest possible first
//! letter, then leftmost extensions) and cycles the selected letters one slot
//! to the left with the first letter wrapping to the last slot. A backward
//! step selects the canonical `F_t` copy (largest possible last letter, then
//! largest letters moving leftwards) and cycles the other way. Each step
//! multiplies the permutation by a `t`-cycle, so it preserves sign exactly
//! when `t` is odd.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Sign};
use crate::shape::{FerrersShape, Transversal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Eliminate `J_t` copies (J → F).
    Forward,
    /// Eliminate `F_t` copies (F → J).
    Backward,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" | "fwd" | "phi" => Ok(Direction::Forward),
            "backward" | "bwd" | "psi" => Ok(Direction::Backward),
            _ => Err(Error::parse("direction", s, "expected forward or backward")),
        }
    }
}

/// Selected columns `i_1 < ... < i_t` (1-based) of a `J_t` copy (forward) or
/// an `F_t` copy (backward).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Selection {
    pub columns: Vec<usize>,
    pub direction: Direction,
}

impl Selection {
    pub fn size(&self) -> usize {
        self.columns.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub selection: Selection,
    pub after: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionTrace {
    pub t: usize,
    pub direction: Direction,
    pub steps: Vec<TraceStep>,
    pub applications: usize,
    pub sign_flips: usize,
}

impl BijectionTrace {
    fn new(t: usize, direction: Direction) -> Self {
        BijectionTrace {
            t,
            direction,
            steps: Vec::new(),
            applications: 0,
            sign_flips: 0,
        }
    }
}

fn check_size(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "copy size t must be at least 2, got {t}"
        )));
    }
    Ok(())
}

/// Can `remaining` more letters, each smaller than the last and to its right
/// but no further right than column `limit`, be appended after `last`?
fn j_completes(word: &[u8], limit: usize, last: usize, remaining: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    let last_val = word[last - 1];
    ((last + 1)..=limit.min(word.len()))
        .any(|c| word[c - 1] < last_val && j_completes(word, limit, c, remaining - 1))
}

/// Canonical `J_t` copy of a transversal, or `None` if it avoids `J_t`.
pub fn find_canonical_j(tr: &Transversal, t: usize) -> Result<Option<Selection>> {
    check_size(t)?;
    let word = tr.perm().as_slice();
    let shape = tr.shape();
    let n = word.len();
    // The smallest letter that starts some copy.
    let mut by_value: Vec<usize> = (1..=n).collect();
    by_value.sort_unstable_by_key(|&c| word[c - 1]);
    let first = by_value.into_iter().find(|&c| {
        let limit = shape.row_len(word[c - 1] as usize);
        c <= limit && j_completes(word, limit, c, t - 1)
    });
    let Some(first) = first else {
        return Ok(None);
    };
    let limit = shape.row_len(word[first - 1] as usize);
    let mut columns = vec![first];
    while columns.len() < t {
        let last = *columns.last().unwrap();
        let remaining = t - columns.len();
        let next = ((last + 1)..=limit.min(n))
            .find(|&c| word[c - 1] < word[last - 1] && j_completes(word, limit, c, remaining - 1))
            .expect("completion exists by construction");
        columns.push(next);
    }
    Ok(Some(Selection {
        columns,
        direction: Direction::Forward,
    }))
}

/// Can `remaining` more letters be prepended to the left of column `first`,
/// increasing leftwards from `floor` (exclusive) and staying below `top`?
fn f_completes(word: &[u8], first: usize, floor: Option<u8>, top: u8, remaining: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    (1..first).any(|c| {
        let v = word[c - 1];
        v < top && floor.is_none_or(|f| v > f) && f_completes(word, c, Some(v), top, remaining - 1)
    })
}

/// Canonical `F_t` copy of a transversal, or `None` if it avoids `F_t`.
///
/// The maximum of an `F_t` copy is its last letter, whose own cell is always
/// in the shape, so transversal and classical containment agree here.
pub fn find_canonical_f(tr: &Transversal, t: usize) -> Result<Option<Selection>> {
    check_size(t)?;
    let word = tr.perm().as_slice();
    let n = word.len();
    // The largest letter that ends some copy.
    let mut by_value: Vec<usize> = (1..=n).collect();
    by_value.sort_unstable_by_key(|&c| std::cmp::Reverse(word[c - 1]));
    let last = by_value
        .into_iter()
        .find(|&c| f_completes(word, c, None, word[c - 1], t - 1));
    let Some(last) = last else {
        return Ok(None);
    };
    let top = word[last - 1];
    // Columns collected right to left.
    let mut rev = vec![last];
    while rev.len() < t {
        let first = *rev.last().unwrap();
        let floor = (rev.len() > 1).then(|| word[first - 1]);
        let remaining = t - rev.len();
        let next = (1..first)
            .filter(|&c| {
                let v = word[c - 1];
                v < top
                    && floor.is_none_or(|f| v > f)
                    && f_completes(word, c, Some(v), top, remaining - 1)
            })
            .max_by_key(|&c| word[c - 1])
            .expect("completion exists by construction");
        rev.push(next);
    }
    rev.reverse();
    Ok(Some(Selection {
        columns: rev,
        direction: Direction::Backward,
    }))
}

fn check_selection(perm: &Permutation, sel: &Selection, want: Direction) -> Result<()> {
    let cols = &sel.columns;
    let n = perm.len();
    if sel.direction != want {
        return Err(Error::InvalidArgument(format!(
            "selection direction {:?} does not match {:?} step",
            sel.direction, want
        )));
    }
    check_size(cols.len())?;
    if cols[0] == 0 || cols[cols.len() - 1] > n || cols.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "columns {cols:?} are not increasing within 1..={n}"
        )));
    }
    let vals: Vec<usize> = cols.iter().map(|&c| perm.at(c)).collect();
    let t = vals.len();
    let ok = match want {
        Direction::Forward => vals.windows(2).all(|w| w[0] > w[1]),
        Direction::Backward => {
            vals[..t - 1].windows(2).all(|w| w[0] > w[1]) && vals[t - 1] > vals[0]
        }
    };
    if !ok {
        let what = if want == Direction::Forward { "J" } else { "F" };
        return Err(Error::InvalidArgument(format!(
            "columns {cols:?} of {perm} do not hold a copy of {what}_{t}"
        )));
    }
    Ok(())
}

/// Forward relocation: the first selected letter moves to the last selected
/// slot and every other selected letter moves one selected slot left.
pub fn theta(perm: &Permutation, sel: &Selection) -> Result<Permutation> {
    check_selection(perm, sel, Direction::Forward)?;
    let src = perm.as_slice();
    let mut word = src.to_vec();
    let cols = &sel.columns;
    let t = cols.len();
    word[cols[t - 1] - 1] = src[cols[0] - 1];
    for j in 1..t {
        word[cols[j - 1] - 1] = src[cols[j] - 1];
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// Backward relocation: the last selected letter moves to the first selected
/// slot and every other selected letter moves one selected slot right.
pub fn theta_prime(perm: &Permutation, sel: &Selection) -> Result<Permutation> {
    check_selection(perm, sel, Direction::Backward)?;
    let src = perm.as_slice();
    let mut word = src.to_vec();
    let cols = &sel.columns;
    let t = cols.len();
    word[cols[0] - 1] = src[cols[t - 1] - 1];
    for j in 0..t - 1 {
        word[cols[j + 1] - 1] = src[cols[j] - 1];
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// One forward step, or `None` if the transversal avoids `J_t`.
pub fn phi_step(tr: &Transversal, t: usize) -> Result<Option<(Selection, Transversal)>> {
    let Some(sel) = find_canonical_j(tr, t)? else {
        return Ok(None);
    };
    let next = theta(tr.perm(), &sel)?;
    Ok(Some((sel, Transversal::new_unchecked(tr.shape().clone(), next))))
}

/// One backward step, or `None` if the transversal avoids `F_t`.
pub fn psi_step(tr: &Transversal, t: usize) -> Result<Option<(Selection, Transversal)>> {
    let Some(sel) = find_canonical_f(tr, t)? else {
        return Ok(None);
    };
    let next = theta_prime(tr.perm(), &sel)?;
    Ok(Some((sel, Transversal::new_unchecked(tr.shape().clone(), next))))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Applications allowed before a run is declared non-terminating.
pub fn iteration_cap(n: usize, t: usize) -> usize {
    binomial(n, t) + 1
}

fn iterate(
    tr: &Transversal,
    t: usize,
    direction: Direction,
) -> Result<(Transversal, BijectionTrace)> {
    check_size(t)?;
    let cap = iteration_cap(tr.perm().len(), t);
    let mut trace = BijectionTrace::new(t, direction);
    let mut cur = tr.clone();
    loop {
        let step = match direction {
            Direction::Forward => phi_step(&cur, t)?,
            Direction::Backward => psi_step(&cur, t)?,
        };
        let Some((selection, next)) = step else {
            return Ok((cur, trace));
        };
        if trace.applications == cap {
            return Err(Error::IterationCap { t, cap });
        }
        debug_assert!(
            next.shape().is_transversal(next.perm()).unwrap_or(false),
            "step left the shape"
        );
        if next.sign() != cur.sign() {
            trace.sign_flips += 1;
        }
        trace.applications += 1;
        trace.steps.push(TraceStep {
            selection,
            after: next.perm().clone(),
        });
        cur = next;
    }
}

/// Repeats forward steps until no `J_t` copy remains.
pub fn phi_star(tr: &Transversal, t: usize) -> Result<(Transversal, BijectionTrace)> {
    iterate(tr, t, Direction::Forward)
}

/// Repeats backward steps until no `F_t` copy remains.
pub fn psi_star(tr: &Transversal, t: usize) -> Result<(Transversal, BijectionTrace)> {
    iterate(tr, t, Direction::Backward)
}

/// Expected sign change of a single step: `(-1)^(t-1)`.
pub fn step_sign(t: usize) -> Sign {
    if t % 2 == 1 {
        Sign::Even
    } else {
        Sign::Odd
    }
}

/// Convenience wrapper used by the CLI: runs the starred map in `direction`
/// on `perm` viewed as a transversal of `shape` (the square if `None`).
pub fn run_map(
    perm: Permutation,
    shape: Option<FerrersShape>,
    t: usize,
    direction: Direction,
) -> Result<(Transversal, BijectionTrace)> {
    let shape = shape.unwrap_or_else(|| FerrersShape::square(perm.len()));
    let tr = Transversal::new(shape, perm)?;
    iterate(&tr, t, direction)
}
