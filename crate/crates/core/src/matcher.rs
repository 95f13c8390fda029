//! Backtracking occurrence search with value-window pruning.
//!
//! The matcher places the final pattern entry first and then walks the
//! remaining pattern entries left to right. Each placed entry narrows the
//! admissible value window for later entries to the open interval between
//! its nearest already-placed neighbours in value.

use crate::perm::Permutation;

const INLINE: usize = 32;

#[derive(Clone, Debug)]
pub struct PatternMatcher {
    /// Pattern values in placement order.
    values: Vec<u8>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl PatternMatcher {
    pub fn new(pattern: &Permutation) -> Self {
        let word = pattern.as_slice();
        let k = word.len();
        let mut values = Vec::with_capacity(k);
        if k > 0 {
            values.push(word[k - 1]);
            values.extend_from_slice(&word[..k - 1]);
        }
        let mut below = Vec::with_capacity(k);
        let mut above = Vec::with_capacity(k);
        for s in 0..k {
            let v = values[s];
            let mut lo: Option<usize> = None;
            let mut hi: Option<usize> = None;
            for (p, &w) in values[..s].iter().enumerate() {
                if w < v && lo.is_none_or(|l| values[l] < w) {
                    lo = Some(p);
                }
                if w > v && hi.is_none_or(|h| values[h] > w) {
                    hi = Some(p);
                }
            }
            below.push(lo);
            above.push(hi);
        }
        PatternMatcher {
            values,
            below,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Is there an occurrence whose last entry sits at `end`, with every
    /// matched value at most `cap`? Values in `text` must be distinct.
    pub fn occurs_ending_at(&self, text: &[u8], end: usize, cap: u8) -> bool {
        let k = self.values.len();
        if k == 0 {
            return true;
        }
        if end + 1 < k || text[end] > cap {
            return false;
        }
        if k <= INLINE {
            let mut chosen = [0u8; INLINE];
            chosen[0] = text[end];
            self.extend(text, end, cap, 1, 0, &mut chosen[..k])
        } else {
            let mut chosen = vec![0u8; k];
            chosen[0] = text[end];
            self.extend(text, end, cap, 1, 0, &mut chosen)
        }
    }

    /// Classical containment anywhere in `text`.
    pub fn occurs_in(&self, text: &[u8]) -> bool {
        if self.values.is_empty() {
            return true;
        }
        (self.values.len() - 1..text.len()).any(|end| self.occurs_ending_at(text, end, u8::MAX))
    }

    fn extend(
        &self,
        text: &[u8],
        end: usize,
        cap: u8,
        step: usize,
        from: usize,
        chosen: &mut [u8],
    ) -> bool {
        let k = self.values.len();
        if step == k {
            return true;
        }
        let lo = self.below[step].map_or(-1i16, |b| chosen[b] as i16);
        let hi = self.above[step].map_or(cap as i16 + 1, |a| chosen[a] as i16);
        if hi <= lo + 1 {
            return false;
        }
        // Entries still to place after this one must fit before `end`.
        let last = end - (k - 1 - step);
        for pos in from..last {
            let v = text[pos] as i16;
            if v > lo && v < hi {
                chosen[step] = text[pos];
                if self.extend(text, end, cap, step + 1, pos + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }
}
