//! Named, reproducible check suites.
//!
//! A check either proves nothing new and confirms a published statement over
//! a finite range (`verified`), finds no counterexample to a conjecture up to
//! its horizon (`exhausted-no-counterexample`), or produces a witness
//! (`refuted`). Witnesses are recomputed with the naive oracle below before a
//! report is returned, so a refutation never rests on the fast counter alone.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bwx;
use crate::classification::{partition_vectors, pattern_vectors, Mode};
use crate::enumeration::{
    avoidance_vector_with, count_avoiders_shape_with, count_avoiders_with, AvoidanceVector,
    CountOptions, CountTriple,
};
use crate::error::{Error, Result};
use crate::perm::{self, Permutation, Sign};
use crate::shape::{shapes_up_to_box, FerrersShape, Transversal};
use crate::TOOL_VERSION;

/// Largest `n` recounted by filtering all of `S_n`.
pub const NAIVE_MAX_N: usize = 8;

/// Largest `n` accepted by the sign-symmetry sweep.
pub const SIGN_SWEEP_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Refuted,
    ExhaustedNoCounterexample,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::ExhaustedNoCounterexample => "exhausted-no-counterexample",
        }
    }

    pub fn is_refuted(self) -> bool {
        self == Status::Refuted
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub horizons: BTreeMap<String, usize>,
    /// Data recorded alongside the verdict without being asserted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<String>,
    pub elapsed_ms: u64,
    pub tool_version: String,
}

/// Optional overrides; each check falls back to its own defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckParams {
    pub t: Option<usize>,
    pub box_size: Option<usize>,
    pub max_n: Option<usize>,
    pub k: Option<usize>,
}

/// Registered checks with a one-line description.
pub const CHECKS: &[(&str, &str)] = &[
    ("theorem-jtft", "J_t and F_t are even-shape-Wilf-equivalent for odd t"),
    ("sign-symmetry", "sign under reverse, complement and inverse"),
    ("s5-proven-pairs", "the six proven equivalences in S_5"),
    ("conj-s5-pairs", "the four conjectured equivalences in S_5"),
    ("conj-jrjs", "J_r + J_s is even-Wilf-equivalent to J_t for odd t = r + s"),
    ("conj-sw-even-shape", "312 and 231 are even-shape-Wilf-equivalent"),
    ("conj-refinement", "even-Wilf-equivalence refines Wilf-equivalence"),
    ("simion-schmidt-mod4", "e_n(123) = e_n(132) for n not divisible by 4"),
    ("even-horizon-12345", "e_2n(12345) = e_2n(54321)"),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

fn canonical_name(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('_', "-")
}

/// Runs a registered check by name. Underscores and case are ignored, so
/// `conj_SW_even_shape` names `conj-sw-even-shape`.
pub fn run_check(name: &str, params: &CheckParams, opts: &CountOptions) -> Result<CheckReport> {
    let p = *params;
    match canonical_name(name).as_str() {
        "theorem-jtft" => check_theorem_jtft(p.t.unwrap_or(3), p.box_size.unwrap_or(6), opts),
        "sign-symmetry" => check_sign_symmetry_lemmas(p.max_n.unwrap_or(7)),
        "s5-proven-pairs" => check_s5_proven_pairs(p.max_n.unwrap_or(10), opts),
        "conj-s5-pairs" => check_conj_s5_pairs(p.max_n.unwrap_or(10), opts),
        "conj-jrjs" => check_conj_jrjs(p.t.unwrap_or(5), p.max_n.unwrap_or(10), opts),
        "conj-sw-even-shape" => {
            check_conj_sw_even_shape(p.box_size.unwrap_or(5), p.max_n.unwrap_or(9), opts)
        }
        "conj-refinement" => check_conj_refinement(p.k.unwrap_or(4), p.max_n.unwrap_or(9), opts),
        "simion-schmidt-mod4" => check_simion_schmidt_mod4(p.max_n.unwrap_or(10), opts),
        "even-horizon-12345" => check_even_horizon_12345(p.max_n.unwrap_or(10), opts),
        _ => Err(Error::UnknownCheck {
            name: name.to_string(),
            available: check_names(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Naive oracle

/// Inversions by comparing every pair.
pub fn naive_inversions(word: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    inv
}

fn naive_sign(word: &[u8]) -> Sign {
    Sign::from_inversions(naive_inversions(word))
}

/// Tries every position subset. `cap(last)` bounds the largest matched value
/// given the position of the last matched entry.
fn naive_occurs(text: &[u8], pattern: &[u8], cap: &dyn Fn(usize) -> usize) -> bool {
    fn go(
        text: &[u8],
        pattern: &[u8],
        cap: &dyn Fn(usize) -> usize,
        from: usize,
        picked: &mut Vec<usize>,
    ) -> bool {
        if picked.len() == pattern.len() {
            let vals: Vec<u8> = picked.iter().map(|&i| text[i]).collect();
            let order_ok = (0..vals.len())
                .all(|a| (0..vals.len()).all(|b| (vals[a] < vals[b]) == (pattern[a] < pattern[b])));
            let max = *vals.iter().max().unwrap_or(&0) as usize;
            return order_ok && picked.last().is_none_or(|&l| max <= cap(l));
        }
        for i in from..text.len() {
            picked.push(i);
            if go(text, pattern, cap, i + 1, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    go(text, pattern, cap, 0, &mut Vec::with_capacity(pattern.len()))
}

/// Classical containment by brute force over subsequences.
pub fn naive_contains(text: &Permutation, pattern: &Permutation) -> bool {
    naive_occurs(text.as_slice(), pattern.as_slice(), &|_| usize::MAX)
}

/// Counts by filtering every permutation of length `n`.
pub fn naive_count(n: usize, pattern: &Permutation) -> CountTriple {
    let mut c = CountTriple::default();
    for p in Permutation::all(n) {
        if !naive_contains(&p, pattern) {
            c.record(naive_sign(p.as_slice()));
        }
    }
    c
}

/// Counts by filtering every transversal of `shape`.
pub fn naive_count_shape(shape: &FerrersShape, pattern: &Permutation) -> CountTriple {
    let mut c = CountTriple::default();
    for p in shape.transversals() {
        let cap = |last: usize| shape.column_height(last + 1);
        if !naive_occurs(p.as_slice(), pattern.as_slice(), &cap) {
            c.record(naive_sign(p.as_slice()));
        }
    }
    c
}

/// An independent recount: the naive filter when small, otherwise the
/// single-threaded walker (a different code path from the sharded one).
fn recount(n: usize, pattern: &Permutation) -> Result<CountTriple> {
    if n <= NAIVE_MAX_N {
        Ok(naive_count(n, pattern))
    } else {
        count_avoiders_with(n, pattern, &CountOptions::serial().with_max_n(n))
    }
}

// ---------------------------------------------------------------------------
// Witnesses

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Statistic {
    Even,
    Total,
}

impl Statistic {
    fn of(self, c: &CountTriple) -> u64 {
        match self {
            Statistic::Even => c.even,
            Statistic::Total => c.total,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Witness {
    /// Two patterns whose counts differ at length `n`.
    CountMismatch {
        left: Permutation,
        right: Permutation,
        n: usize,
        statistic: Statistic,
        left_value: u64,
        right_value: u64,
    },
    /// Two patterns whose transversal counts differ on `shape`.
    ShapeMismatch {
        shape: FerrersShape,
        left: Permutation,
        right: Permutation,
        statistic: Statistic,
        left_value: u64,
        right_value: u64,
    },
    /// A single step of the map changed the sign.
    SignFlip {
        shape: FerrersShape,
        t: usize,
        before: Permutation,
        columns: Vec<usize>,
        after: Permutation,
    },
    /// The starred map misbehaved on one input.
    MapFailure {
        shape: FerrersShape,
        t: usize,
        direction: bwx::Direction,
        input: Permutation,
        output: Permutation,
        reason: String,
    },
    /// A sign identity failed for one permutation.
    SignIdentity { perm: Permutation, part: String },
    /// Opposite-sign patterns with equal even counts at `n = k`.
    Separation {
        left: Permutation,
        right: Permutation,
        even: u64,
    },
    /// Equal even vectors up to the horizon, different totals at `n`.
    Refinement {
        left: Permutation,
        right: Permutation,
        n: usize,
        left_total: u64,
        right_total: u64,
    },
}

impl Witness {
    /// Recomputes the failure with the naive oracle.
    fn recheck(&self) -> Result<bool> {
        Ok(match self {
            Witness::CountMismatch {
                left,
                right,
                n,
                statistic,
                left_value,
                right_value,
            } => {
                let (a, b) = (recount(*n, left)?, recount(*n, right)?);
                statistic.of(&a) == *left_value
                    && statistic.of(&b) == *right_value
                    && left_value != right_value
            }
            Witness::ShapeMismatch {
                shape,
                left,
                right,
                statistic,
                left_value,
                right_value,
            } => {
                let a = naive_count_shape(shape, left);
                let b = naive_count_shape(shape, right);
                statistic.of(&a) == *left_value
                    && statistic.of(&b) == *right_value
                    && left_value != right_value
            }
            Witness::SignFlip {
                shape,
                before,
                columns,
                after,
                ..
            } => {
                let sel = bwx::Selection {
                    columns: columns.clone(),
                    direction: bwx::Direction::Forward,
                };
                shape.is_transversal(before)?
                    && shape.is_transversal(after)?
                    && bwx::theta(before, &sel)? == *after
                    && naive_sign(before.as_slice()) != naive_sign(after.as_slice())
            }
            Witness::MapFailure {
                shape,
                t,
                direction,
                input,
                ..
            } => {
                let (j, f) = (perm::j(*t), perm::f(*t));
                let occurs = |w: &Permutation, pat: &Permutation| {
                    naive_occurs(w.as_slice(), pat.as_slice(), &|last| shape.column_height(last + 1))
                };
                let (source, target) = match direction {
                    bwx::Direction::Forward => (&f, &j),
                    bwx::Direction::Backward => (&j, &f),
                };
                let tr = Transversal::new(shape.clone(), input.clone())?;
                let (img, _) = bwx::run_map(input.clone(), Some(shape.clone()), *t, *direction)?;
                let back_dir = match direction {
                    bwx::Direction::Forward => bwx::Direction::Backward,
                    bwx::Direction::Backward => bwx::Direction::Forward,
                };
                let (back, _) = bwx::run_map(img.perm().clone(), Some(shape.clone()), *t, back_dir)?;
                !occurs(input, source)
                    && (occurs(img.perm(), target)
                        || back != tr
                        || (t % 2 == 1
                            && naive_sign(img.perm().as_slice()) != naive_sign(input.as_slice())))
            }
            Witness::SignIdentity { perm, part } => {
                let w = perm.as_slice();
                let n = w.len();
                let flips = n % 4 == 2 || n % 4 == 3;
                let s = naive_sign(w);
                match part.as_str() {
                    "a" => (naive_sign(perm.reverse().as_slice()) != s) != flips,
                    "b" => (naive_sign(perm.complement().as_slice()) != s) != flips,
                    "c" => naive_sign(perm.inverse().as_slice()) != s,
                    _ => naive_inversions(perm.reverse().as_slice()) + naive_inversions(w) != n * (n.max(1) - 1) / 2,
                }
            }
            Witness::Separation { left, right, even } => {
                let n = left.len();
                naive_sign(left.as_slice()) != naive_sign(right.as_slice())
                    && naive_count(n, left).even == *even
                    && naive_count(n, right).even == *even
            }
            Witness::Refinement {
                left,
                right,
                n,
                left_total,
                right_total,
            } => {
                let (a, b) = (recount(*n, left)?, recount(*n, right)?);
                a.total == *left_total && b.total == *right_total && left_total != right_total
            }
        })
    }
}

// ---------------------------------------------------------------------------
// Report assembly

struct Builder {
    name: &'static str,
    start: Instant,
    params: BTreeMap<String, Value>,
    horizons: BTreeMap<String, usize>,
    observations: Vec<String>,
}

impl Builder {
    fn new(name: &'static str) -> Self {
        Builder {
            name,
            start: Instant::now(),
            params: BTreeMap::new(),
            horizons: BTreeMap::new(),
            observations: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    fn horizon(&mut self, key: &str, value: usize) -> &mut Self {
        self.horizons.insert(key.to_string(), value);
        self
    }

    fn observe(&mut self, note: impl Into<String>) -> &mut Self {
        self.observations.push(note.into());
        self
    }

    /// `pass` is the status used when no witness was found.
    fn finish(self, pass: Status, witness: Option<Witness>) -> Result<CheckReport> {
        let (status, witness) = match witness {
            None => (pass, None),
            Some(w) => {
                if !w.recheck()? {
                    return Err(Error::ContractViolation(format!(
                        "{}: witness did not reproduce under the naive oracle: {w:?}",
                        self.name
                    )));
                }
                (Status::Refuted, Some(serde_json::to_value(&w)?))
            }
        };
        Ok(CheckReport {
            name: self.name.to_string(),
            params: self.params,
            status,
            witness,
            horizons: self.horizons,
            observations: self.observations,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            tool_version: TOOL_VERSION.to_string(),
        })
    }
}

fn check_box(b: usize, opts: &CountOptions) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidArgument("box size must be at least 1".into()));
    }
    if b > opts.max_box {
        return Err(Error::Budget {
            what: "box size",
            value: b,
            max: opts.max_box,
        });
    }
    Ok(())
}

fn vectors_for(
    patterns: &[Permutation],
    max_n: usize,
    opts: &CountOptions,
) -> Result<BTreeMap<Permutation, AvoidanceVector>> {
    let mut out = BTreeMap::new();
    for p in patterns {
        if !out.contains_key(p) {
            out.insert(p.clone(), avoidance_vector_with(p, max_n, opts)?);
        }
    }
    Ok(out)
}

/// First `n` in `ns` where the chosen statistic differs between the pair.
fn first_mismatch(
    left: &AvoidanceVector,
    right: &AvoidanceVector,
    ns: impl IntoIterator<Item = usize>,
    stats: &[Statistic],
) -> Option<Witness> {
    for n in ns {
        for &statistic in stats {
            let (a, b) = (statistic.of(&left.entries[n]), statistic.of(&right.entries[n]));
            if a != b {
                return Some(Witness::CountMismatch {
                    left: left.pattern.clone(),
                    right: right.pattern.clone(),
                    n,
                    statistic,
                    left_value: a,
                    right_value: b,
                });
            }
        }
    }
    None
}

fn pairs_check(
    name: &'static str,
    pairs: &[(Permutation, Permutation)],
    max_n: usize,
    stats: &[Statistic],
    pass: Status,
    opts: &CountOptions,
) -> Result<CheckReport> {
    let mut b = Builder::new(name);
    b.param(
        "pairs",
        pairs
            .iter()
            .map(|(x, y)| format!("{x}~{y}"))
            .collect::<Vec<_>>(),
    )
    .param("max_n", max_n)
    .horizon("max_n", max_n);
    let all: Vec<Permutation> = pairs.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
    let vectors = vectors_for(&all, max_n, opts)?;
    let witness = pairs
        .iter()
        .find_map(|(x, y)| first_mismatch(&vectors[x], &vectors[y], 0..=max_n, stats));
    b.finish(pass, witness)
}

fn parse_pairs(items: &[(&str, &str)]) -> Vec<(Permutation, Permutation)> {
    items
        .iter()
        .map(|(a, b)| (a.parse().expect("literal"), b.parse().expect("literal")))
        .collect()
}

// ---------------------------------------------------------------------------
// Checks

/// Shape by shape over every shape with at most `box_size` rows: equal even
/// and odd counts of `J_t`- and `F_t`-avoiders (totals only for even `t`),
/// and the starred maps are mutually inverse, sign-preserving bijections
/// between the two avoider sets. For even `t` the sign statement is refuted
/// by the first single step, which is reported as the witness.
pub fn check_theorem_jtft(t: usize, box_size: usize, opts: &CountOptions) -> Result<CheckReport> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    check_box(box_size, opts)?;
    let odd = t % 2 == 1;
    let (j, f) = (perm::j(t), perm::f(t));
    let mut b = Builder::new("theorem-jtft");
    b.param("t", t).param("box", box_size).horizon("box", box_size);
    let stats: &[Statistic] = if odd {
        &[Statistic::Even, Statistic::Total]
    } else {
        &[Statistic::Total]
    };

    let mut witness = None;
    let mut sign_flip = None;
    let (mut shapes, mut transversals, mut mapped, mut max_apps) = (0usize, 0usize, 0usize, 0usize);
    'shapes: for shape in shapes_up_to_box(box_size) {
        shapes += 1;
        let cj = count_avoiders_shape_with(&shape, &j, opts)?;
        let cf = count_avoiders_shape_with(&shape, &f, opts)?;
        for &statistic in stats {
            if statistic.of(&cj) != statistic.of(&cf) {
                witness = Some(Witness::ShapeMismatch {
                    shape: shape.clone(),
                    left: j.clone(),
                    right: f.clone(),
                    statistic,
                    left_value: statistic.of(&cj),
                    right_value: statistic.of(&cf),
                });
                break 'shapes;
            }
        }
        let mut images = HashSet::new();
        let fail = |direction, input: &Transversal, output: &Transversal, reason: &str| Witness::MapFailure {
            shape: shape.clone(),
            t,
            direction,
            input: input.perm().clone(),
            output: output.perm().clone(),
            reason: reason.to_string(),
        };
        for word in shape.transversals() {
            transversals += 1;
            let tr = Transversal::new(shape.clone(), word)?;
            if sign_flip.is_none() && !odd {
                if let Some((sel, next)) = bwx::phi_step(&tr, t)? {
                    if next.sign() != tr.sign() {
                        sign_flip = Some(Witness::SignFlip {
                            shape: shape.clone(),
                            t,
                            before: tr.perm().clone(),
                            columns: sel.columns,
                            after: next.perm().clone(),
                        });
                    }
                }
            }
            if tr.avoids(&f) {
                mapped += 1;
                let (img, trace) = bwx::phi_star(&tr, t)?;
                max_apps = max_apps.max(trace.applications);
                let (back, _) = bwx::psi_star(&img, t)?;
                let reason = if img.contains(&j) {
                    Some("image contains J_t")
                } else if back != tr {
                    Some("backward map does not undo the forward map")
                } else if odd && img.sign() != tr.sign() {
                    Some("forward map changed the sign")
                } else {
                    None
                };
                if let Some(reason) = reason {
                    witness = Some(fail(bwx::Direction::Forward, &tr, &img, reason));
                    break 'shapes;
                }
                images.insert(img.perm().clone());
            }
            if tr.avoids(&j) {
                let (pre, _) = bwx::psi_star(&tr, t)?;
                let (again, _) = bwx::phi_star(&pre, t)?;
                let reason = if pre.contains(&f) {
                    Some("preimage contains F_t")
                } else if again != tr {
                    Some("forward map does not undo the backward map")
                } else if odd && pre.sign() != tr.sign() {
                    Some("backward map changed the sign")
                } else {
                    None
                };
                if let Some(reason) = reason {
                    witness = Some(fail(bwx::Direction::Backward, &tr, &pre, reason));
                    break 'shapes;
                }
            }
        }
        if images.len() as u64 != cj.total {
            witness = Some(Witness::ShapeMismatch {
                shape: shape.clone(),
                left: j.clone(),
                right: f.clone(),
                statistic: Statistic::Total,
                left_value: cj.total,
                right_value: images.len() as u64,
            });
            break;
        }
    }
    b.observe(format!(
        "{shapes} shapes, {transversals} transversals, {mapped} mapped, at most {max_apps} steps per map"
    ));

    if witness.is_none() && t <= 7 {
        // Opposite-sign patterns of length t are told apart at n = t.
        let mut by_sign: BTreeMap<bool, (u64, Permutation)> = BTreeMap::new();
        for p in Permutation::all(t) {
            let e = count_avoiders_with(t, &p, opts)?.even;
            let s = p.sign().is_even();
            match by_sign.get(&s) {
                Some((e0, _)) if *e0 != e => {
                    return Err(Error::ContractViolation(format!(
                        "even count at n = {t} is not a function of sign ({p})"
                    )))
                }
                Some(_) => {}
                None => {
                    by_sign.insert(s, (e, p));
                }
            }
        }
        if let (Some((ee, pe)), Some((eo, po))) = (by_sign.get(&true), by_sign.get(&false)) {
            if ee == eo {
                witness = Some(Witness::Separation {
                    left: pe.clone(),
                    right: po.clone(),
                    even: *ee,
                });
            } else {
                b.observe(format!(
                    "opposite signs separate at n = {t}: e = {ee} for even patterns, {eo} for odd"
                ));
            }
        }
        if j.sign() != f.sign() {
            b.observe(format!("J_{t} and F_{t} have opposite signs"));
        }
    }

    if witness.is_none() && !odd {
        b.observe("counts agree in total; a single step reverses the sign");
        witness = sign_flip;
    }
    b.finish(Status::Verified, witness)
}

/// Sign under reverse and complement (flips iff `n ≡ 2, 3 mod 4`), under
/// inverse (never), and `inv(π^r) = C(n,2) - inv(π)`, for every permutation
/// of length `1..=max_n`.
pub fn check_sign_symmetry_lemmas(max_n: usize) -> Result<CheckReport> {
    if max_n > SIGN_SWEEP_MAX_N {
        return Err(Error::Budget {
            what: "n",
            value: max_n,
            max: SIGN_SWEEP_MAX_N,
        });
    }
    let mut b = Builder::new("sign-symmetry");
    b.param("max_n", max_n).horizon("max_n", max_n);
    let mut checked = 0u64;
    let mut example = None;
    let mut witness = None;
    'all: for n in 1..=max_n {
        let flips = n % 4 == 2 || n % 4 == 3;
        let pairs = n * (n - 1) / 2;
        for p in Permutation::all(n) {
            checked += 1;
            let (r, c, i) = (p.reverse(), p.complement(), p.inverse());
            let s = p.sign();
            let part = if p.inversions() != naive_inversions(p.as_slice()) {
                Some("inversions")
            } else if (r.sign() != s) != flips {
                Some("a")
            } else if (c.sign() != s) != flips {
                Some("b")
            } else if i.sign() != s {
                Some("c")
            } else if r.inversions() + p.inversions() != pairs {
                Some("reverse-inversions")
            } else {
                None
            };
            if let Some(part) = part {
                witness = Some(Witness::SignIdentity {
                    perm: p,
                    part: part.to_string(),
                });
                break 'all;
            }
            if n == 6 && example.is_none() {
                example = Some((p.clone(), r));
            }
        }
    }
    b.param("permutations", checked);
    if let Some((p, r)) = example {
        b.observe(format!(
            "n = 6: sign({p}) = {}, sign({r}) = {}",
            p.sign(),
            r.sign()
        ));
    }
    b.finish(Status::Verified, witness)
}

pub fn check_s5_proven_pairs(max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    let pairs = parse_pairs(&[
        ("12345", "23451"),
        ("45312", "34512"),
        ("15432", "54321"),
        ("21354", "21543"),
        ("12354", "12543"),
        ("45321", "34521"),
    ]);
    pairs_check(
        "s5-proven-pairs",
        &pairs,
        max_n,
        &[Statistic::Even, Statistic::Total],
        Status::Verified,
        opts,
    )
}

pub fn check_conj_s5_pairs(max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    let pairs = parse_pairs(&[
        ("12345", "45312"),
        ("54321", "21354"),
        ("12354", "45321"),
        ("13524", "42531"),
    ]);
    pairs_check(
        "conj-s5-pairs",
        &pairs,
        max_n,
        &[Statistic::Even],
        Status::ExhaustedNoCounterexample,
        opts,
    )
}

/// `J_r ⊕ J_s` against `J_t` for every odd `t` in `3..=max_t` and
/// `r + s = t` with `r, s >= 1`.
pub fn check_conj_jrjs(max_t: usize, max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    if max_t < 3 {
        return Err(Error::InvalidArgument(format!("t must be at least 3, got {max_t}")));
    }
    let mut pairs = Vec::new();
    for t in (3..=max_t).step_by(2) {
        for r in 1..t {
            pairs.push((perm::j(r).direct_sum(&perm::j(t - r))?, perm::j(t)));
        }
    }
    let mut report = pairs_check(
        "conj-jrjs",
        &pairs,
        max_n,
        &[Statistic::Even],
        Status::ExhaustedNoCounterexample,
        opts,
    )?;
    report.params.insert("t".into(), json!(max_t));
    Ok(report)
}

/// `e_λ(312) = e_λ(231)` for shapes with at most `box_size` rows, and
/// `e_n(231 ⊕ α) = e_n(312 ⊕ α)` for `|α| <= 4`, `n <= max_n`.
pub fn check_conj_sw_even_shape(box_size: usize, max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    check_box(box_size, opts)?;
    let mut b = Builder::new("conj-sw-even-shape");
    b.param("box", box_size)
        .param("max_n", max_n)
        .param("alpha_max_len", 4)
        .horizon("box", box_size)
        .horizon("max_n", max_n);
    let (a, c): (Permutation, Permutation) = ("312".parse()?, "231".parse()?);
    let mut shapes = 0;
    let mut witness = None;
    for shape in shapes_up_to_box(box_size) {
        shapes += 1;
        let (ca, cc) = (
            count_avoiders_shape_with(&shape, &a, opts)?,
            count_avoiders_shape_with(&shape, &c, opts)?,
        );
        if ca.even != cc.even {
            witness = Some(Witness::ShapeMismatch {
                shape,
                left: a.clone(),
                right: c.clone(),
                statistic: Statistic::Even,
                left_value: ca.even,
                right_value: cc.even,
            });
            break;
        }
    }
    b.param("shapes", shapes);
    if witness.is_none() {
        let mut pairs = Vec::new();
        for len in 1..=4 {
            for alpha in Permutation::all(len) {
                pairs.push((c.direct_sum(&alpha)?, a.direct_sum(&alpha)?));
            }
        }
        let all: Vec<Permutation> = pairs.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
        let vectors = vectors_for(&all, max_n, opts)?;
        witness = pairs
            .iter()
            .find_map(|(x, y)| first_mismatch(&vectors[x], &vectors[y], 0..=max_n, &[Statistic::Even]));
        b.param("sum_pairs", pairs.len());
    }
    b.finish(Status::ExhaustedNoCounterexample, witness)
}

/// For every `k' <= k`: patterns with equal even vectors up to `max_n` have
/// equal total vectors up to `max_n`.
pub fn check_conj_refinement(k: usize, max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    let mut b = Builder::new("conj-refinement");
    b.param("k", k).param("max_n", max_n).horizon("max_n", max_n);
    let mut witness = None;
    'ks: for kk in 1..=k {
        let vectors = pattern_vectors(kk, max_n, opts)?;
        let even = partition_vectors(kk, max_n, Mode::EvenWilf, &vectors);
        let wilf = partition_vectors(kk, max_n, Mode::Wilf, &vectors);
        b.observe(format!(
            "k = {kk}: {} even-Wilf blocks, {} Wilf blocks",
            even.num_blocks(),
            wilf.num_blocks()
        ));
        if even.refines(&wilf) {
            continue;
        }
        let by_pattern: BTreeMap<&Permutation, &AvoidanceVector> =
            vectors.iter().map(|v| (&v.pattern, v)).collect();
        for block in &even.blocks {
            let first = by_pattern[&block.members[0]];
            for m in &block.members[1..] {
                let other = by_pattern[m];
                if let Some(n) = (0..=max_n).find(|&n| first.entries[n].total != other.entries[n].total) {
                    witness = Some(Witness::Refinement {
                        left: first.pattern.clone(),
                        right: m.clone(),
                        n,
                        left_total: first.entries[n].total,
                        right_total: other.entries[n].total,
                    });
                    break 'ks;
                }
            }
        }
    }
    b.finish(Status::ExhaustedNoCounterexample, witness)
}

/// `e_n(123) = e_n(132)` for `n ≢ 0 (mod 4)`; values at `n ≡ 0` are
/// recorded without being asserted.
pub fn check_simion_schmidt_mod4(max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    let mut b = Builder::new("simion-schmidt-mod4");
    b.param("max_n", max_n).horizon("max_n", max_n);
    let (x, y): (Permutation, Permutation) = ("123".parse()?, "132".parse()?);
    let vx = avoidance_vector_with(&x, max_n, opts)?;
    let vy = avoidance_vector_with(&y, max_n, opts)?;
    let witness = first_mismatch(&vx, &vy, (0..=max_n).filter(|n| n % 4 != 0), &[Statistic::Even]);
    let mut differs = Vec::new();
    for n in (0..=max_n).filter(|n| n % 4 == 0) {
        let (ex, ey) = (vx.entries[n].even, vy.entries[n].even);
        b.observe(format!("n = {n}: e(123) = {ex}, e(132) = {ey}"));
        if ex != ey {
            differs.push(n);
        }
    }
    b.param("differs_at_multiples_of_4", differs);
    let all_differing: Vec<usize> = (0..=max_n)
        .filter(|&n| vx.entries[n].even != vy.entries[n].even)
        .collect();
    b.param("differs_at", all_differing);
    b.finish(Status::ExhaustedNoCounterexample, witness)
}

/// `e_{2n}(12345) = e_{2n}(54321)` for `2n <= max_n`.
pub fn check_even_horizon_12345(max_n: usize, opts: &CountOptions) -> Result<CheckReport> {
    let mut b = Builder::new("even-horizon-12345");
    b.param("max_n", max_n).horizon("max_n", max_n);
    let (x, y): (Permutation, Permutation) = ("12345".parse()?, "54321".parse()?);
    let vx = avoidance_vector_with(&x, max_n, opts)?;
    let vy = avoidance_vector_with(&y, max_n, opts)?;
    let witness = first_mismatch(&vx, &vy, (0..=max_n).step_by(2), &[Statistic::Even]);
    let odd_differs: Vec<usize> = (1..=max_n)
        .step_by(2)
        .filter(|&n| vx.entries[n].even != vy.entries[n].even)
        .collect();
    b.param("odd_n_differing", odd_differs);
    b.finish(Status::ExhaustedNoCounterexample, witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn naive_oracle_basics() {
        assert_eq!(naive_inversions(&[3, 1, 2]), 2);
        assert!(naive_contains(&p("2413"), &p("231")) == p("2413").contains(&p("231")));
        assert_eq!(naive_count(3, &p("123")).even, 2);
        assert_eq!(naive_count(3, &p("321")).even, 3);
        assert_eq!(naive_count_shape(&FerrersShape::square(3), &p("321")), CountTriple::new(3, 2));
        let fig: FerrersShape = "5,5,3,2,2".parse().unwrap();
        assert_eq!(
            naive_count_shape(&fig, &p("321")),
            count_avoiders_shape_with(&fig, &p("321"), &CountOptions::serial()).unwrap()
        );
    }

    #[test]
    fn sign_symmetry_small() {
        let r = check_sign_symmetry_lemmas(7).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.params["permutations"], json!(5913));
        assert!(r.observations[0].contains("123456"));
        assert!(check_sign_symmetry_lemmas(11).unwrap_err().is_budget());
    }

    #[test]
    fn theorem_small_boxes() {
        let opts = CountOptions::default();
        let r = check_theorem_jtft(3, 4, &opts).unwrap();
        assert_eq!(r.status, Status::Verified, "{r:?}");
        let r = check_theorem_jtft(2, 3, &opts).unwrap();
        assert_eq!(r.status, Status::Refuted);
        let w = r.witness.unwrap();
        assert_eq!(w["kind"], "sign-flip");
        assert_eq!(w["before"], "21");
        assert_eq!(w["after"], "12");
        assert!(check_theorem_jtft(3, 9, &opts).unwrap_err().is_budget());
    }

    #[test]
    fn refuted_witness_is_rechecked() {
        // 123 and 321 differ in even count at n = 3, so claiming them equal
        // is refuted with a reproducible witness.
        let pairs = vec![(p("123"), p("321"))];
        let r = pairs_check(
            "conj-s5-pairs",
            &pairs,
            5,
            &[Statistic::Even],
            Status::ExhaustedNoCounterexample,
            &CountOptions::default(),
        )
        .unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert_eq!(r.witness.unwrap()["n"], 3);

        let bogus = Witness::CountMismatch {
            left: p("123"),
            right: p("132"),
            n: 3,
            statistic: Statistic::Total,
            left_value: 5,
            right_value: 5,
        };
        assert!(!bogus.recheck().unwrap());
    }

    #[test]
    fn registry() {
        let opts = CountOptions::default();
        let err = run_check("nope", &CheckParams::default(), &opts).unwrap_err();
        assert!(matches!(err, Error::UnknownCheck { ref available, .. } if available.len() == CHECKS.len()));
        let params = CheckParams {
            max_n: Some(6),
            ..Default::default()
        };
        let r = run_check("Simion_Schmidt_Mod4", &params, &opts).unwrap();
        assert_eq!(r.name, "simion-schmidt-mod4");
        // e_3(123) = 2 but e_3(132) = 3, and 3 is not a multiple of 4.
        assert_eq!(r.status, Status::Refuted);
        assert_eq!(r.witness.as_ref().unwrap()["n"], 3);
        assert_eq!(r.params["differs_at"], json!([3]));
        let r = run_check("even_horizon_12345", &params, &opts).unwrap();
        assert_eq!(r.status, Status::ExhaustedNoCounterexample);
    }

    #[test]
    fn report_json_shape() {
        let r = check_sign_symmetry_lemmas(3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["name", "params", "status", "horizons", "elapsed_ms", "tool_version"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["status"], "verified");
        assert!(v.get("witness").is_none());
        let back: CheckReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
