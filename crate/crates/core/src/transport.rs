//! Extending a shape bijection for `α ↔ β` to one for `α⊕σ ↔ β⊕σ`.
//!
//! A cell is white when the points strictly above and to the right of it
//! contain `σ` as a transversal; every point in a non-white cell then grays
//! out its whole row and column. The white cells form a smaller Ferrers
//! shape holding a sub-transversal, which is rewritten by the inner map
//! while the gray points stay put.

use serde::Serialize;

use crate::bwx;
use crate::error::{Error, Result};
use crate::matcher::PatternMatcher;
use crate::perm::Permutation;
use crate::shape::{FerrersShape, Transversal};

/// A map on transversals of arbitrary shapes. Implementations must be safe to
/// call from several threads.
pub trait ShapeMap: Sync {
    fn apply(&self, shape: &FerrersShape, perm: &Permutation) -> Result<Permutation>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityMap;

impl ShapeMap for IdentityMap {
    fn apply(&self, _shape: &FerrersShape, perm: &Permutation) -> Result<Permutation> {
        Ok(perm.clone())
    }
}

/// Forward starred map with copy size `t`.
#[derive(Clone, Copy, Debug)]
pub struct PhiStar(pub usize);

impl ShapeMap for PhiStar {
    fn apply(&self, shape: &FerrersShape, perm: &Permutation) -> Result<Permutation> {
        let tr = Transversal::new(shape.clone(), perm.clone())?;
        Ok(bwx::phi_star(&tr, self.0)?.0.into_parts().1)
    }
}

/// Backward starred map with copy size `t`.
#[derive(Clone, Copy, Debug)]
pub struct PsiStar(pub usize);

impl ShapeMap for PsiStar {
    fn apply(&self, shape: &FerrersShape, perm: &Permutation) -> Result<Permutation> {
        let tr = Transversal::new(shape.clone(), perm.clone())?;
        Ok(bwx::psi_star(&tr, self.0)?.0.into_parts().1)
    }
}

/// Adapts a closure.
pub struct FnMap<F>(pub F);

impl<F> ShapeMap for FnMap<F>
where
    F: Fn(&FerrersShape, &Permutation) -> Result<Permutation> + Sync,
{
    fn apply(&self, shape: &FerrersShape, perm: &Permutation) -> Result<Permutation> {
        (self.0)(shape, perm)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    /// Shape formed by the white cells after compressing away gray rows and columns.
    pub white_shape: FerrersShape,
    /// The points in white cells, renumbered.
    pub white_sub: Permutation,
    /// Original rows of the white shape, bottom to top.
    pub white_rows: Vec<usize>,
    /// Original columns of the white shape, left to right.
    pub white_cols: Vec<usize>,
    /// `gray[r-1][c-1]` for every cell `(r, c)` of the original shape.
    pub gray: Vec<Vec<bool>>,
}

impl Coloring {
    pub fn is_trivial(&self) -> bool {
        self.white_sub.is_empty()
    }
}

pub fn color_cells(tr: &Transversal, sigma: &Permutation) -> Result<Coloring> {
    if sigma.is_empty() {
        return Err(Error::InvalidArgument("σ must be nonempty".into()));
    }
    let shape = tr.shape();
    let word = tr.perm().as_slice();
    let n = word.len();
    let matcher = PatternMatcher::new(sigma);

    // Step 1: white iff σ occurs (as a transversal) strictly north-east.
    let mut white: Vec<Vec<bool>> = (1..=n)
        .map(|r| {
            (1..=shape.row_len(r))
                .map(|c| north_east_contains(shape, word, &matcher, r, c))
                .collect()
        })
        .collect();

    // Step 2: points in gray cells gray out their row and column.
    let mut gray_row = vec![false; n + 1];
    let mut gray_col = vec![false; n + 1];
    for (i, &row) in word.iter().enumerate() {
        let (r, c) = (row as usize, i + 1);
        if !white[r - 1][c - 1] {
            gray_row[r] = true;
            gray_col[c] = true;
        }
    }
    for r in 1..=n {
        for c in 1..=shape.row_len(r) {
            if gray_row[r] || (c <= n && gray_col[c]) || c > n {
                white[r - 1][c - 1] = false;
            }
        }
    }

    let white_rows: Vec<usize> = (1..=n).filter(|&r| !gray_row[r]).collect();
    let white_cols: Vec<usize> = (1..=n).filter(|&c| !gray_col[c]).collect();
    let mut parts = Vec::with_capacity(white_rows.len());
    for &r in &white_rows {
        let row: Vec<bool> = white_cols.iter().map(|&c| white[r - 1].get(c - 1) == Some(&true)).collect();
        let len = row.iter().take_while(|&&w| w).count();
        if row[len..].iter().any(|&w| w) {
            return Err(Error::ContractViolation(format!(
                "white cells of row {r} are not left-justified"
            )));
        }
        parts.push(len);
    }
    let white_shape = FerrersShape::new(parts)
        .map_err(|e| Error::ContractViolation(format!("white region is not a Ferrers shape: {e}")))?;
    let sub: Vec<u8> = white_cols
        .iter()
        .map(|&c| {
            let row = word[c - 1] as usize;
            (white_rows.binary_search(&row).expect("white column has a white point") + 1) as u8
        })
        .collect();
    let white_sub = Permutation::new(sub)?;
    if !white_shape.is_transversal(&white_sub)? {
        return Err(Error::ContractViolation(format!(
            "{white_sub} is not a transversal of the white shape {white_shape}"
        )));
    }
    let gray = white
        .iter()
        .map(|row| row.iter().map(|&w| !w).collect())
        .collect();
    Ok(Coloring {
        white_shape,
        white_sub,
        white_rows,
        white_cols,
        gray,
    })
}

/// Does the part of the transversal in rows `> r` and columns `> c` contain
/// `σ` as a transversal of that subboard?
fn north_east_contains(
    shape: &FerrersShape,
    word: &[u8],
    matcher: &PatternMatcher,
    r: usize,
    c: usize,
) -> bool {
    let mut text = Vec::new();
    let mut caps = Vec::new();
    for (i, &row) in word.iter().enumerate().skip(c) {
        if row as usize > r {
            text.push(row);
            caps.push(shape.column_height(i + 1).min(u8::MAX as usize) as u8);
        }
    }
    let k = matcher.len();
    (k.max(1) - 1..text.len()).any(|end| matcher.occurs_ending_at(&text, end, caps[end]))
}

/// Rewrites the white region of `tr` with `inner` and restores the gray part.
pub fn transport(inner: &dyn ShapeMap, tr: &Transversal, sigma: &Permutation) -> Result<Transversal> {
    let coloring = color_cells(tr, sigma)?;
    if coloring.is_trivial() {
        return Ok(tr.clone());
    }
    let image = inner.apply(&coloring.white_shape, &coloring.white_sub)?;
    if image.len() != coloring.white_sub.len()
        || !coloring.white_shape.is_transversal(&image).unwrap_or(false)
    {
        return Err(Error::ContractViolation(format!(
            "inner map sent {} to {image}, not a transversal of {}",
            coloring.white_sub, coloring.white_shape
        )));
    }
    let mut word = tr.perm().as_slice().to_vec();
    for (j, &c) in coloring.white_cols.iter().enumerate() {
        word[c - 1] = coloring.white_rows[image.at(j + 1) - 1] as u8;
    }
    let perm = Permutation::new(word)?;
    Transversal::new(tr.shape().clone(), perm)
        .map_err(|e| Error::ContractViolation(format!("reassembled transversal left the shape: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn coloring_examples() {
        let c = color_cells(&Transversal::square(p("21")), &p("12")).unwrap();
        assert!(c.white_shape.is_empty());
        assert!(c.is_trivial());

        let c = color_cells(&Transversal::square(p("123")), &p("1")).unwrap();
        assert_eq!(c.white_shape, FerrersShape::square(2));
        assert_eq!(c.white_sub, p("12"));
        assert_eq!(c.white_rows, [1, 2]);
        assert_eq!(c.white_cols, [1, 2]);
        assert!(c.gray[2].iter().all(|&g| g));

        let c = color_cells(&Transversal::square(p("321")), &p("1")).unwrap();
        assert!(c.white_shape.is_empty());
    }

    #[test]
    fn identity_and_empty_region() {
        let tr = Transversal::square(p("2413"));
        assert_eq!(transport(&IdentityMap, &tr, &p("1")).unwrap(), tr);
        // Nothing is white, so even a map that would fail is never called.
        let boom = FnMap(|_: &FerrersShape, _: &Permutation| -> Result<Permutation> {
            Err(Error::ContractViolation("called".into()))
        });
        let tr = Transversal::square(p("321"));
        assert_eq!(transport(&boom, &tr, &p("1")).unwrap(), tr);
    }

    #[test]
    fn bad_inner_map_is_reported() {
        let shrink = FnMap(|_: &FerrersShape, _: &Permutation| Ok(p("1")));
        let tr = Transversal::square(p("123"));
        assert!(matches!(
            transport(&shrink, &tr, &p("1")),
            Err(Error::ContractViolation(_))
        ));
    }
}
