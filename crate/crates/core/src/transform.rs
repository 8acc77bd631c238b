//! Symmetries of the square and index permutations.

use std::fmt;
use std::str::FromStr;

use crate::construct::PreMatrix;
use crate::error::{Error, Result};
use crate::square::Square;

/// One of the eight symmetries of the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum D4Element {
    Identity,
    /// Quarter turn clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror left-right.
    FlipH,
    /// Mirror top-bottom.
    FlipV,
    /// Transpose.
    FlipMainDiag,
    FlipAntiDiag,
}

impl D4Element {
    pub const ALL: [D4Element; 8] = [
        D4Element::Identity,
        D4Element::Rot90,
        D4Element::Rot180,
        D4Element::Rot270,
        D4Element::FlipH,
        D4Element::FlipV,
        D4Element::FlipMainDiag,
        D4Element::FlipAntiDiag,
    ];

    /// 0-based source coordinates: the transformed square holds at
    /// `(r, c)` the entry of the original at `source(r, c)`.
    #[inline]
    pub(crate) fn source(self, r: usize, c: usize, n: usize) -> (usize, usize) {
        let last = n - 1;
        match self {
            D4Element::Identity => (r, c),
            D4Element::Rot90 => (last - c, r),
            D4Element::Rot180 => (last - r, last - c),
            D4Element::Rot270 => (c, last - r),
            D4Element::FlipH => (r, last - c),
            D4Element::FlipV => (last - r, c),
            D4Element::FlipMainDiag => (c, r),
            D4Element::FlipAntiDiag => (last - c, last - r),
        }
    }

    /// The element equal to applying `self` and then `then`.
    pub fn then(self, then: D4Element) -> D4Element {
        let probe = Square::new(3, (1..=9).collect()).expect("valid");
        let target = d4_apply(&d4_apply(&probe, self), then);
        D4Element::ALL
            .into_iter()
            .find(|&g| d4_apply(&probe, g) == target)
            .expect("D4 is closed under composition")
    }

    pub fn inverse(self) -> D4Element {
        match self {
            D4Element::Rot90 => D4Element::Rot270,
            D4Element::Rot270 => D4Element::Rot90,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            D4Element::Identity => "identity",
            D4Element::Rot90 => "rot90",
            D4Element::Rot180 => "rot180",
            D4Element::Rot270 => "rot270",
            D4Element::FlipH => "flip-h",
            D4Element::FlipV => "flip-v",
            D4Element::FlipMainDiag => "transpose",
            D4Element::FlipAntiDiag => "flip-anti",
        }
    }
}

impl fmt::Display for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for D4Element {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "identity" => D4Element::Identity,
            "rot90" => D4Element::Rot90,
            "rot180" => D4Element::Rot180,
            "rot270" => D4Element::Rot270,
            "flip-h" => D4Element::FlipH,
            "flip-v" => D4Element::FlipV,
            "transpose" | "flip-main" => D4Element::FlipMainDiag,
            "flip-anti" => D4Element::FlipAntiDiag,
            _ => return Err(format!("unknown symmetry {s:?}")),
        })
    }
}

pub fn d4_apply(square: &Square, g: D4Element) -> Square {
    let n = square.order();
    let mut cells = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let (sr, sc) = g.source(r, c, n);
            cells.push(square.at(sr, sc));
        }
    }
    Square::from_cells_unchecked(n, cells)
}

/// Writes the image of `square` under `g` into `out` (row-major).
fn d4_cells_into(square: &Square, g: D4Element, out: &mut Vec<u32>) {
    let n = square.order();
    out.clear();
    for r in 0..n {
        for c in 0..n {
            let (sr, sc) = g.source(r, c, n);
            out.push(square.at(sr, sc));
        }
    }
}

/// The lexicographically smallest (row-major) of the eight images.
pub fn canonical_form(square: &Square) -> Square {
    let mut best = square.cells().to_vec();
    let mut buf = Vec::with_capacity(best.len());
    for g in &D4Element::ALL[1..] {
        d4_cells_into(square, *g, &mut buf);
        if buf < best {
            std::mem::swap(&mut best, &mut buf);
        }
    }
    Square::from_cells_unchecked(square.order(), best)
}

/// Number of distinct images of `square` under the eight symmetries.
pub fn orbit_size(square: &Square) -> usize {
    let mut images: Vec<Square> = D4Element::ALL
        .iter()
        .map(|&g| d4_apply(square, g))
        .collect();
    images.sort_unstable();
    images.dedup();
    images.len()
}

/// Bijection on `1..=n`; position `i` holds `σ(i)`, so new index `i` takes
/// old index `σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPermutation {
    mapping: Vec<usize>,
}

impl IndexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &mapping {
            if !(1..=n).contains(&v) || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{mapping:?} is not a bijection on 1..={n}"
                )));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (1..=n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.mapping.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i - 1]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }
}

fn check_perm_order(p: &IndexPermutation, n: usize) -> Result<()> {
    if p.order() != n {
        return Err(Error::InvalidPermutation(format!(
            "permutation of order {} applied to order {n}",
            p.order()
        )));
    }
    Ok(())
}

/// `result(i, j) = matrix(row_perm(i), col_perm(j))`. Both permutations
/// must keep the middle index in place.
pub fn permute_pre(
    matrix: &PreMatrix,
    row_perm: &IndexPermutation,
    col_perm: &IndexPermutation,
) -> Result<PreMatrix> {
    let n = matrix.order();
    check_perm_order(row_perm, n)?;
    check_perm_order(col_perm, n)?;
    let m = matrix.middle();
    for (what, p) in [("row", row_perm), ("column", col_perm)] {
        if p.apply(m) != m {
            return Err(Error::InvalidPermutation(format!(
                "{what} permutation moves the middle index {m}"
            )));
        }
    }
    Ok(PreMatrix::from_fn(n, |i, j| {
        matrix.get(row_perm.apply(i), col_perm.apply(j))
    }))
}

pub fn transpose_pre(matrix: &PreMatrix) -> PreMatrix {
    PreMatrix::from_fn(matrix.order(), |i, j| matrix.get(j, i))
}

/// Row and column permutation of an arbitrary square, with the same
/// direction convention as [`permute_pre`] and no middle constraint.
pub fn permute_square(
    square: &Square,
    row_perm: &IndexPermutation,
    col_perm: &IndexPermutation,
) -> Result<Square> {
    let n = square.order();
    check_perm_order(row_perm, n)?;
    check_perm_order(col_perm, n)?;
    let mut cells = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            cells.push(square.cell(row_perm.apply(i), col_perm.apply(j)));
        }
    }
    Ok(Square::from_cells_unchecked(n, cells))
}

/// Source cell (1-based) for each target cell of [`fig8_transform`],
/// row-major.
const FIG8_SOURCES: [[(usize, usize); 4]; 4] = [
    [(1, 1), (4, 4), (4, 1), (1, 4)],
    [(2, 2), (3, 3), (3, 2), (2, 3)],
    [(2, 1), (3, 4), (3, 1), (2, 4)],
    [(1, 2), (4, 3), (4, 2), (1, 3)],
];

/// Fixed rearrangement of an order-4 square that maps the first order-4
/// example to the second.
pub fn fig8_transform(square: &Square) -> Result<Square> {
    if square.order() != 4 {
        return Err(Error::UnsupportedOrder(square.order(), "order 4 required"));
    }
    let cells = FIG8_SOURCES
        .iter()
        .flatten()
        .map(|&(r, c)| square.cell(r, c))
        .collect();
    Ok(Square::from_cells_unchecked(4, cells))
}

fn perm(mapping: [usize; 5]) -> IndexPermutation {
    IndexPermutation::new(mapping.to_vec()).expect("bijection")
}

/// Pre-matrices of the four order-5 examples `e` to `h`.
pub fn variant_pre_matrices_order5() -> Vec<PreMatrix> {
    let a = crate::construct::pre_matrix(5).expect("odd");
    let f = permute_pre(
        &transpose_pre(&a),
        &perm([4, 5, 3, 1, 2]),
        &perm([4, 1, 3, 5, 2]),
    );
    let g = permute_pre(&a, &perm([2, 5, 3, 1, 4]), &perm([1, 4, 3, 2, 5]));
    let h = permute_pre(&a, &perm([5, 2, 3, 4, 1]), &perm([5, 2, 3, 4, 1]));
    vec![
        a,
        f.expect("middle fixed"),
        g.expect("middle fixed"),
        h.expect("middle fixed"),
    ]
}

/// The order-5 examples `e` to `h`, each the skew wrap of its pre-matrix.
pub fn variant_squares_order5() -> Vec<Square> {
    variant_pre_matrices_order5()
        .iter()
        .map(crate::construct::skew_wrap)
        .collect()
}
