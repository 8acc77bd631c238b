//! Closed-form constructions.
//!
//! Odd orders: numbers `1..=n²` are written down the diagonals of a
//! pre-rotation matrix with alternating direction, the matrix is turned by
//! 45 degrees and entries falling outside the box are wrapped back in
//! (the "skew wrap"). Orders divisible by four: a `k x k` block matrix of
//! shifted copies of an order-4 square.

use crate::error::{Error, Result};
use crate::fixtures;
use crate::square::{bracket_mod, magic_residuum, Square};
use crate::transform::{fig8_transform, permute_square, IndexPermutation};

/// Odd-order matrix that becomes a square after [`skew_wrap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMatrix {
    order: usize,
    cells: Vec<u32>,
}

impl PreMatrix {
    pub fn new(order: usize, cells: Vec<u32>) -> Result<Self> {
        if order.is_multiple_of(2) {
            return Err(Error::UnsupportedOrder(
                order,
                "pre-matrices have odd order",
            ));
        }
        // reuse the square validation for shape and positivity
        let sq = Square::new(order, cells)?;
        Ok(Self {
            order,
            cells: sq.into_cells(),
        })
    }

    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let sq = Square::from_rows(rows)?;
        Self::new(sq.order(), sq.into_cells())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The middle index `(n + 1) / 2`.
    pub fn middle(&self) -> usize {
        self.order.div_ceil(2)
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cells[(i - 1) * self.order + j - 1]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub(crate) fn from_fn(order: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut cells = Vec::with_capacity(order * order);
        for i in 1..=order {
            for j in 1..=order {
                cells.push(f(i, j));
            }
        }
        Self { order, cells }
    }
}

fn require_odd(n: usize) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedOrder(n, "odd order required"));
    }
    Ok(())
}

/// Indexing function of the pre-rotation matrix:
/// `(m - i)(-1)^j + n(n - j) + m` with `m = (n + 1) / 2`.
pub fn f_index(i: usize, j: usize, n: usize) -> Result<u32> {
    require_odd(n)?;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::IndexOutOfRange {
            i: i as i64,
            j: j as i64,
            n,
        });
    }
    let (i, j, n) = (i as i64, j as i64, n as i64);
    let m = (n + 1) / 2;
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let v = (m - i) * sign + n * (n - j) + m;
    u32::try_from(v).map_err(|_| Error::UnsupportedOrder(n as usize, "values exceed u32"))
}

/// The pre-rotation matrix with entries `f_index(i, j, n)`.
pub fn pre_matrix(n: usize) -> Result<PreMatrix> {
    require_odd(n)?;
    f_index(n, n, n)?;
    Ok(PreMatrix::from_fn(n, |i, j| {
        f_index(i, j, n).expect("indices in range")
    }))
}

/// Rotates `pre` by 45 degrees and wraps outlying entries back into the
/// box. Cells `(i, j)` of equal parity read `pre((i+j)/2, (j-i)/2 + m)`;
/// the others read `pre([(i+j+n)/2]_n, [(j-i+n)/2 + m]_n)`.
pub fn skew_wrap(pre: &PreMatrix) -> Square {
    let n = pre.order() as i64;
    let m = pre.middle() as i64;
    let mut cells = Vec::with_capacity((n * n) as usize);
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = if (i + j) % 2 == 0 {
                ((i + j) / 2, (j - i) / 2 + m)
            } else {
                (
                    bracket_mod((i + j + n) / 2, n).expect("n > 0"),
                    bracket_mod((j - i + n) / 2 + m, n).expect("n > 0"),
                )
            };
            cells.push(pre.get(a as usize, b as usize));
        }
    }
    Square::from_cells_unchecked(pre.order(), cells)
}

/// Odd-order magic square of subtraction with residuum `(n² + 1) / 2`.
pub fn construct_odd(n: usize) -> Result<Square> {
    require_odd(n)?;
    if n < 3 {
        return Err(Error::UnsupportedOrder(n, "odd construction needs n >= 3"));
    }
    Ok(skew_wrap(&pre_matrix(n)?))
}

/// Block square of order `4k` whose block `(i, j)` is `base` shifted by
/// `16 (k(i - 1) + j - 1)`. Its residuum is `k` times the residuum of
/// `base`.
pub fn construct_doubly_even(base: &Square, k: usize) -> Result<Square> {
    if base.order() != 4 {
        return Err(Error::UnsupportedOrder(
            base.order(),
            "base square must have order 4",
        ));
    }
    if k == 0 {
        return Err(Error::ZeroMultiplier);
    }
    if magic_residuum(base).is_none() {
        return Err(Error::NotMagic);
    }
    let max_base = *base.cells().iter().max().expect("nonempty") as u64;
    let top_offset = (k as u64)
        .checked_mul(k as u64)
        .and_then(|kk| (kk - 1).checked_mul(16))
        .ok_or(Error::Overflow(k))?;
    if max_base + top_offset > u32::MAX as u64 {
        return Err(Error::Overflow(k));
    }
    let n = 4 * k;
    let mut cells = vec![0u32; n * n];
    for bi in 0..k {
        for bj in 0..k {
            let offset = (16 * (k * bi + bj)) as u32;
            for r in 0..4 {
                for c in 0..4 {
                    cells[(4 * bi + r) * n + 4 * bj + c] = base.at(r, c) + offset;
                }
            }
        }
    }
    Ok(Square::from_cells_unchecked(n, cells))
}

/// The four order-4 examples `a` to `d`. `a` is stored data; `b` is the
/// block rearrangement of `a`; `c` and `d` apply the permutation
/// `(1,2,3,4) -> (3,1,4,2)` to both rows and columns of `a` and `b`.
pub fn kochanski_order4_fixtures() -> Vec<Square> {
    let a = fixtures::order4_a();
    let b = fig8_transform(&a).expect("order 4");
    let p = IndexPermutation::new(vec![3, 1, 4, 2]).expect("bijection");
    let c = permute_square(&a, &p, &p).expect("order 4");
    let d = permute_square(&b, &p, &p).expect("order 4");
    vec![a, b, c, d]
}
