//! Squares, lines and the residuum.
//!
//! The residuum of a line is its alternating sum after sorting in
//! decreasing order: `x1 - x2 + x3 - ...`. A square is a magic square of
//! subtraction when all rows, all columns and both diagonals share the same
//! residuum. Coordinates at the public boundary are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `((k - 1) mod n) + 1`, with a mathematical (never negative) modulo.
///
/// Brings any integer index back into `1..=n`.
pub fn bracket_mod(k: i64, n: i64) -> Result<i64> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    Ok((k - 1).rem_euclid(n) + 1)
}

/// Alternating sum of `values` sorted in decreasing order.
pub fn residuum(values: &[u32]) -> Result<i64> {
    if values.is_empty() {
        return Err(Error::EmptyLine);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Ok(alternating_sum(&sorted))
}

/// Alternating sum of an already descending-sorted slice.
pub(crate) fn alternating_sum(sorted_desc: &[u32]) -> i64 {
    sorted_desc
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// An `n x n` arrangement of positive integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    order: usize,
    cells: Vec<u32>,
}

impl Square {
    /// Builds a square from row-major cells.
    pub fn new(order: usize, cells: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let expected = order
            .checked_mul(order)
            .ok_or(Error::UnsupportedOrder(order, "order too large"))?;
        if cells.len() != expected {
            return Err(Error::CellCount {
                order,
                expected,
                actual: cells.len(),
            });
        }
        if cells.contains(&0) {
            return Err(Error::NonPositiveCell);
        }
        Ok(Self { order, cells })
    }

    /// Builds a square from a list of rows; every row must have as many
    /// entries as there are rows.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::CellCount {
                    order,
                    expected: order * order,
                    actual: rows.iter().map(|r| r.as_ref().len()).sum(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::new(order, cells)
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        Self { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry in row `row`, column `col` (both 1-based).
    ///
    /// Panics when either index is outside `1..=n`.
    pub fn cell(&self, row: usize, col: usize) -> u32 {
        assert!(
            (1..=self.order).contains(&row) && (1..=self.order).contains(&col),
            "cell ({row}, {col}) out of range for order {}",
            self.order
        );
        self.cells[(row - 1) * self.order + col - 1]
    }

    /// 0-based access used internally.
    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> u32 {
        self.cells[r * self.order + c]
    }

    /// Row-major flattening of the cells.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<u32> {
        self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.cells.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    /// True when the cells are exactly `1..=n²`, each once.
    pub fn is_normal(&self) -> bool {
        let mut sorted = self.cells.clone();
        sorted.sort_unstable();
        sorted.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }
}

/// Writes the text format: the order, then one line of space-separated
/// values per row.
impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.rows() {
            let mut first = true;
            for v in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Square")
            .field("order", &self.order)
            .field("rows", &self.to_rows())
            .finish()
    }
}

/// Where a line was taken from. Row and column numbers are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineOrigin {
    Row(usize),
    Column(usize),
    MainDiagonal,
    AntiDiagonal,
}

impl fmt::Display for LineOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineOrigin::Row(k) => write!(f, "row {k}"),
            LineOrigin::Column(k) => write!(f, "column {k}"),
            LineOrigin::MainDiagonal => f.write_str("main diagonal"),
            LineOrigin::AntiDiagonal => f.write_str("antidiagonal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub values: Vec<u32>,
    pub origin: LineOrigin,
}

impl Line {
    pub fn residuum(&self) -> Result<i64> {
        residuum(&self.values)
    }
}

/// Rows top to bottom, columns left to right, then the main diagonal
/// (top-left to bottom-right) and the antidiagonal (top-right to
/// bottom-left): `2n + 2` lines.
pub fn extract_lines(square: &Square) -> Vec<Line> {
    let n = square.order();
    let mut lines = Vec::with_capacity(2 * n + 2);
    for r in 0..n {
        lines.push(Line {
            values: (0..n).map(|c| square.at(r, c)).collect(),
            origin: LineOrigin::Row(r + 1),
        });
    }
    for c in 0..n {
        lines.push(Line {
            values: (0..n).map(|r| square.at(r, c)).collect(),
            origin: LineOrigin::Column(c + 1),
        });
    }
    lines.push(Line {
        values: (0..n).map(|i| square.at(i, i)).collect(),
        origin: LineOrigin::MainDiagonal,
    });
    lines.push(Line {
        values: (0..n).map(|i| square.at(i, n - 1 - i)).collect(),
        origin: LineOrigin::AntiDiagonal,
    });
    lines
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_magic: bool,
    /// The common residuum, present only when the square is magic.
    pub residuum: Option<i64>,
    pub per_line: Vec<(LineOrigin, i64)>,
    pub is_normal: bool,
}

pub fn verify(square: &Square) -> VerificationReport {
    let per_line: Vec<(LineOrigin, i64)> = extract_lines(square)
        .into_iter()
        .map(|line| {
            // lines of a valid square are never empty
            let res = residuum(&line.values).expect("nonempty line");
            (line.origin, res)
        })
        .collect();
    let first = per_line[0].1;
    let is_magic = per_line.iter().all(|&(_, r)| r == first);
    VerificationReport {
        is_magic,
        residuum: is_magic.then_some(first),
        per_line,
        is_normal: square.is_normal(),
    }
}

/// Residuum shared by every line, or `None` if the square is not magic.
/// Stops at the first mismatching line.
pub fn magic_residuum(square: &Square) -> Option<i64> {
    let n = square.order();
    let mut buf = Vec::with_capacity(n);
    let line_res = |buf: &mut Vec<u32>| {
        buf.sort_unstable_by(|a, b| b.cmp(a));
        let r = alternating_sum(buf);
        buf.clear();
        r
    };
    buf.extend((0..n).map(|c| square.at(0, c)));
    let target = line_res(&mut buf);
    for r in 1..n {
        buf.extend((0..n).map(|c| square.at(r, c)));
        if line_res(&mut buf) != target {
            return None;
        }
    }
    for c in 0..n {
        buf.extend((0..n).map(|r| square.at(r, c)));
        if line_res(&mut buf) != target {
            return None;
        }
    }
    buf.extend((0..n).map(|i| square.at(i, i)));
    if line_res(&mut buf) != target {
        return None;
    }
    buf.extend((0..n).map(|i| square.at(i, n - 1 - i)));
    if line_res(&mut buf) != target {
        return None;
    }
    Some(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bracket_mod_examples() {
        assert_eq!(bracket_mod(6, 5).unwrap(), 1);
        assert_eq!(bracket_mod(5, 5).unwrap(), 5);
        assert_eq!(bracket_mod(0, 5).unwrap(), 5);
        assert_eq!(bracket_mod(-4, 5).unwrap(), 1);
        assert!(matches!(
            bracket_mod(3, 0),
            Err(Error::NonPositiveModulus(0))
        ));
        assert!(bracket_mod(3, -2).is_err());
    }

    #[test]
    fn bracket_mod_is_periodic_and_in_range() {
        for n in 1..8 {
            for k in -30..30 {
                let v = bracket_mod(k, n).unwrap();
                assert!((1..=n).contains(&v));
                assert_eq!(v, bracket_mod(k + n, n).unwrap());
            }
        }
    }

    #[test]
    fn residuum_examples() {
        assert_eq!(residuum(&[11, 24, 9, 16, 3]).unwrap(), 13);
        assert_eq!(residuum(&[1, 6, 13, 2]).unwrap(), 8);
        assert_eq!(residuum(&[5]).unwrap(), 5);
        assert_eq!(residuum(&[3, 3]).unwrap(), 0);
        assert!(matches!(residuum(&[]), Err(Error::EmptyLine)));
    }

    #[test]
    fn rejects_malformed_squares() {
        assert!(matches!(Square::new(0, vec![]), Err(Error::ZeroOrder)));
        assert!(matches!(
            Square::new(2, vec![1, 2, 3]),
            Err(Error::CellCount { .. })
        ));
        assert!(matches!(
            Square::new(2, vec![1, 2, 0, 4]),
            Err(Error::NonPositiveCell)
        ));
        assert!(Square::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn cell_is_one_based() {
        let s = Square::from_rows(&[[1, 2], [3, 4]]).unwrap();
        assert_eq!(s.cell(1, 1), 1);
        assert_eq!(s.cell(1, 2), 2);
        assert_eq!(s.cell(2, 1), 3);
    }

    #[test]
    fn extract_lines_order_one() {
        let s = Square::from_rows(&[[7]]).unwrap();
        let lines = extract_lines(&s);
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| l.values == [7]));
        assert!(verify(&s).is_magic);
        assert_eq!(verify(&s).residuum, Some(7));
    }

    #[test]
    fn extract_lines_order_two() {
        let s = Square::from_rows(&[[1, 2], [3, 4]]).unwrap();
        let values: Vec<Vec<u32>> = extract_lines(&s).into_iter().map(|l| l.values).collect();
        assert_eq!(
            values,
            vec![
                vec![1, 2],
                vec![3, 4],
                vec![1, 3],
                vec![2, 4],
                vec![1, 4],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn extract_lines_order_four_fixture() {
        let lines = extract_lines(&fixtures::order4_a());
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0].values, [1, 6, 13, 2]);
        assert_eq!(lines[0].origin, LineOrigin::Row(1));
        assert_eq!(lines[8].values, [1, 5, 11, 15]);
        assert_eq!(lines[8].origin, LineOrigin::MainDiagonal);
        assert_eq!(lines[9].values, [2, 14, 12, 8]);
    }

    #[test]
    fn verify_examples() {
        let report = verify(&fixtures::order6_problem_one());
        assert!(report.is_magic);
        assert_eq!(report.residuum, Some(18));
        assert!(report.is_normal);

        let report = verify(&fixtures::order4_a());
        assert!(report.is_magic);
        assert_eq!(report.residuum, Some(8));

        let report = verify(&Square::from_rows(&[[1, 2], [3, 4]]).unwrap());
        assert!(!report.is_magic);
        assert_eq!(report.residuum, None);
        let res: Vec<i64> = report.per_line.iter().map(|&(_, r)| r).collect();
        assert_eq!(res, vec![1, 1, 2, 2, 3, 1]);
    }

    #[test]
    fn normality_is_reported_separately() {
        let s = Square::from_rows(&[[5, 5], [5, 5]]).unwrap();
        let report = verify(&s);
        assert!(report.is_magic);
        assert_eq!(report.residuum, Some(0));
        assert!(!report.is_normal);
    }

    #[test]
    fn magic_residuum_agrees_with_verify() {
        for s in fixtures::order4_all() {
            assert_eq!(magic_residuum(&s), verify(&s).residuum);
        }
        let s = Square::from_rows(&[[1, 2], [3, 4]]).unwrap();
        assert_eq!(magic_residuum(&s), None);
    }

    #[test]
    fn display_is_text_format() {
        let s = Square::from_rows(&[[1, 2], [3, 4]]).unwrap();
        assert_eq!(s.to_string(), "2\n1 2\n3 4\n");
    }
}
