//! Reference squares and pre-matrices, stored as data.

use crate::square::Square;

fn sq<const N: usize>(rows: [[u32; N]; N]) -> Square {
    Square::from_rows(&rows).expect("fixture is well formed")
}

/// The first order-4 square: row 1 is `1 6 13 2`, residuum 8.
pub fn order4_a() -> Square {
    sq([
        [1, 6, 13, 2],
        [10, 5, 14, 9],
        [7, 12, 11, 16],
        [8, 3, 4, 15],
    ])
}

/// The second order-4 square, obtained from [`order4_a`] by the fixed
/// block rearrangement.
pub fn order4_b() -> Square {
    sq([
        [1, 15, 8, 2],
        [5, 11, 12, 14],
        [10, 16, 7, 9],
        [6, 4, 3, 13],
    ])
}

/// All four order-4 examples, `a` to `d`.
pub fn order4_all() -> Vec<Square> {
    crate::construct::kochanski_order4_fixtures()
}

/// The order-5 pre-rotation matrix for the odd construction.
pub fn pre_matrix_5() -> Square {
    sq([
        [21, 20, 11, 10, 1],
        [22, 19, 12, 9, 2],
        [23, 18, 13, 8, 3],
        [24, 17, 14, 7, 4],
        [25, 16, 15, 6, 5],
    ])
}

/// Pre-matrix for order-5 variant `f` (transpose, then permute).
pub fn pre_matrix_5_f() -> Square {
    sq([
        [7, 10, 8, 6, 9],
        [4, 1, 3, 5, 2],
        [14, 11, 13, 15, 12],
        [24, 21, 23, 25, 22],
        [17, 20, 18, 16, 19],
    ])
}

/// Pre-matrix for order-5 variant `g`.
pub fn pre_matrix_5_g() -> Square {
    sq([
        [22, 9, 12, 19, 2],
        [25, 6, 15, 16, 5],
        [23, 8, 13, 18, 3],
        [21, 10, 11, 20, 1],
        [24, 7, 14, 17, 4],
    ])
}

/// Pre-matrix for order-5 variant `h`.
pub fn pre_matrix_5_h() -> Square {
    sq([
        [5, 16, 15, 6, 25],
        [2, 19, 12, 9, 22],
        [3, 18, 13, 8, 23],
        [4, 17, 14, 7, 24],
        [1, 20, 11, 10, 21],
    ])
}

/// The order-5 square of the odd construction, residuum 13.
pub fn order5_e() -> Square {
    sq([
        [11, 24, 9, 16, 3],
        [4, 12, 25, 8, 20],
        [19, 5, 13, 21, 7],
        [6, 18, 1, 14, 22],
        [23, 10, 17, 2, 15],
    ])
}

pub fn order7() -> Square {
    sq([
        [28, 47, 16, 37, 12, 35, 4],
        [5, 27, 48, 17, 36, 11, 29],
        [30, 6, 26, 49, 18, 42, 10],
        [9, 31, 7, 25, 43, 19, 41],
        [40, 8, 32, 1, 24, 44, 20],
        [21, 39, 14, 33, 2, 23, 45],
        [46, 15, 38, 13, 34, 3, 22],
    ])
}

pub fn order9() -> Square {
    sq([
        [37, 78, 35, 66, 21, 62, 15, 46, 5],
        [6, 38, 79, 34, 65, 22, 63, 14, 54],
        [53, 7, 39, 80, 33, 64, 23, 55, 13],
        [12, 52, 8, 40, 81, 32, 72, 24, 56],
        [57, 11, 51, 9, 41, 73, 31, 71, 25],
        [26, 58, 10, 50, 1, 42, 74, 30, 70],
        [69, 27, 59, 18, 49, 2, 43, 75, 29],
        [28, 68, 19, 60, 17, 48, 3, 44, 76],
        [77, 36, 67, 20, 61, 16, 47, 4, 45],
    ])
}

/// Order-8 block composition of [`order4_a`] with `k = 2`, residuum 16.
pub fn order8_composite() -> Square {
    sq([
        [1, 6, 13, 2, 17, 22, 29, 18],
        [10, 5, 14, 9, 26, 21, 30, 25],
        [7, 12, 11, 16, 23, 28, 27, 32],
        [8, 3, 4, 15, 24, 19, 20, 31],
        [33, 38, 45, 34, 49, 54, 61, 50],
        [42, 37, 46, 41, 58, 53, 62, 57],
        [39, 44, 43, 48, 55, 60, 59, 64],
        [40, 35, 36, 47, 56, 51, 52, 63],
    ])
}

/// An order-6 square with residuum 18 on every line.
pub fn order6_problem_one() -> Square {
    sq([
        [1, 11, 12, 13, 29, 2],
        [17, 5, 19, 20, 8, 33],
        [34, 14, 6, 9, 28, 23],
        [32, 16, 10, 7, 24, 25],
        [35, 26, 27, 22, 21, 15],
        [3, 36, 18, 31, 30, 4],
    ])
}
