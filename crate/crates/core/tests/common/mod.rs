//! Deliberately naive reference implementations shared by the
//! integration tests. Nothing here calls into the library's search or
//! symmetry code.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Sort descending, then alternate signs.
pub fn naive_residuum(values: &[i64]) -> i64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    v.iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 0 { *x } else { -*x })
        .sum()
}

/// All 2n+2 lines of a row-major grid.
pub fn naive_lines(n: usize, cells: &[u32]) -> Vec<Vec<i64>> {
    let at = |r: usize, c: usize| i64::from(cells[r * n + c]);
    let mut lines = Vec::new();
    for r in 0..n {
        lines.push((0..n).map(|c| at(r, c)).collect());
    }
    for c in 0..n {
        lines.push((0..n).map(|r| at(r, c)).collect());
    }
    lines.push((0..n).map(|i| at(i, i)).collect());
    lines.push((0..n).map(|i| at(i, n - 1 - i)).collect());
    lines
}

/// Common residuum of every line, if there is one.
pub fn naive_magic(n: usize, cells: &[u32]) -> Option<i64> {
    let res: BTreeSet<i64> = naive_lines(n, cells)
        .iter()
        .map(|l| naive_residuum(l))
        .collect();
    if res.len() == 1 {
        res.into_iter().next()
    } else {
        None
    }
}

fn rotate(n: usize, cells: &[u32]) -> Vec<u32> {
    // clockwise: new (r, c) comes from old (n-1-c, r)
    let mut out = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = cells[(n - 1 - c) * n + r];
        }
    }
    out
}

fn transpose(n: usize, cells: &[u32]) -> Vec<u32> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = cells[c * n + r];
        }
    }
    out
}

/// The eight rotations and reflections, built from rotate and transpose.
pub fn naive_images(n: usize, cells: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(8);
    let mut cur = cells.to_vec();
    for _ in 0..4 {
        out.push(cur.clone());
        out.push(transpose(n, &cur));
        cur = rotate(n, &cur);
    }
    out
}

pub fn naive_canonical(n: usize, cells: &[u32]) -> Vec<u32> {
    naive_images(n, cells)
        .into_iter()
        .min()
        .expect("eight images")
}

/// Every permutation of `items`, by Heap's algorithm.
pub fn for_each_permutation(items: &mut [u32], mut f: impl FnMut(&[u32])) {
    let len = items.len();
    let mut c = vec![0usize; len];
    f(items);
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Raw magic arrangements of `1..=n²` and their distinct canonical forms.
pub fn naive_census(n: usize) -> (u64, BTreeSet<Vec<u32>>) {
    let mut values: Vec<u32> = (1..=(n * n) as u32).collect();
    let mut raw = 0u64;
    let mut classes = BTreeSet::new();
    for_each_permutation(&mut values, |p| {
        if naive_magic(n, p).is_some() {
            raw += 1;
            classes.insert(naive_canonical(n, p));
        }
    });
    (raw, classes)
}
