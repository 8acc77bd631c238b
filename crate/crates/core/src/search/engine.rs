//! Backtracking over a static cell schedule.
//!
//! Cells are filled row 1 left to right, then the rest of column 1
//! downward, then the rest of row 2, the rest of column 2, and so on, so
//! lines complete as early as possible. Every line through the cell just
//! filled is checked: complete lines must hit the target residuum (the
//! first complete line fixes it when none is given) and partial lines must
//! still be able to reach it.

use rand::seq::SliceRandom;
use rand::Rng;

use super::bounds::{bounds_sorted, mask_values_desc, ValueMask, MASK_CAPACITY};
use crate::square::alternating_sum;

/// Largest order whose values `1..=n²` fit a [`ValueMask`].
pub(crate) const MAX_MASK_ORDER: usize = 11;

#[derive(Debug)]
pub(crate) struct LineCheck {
    /// Cells of the line that are filled once the step's cell is placed.
    placed: Vec<usize>,
    /// Cells of the line still empty after the step.
    remaining: usize,
}

#[derive(Debug)]
pub(crate) struct Step {
    pub(crate) cell: usize,
    /// Complete-line checks come first so a newly fixed target is in place
    /// before partial lines are bounded.
    checks: Vec<LineCheck>,
    /// Non top-left corner: value must exceed the top-left cell when
    /// corner symmetry breaking is on.
    corner: bool,
}

#[derive(Debug)]
pub(crate) struct Layout {
    pub(crate) n: usize,
    pub(crate) size: usize,
    pub(crate) steps: Vec<Step>,
}

pub(crate) fn schedule(n: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(n * n);
    for k in 0..n {
        order.extend((k..n).map(|c| (k, c)));
        order.extend((k + 1..n).map(|r| (r, k)));
    }
    order
}

impl Layout {
    pub(crate) fn new(n: usize) -> Self {
        assert!((1..=MAX_MASK_ORDER).contains(&n));
        let size = n * n;
        let mut lines: Vec<Vec<usize>> = Vec::with_capacity(2 * n + 2);
        for r in 0..n {
            lines.push((0..n).map(|c| r * n + c).collect());
        }
        for c in 0..n {
            lines.push((0..n).map(|r| r * n + c).collect());
        }
        lines.push((0..n).map(|i| i * n + i).collect());
        lines.push((0..n).map(|i| i * n + n - 1 - i).collect());

        let order = schedule(n);
        let mut position = vec![0; size];
        for (t, &(r, c)) in order.iter().enumerate() {
            position[r * n + c] = t;
        }
        let corners = [n - 1, (n - 1) * n, size - 1];
        let steps = order
            .iter()
            .enumerate()
            .map(|(t, &(r, c))| {
                let cell = r * n + c;
                let mut checks: Vec<LineCheck> = lines
                    .iter()
                    .filter(|line| line.contains(&cell))
                    .map(|line| {
                        let placed: Vec<usize> =
                            line.iter().copied().filter(|&x| position[x] <= t).collect();
                        LineCheck {
                            remaining: n - placed.len(),
                            placed,
                        }
                    })
                    .collect();
                checks.sort_by_key(|chk| chk.remaining != 0);
                Step {
                    cell,
                    checks,
                    corner: cell != 0 && corners.contains(&cell),
                }
            })
            .collect();
        Layout { n, size, steps }
    }
}

/// Values `1..=size` as a mask.
pub(crate) fn full_mask(size: usize) -> ValueMask {
    debug_assert!(size <= MASK_CAPACITY);
    if size == MASK_CAPACITY {
        ValueMask::MAX
    } else {
        (1 << size) - 1
    }
}

#[inline]
fn bit(v: u32) -> ValueMask {
    1 << (v - 1)
}

pub(crate) struct Searcher<'a> {
    layout: &'a Layout,
    grid: Vec<u32>,
    used: ValueMask,
    full: ValueMask,
    prune: bool,
    break_corners: bool,
    pub(crate) nodes: u64,
}

impl<'a> Searcher<'a> {
    pub(crate) fn new(layout: &'a Layout, prune: bool, break_corners: bool) -> Self {
        Searcher {
            layout,
            grid: vec![0; layout.size],
            used: 0,
            full: full_mask(layout.size),
            prune,
            break_corners,
            nodes: 0,
        }
    }

    /// Checks every line through the cell of `step`, which has just been
    /// filled. Returns the (possibly newly fixed) target on success.
    #[inline]
    fn accept(&self, step: &Step, target: Option<i64>) -> Option<Option<i64>> {
        let mut target = target;
        let mut buf = [0u32; MAX_MASK_ORDER];
        for chk in &step.checks {
            let vals = &mut buf[..chk.placed.len()];
            for (slot, &cell) in vals.iter_mut().zip(&chk.placed) {
                *slot = self.grid[cell];
            }
            vals.sort_unstable_by(|a, b| b.cmp(a));
            if chk.remaining == 0 {
                let r = alternating_sum(vals);
                match target {
                    None => target = Some(r),
                    Some(t) if t != r => return None,
                    Some(_) => {}
                }
            } else if self.prune && chk.remaining <= 1 {
                if let Some(t) = target {
                    let avail = self.full & !self.used;
                    let (lo, hi) = bounds_sorted(vals, chk.remaining, mask_values_desc(avail));
                    if t < lo || t > hi {
                        return None;
                    }
                }
            }
        }
        Some(target)
    }

    #[inline]
    fn candidates(&self, t: usize, step: &Step) -> ValueMask {
        let mut cand = self.full & !self.used;
        if self.break_corners && step.corner {
            let top_left = self.grid[0];
            debug_assert!(t > 0 && top_left > 0);
            cand &= !((1 << top_left) - 1);
        }
        cand
    }

    /// Enumerates every completion whose first `prefix.len()` scheduled
    /// cells hold `prefix`, calling `found` on each finished grid.
    pub(crate) fn run_exhaustive(
        &mut self,
        prefix: &[u32],
        target: Option<i64>,
        found: &mut dyn FnMut(&[u32]),
    ) {
        self.grid.fill(0);
        self.used = 0;
        if prefix
            .iter()
            .any(|&v| v == 0 || v as usize > self.layout.size)
        {
            return;
        }
        self.dfs(0, target, prefix, found);
    }

    fn dfs(
        &mut self,
        t: usize,
        target: Option<i64>,
        prefix: &[u32],
        found: &mut dyn FnMut(&[u32]),
    ) {
        if t == self.layout.size {
            found(&self.grid);
            return;
        }
        self.nodes += 1;
        let layout = self.layout;
        let step = &layout.steps[t];
        let mut cand = self.candidates(t, step);
        if let Some(&v) = prefix.get(t) {
            cand &= bit(v);
        }
        while cand != 0 {
            let b = cand.trailing_zeros();
            cand &= cand - 1;
            let v = b + 1;
            self.grid[step.cell] = v;
            self.used |= 1 << b;
            if let Some(next) = self.accept(step, target) {
                self.dfs(t + 1, next, prefix, found);
            }
            self.used &= !(1 << b);
        }
        self.grid[step.cell] = 0;
    }

    /// One randomized restart: candidate values are tried in an order
    /// shuffled per step, and the attempt gives up after `node_budget`
    /// nodes. Returns the finished grid, if any.
    pub(crate) fn run_randomized<R: Rng>(
        &mut self,
        rng: &mut R,
        target: Option<i64>,
        node_budget: u64,
    ) -> Option<Vec<u32>> {
        self.grid.fill(0);
        self.used = 0;
        let size = self.layout.size;
        let mut orders: Vec<Vec<u32>> = Vec::with_capacity(size);
        for _ in 0..size {
            let mut values: Vec<u32> = (1..=size as u32).collect();
            values.shuffle(rng);
            orders.push(values);
        }
        let mut budget = node_budget;
        if self.dfs_random(0, target, &orders, &mut budget) {
            Some(self.grid.clone())
        } else {
            None
        }
    }

    fn dfs_random(
        &mut self,
        t: usize,
        target: Option<i64>,
        orders: &[Vec<u32>],
        budget: &mut u64,
    ) -> bool {
        if t == self.layout.size {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        self.nodes += 1;
        let layout = self.layout;
        let step = &layout.steps[t];
        let cand = self.candidates(t, step);
        for &v in &orders[t] {
            let b = bit(v);
            if cand & b == 0 {
                continue;
            }
            self.grid[step.cell] = v;
            self.used |= b;
            if let Some(next) = self.accept(step, target) {
                if self.dfs_random(t + 1, next, orders, budget) {
                    return true;
                }
            }
            self.used &= !b;
            if *budget == 0 {
                break;
            }
        }
        self.grid[step.cell] = 0;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_order_four() {
        let s = schedule(4);
        assert_eq!(
            s,
            vec![
                (0, 0),
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 0),
                (2, 0),
                (3, 0),
                (1, 1),
                (1, 2),
                (1, 3),
                (2, 1),
                (3, 1),
                (2, 2),
                (2, 3),
                (3, 2),
                (3, 3)
            ]
        );
    }

    #[test]
    fn schedule_covers_every_cell_once() {
        for n in 1..=MAX_MASK_ORDER {
            let mut s = schedule(n);
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), n * n);
        }
    }

    #[test]
    fn last_step_completes_row_column_and_diagonal() {
        let layout = Layout::new(4);
        let last = layout.steps.last().unwrap();
        assert_eq!(last.checks.len(), 3);
        assert!(last.checks.iter().all(|c| c.remaining == 0));
    }

    #[test]
    fn every_line_completes_exactly_once() {
        for n in 1..=6 {
            let layout = Layout::new(n);
            let completions: usize = layout
                .steps
                .iter()
                .map(|s| s.checks.iter().filter(|c| c.remaining == 0).count())
                .sum();
            assert_eq!(completions, 2 * n + 2);
        }
    }
}
