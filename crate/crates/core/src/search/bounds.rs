//! Range of residua reachable by completing a partial line.
//!
//! Values are merged in decreasing order; a forced (already placed) value
//! always takes the next position, an available value may be taken or
//! skipped. The sign of a value depends only on its position, which is the
//! number of forced values seen plus the number of values taken so far, so a
//! DP over "values taken" gives the exact minimum and maximum.

use crate::error::{Error, Result};

/// Bit `v - 1` of a mask stands for the value `v`.
pub(crate) type ValueMask = u128;

/// Largest value representable in a [`ValueMask`].
pub(crate) const MASK_CAPACITY: usize = 128;

const NEG: i64 = i64::MIN / 4;
const POS: i64 = i64::MAX / 4;

/// Minimum and maximum residuum over every way of completing `partial`
/// with `slots_remaining` distinct values drawn from `available`.
///
/// `available` must be disjoint from `partial`; its order does not matter.
pub fn residuum_bounds(
    partial: &[u32],
    slots_remaining: usize,
    available: &[u32],
) -> Result<(i64, i64)> {
    let mut avail = available.to_vec();
    avail.sort_unstable_by(|a, b| b.cmp(a));
    avail.dedup();
    if slots_remaining > avail.len() {
        return Err(Error::NotEnoughValues {
            slots: slots_remaining,
            available: avail.len(),
        });
    }
    if partial.is_empty() && slots_remaining == 0 {
        return Err(Error::EmptyLine);
    }
    let mut forced = partial.to_vec();
    forced.sort_unstable_by(|a, b| b.cmp(a));
    Ok(bounds_sorted(
        &forced,
        slots_remaining,
        avail.iter().copied(),
    ))
}

/// DP core. `forced` is sorted descending; `available` yields values in
/// strictly decreasing order and must hold at least `slots` values.
pub(crate) fn bounds_sorted(
    forced: &[u32],
    slots: usize,
    available: impl Iterator<Item = u32>,
) -> (i64, i64) {
    // slots never exceeds the line length, which is at most 11 for masks
    // and small in general; use a stack buffer when possible
    let mut hi_buf = [NEG; 16];
    let mut lo_buf = [POS; 16];
    let mut hi_vec;
    let mut lo_vec;
    let (hi, lo): (&mut [i64], &mut [i64]) = if slots < 16 {
        (&mut hi_buf[..=slots], &mut lo_buf[..=slots])
    } else {
        hi_vec = vec![NEG; slots + 1];
        lo_vec = vec![POS; slots + 1];
        (&mut hi_vec[..], &mut lo_vec[..])
    };
    hi[0] = 0;
    lo[0] = 0;

    let sign = |pos: usize, v: u32| {
        if pos.is_multiple_of(2) {
            v as i64
        } else {
            -(v as i64)
        }
    };
    let apply_forced = |hi: &mut [i64], lo: &mut [i64], f: usize, v: u32| {
        for c in 0..hi.len() {
            if hi[c] != NEG {
                hi[c] += sign(f + c, v);
                lo[c] += sign(f + c, v);
            }
        }
    };

    let mut fi = 0;
    for v in available {
        while fi < forced.len() && forced[fi] > v {
            apply_forced(hi, lo, fi, forced[fi]);
            fi += 1;
        }
        for c in (1..hi.len()).rev() {
            if hi[c - 1] != NEG {
                let s = sign(fi + c - 1, v);
                hi[c] = hi[c].max(hi[c - 1] + s);
                lo[c] = lo[c].min(lo[c - 1] + s);
            }
        }
    }
    while fi < forced.len() {
        apply_forced(hi, lo, fi, forced[fi]);
        fi += 1;
    }
    (lo[slots], hi[slots])
}

/// Values of `mask` in decreasing order.
#[inline]
pub(crate) fn mask_values_desc(mut mask: ValueMask) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let bit = MASK_CAPACITY as u32 - 1 - mask.leading_zeros();
            mask &= !(1u128 << bit);
            Some(bit + 1)
        }
    })
}
