//! Register classes of the cost model.
//!
//! * Input space: [`InputView`], a read-only window that can be shifted,
//!   truncated, zero-extended on either side and reversed without touching
//!   the underlying storage and without any ring operation.
//! * Output space: plain `&mut [E]` slices. They are readable and writable,
//!   and `split_at_mut` gives the disjoint sub-ranges the algorithms use as
//!   scratch.
//! * Work space: registers obtained from a [`WorkMeter`], which records the
//!   peak number alive at once.

use std::cell::Cell;
use std::fmt;
use std::ops::{Deref, DerefMut};

/// Read-only view of a coefficient sequence.
///
/// Logical index `i` maps to `data[origin + step * i]` when it falls in the
/// backed window `[lo, hi)` and reads as zero otherwise ("fake padding").
#[derive(Clone, Copy)]
pub struct InputView<'a, E> {
    data: &'a [E],
    origin: isize,
    step: isize,
    len: usize,
    lo: isize,
    hi: isize,
    zero: E,
}

impl<'a, E: Copy> InputView<'a, E> {
    pub fn new(data: &'a [E], zero: E) -> Self {
        InputView {
            data,
            origin: 0,
            step: 1,
            len: data.len(),
            lo: 0,
            hi: data.len() as isize,
            zero,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn zero(&self) -> E {
        self.zero
    }

    #[inline]
    fn read(&self, i: isize) -> E {
        if i >= self.lo && i < self.hi {
            self.data[(self.origin + self.step * i) as usize]
        } else {
            self.zero
        }
    }

    /// Coefficient `i`; panics when `i` is outside the logical length.
    #[inline]
    pub fn get(&self, i: usize) -> E {
        assert!(i < self.len, "index {i} out of view of length {}", self.len);
        self.read(i as isize)
    }

    /// Coefficient `i`, reading zero anywhere outside `[0, len)`.
    #[inline]
    pub fn get_padded(&self, i: isize) -> E {
        if i < 0 || i >= self.len as isize {
            self.zero
        } else {
            self.read(i)
        }
    }

    /// The sub-polynomial of coefficients `lo..hi`, zero-padded wherever the
    /// range leaves `[0, len)`. Negative `lo` is allowed.
    pub fn range(&self, lo: isize, hi: isize) -> Self {
        assert!(lo <= hi, "empty-or-inverted range {lo}..{hi}");
        let len = (hi - lo) as usize;
        let mut wlo = (self.lo - lo).max(0);
        let mut whi = (self.hi - lo).min(len as isize);
        if wlo >= whi {
            wlo = 0;
            whi = 0;
        }
        InputView {
            data: self.data,
            origin: self.origin + self.step * lo,
            step: self.step,
            len,
            lo: wlo,
            hi: whi,
            zero: self.zero,
        }
    }

    /// Strict sub-range: `hi` must not exceed the length.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        assert!(
            lo <= hi && hi <= self.len,
            "slice {lo}..{hi} of view of length {}",
            self.len
        );
        self.range(lo as isize, hi as isize)
    }

    /// `f mod X^k`, zero-extended if `k > len`.
    pub fn low(&self, k: usize) -> Self {
        self.range(0, k as isize)
    }

    /// `f quo X^k`.
    pub fn high(&self, k: usize) -> Self {
        let k = k.min(self.len);
        self.range(k as isize, self.len as isize)
    }

    /// The same polynomial stored in size `len`, zero-extended or truncated.
    pub fn resized(&self, len: usize) -> Self {
        self.range(0, len as isize)
    }

    /// `rev_len(f) = X^(len-1) f(1/X)`: coefficient `i` reads old `len-1-i`.
    pub fn reversed(&self) -> Self {
        let n = self.len as isize;
        InputView {
            data: self.data,
            origin: self.origin + self.step * (n - 1),
            step: -self.step,
            len: self.len,
            lo: n - self.hi,
            hi: n - self.lo,
            zero: self.zero,
        }
    }

    /// Size-`n` reversal; `n` must equal the view's length.
    pub fn rev(&self, n: usize) -> Self {
        assert_eq!(n, self.len, "reversal size must match view length");
        self.reversed()
    }

    pub fn iter(&self) -> impl Iterator<Item = E> + '_ {
        (0..self.len).map(move |i| self.read(i as isize))
    }

    pub fn to_vec(&self) -> Vec<E> {
        self.iter().collect()
    }
}

impl<E: Copy + fmt::Debug> fmt::Debug for InputView<'_, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// Peak tracker for work registers.
///
/// Registers borrowed from the output space never pass through the meter;
/// only separately allocated temporaries do.
#[derive(Debug, Default)]
pub struct WorkMeter {
    live: Cell<usize>,
    peak: Cell<usize>,
    cap: Cell<Option<usize>>,
    overflow: Cell<Option<usize>>,
}

impl WorkMeter {
    pub fn new() -> Self {
        Self::default()
    }

    /// A meter that records a violation whenever `live` exceeds `cap`.
    pub fn with_cap(cap: usize) -> Self {
        let m = Self::default();
        m.cap.set(Some(cap));
        m
    }

    pub fn set_cap(&self, cap: Option<usize>) {
        self.cap.set(cap);
    }

    pub fn live(&self) -> usize {
        self.live.get()
    }

    pub fn peak(&self) -> usize {
        self.peak.get()
    }

    /// Largest `live` value seen above the cap, if any.
    pub fn violation(&self) -> Option<usize> {
        self.overflow.get()
    }

    pub fn reset_peak(&self) {
        self.peak.set(self.live.get());
        self.overflow.set(None);
    }

    fn enter(&self, count: usize) {
        let live = self.live.get() + count;
        self.live.set(live);
        if live > self.peak.get() {
            self.peak.set(live);
        }
        if let Some(cap) = self.cap.get() {
            if live > cap && self.overflow.get().is_none_or(|v| live > v) {
                self.overflow.set(Some(live));
            }
        }
    }

    fn exit(&self, count: usize) {
        self.live.set(self.live.get() - count);
    }

    /// Accounts for `count` scalar temporaries until the guard drops.
    pub fn reserve(&self, count: usize) -> Reservation<'_> {
        self.enter(count);
        Reservation { meter: self, count }
    }

    /// `count` zero-initialised work registers, released on drop.
    pub fn alloc<E: Copy>(&self, count: usize, zero: E) -> Workspace<'_, E> {
        self.enter(count);
        Workspace {
            meter: self,
            regs: vec![zero; count],
        }
    }
}

#[must_use]
pub struct Reservation<'m> {
    meter: &'m WorkMeter,
    count: usize,
}

impl Drop for Reservation<'_> {
    fn drop(&mut self) {
        self.meter.exit(self.count);
    }
}

/// Metered scratch registers.
#[must_use]
pub struct Workspace<'m, E> {
    meter: &'m WorkMeter,
    regs: Vec<E>,
}

impl<E> Deref for Workspace<'_, E> {
    type Target = [E];

    fn deref(&self) -> &[E] {
        &self.regs
    }
}

impl<E> DerefMut for Workspace<'_, E> {
    fn deref_mut(&mut self) -> &mut [E] {
        &mut self.regs
    }
}

impl<E> Drop for Workspace<'_, E> {
    fn drop(&mut self) {
        self.meter.exit(self.regs.len());
    }
}
