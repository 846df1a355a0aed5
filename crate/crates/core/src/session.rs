use std::cell::RefCell;

use crate::regspace::{WorkMeter, Workspace};
use crate::ring::{OpCount, OpCounter, OpKind, Ring};

/// One iteration of an in-place self-reduction, as recorded by the trace hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    /// Problem size at the start of the level (`n` for FP/SP, `m` for MP).
    pub size: usize,
    /// Block size chosen at this level; 0 marks the naive base case.
    pub block: usize,
    /// Ring operations spent on this level alone.
    pub ops: OpCount,
}

/// Counting context threaded through every algorithm call.
///
/// A session is single-owner (`!Sync`); run independent sessions to measure
/// concurrently.
pub struct Session<R: Ring> {
    ring: R,
    ops: OpCounter,
    meter: WorkMeter,
    trace: RefCell<Option<Vec<LevelRecord>>>,
}

impl<R: Ring> Session<R> {
    pub fn new(ring: R) -> Self {
        Session {
            ring,
            ops: OpCounter::new(),
            meter: WorkMeter::new(),
            trace: RefCell::new(None),
        }
    }

    pub fn with_meter(ring: R, meter: WorkMeter) -> Self {
        Session {
            meter,
            ..Self::new(ring)
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn counter(&self) -> &OpCounter {
        &self.ops
    }

    pub fn meter(&self) -> &WorkMeter {
        &self.meter
    }

    pub fn ops(&self) -> OpCount {
        self.ops.snapshot()
    }

    #[inline]
    pub fn zero(&self) -> R::Elem {
        self.ring.zero()
    }

    /// One counted ring operation; `b` is ignored for negation.
    #[inline]
    pub fn op(&self, kind: OpKind, a: R::Elem, b: Option<R::Elem>) -> R::Elem {
        self.ops.record(kind);
        let rhs = || b.expect("binary ring operation needs two operands");
        match kind {
            OpKind::Add => self.ring.add(a, rhs()),
            OpKind::Sub => self.ring.sub(a, rhs()),
            OpKind::Mul => self.ring.mul(a, rhs()),
            OpKind::Neg => self.ring.neg(a),
        }
    }

    #[inline]
    pub fn add(&self, a: R::Elem, b: R::Elem) -> R::Elem {
        self.ops.record(OpKind::Add);
        self.ring.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: R::Elem, b: R::Elem) -> R::Elem {
        self.ops.record(OpKind::Sub);
        self.ring.sub(a, b)
    }

    #[inline]
    pub fn mul(&self, a: R::Elem, b: R::Elem) -> R::Elem {
        self.ops.record(OpKind::Mul);
        self.ring.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: R::Elem) -> R::Elem {
        self.ops.record(OpKind::Neg);
        self.ring.neg(a)
    }

    /// `dst[i] += src[i]` for `i < src.len()`; one counted addition each.
    pub fn add_assign(&self, dst: &mut [R::Elem], src: &[R::Elem]) {
        assert!(src.len() <= dst.len(), "add_assign source longer than target");
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.ring.add(*d, s);
        }
        self.ops.record_adds(src.len() as u64);
    }

    /// `dst[i] -= src[i]` for `i < src.len()`.
    pub fn sub_assign(&self, dst: &mut [R::Elem], src: &[R::Elem]) {
        assert!(src.len() <= dst.len(), "sub_assign source longer than target");
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.ring.sub(*d, s);
        }
        self.ops.record_adds(src.len() as u64);
    }

    /// Metered, zero-initialised work registers.
    pub fn work(&self, count: usize) -> Workspace<'_, R::Elem> {
        self.meter.alloc(count, self.ring.zero())
    }

    /// Starts collecting [`LevelRecord`]s from in-place algorithms.
    pub fn enable_trace(&self) {
        *self.trace.borrow_mut() = Some(Vec::new());
    }

    pub fn take_trace(&self) -> Vec<LevelRecord> {
        self.trace.borrow_mut().take().unwrap_or_default()
    }

    pub(crate) fn record_level(&self, size: usize, block: usize, since: OpCount) {
        if let Some(t) = self.trace.borrow_mut().as_mut() {
            t.push(LevelRecord {
                size,
                block,
                ops: self.ops() - since,
            });
        }
    }
}
