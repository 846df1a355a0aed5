//! In-place full, short and middle products.
//!
//! Each algorithm takes an out-of-place profile with space constant `c` and
//! runs it on blocks small enough that the not-yet-final part of the output
//! can serve as its work space. The outer recursion is a tail call on
//! shrunken views and is written as a loop, so apart from the naive base
//! case no register outside the output is ever used.
//!
//! The block size and base-case threshold use `ceil(c)`.

use std::sync::Arc;

use crate::baseline::{naive_fp_additive, naive_mp, naive_sp_lo};
use crate::profile::{check_shape, Kind, Product, Profile, SpaceConstant};
use crate::regspace::InputView;
use crate::ring::Ring;
use crate::session::Session;
use crate::tisp::{fp_unbal_additive, fphi_via_fplo, fplo_via_fphi, sphi_via_splo};

type View<'a, R> = InputView<'a, <R as Ring>::Elem>;

/// Deliberate index errors used to check that verification catches them.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RangeMutation {
    /// FP: second partial product added at offset `k - 1`.
    FpSecondOffset,
    /// FP: low block of `f` taken one position too high.
    FpLowBlockShift,
    /// FP: high part of `f` taken one position too low.
    FpHighPartShift,
    /// FP: next level starts at `2k - 1`.
    FpAdvanceShort,
    /// SP: lower-triangular blocks read `g` one position too high.
    SpLowerShift,
    /// SP: upper-triangular blocks read `g` one position too low.
    SpUpperShift,
    /// SP: upper-triangular terms added one register too high.
    SpUpperOffset,
    /// SP: last lower-triangular block skipped.
    SpLowerSkip,
    /// MP: `f` segments start one position too high.
    MpSegmentStart,
    /// MP: `f` advanced by `k + 1`.
    MpAdvance,
    /// MP: `g` blocks shifted by one.
    MpGBlockShift,
}

impl RangeMutation {
    pub const ALL: [RangeMutation; 11] = [
        RangeMutation::FpSecondOffset,
        RangeMutation::FpLowBlockShift,
        RangeMutation::FpHighPartShift,
        RangeMutation::FpAdvanceShort,
        RangeMutation::SpLowerShift,
        RangeMutation::SpUpperShift,
        RangeMutation::SpUpperOffset,
        RangeMutation::SpLowerSkip,
        RangeMutation::MpSegmentStart,
        RangeMutation::MpAdvance,
        RangeMutation::MpGBlockShift,
    ];

    /// The product kind whose in-place algorithm this mutation affects.
    pub fn target(self) -> Kind {
        use RangeMutation::*;
        match self {
            FpSecondOffset | FpLowBlockShift | FpHighPartShift | FpAdvanceShort => Kind::FpPlusLo,
            SpLowerShift | SpUpperShift | SpUpperOffset | SpLowerSkip => Kind::SpLo,
            MpSegmentStart | MpAdvance | MpGBlockShift => Kind::Mp,
        }
    }
}

fn integer_constant<R: Ring>(ps: &[&Profile<R>]) -> usize {
    ps.iter().map(|p| p.space().ceil()).max().unwrap_or(0)
}

fn check_work<R: Ring>(p: &Profile<R>, c: usize, k: usize) {
    assert!(
        p.work_len(k) <= c * k,
        "{} needs {} work registers at size {k}, more than its declared constant allows",
        p.name(),
        p.work_len(k)
    );
}

fn isz(x: usize) -> isize {
    x as isize
}

/// In-place `h + f g` from an out-of-place FP.
///
/// The output holds `h` in its low `n - 1` registers on entry.
pub struct InPlaceFp<R: Ring> {
    fp: Profile<R>,
    c: usize,
    mutation: Option<RangeMutation>,
}

impl<R: Ring> InPlaceFp<R> {
    pub fn new(fp: Profile<R>) -> Self {
        assert_eq!(fp.kind(), Kind::Fp, "in-place FP needs a full-product base");
        let c = integer_constant(&[&fp]);
        InPlaceFp { fp, c, mutation: None }
    }

    #[doc(hidden)]
    pub fn with_mutation(mut self, m: RangeMutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub fn base(&self) -> &Profile<R> {
        &self.fp
    }

    /// Integer space constant driving thresholds and block sizes.
    pub fn constant(&self) -> usize {
        self.c
    }

    /// Block size at size `n`, or `None` for the base case.
    pub fn block(&self, n: usize) -> Option<usize> {
        (n >= self.c + 2).then(|| (n + 1) / (self.c + 3))
    }

    /// `out = h + f g`, `h` in `out[0..n-1)`.
    pub fn run_in_place(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
        check_shape(Kind::FpPlusLo, false, f.len(), g.len(), out.len());
        let mu = self.mutation;
        let (mut f, mut g, mut out) = (f, g, out);
        let zero = s.zero();
        loop {
            let n = g.len();
            let since = s.ops();
            let Some(k) = self.block(n) else {
                out[n - 1..].fill(zero);
                naive_fp_additive(s, f, g, out);
                s.record_level(n, 0, since);
                return;
            };
            check_work(&self.fp, self.c, k);
            out[n - 1..n + k - 1].fill(zero);
            let (acc, ws) = out.split_at_mut(n + k - 1);
            let f0 = match mu {
                Some(RangeMutation::FpLowBlockShift) => f.range(1, isz(k) + 1),
                _ => f.low(k),
            };
            fp_unbal_additive(s, self.fp.as_ref(), f0, g, acc, ws);
            let fh = match mu {
                Some(RangeMutation::FpHighPartShift) => f.range(isz(k) - 1, isz(n) - 1),
                _ => f.high(k),
            };
            let at = if mu == Some(RangeMutation::FpSecondOffset) {
                k - 1
            } else {
                k
            };
            fp_unbal_additive(s, self.fp.as_ref(), g.low(k), fh, &mut acc[at..], ws);
            s.record_level(n, k, since);

            let rest = std::mem::take(&mut out);
            out = match mu {
                Some(RangeMutation::FpAdvanceShort) => &mut rest[2 * k - 1..2 * n - 2],
                _ => &mut rest[2 * k..],
            };
            f = f.high(k);
            g = g.high(k);
        }
    }

    /// `X^n h + f g` with `h` in the high `n - 1` registers, by reflection.
    pub fn high_addend(self) -> Profile<R>
    where
        R: 'static,
    {
        fphi_via_fplo(Arc::new(self))
    }

    /// `h + f g` through two reflections.
    pub fn reflected_twice(self) -> Profile<R>
    where
        R: 'static,
    {
        fplo_via_fphi(self.high_addend())
    }
}

impl<R: Ring> Product<R> for InPlaceFp<R> {
    fn kind(&self) -> Kind {
        Kind::FpPlusLo
    }

    fn name(&self) -> String {
        format!("iFP[{}]", self.fp.name())
    }

    fn space(&self) -> SpaceConstant {
        SpaceConstant::ZERO
    }

    fn work_len(&self, _n: usize) -> usize {
        0
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _work: &mut [R::Elem]) {
        self.run_in_place(s, f, g, out)
    }
}

/// In-place low short product from out-of-place SPlo and SPhi.
pub struct InPlaceSp<R: Ring> {
    sp_lo: Profile<R>,
    sp_hi: Profile<R>,
    c: usize,
    mutation: Option<RangeMutation>,
}

impl<R: Ring> InPlaceSp<R> {
    pub fn new(sp_lo: Profile<R>, sp_hi: Profile<R>) -> Self {
        assert_eq!(sp_lo.kind(), Kind::SpLo, "in-place SP needs an SPlo base");
        assert_eq!(sp_hi.kind(), Kind::SpHi, "in-place SP needs an SPhi base");
        let c = integer_constant(&[&sp_lo, &sp_hi]);
        InPlaceSp {
            sp_lo,
            sp_hi,
            c,
            mutation: None,
        }
    }

    #[doc(hidden)]
    pub fn with_mutation(mut self, m: RangeMutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub fn constant(&self) -> usize {
        self.c
    }

    pub fn block(&self, n: usize) -> Option<usize> {
        (n >= self.c + 2).then(|| n / (self.c + 2))
    }

    /// `out = f g mod X^n`.
    pub fn run_in_place(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
        check_shape(Kind::SpLo, false, f.len(), g.len(), out.len());
        let mu = self.mutation;
        let (mut f, mut g, mut out) = (f, g, out);
        loop {
            let n = g.len();
            let since = s.ops();
            let Some(k) = self.block(n) else {
                naive_sp_lo(s, f, g, out);
                s.record_level(n, 0, since);
                return;
            };
            check_work(&self.sp_lo, self.c, k);
            check_work(&self.sp_hi, self.c, k);
            let (ws, target) = out.split_at_mut(n - k);
            let blocks = n.div_ceil(k);
            let (ni, ki) = (isz(n), isz(k));
            let lower = match mu {
                Some(RangeMutation::SpLowerSkip) => blocks - 1,
                _ => blocks,
            };
            let lshift = isize::from(mu == Some(RangeMutation::SpLowerShift));
            for i in 0..lower {
                let i = isz(i);
                let fi = f.range(ki * i, ki * (i + 1));
                let gi = g.range(ni - ki * (i + 1) + lshift, ni - ki * i + lshift);
                if i == 0 {
                    self.sp_lo.run(s, fi, gi, target, ws);
                } else {
                    let (buf, rest) = ws.split_at_mut(k);
                    self.sp_lo.run(s, fi, gi, buf, rest);
                    s.add_assign(target, buf);
                }
            }
            let ushift = isize::from(mu == Some(RangeMutation::SpUpperShift));
            let at = usize::from(mu == Some(RangeMutation::SpUpperOffset));
            for i in 0..blocks - 1 {
                let i = isz(i);
                let fi = f.range(ki * i, ki * (i + 1));
                let gi = g.range(ni - ki * (i + 2) - ushift, ni - ki * (i + 1) - ushift);
                let (buf, rest) = ws.split_at_mut(k);
                self.sp_hi.run(s, fi, gi, &mut buf[..k - 1], rest);
                s.add_assign(&mut target[at..], &buf[..k - 1]);
            }
            s.record_level(n, k, since);

            let rest = std::mem::take(&mut out);
            out = &mut rest[..n - k];
            f = f.low(n - k);
            g = g.low(n - k);
        }
    }

    /// In-place high short product through reversed quotient views.
    pub fn high(self) -> Profile<R>
    where
        R: 'static,
    {
        sphi_via_splo(Arc::new(self))
    }
}

impl<R: Ring> Product<R> for InPlaceSp<R> {
    fn kind(&self) -> Kind {
        Kind::SpLo
    }

    fn name(&self) -> String {
        format!("iSPlo[{}]", self.sp_lo.name())
    }

    fn space(&self) -> SpaceConstant {
        SpaceConstant::ZERO
    }

    fn work_len(&self, _n: usize) -> usize {
        0
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _work: &mut [R::Elem]) {
        self.run_in_place(s, f, g, out)
    }
}

/// In-place middle product of any shape from a balanced out-of-place MP.
pub struct InPlaceMp<R: Ring> {
    mp: Profile<R>,
    c: usize,
    mutation: Option<RangeMutation>,
}

impl<R: Ring> InPlaceMp<R> {
    pub fn new(mp: Profile<R>) -> Self {
        assert_eq!(mp.kind(), Kind::Mp, "in-place MP needs a middle-product base");
        let c = integer_constant(&[&mp]);
        InPlaceMp { mp, c, mutation: None }
    }

    #[doc(hidden)]
    pub fn with_mutation(mut self, m: RangeMutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub fn constant(&self) -> usize {
        self.c
    }

    pub fn block(&self, m: usize) -> Option<usize> {
        (m >= self.c + 2).then(|| m / (self.c + 2))
    }

    /// `out = (f g quo X^(n-1)) mod X^m`, `|f| = n + m - 1`.
    pub fn run_in_place(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
        check_shape(Kind::Mp, true, f.len(), g.len(), out.len());
        let mu = self.mutation;
        let n = g.len();
        let ni = isz(n);
        let (mut f, mut out) = (f, out);
        loop {
            let m = out.len();
            let since = s.ops();
            let Some(k) = self.block(m) else {
                naive_mp(s, f, g, out);
                s.record_level(m, 0, since);
                return;
            };
            check_work(&self.mp, self.c, k);
            let ki = isz(k);
            let (head, ws) = out.split_at_mut(k);
            let start = isize::from(mu == Some(RangeMutation::MpSegmentStart));
            let gshift = isize::from(mu == Some(RangeMutation::MpGBlockShift));
            for j in 0..n.div_ceil(k) {
                let j = isz(j);
                let lo = ni - (j + 1) * ki + start;
                let fseg = f.range(lo, lo + 2 * ki - 1);
                let gseg = g.range(j * ki + gshift, (j + 1) * ki + gshift);
                if j == 0 {
                    self.mp.run(s, fseg, gseg, head, ws);
                } else {
                    let (buf, rest) = ws.split_at_mut(k);
                    self.mp.run(s, fseg, gseg, buf, rest);
                    s.add_assign(head, buf);
                }
            }
            s.record_level(m, k, since);

            let rest = std::mem::take(&mut out);
            out = &mut rest[k..];
            f = match mu {
                Some(RangeMutation::MpAdvance) => f.range(ki + 1, isz(f.len()) + 1),
                _ => f.high(k),
            };
        }
    }
}

impl<R: Ring> Product<R> for InPlaceMp<R> {
    fn kind(&self) -> Kind {
        Kind::Mp
    }

    fn name(&self) -> String {
        format!("iMP[{}]", self.mp.name())
    }

    fn space(&self) -> SpaceConstant {
        SpaceConstant::ZERO
    }

    fn work_len(&self, _n: usize) -> usize {
        0
    }

    fn general_shape(&self) -> bool {
        true
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _work: &mut [R::Elem]) {
        self.run_in_place(s, f, g, out)
    }
}

/// `out = h + f g` with `h` in `out[0..n-1)`, computed in place.
pub fn ifp_hi<R: Ring>(ifp: &InPlaceFp<R>, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    ifp.run_in_place(s, f, g, out)
}

/// Same semantics as [`ifp_hi`], obtained by applying the output reflection
/// twice around it.
pub fn ifp_lo<R: Ring + 'static>(fp: Profile<R>) -> Profile<R> {
    InPlaceFp::new(fp).reflected_twice()
}

pub fn isp_lo<R: Ring>(isp: &InPlaceSp<R>, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    isp.run_in_place(s, f, g, out)
}

/// In-place high short product (`n - 1` outputs).
pub fn isp_hi<R: Ring + 'static>(sp_lo: Profile<R>, sp_hi: Profile<R>) -> Profile<R> {
    InPlaceSp::new(sp_lo, sp_hi).high()
}

pub fn imp<R: Ring>(imp: &InPlaceMp<R>, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    imp.run_in_place(s, f, g, out)
}
