//! Reductions between product kinds that keep both the time and the space
//! of the underlying algorithm up to a constant factor and an additive
//! constant.
//!
//! Reductions come in two forms: free functions working on explicit spans,
//! and adapters wrapping them as [`Product`] profiles so they can be stacked.

use std::sync::Arc;

use crate::profile::{check_shape, Kind, Product, Profile, SpaceConstant};
use crate::regspace::InputView;
use crate::ring::Ring;
use crate::session::Session;

type View<'a, R> = InputView<'a, <R as Ring>::Elem>;

fn expect_kind<R: Ring>(p: &Profile<R>, kind: Kind) {
    assert_eq!(p.kind(), kind, "{} is not a {kind} profile", p.name());
}

/// Work registers needed to run every profile in `ps` at size `n`, one at a
/// time.
fn max_work<R: Ring>(ps: &[&Profile<R>], n: usize) -> usize {
    ps.iter().map(|p| p.work_len(n)).max().unwrap_or(0)
}

fn max_space<R: Ring>(ps: &[&Profile<R>]) -> SpaceConstant {
    ps.iter().map(|p| p.space()).max().unwrap_or(SpaceConstant::ZERO)
}

// ---------------------------------------------------------------------------
// Reversal equivalences

/// `SPhi(f, g) = rev(SPlo(rev(f quo X), rev(g quo X)))` on `n - 1`
/// coefficients; the reversal of the output is done in place.
pub fn sphi_via_splo<R: Ring + 'static>(base: Profile<R>) -> Profile<R> {
    expect_kind(&base, Kind::SpLo);
    Arc::new(ReversedSp { base })
}

struct ReversedSp<R: Ring> {
    base: Profile<R>,
}

impl<R: Ring> Product<R> for ReversedSp<R> {
    fn kind(&self) -> Kind {
        Kind::SpHi
    }

    fn name(&self) -> String {
        format!("SPhi[reversed {}]", self.base.name())
    }

    fn space(&self) -> SpaceConstant {
        self.base.space()
    }

    fn work_len(&self, n: usize) -> usize {
        self.base.work_len(n.saturating_sub(1))
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], work: &mut [R::Elem]) {
        check_shape(Kind::SpHi, false, f.len(), g.len(), out.len());
        if out.is_empty() {
            return;
        }
        self.base.run(s, f.high(1).reversed(), g.high(1).reversed(), out, work);
        out.reverse();
    }
}

/// Turns a half-additive FP of one orientation into the other by reversing
/// the output span around a call on reversed operands.
pub fn fphi_via_fplo<R: Ring + 'static>(base: Profile<R>) -> Profile<R> {
    expect_kind(&base, Kind::FpPlusLo);
    Arc::new(ReflectedFp {
        base,
        kind: Kind::FpPlusHi,
    })
}

/// Converse of [`fphi_via_fplo`].
pub fn fplo_via_fphi<R: Ring + 'static>(base: Profile<R>) -> Profile<R> {
    expect_kind(&base, Kind::FpPlusHi);
    Arc::new(ReflectedFp {
        base,
        kind: Kind::FpPlusLo,
    })
}

struct ReflectedFp<R: Ring> {
    base: Profile<R>,
    kind: Kind,
}

impl<R: Ring> Product<R> for ReflectedFp<R> {
    fn kind(&self) -> Kind {
        self.kind
    }

    fn name(&self) -> String {
        format!("{}[reflected {}]", self.kind, self.base.name())
    }

    fn space(&self) -> SpaceConstant {
        self.base.space()
    }

    fn work_len(&self, n: usize) -> usize {
        self.base.work_len(n)
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], work: &mut [R::Elem]) {
        check_shape(self.kind, false, f.len(), g.len(), out.len());
        out.reverse();
        self.base.run(s, f.reversed(), g.reversed(), out, work);
        out.reverse();
    }
}

// ---------------------------------------------------------------------------
// Short products and half-additive full products

/// `out = h + f g` where `h` sits in `out[0..n-1)`, from one low and one
/// high short product plus `n - 1` additions.
pub fn fpplus_via_sp<R: Ring>(
    s: &Session<R>,
    sp_lo: &dyn Product<R>,
    sp_hi: &dyn Product<R>,
    f: View<'_, R>,
    g: View<'_, R>,
    out: &mut [R::Elem],
    work: &mut [R::Elem],
) {
    let n = g.len();
    check_shape(Kind::FpPlusLo, false, f.len(), n, out.len());
    sp_lo.run(s, f, g, &mut out[n - 1..], work);
    let (h, lo) = out.split_at_mut(n - 1);
    s.add_assign(h, &lo[..n - 1]);
    out[n - 1] = out[2 * n - 2];
    sp_hi.run(s, f, g, &mut out[n..], work);
}

pub fn fpplus_via_sp_profile<R: Ring + 'static>(sp_lo: Profile<R>, sp_hi: Profile<R>) -> Profile<R> {
    expect_kind(&sp_lo, Kind::SpLo);
    expect_kind(&sp_hi, Kind::SpHi);
    Arc::new(FpPlusViaSp { sp_lo, sp_hi })
}

struct FpPlusViaSp<R: Ring> {
    sp_lo: Profile<R>,
    sp_hi: Profile<R>,
}

impl<R: Ring> Product<R> for FpPlusViaSp<R> {
    fn kind(&self) -> Kind {
        Kind::FpPlusLo
    }

    fn name(&self) -> String {
        format!("FP+lo[{} + {}]", self.sp_lo.name(), self.sp_hi.name())
    }

    fn space(&self) -> SpaceConstant {
        max_space(&[&self.sp_lo, &self.sp_hi])
    }

    fn work_len(&self, n: usize) -> usize {
        max_work(&[&self.sp_lo, &self.sp_hi], n)
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], work: &mut [R::Elem]) {
        fpplus_via_sp(s, self.sp_lo.as_ref(), self.sp_hi.as_ref(), f, g, out, work)
    }
}

/// `out = f g mod X^n` from one plain and two half-additive full products on
/// halves of the operands.
///
/// With `n0 = ceil(n/2)`, `n1 = floor(n/2)`, `f0 = f mod X^n0`,
/// `f0' = f mod X^n1` and `f1 = f quo X^n0` (same for `g`), the middle
/// term `(f0' g1 + f1 g0') mod X^n1` is assembled in `out[0..n1)` and moved
/// up before `f0 g0` is added around it. Coefficient `n1 - 1` of `f0' g1`
/// is not covered by the addend of the second product, so it is parked in
/// the unused register `out[n-1]` meanwhile.
#[allow(clippy::too_many_arguments)]
pub fn sp_via_fpplus<R: Ring>(
    s: &Session<R>,
    fp: &dyn Product<R>,
    fp_lo_add: &dyn Product<R>,
    fp_hi_add: &dyn Product<R>,
    f: View<'_, R>,
    g: View<'_, R>,
    out: &mut [R::Elem],
    work: &mut [R::Elem],
) {
    let n = g.len();
    check_shape(Kind::SpLo, false, f.len(), n, out.len());
    if n == 1 {
        out[0] = s.mul(f.get(0), g.get(0));
        return;
    }
    let (n0, n1) = (n.div_ceil(2), n / 2);
    fp.run(s, f.low(n1), g.slice(n0, n), &mut out[..2 * n1 - 1], work);
    out[n - 1] = out[n1 - 1];
    fp_lo_add.run(s, f.slice(n0, n), g.low(n1), &mut out[..2 * n1 - 1], work);
    out[n1 - 1] = s.add(out[n1 - 1], out[n - 1]);
    out.copy_within(0..n1, n0);
    fp_hi_add.run(s, f.low(n0), g.low(n0), &mut out[..2 * n0 - 1], work);
}

pub fn sp_via_fpplus_profile<R: Ring + 'static>(
    fp: Profile<R>,
    fp_lo_add: Profile<R>,
    fp_hi_add: Profile<R>,
) -> Profile<R> {
    expect_kind(&fp, Kind::Fp);
    expect_kind(&fp_lo_add, Kind::FpPlusLo);
    expect_kind(&fp_hi_add, Kind::FpPlusHi);
    Arc::new(SpViaFpPlus {
        fp,
        fp_lo_add,
        fp_hi_add,
    })
}

struct SpViaFpPlus<R: Ring> {
    fp: Profile<R>,
    fp_lo_add: Profile<R>,
    fp_hi_add: Profile<R>,
}

impl<R: Ring> Product<R> for SpViaFpPlus<R> {
    fn kind(&self) -> Kind {
        Kind::SpLo
    }

    fn name(&self) -> String {
        format!("SPlo[halves {}]", self.fp.name())
    }

    fn space(&self) -> SpaceConstant {
        max_space(&[&self.fp, &self.fp_lo_add, &self.fp_hi_add])
    }

    fn work_len(&self, n: usize) -> usize {
        max_work(&[&self.fp, &self.fp_lo_add, &self.fp_hi_add], n.div_ceil(2))
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], work: &mut [R::Elem]) {
        sp_via_fpplus(
            s,
            self.fp.as_ref(),
            self.fp_lo_add.as_ref(),
            self.fp_hi_add.as_ref(),
            f,
            g,
            out,
            work,
        )
    }
}

// ---------------------------------------------------------------------------
// Unbalanced full products

/// Work registers [`fp_unbal_additive`] needs for chunks of size `k`.
pub fn fp_unbal_additive_work_len<R: Ring>(base_fp: &dyn Product<R>, k: usize) -> usize {
    2 * k - 1 + base_fp.work_len(k)
}

/// `out += small * large` for `small` of size `k <= |large|`, as
/// `ceil(|large| / k)` balanced products into a `2k - 1` buffer at the front
/// of `work`, each added back at its offset. Only the first
/// `|large| + k - 1` output registers are touched.
pub fn fp_unbal_additive<R: Ring>(
    s: &Session<R>,
    base_fp: &dyn Product<R>,
    small: View<'_, R>,
    large: View<'_, R>,
    out: &mut [R::Elem],
    work: &mut [R::Elem],
) {
    let (k, big) = (small.len(), large.len());
    assert!(k >= 1 && k <= big, "unbalanced product expects 1 <= |small| <= |large|");
    let len = big + k - 1;
    assert!(out.len() >= len, "unbalanced product output too small");
    assert!(
        work.len() >= fp_unbal_additive_work_len(base_fp, k),
        "unbalanced product workspace too small"
    );
    let (buf, rest) = work.split_at_mut(2 * k - 1);
    for i in 0..big.div_ceil(k) {
        let at = i * k;
        let chunk = large.range(at as isize, (at + k) as isize);
        base_fp.run(s, small, chunk, buf, rest);
        let end = (at + 2 * k - 1).min(len);
        s.add_assign(&mut out[at..end], &buf[..end - at]);
    }
}

/// `out = f g` for `|f| = m > |g| = n`, computed directly in the output by
/// one full product on the (zero-padded) top chunk of `f` followed by
/// high-half-additive products on the lower chunks, top to bottom.
pub fn unbal_fp_via_fphi<R: Ring>(
    s: &Session<R>,
    fp: &dyn Product<R>,
    fp_hi_add: &dyn Product<R>,
    f: View<'_, R>,
    g: View<'_, R>,
    out: &mut [R::Elem],
    work: &mut [R::Elem],
) {
    let (m, n) = (f.len(), g.len());
    assert!(n >= 1 && m > n, "unbalanced product expects |f| > |g| >= 1");
    assert_eq!(out.len(), m + n - 1, "unbalanced product output length mismatch");
    let top = m.div_ceil(n) - 1;
    let r = (m - top * n) as isize;
    let chunk = f.range((top * n) as isize, m as isize).range(r - n as isize, r);
    fp.run(s, chunk, g, &mut out[m - n..], work);
    for k in (0..top).rev() {
        fp_hi_add.run(
            s,
            f.slice(k * n, (k + 1) * n),
            g,
            &mut out[k * n..k * n + 2 * n - 1],
            work,
        );
    }
}

// ---------------------------------------------------------------------------
// Padded middle products

/// Computes `kind` with a middle-product algorithm on a zero-padded view of
/// `f`: SPlo uses `0 + X^n f`, SPhi drops the constant term of `f`, FP pads
/// on both sides. SPhi and FP need an MP accepting unbalanced shapes.
pub fn via_mp<R: Ring + 'static>(kind: Kind, mp: Profile<R>) -> Profile<R> {
    expect_kind(&mp, Kind::Mp);
    match kind {
        Kind::SpLo => {}
        Kind::SpHi | Kind::Fp => assert!(mp.general_shape(), "{kind} via MP needs an unbalanced MP profile"),
        k => panic!("{k} cannot be obtained from a middle product directly"),
    }
    Arc::new(ViaMp { kind, mp })
}

struct ViaMp<R: Ring> {
    kind: Kind,
    mp: Profile<R>,
}

impl<R: Ring> Product<R> for ViaMp<R> {
    fn kind(&self) -> Kind {
        self.kind
    }

    fn name(&self) -> String {
        format!("{}[padded {}]", self.kind, self.mp.name())
    }

    fn space(&self) -> SpaceConstant {
        self.mp.space()
    }

    fn work_len(&self, n: usize) -> usize {
        self.mp.work_len(n)
    }

    fn run(&self, s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], work: &mut [R::Elem]) {
        check_shape(self.kind, false, f.len(), g.len(), out.len());
        let n = g.len() as isize;
        let padded = match self.kind {
            Kind::SpLo => f.range(1 - n, n),
            Kind::SpHi => {
                if n == 1 {
                    return;
                }
                f.range(1, 2 * n - 1)
            }
            _ => f.range(1 - n, 2 * n - 1),
        };
        self.mp.run(s, padded, g, out, work);
    }
}
