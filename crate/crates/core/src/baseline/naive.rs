//! Schoolbook kernels. None of them needs a work register: partial sums are
//! accumulated directly in the output registers.

use crate::profile::{FnProduct, Kind, SpaceConstant};
use crate::regspace::InputView;
use crate::ring::Ring;
use crate::session::Session;

type View<'a, R> = InputView<'a, <R as Ring>::Elem>;

/// `out[0..a+b-1) += f g`. Exactly `a b` multiplications and `a b` additions.
pub fn naive_fp_additive<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    let (a, b) = (f.len(), g.len());
    assert!(a > 0 && b > 0, "operands must be non-empty");
    assert!(out.len() >= a + b - 1, "output shorter than a + b - 1");
    for i in 0..a {
        let fi = f.get(i);
        for j in 0..b {
            out[i + j] = s.add(out[i + j], s.mul(fi, g.get(j)));
        }
    }
}

/// `out = f g` (overwrite), one dot product per output coefficient:
/// `a b` multiplications and `a b - (a + b - 1)` additions.
pub fn naive_fp<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    let (a, b) = (f.len(), g.len());
    assert!(a > 0 && b > 0, "operands must be non-empty");
    assert_eq!(out.len(), a + b - 1, "output length must be a + b - 1");
    for (t, o) in out.iter_mut().enumerate() {
        let lo = t.saturating_sub(b - 1);
        let hi = t.min(a - 1);
        let mut acc = s.mul(f.get(lo), g.get(t - lo));
        for i in lo + 1..=hi {
            acc = s.add(acc, s.mul(f.get(i), g.get(t - i)));
        }
        *o = acc;
    }
}

/// `out = f g mod X^n`.
pub fn naive_sp_lo<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    let n = g.len();
    assert!(f.len() == n && out.len() == n, "SPlo expects sizes (n, n) -> n");
    for (t, o) in out.iter_mut().enumerate() {
        let mut acc = s.mul(f.get(0), g.get(t));
        for i in 1..=t {
            acc = s.add(acc, s.mul(f.get(i), g.get(t - i)));
        }
        *o = acc;
    }
}

/// `out = f g quo X^n` (size `n - 1`).
pub fn naive_sp_hi<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    let n = g.len();
    assert!(
        n >= 1 && f.len() == n && out.len() == n - 1,
        "SPhi expects sizes (n, n) -> n - 1"
    );
    for (t, o) in out.iter_mut().enumerate() {
        // pairs (i, j) with i + j = n + t, 0 <= i, j < n
        let mut acc = s.mul(f.get(t + 1), g.get(n - 1));
        for i in t + 2..n {
            acc = s.add(acc, s.mul(f.get(i), g.get(n + t - i)));
        }
        *o = acc;
    }
}

/// `out = (f g quo X^(n-1)) mod X^m` with `|f| = n + m - 1`, `|g| = n`:
/// exactly `n m` multiplications.
pub fn naive_mp<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem]) {
    let (n, m) = (g.len(), out.len());
    assert!(n >= 1 && f.len() == n + m - 1, "MP expects |f| = |g| + |out| - 1");
    for (t, o) in out.iter_mut().enumerate() {
        let mut acc = s.mul(f.get(n - 1 + t), g.get(0));
        for j in 1..n {
            acc = s.add(acc, s.mul(f.get(n - 1 + t - j), g.get(j)));
        }
        *o = acc;
    }
}

fn no_work(_: usize) -> usize {
    0
}

fn fp_entry<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _: &mut [R::Elem]) {
    naive_fp(s, f, g, out)
}

fn fp_plus_lo_entry<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _: &mut [R::Elem]) {
    let n = g.len();
    out[n - 1..].fill(s.zero());
    naive_fp_additive(s, f, g, out)
}

fn fp_plus_hi_entry<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _: &mut [R::Elem]) {
    let n = g.len();
    out[..n].fill(s.zero());
    naive_fp_additive(s, f, g, out)
}

fn sp_lo_entry<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _: &mut [R::Elem]) {
    naive_sp_lo(s, f, g, out)
}

fn sp_hi_entry<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _: &mut [R::Elem]) {
    naive_sp_hi(s, f, g, out)
}

fn mp_entry<R: Ring>(s: &Session<R>, f: View<'_, R>, g: View<'_, R>, out: &mut [R::Elem], _: &mut [R::Elem]) {
    naive_mp(s, f, g, out)
}

pub fn naive_fp_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::Fp,
        name: "naive-fp",
        space: SpaceConstant::ZERO,
        work_len: no_work,
        general: false,
        entry: fp_entry::<R>,
    }
}

pub fn naive_fp_plus_lo_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::FpPlusLo,
        name: "naive-fp+lo",
        space: SpaceConstant::ZERO,
        work_len: no_work,
        general: false,
        entry: fp_plus_lo_entry::<R>,
    }
}

pub fn naive_fp_plus_hi_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::FpPlusHi,
        name: "naive-fp+hi",
        space: SpaceConstant::ZERO,
        work_len: no_work,
        general: false,
        entry: fp_plus_hi_entry::<R>,
    }
}

pub fn naive_sp_lo_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::SpLo,
        name: "naive-splo",
        space: SpaceConstant::ZERO,
        work_len: no_work,
        general: false,
        entry: sp_lo_entry::<R>,
    }
}

pub fn naive_sp_hi_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::SpHi,
        name: "naive-sphi",
        space: SpaceConstant::ZERO,
        work_len: no_work,
        general: false,
        entry: sp_hi_entry::<R>,
    }
}

/// Accepts any shape `(n, m)`.
pub fn naive_mp_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::Mp,
        name: "naive-mp",
        space: SpaceConstant::ZERO,
        work_len: no_work,
        general: true,
        entry: mp_entry::<R>,
    }
}
