//! Recursive Karatsuba with a single scratch region of at most `2n` registers.
//!
//! Even sizes split in halves `f = f0 + X^h f1`. The operand sums live in
//! the (not yet written) output, the middle product `(f0+f1)(g0+g1)` in the
//! first `n - 1` scratch registers, and every recursive call reuses the rest
//! of the scratch. Odd sizes peel the top coefficient of each operand and
//! fold its row and column in with `2n - 1` multiply-adds; this keeps the
//! scratch recurrence at `W(n) = n - 1 + W(n/2) <= 2n`.

use crate::profile::{FnProduct, Kind, SpaceConstant};
use crate::regspace::InputView;
use crate::ring::Ring;
use crate::session::Session;

/// Exact scratch requirement of [`karatsuba_fp`] at size `n`.
pub fn karatsuba_work_len(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        n if n % 2 == 1 => karatsuba_work_len(n - 1),
        n => n - 1 + karatsuba_work_len(n / 2),
    }
}

/// `out = f g` for operands of equal size `n`; `out` has `2n - 1` registers
/// and `work` at least [`karatsuba_work_len`]`(n)`.
pub fn karatsuba_fp<R: Ring>(
    s: &Session<R>,
    f: InputView<'_, R::Elem>,
    g: InputView<'_, R::Elem>,
    out: &mut [R::Elem],
    work: &mut [R::Elem],
) {
    let n = f.len();
    assert!(n >= 1 && g.len() == n, "karatsuba expects two operands of size n >= 1");
    assert_eq!(out.len(), 2 * n - 1, "karatsuba output must have 2n - 1 registers");
    assert!(work.len() >= karatsuba_work_len(n), "karatsuba scratch too small");

    if n == 1 {
        out[0] = s.mul(f.get(0), g.get(0));
        return;
    }

    if n % 2 == 1 {
        let m = n - 1;
        karatsuba_fp(s, f.slice(0, m), g.slice(0, m), &mut out[..2 * m - 1], work);
        out[2 * m - 1..].fill(s.zero());
        let (ft, gt) = (f.get(m), g.get(m));
        for j in 0..n {
            out[m + j] = s.add(out[m + j], s.mul(ft, g.get(j)));
        }
        for i in 0..m {
            out[m + i] = s.add(out[m + i], s.mul(gt, f.get(i)));
        }
        return;
    }

    let h = n / 2;
    let (f0, f1) = (f.slice(0, h), f.slice(h, n));
    let (g0, g1) = (g.slice(0, h), g.slice(h, n));

    for i in 0..h {
        out[i] = s.add(f0.get(i), f1.get(i));
        out[h + i] = s.add(g0.get(i), g1.get(i));
    }
    let (mid, scratch) = work.split_at_mut(2 * h - 1);
    {
        let (sums, _) = out.split_at(2 * h);
        let zero = s.zero();
        let fs = InputView::new(&sums[..h], zero);
        let gs = InputView::new(&sums[h..], zero);
        karatsuba_fp(s, fs, gs, mid, scratch);
    }

    let (low, rest) = out.split_at_mut(2 * h - 1);
    karatsuba_fp(s, f0, g0, low, scratch);
    rest[0] = s.zero();
    let high = &mut rest[1..];
    karatsuba_fp(s, f1, g1, high, scratch);

    s.sub_assign(mid, low);
    s.sub_assign(mid, high);
    s.add_assign(&mut out[h..], mid);
}

fn entry<R: Ring>(
    s: &Session<R>,
    f: InputView<'_, R::Elem>,
    g: InputView<'_, R::Elem>,
    out: &mut [R::Elem],
    work: &mut [R::Elem],
) {
    karatsuba_fp(s, f, g, out, work)
}

/// Karatsuba as an FP profile with declared space constant 2.
pub fn karatsuba_profile<R: Ring>() -> FnProduct<R> {
    FnProduct {
        kind: Kind::Fp,
        name: "karatsuba",
        space: SpaceConstant::integer(2),
        work_len: karatsuba_work_len,
        general: false,
        entry: entry::<R>,
    }
}
