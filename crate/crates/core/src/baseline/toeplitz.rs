//! Reference products as Toeplitz matrix-vector products.
//!
//! Each matrix is materialised entry by entry and applied to `g`, using the
//! bare ring operations so the oracle shares no code path with the kernels.

use crate::ring::Ring;

/// Dense row-major matrix with entry `(r, c) = entry(r, c)`.
fn matrix<R: Ring>(
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, usize) -> Option<R::Elem>,
    zero: R::Elem,
) -> Vec<Vec<R::Elem>> {
    (0..rows)
        .map(|r| (0..cols).map(|c| entry(r, c).unwrap_or(zero)).collect())
        .collect()
}

fn apply<R: Ring>(ring: &R, m: &[Vec<R::Elem>], v: &[R::Elem]) -> Vec<R::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(ring.zero(), |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
        })
        .collect()
}

fn at<E: Copy>(f: &[E], i: isize) -> Option<E> {
    usize::try_from(i).ok().and_then(|i| f.get(i).copied())
}

/// `f g`, `(2n-1) x n` matrix with entry `f_{r-c}`.
pub fn fp<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let (a, b) = (f.len(), g.len());
    assert!(a >= 1 && b >= 1);
    let m = matrix::<R>(a + b - 1, b, |r, c| at(f, r as isize - c as isize), ring.zero());
    apply(ring, &m, g)
}

/// `f g mod X^n`, lower-triangular `n x n` with entry `f_{r-c}`.
pub fn sp_lo<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let n = g.len();
    assert_eq!(f.len(), n);
    let m = matrix::<R>(n, n, |r, c| (r >= c).then(|| f[r - c]), ring.zero());
    apply(ring, &m, g)
}

/// `f g quo X^n`, upper-triangular `(n-1) x (n-1)` acting on `g_1..g_{n-1}`
/// with entry `f_{n+r-c-1}`.
pub fn sp_hi<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let n = g.len();
    assert_eq!(f.len(), n);
    let m = matrix::<R>(n - 1, n - 1, |r, c| (r <= c).then(|| f[n + r - c - 1]), ring.zero());
    apply(ring, &m, &g[1..])
}

/// Middle product, `m x n` matrix with entry `f_{n-1+r-c}`; `f` has
/// `n + m - 1` coefficients.
pub fn mp<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let n = g.len();
    assert!(n >= 1 && f.len() >= n);
    let rows = f.len() + 1 - n;
    let m = matrix::<R>(rows, n, |r, c| Some(f[n - 1 + r - c]), ring.zero());
    apply(ring, &m, g)
}

/// `h + f g` with `h` of size `n - 1` in the low positions.
pub fn fp_plus_lo<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem], h: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = fp(ring, f, g);
    for (o, &x) in out.iter_mut().zip(h) {
        *o = ring.add(*o, x);
    }
    out
}

/// `X^n h + f g` with `h` of size `n - 1`.
pub fn fp_plus_hi<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem], h: &[R::Elem]) -> Vec<R::Elem> {
    let n = g.len();
    let mut out = fp(ring, f, g);
    for (o, &x) in out[n..].iter_mut().zip(h) {
        *o = ring.add(*o, x);
    }
    out
}
