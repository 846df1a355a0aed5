#![allow(dead_code)]

use std::sync::Arc;

use polymul::baseline::*;
use polymul::inplace::{InPlaceFp, InPlaceMp, InPlaceSp};
use polymul::tisp::*;
use polymul::*;
use rand::Rng;

pub type Vals<R> = Vec<<R as Ring>::Elem>;

/// Every algorithm exposed as a profile, labelled by its construction.
pub fn catalogue<R: Ring + 'static>() -> Vec<(&'static str, Profile<R>)> {
    let naive: Profile<R> = Arc::new(naive_fp_profile());
    let kara: Profile<R> = Arc::new(karatsuba_profile());
    let (sp_lo, sp_hi) = derive_osp(kara.clone());
    let (fp_lo_add, fp_hi_add) = derive_fp_plus(kara.clone());
    let naive_mp: Profile<R> = Arc::new(naive_mp_profile());
    vec![
        ("naive fp", naive.clone()),
        ("naive fp+lo", Arc::new(naive_fp_plus_lo_profile())),
        ("naive fp+hi", Arc::new(naive_fp_plus_hi_profile())),
        ("naive splo", Arc::new(naive_sp_lo_profile())),
        ("naive sphi", Arc::new(naive_sp_hi_profile())),
        ("naive mp", naive_mp.clone()),
        ("karatsuba", kara.clone()),
        ("buffered splo", sp_lo.clone()),
        ("buffered sphi", sp_hi.clone()),
        ("buffered mp naive", derive_omp(naive.clone())),
        ("buffered mp karatsuba", derive_omp(kara.clone())),
        ("buffered fp+lo", fp_lo_add.clone()),
        ("buffered fp+hi", fp_hi_add.clone()),
        ("fp from fp+lo", fp_from_fp_plus(fp_lo_add.clone())),
        ("fp from fp+hi", fp_from_fp_plus(fp_hi_add.clone())),
        ("sphi reversed", sphi_via_splo(sp_lo.clone())),
        ("fp+hi reflected", fphi_via_fplo(fp_lo_add.clone())),
        ("fp+lo reflected", fplo_via_fphi(fp_hi_add.clone())),
        ("fp+lo from sp", fpplus_via_sp_profile(sp_lo.clone(), sp_hi.clone())),
        (
            "splo from halves",
            sp_via_fpplus_profile(kara.clone(), fp_lo_add.clone(), fp_hi_add.clone()),
        ),
        ("splo via mp", via_mp(Kind::SpLo, naive_mp.clone())),
        ("sphi via mp", via_mp(Kind::SpHi, naive_mp.clone())),
        ("fp via mp", via_mp(Kind::Fp, naive_mp.clone())),
        ("ifp", Arc::new(InPlaceFp::new(kara.clone()))),
        ("ifp high addend", InPlaceFp::new(kara.clone()).high_addend()),
        ("ifp reflected twice", InPlaceFp::new(kara.clone()).reflected_twice()),
        ("isplo", Arc::new(InPlaceSp::new(sp_lo.clone(), sp_hi.clone()))),
        ("isphi", InPlaceSp::new(sp_lo.clone(), sp_hi.clone()).high()),
        ("imp", Arc::new(InPlaceMp::new(derive_omp(kara.clone())))),
        (
            "fp via imp",
            via_mp(Kind::Fp, Arc::new(InPlaceMp::new(derive_omp(naive.clone())))),
        ),
    ]
}

pub fn draw<R: Ring, G: Rng>(ring: &R, rng: &mut G, len: usize) -> Vals<R> {
    (0..len).map(|_| ring.sample(rng)).collect()
}

pub fn view<'a, R: Ring>(ring: &R, v: &'a [R::Elem]) -> InputView<'a, R::Elem> {
    InputView::new(v, ring.zero())
}

pub fn oracle<R: Ring>(ring: &R, kind: Kind, f: &[R::Elem], g: &[R::Elem], out0: &[R::Elem]) -> Vals<R> {
    let n = g.len();
    match kind {
        Kind::Fp => toeplitz::fp(ring, f, g),
        Kind::FpPlusLo => toeplitz::fp_plus_lo(ring, f, g, &out0[..n - 1]),
        Kind::FpPlusHi => toeplitz::fp_plus_hi(ring, f, g, &out0[n..]),
        Kind::SpLo => toeplitz::sp_lo(ring, f, g),
        Kind::SpHi => toeplitz::sp_hi(ring, f, g),
        Kind::Mp => toeplitz::mp(ring, f, g),
    }
}

pub struct Run<R: Ring> {
    pub out: Vals<R>,
    pub ops: OpCount,
    pub peak: usize,
    pub violation: Option<usize>,
}

/// Runs `p` under a meter capped at its declared `ceil(c n)`.
pub fn run<R: Ring>(ring: &R, p: &dyn Product<R>, f: &[R::Elem], g: &[R::Elem], out0: &[R::Elem]) -> Run<R> {
    let s = Session::with_meter(ring.clone(), WorkMeter::with_cap(p.space().workspace(g.len())));
    let mut out = out0.to_vec();
    run_out_of_place(p, &s, view(ring, f), view(ring, g), &mut out);
    Run {
        out,
        ops: s.ops(),
        peak: s.meter().peak(),
        violation: s.meter().violation(),
    }
}

/// Random operands and initial output for `p` at size `n`; MP algorithms
/// accepting any shape get output length `m`, balanced ones `n`.
pub fn instance<R: Ring, G: Rng>(
    ring: &R,
    p: &dyn Product<R>,
    n: usize,
    m: usize,
    rng: &mut G,
) -> (Vals<R>, Vals<R>, Vals<R>) {
    let kind = p.kind();
    let m = if kind == Kind::Mp && !p.general_shape() { n } else { m };
    let (flen, olen) = match kind {
        Kind::Mp => (n + m - 1, m),
        k => (n, k.out_len(n)),
    };
    (draw(ring, rng, flen), draw(ring, rng, n), draw(ring, rng, olen))
}
