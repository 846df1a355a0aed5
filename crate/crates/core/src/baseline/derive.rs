//! Out-of-place short, middle and half-additive products obtained from a
//! full-product profile by computing into a scratch buffer.

use std::sync::Arc;

use crate::profile::{check_shape, Kind, Product, Profile, SpaceConstant};
use crate::regspace::InputView;
use crate::ring::Ring;
use crate::session::Session;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Derived {
    SpLo,
    SpHi,
    Mp,
    FpPlusLo,
    FpPlusHi,
}

/// A product computed through one or two FP calls into a `2n - 1` buffer
/// taken from the front of the work span.
struct ViaBuffer<R: Ring> {
    fp: Profile<R>,
    what: Derived,
}

impl<R: Ring> Product<R> for ViaBuffer<R> {
    fn kind(&self) -> Kind {
        match self.what {
            Derived::SpLo => Kind::SpLo,
            Derived::SpHi => Kind::SpHi,
            Derived::Mp => Kind::Mp,
            Derived::FpPlusLo => Kind::FpPlusLo,
            Derived::FpPlusHi => Kind::FpPlusHi,
        }
    }

    fn name(&self) -> String {
        format!("{}[buffered {}]", self.kind(), self.fp.name())
    }

    fn space(&self) -> SpaceConstant {
        self.fp.space() + 2
    }

    fn work_len(&self, n: usize) -> usize {
        match n {
            0 => 0,
            n => 2 * n - 1 + self.fp.work_len(n),
        }
    }

    fn run(
        &self,
        s: &Session<R>,
        f: InputView<'_, R::Elem>,
        g: InputView<'_, R::Elem>,
        out: &mut [R::Elem],
        work: &mut [R::Elem],
    ) {
        check_shape(self.kind(), false, f.len(), g.len(), out.len());
        let n = g.len();
        let (buf, rest) = work.split_at_mut(2 * n - 1);
        match self.what {
            Derived::SpLo => {
                self.fp.run(s, f, g, buf, rest);
                out.copy_from_slice(&buf[..n]);
            }
            Derived::SpHi => {
                self.fp.run(s, f, g, buf, rest);
                out.copy_from_slice(&buf[n..]);
            }
            Derived::Mp => {
                // f = f_lo + X^n f_hi; f_lo g supplies the middle slice
                // directly, f_hi g lands one position up.
                self.fp.run(s, f.slice(0, n), g, buf, rest);
                out.copy_from_slice(&buf[n - 1..]);
                self.fp.run(s, f.range(n as isize, 2 * n as isize), g, buf, rest);
                s.add_assign(&mut out[1..], &buf[..n - 1]);
            }
            Derived::FpPlusLo => {
                self.fp.run(s, f, g, buf, rest);
                s.add_assign(&mut out[..n - 1], &buf[..n - 1]);
                out[n - 1..].copy_from_slice(&buf[n - 1..]);
            }
            Derived::FpPlusHi => {
                self.fp.run(s, f, g, buf, rest);
                s.add_assign(&mut out[n..], &buf[n..]);
                out[..n].copy_from_slice(&buf[..n]);
            }
        }
    }
}

fn assert_fp<R: Ring>(fp: &Profile<R>) {
    assert_eq!(fp.kind(), Kind::Fp, "derivation needs a full-product profile");
}

/// Low and high short products from a full product: the whole product goes
/// to scratch and the wanted half is copied out. Declared constant `c + 2`.
pub fn derive_osp<R: Ring + 'static>(fp: Profile<R>) -> (Profile<R>, Profile<R>) {
    assert_fp(&fp);
    let lo: Profile<R> = Arc::new(ViaBuffer {
        fp: fp.clone(),
        what: Derived::SpLo,
    });
    let hi: Profile<R> = Arc::new(ViaBuffer {
        fp,
        what: Derived::SpHi,
    });
    (lo, hi)
}

/// Balanced middle product from two size-`n` full products through one
/// `2n - 1` buffer. Declared constant `c + 2`.
pub fn derive_omp<R: Ring + 'static>(fp: Profile<R>) -> Profile<R> {
    assert_fp(&fp);
    Arc::new(ViaBuffer { fp, what: Derived::Mp })
}

/// Half-additive full products from a plain one. Declared constant `c + 2`.
pub fn derive_fp_plus<R: Ring + 'static>(fp: Profile<R>) -> (Profile<R>, Profile<R>) {
    assert_fp(&fp);
    let lo: Profile<R> = Arc::new(ViaBuffer {
        fp: fp.clone(),
        what: Derived::FpPlusLo,
    });
    let hi: Profile<R> = Arc::new(ViaBuffer {
        fp,
        what: Derived::FpPlusHi,
    });
    (lo, hi)
}

/// Plain FP from a low half-additive one by clearing the addend registers.
struct ClearedAddend<R: Ring> {
    base: Profile<R>,
}

impl<R: Ring> Product<R> for ClearedAddend<R> {
    fn kind(&self) -> Kind {
        Kind::Fp
    }

    fn name(&self) -> String {
        format!("FP[{}]", self.base.name())
    }

    fn space(&self) -> SpaceConstant {
        self.base.space()
    }

    fn work_len(&self, n: usize) -> usize {
        self.base.work_len(n)
    }

    fn run(
        &self,
        s: &Session<R>,
        f: InputView<'_, R::Elem>,
        g: InputView<'_, R::Elem>,
        out: &mut [R::Elem],
        work: &mut [R::Elem],
    ) {
        check_shape(Kind::Fp, false, f.len(), g.len(), out.len());
        let n = g.len();
        match self.base.kind() {
            Kind::FpPlusLo => out[..n - 1].fill(s.zero()),
            Kind::FpPlusHi => out[n..].fill(s.zero()),
            k => panic!("expected a half-additive profile, got {k}"),
        }
        self.base.run(s, f, g, out, work);
    }
}

pub fn fp_from_fp_plus<R: Ring + 'static>(base: Profile<R>) -> Profile<R> {
    Arc::new(ClearedAddend { base })
}
