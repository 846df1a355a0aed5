//! Profile construction for every `--algo`/`--base` combination.

use std::sync::Arc;

use polymul::baseline::{
    derive_omp, derive_osp, karatsuba_profile, naive_fp_profile, naive_sp_hi_profile, naive_sp_lo_profile,
};
use polymul::inplace::{InPlaceFp, InPlaceMp, InPlaceSp, RangeMutation};
use polymul::tisp::{fphi_via_fplo, fpplus_via_sp_profile, sphi_via_splo};
use polymul::{Kind, Profile, Zm64};

use crate::config::{Algo, Base};

/// The out-of-place building blocks for one `--base`.
pub struct Bases {
    pub fp: Profile<Zm64>,
    pub sp_lo: Profile<Zm64>,
    pub sp_hi: Profile<Zm64>,
    pub mp: Profile<Zm64>,
}

/// `naive`: schoolbook FP and SP (no work registers) and an MP from two
/// schoolbook FPs. `karatsuba`: Karatsuba FP and SP/MP derived from it.
pub fn bases(base: Base) -> Bases {
    match base {
        Base::Naive => {
            let fp: Profile<Zm64> = Arc::new(naive_fp_profile());
            Bases {
                mp: derive_omp(fp.clone()),
                fp,
                sp_lo: Arc::new(naive_sp_lo_profile()),
                sp_hi: Arc::new(naive_sp_hi_profile()),
            }
        }
        Base::Karatsuba => {
            let fp: Profile<Zm64> = Arc::new(karatsuba_profile());
            let (sp_lo, sp_hi) = derive_osp(fp.clone());
            Bases {
                mp: derive_omp(fp.clone()),
                fp,
                sp_lo,
                sp_hi,
            }
        }
    }
}

pub fn profile(algo: Algo, base: Base) -> Profile<Zm64> {
    let b = bases(base);
    match algo {
        Algo::Fp => b.fp,
        Algo::Fplo => fpplus_via_sp_profile(b.sp_lo, b.sp_hi),
        Algo::Fphi => fphi_via_fplo(fpplus_via_sp_profile(b.sp_lo, b.sp_hi)),
        Algo::Splo => b.sp_lo,
        Algo::Sphi => sphi_via_splo(b.sp_lo),
        Algo::Mp => b.mp,
        Algo::Ifp => Arc::new(InPlaceFp::new(b.fp)),
        Algo::Isplo => Arc::new(InPlaceSp::new(b.sp_lo, b.sp_hi)),
        Algo::Isphi => InPlaceSp::new(b.sp_lo, b.sp_hi).high(),
        Algo::Imp => Arc::new(InPlaceMp::new(b.mp)),
    }
}

/// The base algorithm an algorithm's operation count is compared with.
pub fn reference(algo: Algo, base: Base) -> Profile<Zm64> {
    let b = bases(base);
    match algo {
        Algo::Fp | Algo::Fplo | Algo::Fphi | Algo::Ifp => b.fp,
        Algo::Splo | Algo::Isplo => b.sp_lo,
        Algo::Sphi | Algo::Isphi => b.sp_hi,
        Algo::Mp | Algo::Imp => b.mp,
    }
}

/// An in-place algorithm with a deliberately wrong range formula.
pub fn mutated(m: RangeMutation, base: Base) -> (Algo, Profile<Zm64>) {
    let b = bases(base);
    match m.target() {
        Kind::FpPlusLo => (Algo::Ifp, Arc::new(InPlaceFp::new(b.fp).with_mutation(m))),
        Kind::SpLo => (Algo::Isplo, Arc::new(InPlaceSp::new(b.sp_lo, b.sp_hi).with_mutation(m))),
        _ => (Algo::Imp, Arc::new(InPlaceMp::new(b.mp).with_mutation(m))),
    }
}
