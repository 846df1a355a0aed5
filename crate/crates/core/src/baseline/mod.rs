//! Out-of-place multiplication algorithms used as building blocks.

pub mod derive;
pub mod karatsuba;
pub mod naive;
pub mod toeplitz;

pub use derive::{derive_fp_plus, derive_omp, derive_osp, fp_from_fp_plus};
pub use karatsuba::{karatsuba_fp, karatsuba_profile, karatsuba_work_len};
pub use naive::{
    naive_fp, naive_fp_additive, naive_fp_plus_hi_profile, naive_fp_plus_lo_profile, naive_fp_profile, naive_mp,
    naive_mp_profile, naive_sp_hi, naive_sp_hi_profile, naive_sp_lo, naive_sp_lo_profile,
};
