//! In-place polynomial products over abstract rings.
//!
//! Inputs are read-only [`InputView`]s, outputs are mutable slices, and any
//! extra memory is drawn from a [`WorkMeter`] so its peak can be observed.
//! Every ring operation goes through a [`Session`] which counts it.
//!
//! ```
//! use std::sync::Arc;
//! use polymul::{baseline, inplace::InPlaceFp, run_out_of_place, InputView, Profile, Ring, Session, Zm64};
//!
//! let ring = Zm64::new(998_244_353).unwrap();
//! let kara: Profile<Zm64> = Arc::new(baseline::karatsuba_profile());
//! let ifp = InPlaceFp::new(kara);
//! let (f, g) = (ring.elems(&[1, 2, 3]), ring.elems(&[4, 5, 6]));
//! let mut out = vec![ring.zero(); 5];
//! let s = Session::new(ring);
//! run_out_of_place(&ifp, &s, InputView::new(&f, ring.zero()), InputView::new(&g, ring.zero()), &mut out);
//! assert_eq!(ring.values(&out), [4, 13, 28, 27, 18]);
//! assert_eq!(s.meter().peak(), 0);
//! ```

pub mod analysis;
pub mod baseline;
mod error;
pub mod inplace;
pub mod profile;
pub mod regspace;
pub mod ring;
pub mod session;
pub mod tisp;

pub use error::Error;
pub use profile::{run_out_of_place, Kind, Product, Profile, SpaceConstant};
pub use regspace::{InputView, WorkMeter, Workspace};
pub use ring::{Coeff, ModRing, OpCount, OpCounter, OpKind, Ring, Word, WrappingRing};
pub use session::{LevelRecord, Session};

/// Integers modulo a 64-bit modulus.
pub type Zm64 = ModRing<u64>;
/// Integers modulo a 32-bit modulus.
pub type Zm32 = ModRing<u32>;
/// Integers modulo `2^64` with native wrapping arithmetic.
pub type Z2e64 = WrappingRing<u64>;
