//! Random instances, the reference answer, and metered execution.
//!
//! Every instance is drawn from a `ChaCha8Rng` seeded with
//! [`instance_seed`]`(seed, n, trial)`, so a single failing instance can be
//! regenerated from the three numbers alone.

use std::panic::{catch_unwind, AssertUnwindSafe};

use polymul::baseline::toeplitz;
use polymul::{run_out_of_place, InputView, Kind, OpCount, Product, Ring, Session, WorkMeter, Zm64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Elem = <Zm64 as Ring>::Elem;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn instance_seed(seed: u64, n: usize, trial: usize) -> u64 {
    mix(mix(mix(seed) ^ n as u64) ^ trial as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub kind: Kind,
    pub f: Vec<Elem>,
    pub g: Vec<Elem>,
    /// Initial output content: the addend for half-additive kinds, noise
    /// otherwise.
    pub out: Vec<Elem>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.g.len()
    }

    /// `m` for middle products, the output length otherwise.
    pub fn m(&self) -> usize {
        self.out.len()
    }
}

/// Operands of size `n`; an MP accepting any shape gets `m` drawn from
/// `1..=2n`, a balanced one `m = n`.
pub fn generate(kind: Kind, general: bool, ring: &Zm64, n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |len: usize, rng: &mut ChaCha8Rng| -> Vec<Elem> { (0..len).map(|_| ring.sample(rng)).collect() };
    let m = match kind {
        Kind::Mp if general => rng.gen_range(1..=2 * n),
        _ => n,
    };
    let flen = if kind == Kind::Mp { n + m - 1 } else { n };
    let f = draw(flen, &mut rng);
    let g = draw(n, &mut rng);
    let out = draw(if kind == Kind::Mp { m } else { kind.out_len(n) }, &mut rng);
    Instance { kind, f, g, out }
}

/// The Toeplitz-oracle answer.
pub fn expected(ring: &Zm64, inst: &Instance) -> Vec<Elem> {
    let (f, g, n) = (&inst.f, &inst.g, inst.n());
    match inst.kind {
        Kind::Fp => toeplitz::fp(ring, f, g),
        Kind::FpPlusLo => toeplitz::fp_plus_lo(ring, f, g, &inst.out[..n - 1]),
        Kind::FpPlusHi => toeplitz::fp_plus_hi(ring, f, g, &inst.out[n..]),
        Kind::SpLo => toeplitz::sp_lo(ring, f, g),
        Kind::SpHi => toeplitz::sp_hi(ring, f, g),
        Kind::Mp => toeplitz::mp(ring, f, g),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub out: Vec<Elem>,
    pub ops: OpCount,
    pub peak: usize,
    /// Set when the run needed more than `ceil(c n)` work registers.
    pub violation: Option<usize>,
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

/// Runs `p` on a copy of the instance under a meter capped at the declared
/// `ceil(c n)`. A panic inside the algorithm is returned as an error.
pub fn execute(p: &dyn Product<Zm64>, ring: &Zm64, inst: &Instance) -> Result<Outcome, String> {
    catch_unwind(AssertUnwindSafe(|| {
        let cap = p.space().workspace(inst.n());
        let s = Session::with_meter(*ring, WorkMeter::with_cap(cap));
        let mut out = inst.out.clone();
        let zero = ring.zero();
        run_out_of_place(
            p,
            &s,
            InputView::new(&inst.f, zero),
            InputView::new(&inst.g, zero),
            &mut out,
        );
        Outcome {
            out,
            ops: s.ops(),
            peak: s.meter().peak(),
            violation: s.meter().violation(),
        }
    }))
    .map_err(panic_text)
}
