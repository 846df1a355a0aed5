//! Coefficient rings and operation counting.
//!
//! Every algorithm in this crate is generic over [`Ring`]. A ring value is
//! immutable and holds the runtime parameters (the modulus for [`ModRing`]);
//! elements are plain `Copy` values. Counting happens one level up, in
//! [`crate::Session`], so the same ring can be shared by concurrent sessions.

use std::cell::Cell;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::num::Wrapping;

use num_traits::{AsPrimitive, PrimInt, Unsigned, WrappingAdd, WrappingMul, WrappingNeg, WrappingSub};
use rand::Rng;

use crate::error::Error;

/// A commutative ring with unit. Only ring operations are ever needed by the
/// multiplication algorithms: there is no division anywhere.
pub trait Ring: Clone + Send + Sync {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;

    /// Image of an integer under the canonical map `Z -> R`.
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, x: u64) -> Self::Elem;

    /// Canonical integer representative, used for hashing and reporting.
    fn to_u64(&self, a: Self::Elem) -> u64;

    /// Uniformly random element.
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    /// Short human-readable description, e.g. `Z/97`.
    fn describe(&self) -> String;

    fn elems(&self, xs: &[u64]) -> Vec<Self::Elem> {
        xs.iter().map(|&x| self.from_u64(x)).collect()
    }

    fn values(&self, xs: &[Self::Elem]) -> Vec<u64> {
        xs.iter().map(|&x| self.to_u64(x)).collect()
    }
}

/// Machine words usable as the representation of `Z/m`.
pub trait Word: PrimInt + Unsigned + AsPrimitive<u128> + Hash + Debug + Display + Send + Sync + 'static {}

impl<W> Word for W where W: PrimInt + Unsigned + AsPrimitive<u128> + Hash + Debug + Display + Send + Sync + 'static {}

/// Element of `Z/m`, always stored as its representative in `[0, m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coeff<W>(W);

impl<W: Word> Coeff<W> {
    pub fn value(self) -> W {
        self.0
    }
}

impl<W: Word> Debug for Coeff<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<W: Word> Display for Coeff<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The ring `Z/m` for any word-sized `m >= 2`. `m` need not be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModRing<W> {
    modulus: W,
}

impl<W: Word> ModRing<W>
where
    u128: AsPrimitive<W>,
{
    pub fn new(modulus: W) -> Result<Self, Error> {
        if modulus < W::one() + W::one() || modulus.as_() > u64::MAX as u128 {
            return Err(Error::Modulus(modulus.as_()));
        }
        Ok(ModRing { modulus })
    }

    pub fn modulus(&self) -> W {
        self.modulus
    }

    /// Reduces an arbitrary word.
    pub fn coeff(&self, x: W) -> Coeff<W> {
        Coeff(x % self.modulus)
    }
}

impl<W: Word> Ring for ModRing<W>
where
    u128: AsPrimitive<W>,
{
    type Elem = Coeff<W>;

    fn zero(&self) -> Coeff<W> {
        Coeff(W::zero())
    }

    fn one(&self) -> Coeff<W> {
        Coeff(W::one())
    }

    #[inline]
    fn add(&self, a: Coeff<W>, b: Coeff<W>) -> Coeff<W> {
        // a + b may not fit in W when m is close to W::MAX
        let gap = self.modulus - b.0;
        if a.0 >= gap {
            Coeff(a.0 - gap)
        } else {
            Coeff(a.0 + b.0)
        }
    }

    #[inline]
    fn sub(&self, a: Coeff<W>, b: Coeff<W>) -> Coeff<W> {
        if a.0 >= b.0 {
            Coeff(a.0 - b.0)
        } else {
            Coeff(self.modulus - (b.0 - a.0))
        }
    }

    #[inline]
    fn mul(&self, a: Coeff<W>, b: Coeff<W>) -> Coeff<W> {
        let p: u128 = a.0.as_() * b.0.as_();
        Coeff((p % self.modulus.as_()).as_())
    }

    #[inline]
    fn neg(&self, a: Coeff<W>) -> Coeff<W> {
        if a.0.is_zero() {
            a
        } else {
            Coeff(self.modulus - a.0)
        }
    }

    fn from_u64(&self, x: u64) -> Coeff<W> {
        let r = (x as u128) % self.modulus.as_();
        Coeff(r.as_())
    }

    fn to_u64(&self, a: Coeff<W>) -> u64 {
        let v: u128 = a.0.as_();
        v as u64
    }

    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Coeff<W> {
        let m: u128 = self.modulus.as_();
        Coeff(rng.gen_range(0..m).as_())
    }

    fn describe(&self) -> String {
        format!("Z/{}", self.modulus)
    }
}

/// The ring `Z/2^bits` of a machine word with wrapping arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WrappingRing<W>(std::marker::PhantomData<W>);

impl<W> WrappingRing<W> {
    pub fn new() -> Self {
        WrappingRing(std::marker::PhantomData)
    }
}

impl<W> Ring for WrappingRing<W>
where
    W: Word + WrappingAdd + WrappingSub + WrappingMul + WrappingNeg,
    u64: AsPrimitive<W>,
{
    type Elem = Wrapping<W>;

    fn zero(&self) -> Wrapping<W> {
        Wrapping(W::zero())
    }

    fn one(&self) -> Wrapping<W> {
        Wrapping(W::one())
    }

    #[inline]
    fn add(&self, a: Wrapping<W>, b: Wrapping<W>) -> Wrapping<W> {
        Wrapping(a.0.wrapping_add(&b.0))
    }

    #[inline]
    fn sub(&self, a: Wrapping<W>, b: Wrapping<W>) -> Wrapping<W> {
        Wrapping(a.0.wrapping_sub(&b.0))
    }

    #[inline]
    fn mul(&self, a: Wrapping<W>, b: Wrapping<W>) -> Wrapping<W> {
        Wrapping(a.0.wrapping_mul(&b.0))
    }

    #[inline]
    fn neg(&self, a: Wrapping<W>) -> Wrapping<W> {
        Wrapping(a.0.wrapping_neg())
    }

    fn from_u64(&self, x: u64) -> Wrapping<W> {
        Wrapping(x.as_())
    }

    fn to_u64(&self, a: Wrapping<W>) -> u64 {
        let v: u128 = a.0.as_();
        v as u64
    }

    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Wrapping<W> {
        self.from_u64(rng.gen())
    }

    fn describe(&self) -> String {
        format!("Z/2^{}", W::zero().count_zeros())
    }
}

/// The four ring operations of the cost model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Ring-operation counters for one session. Additions, subtractions and
/// negations share the `adds` counter.
#[derive(Debug, Default)]
pub struct OpCounter {
    muls: Cell<u64>,
    adds: Cell<u64>,
}

/// Frozen counter values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCount {
    pub muls: u64,
    pub adds: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.muls + self.adds
    }
}

impl std::ops::Sub for OpCount {
    type Output = OpCount;

    fn sub(self, rhs: OpCount) -> OpCount {
        OpCount {
            muls: self.muls - rhs.muls,
            adds: self.adds - rhs.adds,
        }
    }
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn record(&self, kind: OpKind) {
        match kind {
            OpKind::Mul => self.muls.set(self.muls.get() + 1),
            OpKind::Add | OpKind::Sub | OpKind::Neg => self.adds.set(self.adds.get() + 1),
        }
    }

    #[inline]
    pub(crate) fn record_adds(&self, count: u64) {
        self.adds.set(self.adds.get() + count);
    }

    pub fn snapshot(&self) -> OpCount {
        OpCount {
            muls: self.muls.get(),
            adds: self.adds.get(),
        }
    }

    pub fn total(&self) -> u64 {
        self.snapshot().total()
    }
}
