//! Algorithm descriptors.
//!
//! Every product algorithm, out-of-place base or derived, is exposed behind
//! [`Product`] so the reductions can be stacked on any of them.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::Error;
use crate::regspace::InputView;
use crate::ring::Ring;
use crate::session::Session;

/// Which product an algorithm computes.
///
/// Sizes are given for operands `f`, `g` of size `n`; `h` denotes the
/// addend already present in the output for the half-additive variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `out (2n-1) = f g`
    Fp,
    /// `out (2n-1) = h + f g`, `h` in `out[0..n-1)`
    FpPlusLo,
    /// `out (2n-1) = X^n h + f g`, `h` in `out[n..2n-1)`
    FpPlusHi,
    /// `out (n) = f g mod X^n`
    SpLo,
    /// `out (n-1) = f g quo X^n`
    SpHi,
    /// `out (m) = (f g quo X^(n-1)) mod X^m`, `f` of size `n+m-1`, `g` of size `n`
    Mp,
}

impl Kind {
    /// Output length for operands of size parameter `n` (`m = n` for MP).
    pub fn out_len(self, n: usize) -> usize {
        match self {
            Kind::Fp | Kind::FpPlusLo | Kind::FpPlusHi => 2 * n - 1,
            Kind::SpLo | Kind::Mp => n,
            Kind::SpHi => n - 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Kind::Fp => "FP",
            Kind::FpPlusLo => "FP+lo",
            Kind::FpPlusHi => "FP+hi",
            Kind::SpLo => "SPlo",
            Kind::SpHi => "SPhi",
            Kind::Mp => "MP",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Non-negative rational `c` such that an algorithm needs at most `ceil(c n)`
/// work registers at size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceConstant(Ratio<u64>);

impl SpaceConstant {
    pub const ZERO: SpaceConstant = SpaceConstant(Ratio::new_raw(0, 1));

    pub fn integer(c: u64) -> Self {
        SpaceConstant(Ratio::from_integer(c))
    }

    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::SpaceConstant(format!("{num}/0")));
        }
        Ok(SpaceConstant(Ratio::new(num, den)))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    /// `ceil(c)`, the integer constant used in thresholds and block sizes.
    pub fn ceil(&self) -> usize {
        self.0.ceil().to_integer() as usize
    }

    /// `ceil(c n)`.
    pub fn workspace(&self, n: usize) -> usize {
        (self.0 * Ratio::from_integer(n as u64)).ceil().to_integer() as usize
    }

    pub fn as_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl std::ops::Add<u64> for SpaceConstant {
    type Output = SpaceConstant;

    fn add(self, rhs: u64) -> SpaceConstant {
        SpaceConstant(self.0 + rhs)
    }
}

impl fmt::Display for SpaceConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A product algorithm operating on read-only inputs, an output span and a
/// caller-provided work span.
pub trait Product<R: Ring>: Send + Sync {
    fn kind(&self) -> Kind;

    fn name(&self) -> String;

    fn space(&self) -> SpaceConstant;

    /// Work registers actually needed at size parameter `n` (the size of `g`).
    /// Never more than `space().workspace(n)`.
    fn work_len(&self, n: usize) -> usize {
        self.space().workspace(n)
    }

    /// Whether an MP algorithm accepts `m != n`. Other kinds ignore this.
    fn general_shape(&self) -> bool {
        false
    }

    fn run(
        &self,
        s: &Session<R>,
        f: InputView<'_, R::Elem>,
        g: InputView<'_, R::Elem>,
        out: &mut [R::Elem],
        work: &mut [R::Elem],
    );
}

pub type Profile<R> = Arc<dyn Product<R>>;

/// Panics unless the operand and output sizes fit `kind`.
pub fn check_shape(kind: Kind, general: bool, f: usize, g: usize, out: usize) {
    let n = g;
    match kind {
        Kind::Mp => {
            assert!(n >= 1, "MP needs a non-empty g");
            assert_eq!(f, n + out - 1, "MP expects |f| = |g| + |out| - 1");
            if !general {
                assert_eq!(out, n, "balanced MP expects |out| = |g|");
            }
        }
        _ => {
            assert!(n >= 1, "{kind} needs non-empty operands");
            assert_eq!(f, n, "{kind} expects operands of equal size");
            assert_eq!(out, kind.out_len(n), "{kind} output length mismatch");
        }
    }
}

/// Runs an algorithm with exactly `work_len(n)` metered work registers.
pub fn run_out_of_place<R: Ring>(
    p: &dyn Product<R>,
    s: &Session<R>,
    f: InputView<'_, R::Elem>,
    g: InputView<'_, R::Elem>,
    out: &mut [R::Elem],
) {
    let mut work = s.work(p.work_len(g.len()));
    p.run(s, f, g, out, &mut work);
}

type Entry<R> = fn(
    &Session<R>,
    InputView<'_, <R as Ring>::Elem>,
    InputView<'_, <R as Ring>::Elem>,
    &mut [<R as Ring>::Elem],
    &mut [<R as Ring>::Elem],
);

/// A profile built from plain functions.
pub struct FnProduct<R: Ring> {
    pub kind: Kind,
    pub name: &'static str,
    pub space: SpaceConstant,
    pub work_len: fn(usize) -> usize,
    pub general: bool,
    pub entry: Entry<R>,
}

impl<R: Ring> Product<R> for FnProduct<R> {
    fn kind(&self) -> Kind {
        self.kind
    }

    fn name(&self) -> String {
        self.name.to_string()
    }

    fn space(&self) -> SpaceConstant {
        self.space
    }

    fn work_len(&self, n: usize) -> usize {
        (self.work_len)(n)
    }

    fn general_shape(&self) -> bool {
        self.general
    }

    fn run(
        &self,
        s: &Session<R>,
        f: InputView<'_, R::Elem>,
        g: InputView<'_, R::Elem>,
        out: &mut [R::Elem],
        work: &mut [R::Elem],
    ) {
        check_shape(self.kind, self.general, f.len(), g.len(), out.len());
        (self.entry)(s, f, g, out, work)
    }
}
