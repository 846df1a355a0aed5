//! Recurrence unrolling and closed-form cost predictions for the in-place
//! algorithms.
//!
//! Rational quantities are exact. Predictions involving an irrational growth
//! exponent are evaluated in `f64`; they are compared with a relative
//! tolerance of `1e-9`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::profile::{Kind, SpaceConstant};

pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_space(c: SpaceConstant) -> BigRational {
    let r: Ratio<u64> = c.ratio();
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `T(n) <= f(n) + T(floor(alpha n + beta))`, iterated while `n >= stop`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    alpha: BigRational,
    beta: BigRational,
    stop: u64,
}

/// One unrolled level: its size and cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub size: u64,
    pub cost: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unrolled {
    pub levels: Vec<Level>,
    /// Size at which the iteration stopped; its terminal cost is included in
    /// `total` but not in `levels`.
    pub terminal_size: u64,
    pub terminal_cost: BigRational,
    pub total: BigRational,
}

impl Recurrence {
    pub fn new(alpha: BigRational, beta: BigRational, stop: u64) -> Result<Self, Error> {
        if !alpha.is_positive() || alpha >= BigRational::one() {
            return Err(Error::Alpha(alpha.to_string()));
        }
        Ok(Recurrence { alpha, beta, stop })
    }

    /// The size recurrence followed exactly by the in-place algorithm for
    /// `kind` with integer space constant `c`: `n - floor((n+1)/(c+3))` for
    /// FP and `n - floor(n/(c+2))` for SP and MP.
    pub fn in_place(kind: Kind, c: usize) -> Self {
        let c = c as i64;
        let (alpha, beta) = match kind {
            Kind::Fp | Kind::FpPlusLo | Kind::FpPlusHi => (rational(c + 2, c + 3), rational(c + 1, c + 3)),
            Kind::SpLo | Kind::SpHi | Kind::Mp => (rational(c + 1, c + 2), rational(c + 1, c + 2)),
        };
        Recurrence {
            alpha,
            beta,
            stop: c as u64 + 2,
        }
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn stop(&self) -> u64 {
        self.stop
    }

    pub fn next(&self, n: u64) -> u64 {
        let x = (&self.alpha * integer(n) + &self.beta).floor();
        x.to_integer().to_u64().unwrap_or(0)
    }

    /// Iterates from `n` until the size drops below the stop threshold or
    /// stops decreasing, summing `cost` over the levels and `terminal` at
    /// the final size.
    pub fn unroll(
        &self,
        n: u64,
        mut cost: impl FnMut(u64) -> BigRational,
        mut terminal: impl FnMut(u64) -> BigRational,
    ) -> Unrolled {
        let mut levels = Vec::new();
        let mut total = BigRational::zero();
        let mut size = n;
        while size >= self.stop {
            let next = self.next(size);
            if next >= size {
                break;
            }
            let c = cost(size);
            total += &c;
            levels.push(Level { size, cost: c });
            size = next;
        }
        let terminal_cost = terminal(size);
        total += &terminal_cost;
        Unrolled {
            levels,
            terminal_size: size,
            terminal_cost,
            total,
        }
    }

    /// `n_i = alpha^i n + beta (1 - alpha^(i+1)) / (1 - alpha)`, an upper
    /// bound on the floored iterate.
    pub fn closed_form(&self, n: u64, i: usize) -> BigRational {
        let a = &self.alpha;
        let ai = pow(a, i);
        let ai1 = &ai * a;
        ai * integer(n) + &self.beta * (BigRational::one() - ai1) / (BigRational::one() - a)
    }

    /// `1/(1 - alpha) + beta`: the floored iterates never fall further than
    /// this below [`Recurrence::closed_form`].
    pub fn floor_slack(&self) -> BigRational {
        BigRational::one() / (BigRational::one() - &self.alpha) + &self.beta
    }
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// Asymptotic ratio bound `2c + 7` of the in-place full product.
pub fn predict_fp_ratio(c: SpaceConstant) -> BigRational {
    from_space(c) * integer(2) + integer(7)
}

/// Asymptotic ratio bound `2c + 5` of the in-place short product.
pub fn predict_sp_ratio(c: SpaceConstant) -> BigRational {
    from_space(c) * integer(2) + integer(5)
}

/// How the base middle product's cost grows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Growth {
    /// `M(n) <= lambda n^gamma` with `gamma > 1`.
    Power(f64),
    /// `M(n) = n^(1 + o(1))`.
    QuasiLinear,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MpBound {
    /// `T(n) <= (mu + nu) lambda n^gamma + O(n^(gamma-1))` with `mu`, `nu`
    /// normalised to `lambda = 1`.
    Power {
        mu: f64,
        nu: f64,
        lambda: f64,
        gamma: f64,
        value: f64,
    },
    /// `T(n) <= M(n) (log_{1/alpha} n + 1 + (c+1)(c+2)) + o(M(n))`,
    /// `alpha = (c+1)/(c+2)`.
    QuasiLinear {
        log_base: f64,
        log_term: f64,
        constant: f64,
        value: f64,
    },
}

impl MpBound {
    pub fn value(&self) -> f64 {
        match self {
            MpBound::Power { value, .. } | MpBound::QuasiLinear { value, .. } => *value,
        }
    }
}

impl fmt::Display for MpBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MpBound::Power {
                mu,
                nu,
                lambda,
                gamma,
                value,
            } => write!(
                f,
                "mu {mu:.10} nu {nu:.10} (mu+nu) {:.10} lambda {lambda} gamma {gamma:.10} bound {value:.3}",
                mu + nu
            ),
            MpBound::QuasiLinear {
                log_base,
                log_term,
                constant,
                value,
            } => write!(
                f,
                "log base {log_base:.10} log term {log_term:.6} constant {constant} bound {value:.3}"
            ),
        }
    }
}

/// Exact `mu = 1/((c+2)^(gamma-1) - (c+1)^(gamma-1))` and
/// `nu = 1/((c+2)^gamma - (c+1)^gamma)` for an integer exponent.
pub fn mp_constants_exact(c: SpaceConstant, gamma: u32) -> Result<(BigRational, BigRational), Error> {
    if gamma <= 1 {
        return Err(Error::Gamma(gamma as f64));
    }
    let c = from_space(c);
    let (hi, lo) = (&c + integer(2), &c + integer(1));
    let g = gamma as usize;
    let mu = BigRational::one() / (pow(&hi, g - 1) - pow(&lo, g - 1));
    let nu = BigRational::one() / (pow(&hi, g) - pow(&lo, g));
    Ok((mu, nu))
}

/// Predicted cost of the in-place middle product at `m = n`; `m_of_n` is
/// the base cost `M(n)`, used in the quasi-linear case.
pub fn predict_mp_bound(c: SpaceConstant, n: f64, m_of_n: f64, growth: Growth, lambda: f64) -> Result<MpBound, Error> {
    let c = c.as_f64();
    match growth {
        Growth::Power(gamma) => {
            if gamma.is_nan() || gamma <= 1.0 {
                return Err(Error::Gamma(gamma));
            }
            let mu = 1.0 / ((c + 2.0).powf(gamma - 1.0) - (c + 1.0).powf(gamma - 1.0));
            let nu = 1.0 / ((c + 2.0).powf(gamma) - (c + 1.0).powf(gamma));
            Ok(MpBound::Power {
                mu,
                nu,
                lambda,
                gamma,
                value: (mu + nu) * lambda * n.powf(gamma),
            })
        }
        Growth::QuasiLinear => {
            let log_base = (c + 2.0) / (c + 1.0);
            let log_term = n.ln() / log_base.ln();
            let constant = 1.0 + (c + 1.0) * (c + 2.0);
            Ok(MpBound::QuasiLinear {
                log_base,
                log_term,
                constant,
                value: m_of_n * (log_term + constant),
            })
        }
    }
}

/// One side-by-side comparison from [`check_sum_lemmas`].
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumLemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl SumLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for SumLemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<28} {} lhs {:.6} rhs {:.6}",
                c.name,
                if c.holds { "ok  " } else { "FAIL" },
                c.lhs,
                c.rhs
            )?;
        }
        Ok(())
    }
}

/// Checks the three summation bounds over the first `k` closed-form sizes
/// `n_i`:
///
/// * `sum n_i <= (n + beta K)/(1 - alpha)`, for the closed-form and the
///   floored sizes;
/// * `sum 1/(n_i - beta/(1-alpha)) = alpha (alpha^-K - 1)/((1-alpha) n - alpha beta)`,
///   exactly;
/// * `sum M(lambda n_i + mu) <= lambda M(n)/(1-alpha) + lambda beta K M(n)/(n (1-alpha)) + mu K M(n)/n`
///   for a cost model with `M(x)/x` non-decreasing and `lambda n_i + mu <= n`.
pub fn check_sum_lemmas(
    rec: &Recurrence,
    n: u64,
    k: usize,
    model: impl Fn(f64) -> f64,
    lambda: f64,
    mu: f64,
) -> SumLemmaReport {
    let one = BigRational::one();
    let (alpha, beta) = (rec.alpha(), rec.beta());
    let kk = integer(k as u64);
    let sizes: Vec<BigRational> = (0..k).map(|i| rec.closed_form(n, i)).collect();
    let mut checks = Vec::new();

    let bound = (integer(n) + beta * &kk) / (&one - alpha);
    let sum: BigRational = sizes.iter().fold(BigRational::zero(), |a, x| a + x);
    checks.push(LemmaCheck {
        name: "sum of sizes",
        lhs: to_f64(&sum),
        rhs: to_f64(&bound),
        holds: sum <= bound,
    });

    let mut floored = BigRational::zero();
    let mut size = n;
    for _ in 0..k {
        floored += integer(size);
        size = rec.next(size);
    }
    checks.push(LemmaCheck {
        name: "sum of floored sizes",
        lhs: to_f64(&floored),
        rhs: to_f64(&bound),
        holds: floored <= bound,
    });

    let shift = beta / (&one - alpha);
    let inv: BigRational = sizes
        .iter()
        .fold(BigRational::zero(), |a, x| a + one.clone() / (x - &shift));
    let closed = alpha * (pow(&(&one / alpha), k) - &one) / ((&one - alpha) * integer(n) - alpha * beta);
    checks.push(LemmaCheck {
        name: "sum of inverse offsets",
        lhs: to_f64(&inv),
        rhs: to_f64(&closed),
        holds: inv == closed,
    });

    let (a, b, nf, kf) = (to_f64(alpha), to_f64(beta), n as f64, k as f64);
    let args: Vec<f64> = sizes.iter().map(|x| lambda * to_f64(x) + mu).collect();
    let in_range = args.iter().all(|&x| x <= nf * (1.0 + FLOAT_TOLERANCE));
    let lhs: f64 = args.iter().map(|&x| model(x)).sum();
    let mn = model(nf);
    let rhs = lambda * mn / (1.0 - a) + lambda * b * kf * mn / (nf * (1.0 - a)) + mu * kf * mn / nf;
    checks.push(LemmaCheck {
        name: "sum of costs",
        lhs,
        rhs,
        holds: in_range && lhs <= rhs * (1.0 + FLOAT_TOLERANCE),
    });

    SumLemmaReport { checks }
}

/// Largest `K` with `alpha^-K <= n`, i.e. `floor(log_{1/alpha} n)`.
pub fn log_depth(alpha: &BigRational, n: u64) -> usize {
    let inv = BigRational::one() / alpha;
    let (mut k, mut p) = (0, BigRational::one());
    loop {
        p *= &inv;
        if p > integer(n) {
            return k;
        }
        k += 1;
    }
}
