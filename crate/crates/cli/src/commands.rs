use std::collections::BTreeSet;
use std::fmt::Write as _;

use polymul::analysis::{mp_constants_exact, predict_fp_ratio, predict_mp_bound, predict_sp_ratio, Growth, MpBound};
use polymul::{Profile, SpaceConstant, Zm64};
use rayon::prelude::*;

use crate::algos::{bases, profile, reference};
use crate::config::{Algo, Base, Command, RunConfig};
use crate::instance::{execute, expected, generate, instance_seed, Instance};

/// Text to emit and the process exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub status: i32,
}

pub const BENCH_HEADER: [&str; 12] = [
    "command",
    "algo",
    "base",
    "n",
    "modulus",
    "seed",
    "muls",
    "adds",
    "total",
    "base_total",
    "ratio",
    "peak_work",
];

pub const SPACE_HEADER: [&str; 4] = ["algo", "base", "n", "peak_work"];

/// Thread pool bounded by `POLYMUL_THREADS` when set to a positive integer.
pub fn pool() -> rayon::ThreadPool {
    let threads = std::env::var("POLYMUL_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

pub fn ring(cfg: &RunConfig) -> Zm64 {
    Zm64::new(cfg.modulus).expect("modulus validated at parse time")
}

pub fn run(cfg: &RunConfig) -> Report {
    pool().install(|| match cfg.command {
        Command::Verify => {
            let profiles: Vec<_> = cfg
                .algos
                .iter()
                .map(|&a| (a.name().to_string(), profile(a, cfg.base)))
                .collect();
            verify_profiles(cfg, &profiles)
        }
        Command::Bench => bench(cfg),
        Command::Space => space(cfg),
        Command::Predict => predict(cfg),
    })
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub trial: usize,
    pub instance_seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyCell {
    pub label: String,
    pub n: usize,
    pub trials: usize,
    pub failures: usize,
    pub first: Option<Mismatch>,
}

fn check_instance(p: &Profile<Zm64>, ring: &Zm64, inst: &Instance) -> Option<String> {
    let want = expected(ring, inst);
    match execute(p.as_ref(), ring, inst) {
        Err(msg) => Some(format!("panicked: {msg}")),
        Ok(o) if o.violation.is_some() => Some(format!(
            "needed {} work registers, declared {}",
            o.violation.unwrap_or_default(),
            p.space().workspace(inst.n())
        )),
        Ok(o) => {
            let i = o.out.iter().zip(&want).position(|(a, b)| a != b)?;
            Some(format!(
                "m = {}, coefficient {i}: got {} expected {}",
                inst.m(),
                o.out[i],
                want[i]
            ))
        }
    }
}

pub fn verify_cells(cfg: &RunConfig, profiles: &[(String, Profile<Zm64>)]) -> Vec<VerifyCell> {
    let ring = ring(cfg);
    let cells: Vec<(usize, usize)> = (0..profiles.len())
        .flat_map(|p| cfg.sizes().into_iter().map(move |n| (p, n)))
        .collect();
    cells
        .par_iter()
        .map(|&(pi, n)| {
            let (label, p) = &profiles[pi];
            let mut cell = VerifyCell {
                label: label.clone(),
                n,
                trials: cfg.trials,
                failures: 0,
                first: None,
            };
            for trial in 0..cfg.trials {
                let seed = instance_seed(cfg.seed, n, trial);
                let inst = generate(p.kind(), p.general_shape(), &ring, n, seed);
                if let Some(detail) = check_instance(p, &ring, &inst) {
                    cell.failures += 1;
                    cell.first.get_or_insert(Mismatch {
                        trial,
                        instance_seed: seed,
                        detail,
                    });
                }
            }
            cell
        })
        .collect()
}

/// Verifies arbitrary labelled profiles with the sizes, trials, seed and
/// modulus of `cfg`.
pub fn verify_profiles(cfg: &RunConfig, profiles: &[(String, Profile<Zm64>)]) -> Report {
    let cells = verify_cells(cfg, profiles);
    let mut text = String::new();
    let mut failed = 0;
    for c in &cells {
        match &c.first {
            None => writeln!(text, "verify {} {} n={} trials={} ok", c.label, cfg.base, c.n, c.trials),
            Some(m) => {
                failed += 1;
                writeln!(
                    text,
                    "verify {} {} n={} trials={} FAILED {} (first: trial {} instance seed {:#018x}: {}; rerun: polymul verify --algo {} --base {} --min-n {} --max-n {} --modulus {} --seed {} --trials {})",
                    c.label,
                    cfg.base,
                    c.n,
                    c.trials,
                    c.failures,
                    m.trial,
                    m.instance_seed,
                    m.detail,
                    c.label,
                    cfg.base,
                    c.n,
                    c.n,
                    cfg.modulus,
                    cfg.seed,
                    m.trial + 1
                )
            }
        }
        .expect("write to string");
    }
    writeln!(text, "verify summary: {} cells, {} failed", cells.len(), failed).expect("write to string");
    Report {
        text,
        status: i32::from(failed > 0),
    }
}

// ---------------------------------------------------------------------------
// bench

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub algo: Algo,
    pub n: usize,
    pub muls: u64,
    pub adds: u64,
    pub base_total: u64,
    pub peak: usize,
}

impl BenchRow {
    pub fn total(&self) -> u64 {
        self.muls + self.adds
    }

    /// `total / base_total`; 1 when both are zero (SPhi at `n = 1`).
    pub fn ratio(&self) -> f64 {
        match (self.total(), self.base_total) {
            (0, 0) => 1.0,
            (t, b) => t as f64 / b as f64,
        }
    }
}

fn measure(p: &Profile<Zm64>, ring: &Zm64, n: usize, seed: u64) -> (u64, u64, usize) {
    let inst = generate(p.kind(), false, ring, n, seed);
    let o = execute(p.as_ref(), ring, &inst).unwrap_or_else(|e| panic!("{} failed at n = {n}: {e}", p.name()));
    (o.ops.muls, o.ops.adds, o.peak)
}

pub fn bench_rows(cfg: &RunConfig) -> Vec<BenchRow> {
    let ring = ring(cfg);
    let cells: Vec<(Algo, usize)> = cfg
        .algos
        .iter()
        .flat_map(|&a| cfg.sizes().into_iter().map(move |n| (a, n)))
        .collect();
    cells
        .par_iter()
        .map(|&(algo, n)| {
            let (p, r) = (profile(algo, cfg.base), reference(algo, cfg.base));
            let mut row = BenchRow {
                algo,
                n,
                muls: 0,
                adds: 0,
                base_total: 0,
                peak: 0,
            };
            for t in 0..cfg.trials {
                let seed = instance_seed(cfg.seed, n, t);
                let (muls, adds, peak) = measure(&p, &ring, n, seed);
                let (bm, ba, _) = measure(&r, &ring, n, seed);
                row.muls += muls;
                row.adds += adds;
                row.base_total += bm + ba;
                row.peak = row.peak.max(peak);
            }
            row
        })
        .collect()
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("csv to memory");
    for r in rows {
        w.write_record(&r).expect("csv to memory");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

fn bench(cfg: &RunConfig) -> Report {
    let rows = bench_rows(cfg).into_iter().map(|r| {
        vec![
            Command::Bench.name().to_string(),
            r.algo.to_string(),
            cfg.base.to_string(),
            r.n.to_string(),
            cfg.modulus.to_string(),
            cfg.seed.to_string(),
            r.muls.to_string(),
            r.adds.to_string(),
            r.total().to_string(),
            r.base_total.to_string(),
            format!("{:.6}", r.ratio()),
            r.peak.to_string(),
        ]
    });
    Report {
        text: csv_text(&BENCH_HEADER, rows),
        status: 0,
    }
}

// ---------------------------------------------------------------------------
// space

fn space(cfg: &RunConfig) -> Report {
    let mut bench_cfg = cfg.clone();
    bench_cfg.trials = 1;
    let rows = bench_rows(&bench_cfg);
    let mut status = 0;
    let mut notes = String::new();
    for &a in cfg.algos.iter().filter(|a| a.in_place()) {
        let peaks: BTreeSet<usize> = rows.iter().filter(|r| r.algo == a).map(|r| r.peak).collect();
        if peaks.len() > 1 {
            status = 1;
            writeln!(notes, "space: {a} peak is not constant over the size range: {peaks:?}").expect("write to string");
        }
    }
    let rows = rows.iter().map(|r| {
        vec![
            r.algo.to_string(),
            cfg.base.to_string(),
            r.n.to_string(),
            r.peak.to_string(),
        ]
    });
    if !notes.is_empty() {
        eprint!("{notes}");
    }
    Report {
        text: csv_text(&SPACE_HEADER, rows),
        status,
    }
}

// ---------------------------------------------------------------------------
// predict

fn family(a: Algo) -> Algo {
    match a {
        Algo::Fp | Algo::Fplo | Algo::Fphi | Algo::Ifp => Algo::Ifp,
        Algo::Splo | Algo::Isplo => Algo::Isplo,
        Algo::Sphi | Algo::Isphi => Algo::Isphi,
        Algo::Mp | Algo::Imp => Algo::Imp,
    }
}

fn growth(base: Base) -> (Growth, Option<u32>) {
    match base {
        Base::Naive => (Growth::Power(2.0), Some(2)),
        Base::Karatsuba => (Growth::Power(3f64.log2()), None),
    }
}

fn ratio_lines(text: &mut String, cfg: &RunConfig, algo: Algo, c: SpaceConstant, bound: f64, rows: &[BenchRow]) {
    writeln!(text, "# {algo} over {} base, space constant c = {c}", cfg.base).expect("write to string");
    for r in rows.iter().filter(|r| r.algo == algo) {
        let ratio = r.ratio();
        let status = if ratio <= bound { "ok" } else { "above" };
        writeln!(
            text,
            "{algo} {} n={} ratio {ratio:.6} bound {bound} {status}",
            cfg.base, r.n
        )
        .expect("write to string");
    }
}

fn predict(cfg: &RunConfig) -> Report {
    let algos: Vec<Algo> = cfg
        .algos
        .iter()
        .map(|&a| family(a))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut bench_cfg = cfg.clone();
    bench_cfg.algos = algos.clone();
    let rows = bench_rows(&bench_cfg);
    let b = bases(cfg.base);
    let mut text = String::new();
    for algo in algos {
        match algo {
            Algo::Ifp => {
                let c = b.fp.space();
                ratio_lines(
                    &mut text,
                    cfg,
                    algo,
                    c,
                    polymul::analysis::to_f64(&predict_fp_ratio(c)),
                    &rows,
                );
            }
            Algo::Isplo | Algo::Isphi => {
                let c = b.sp_lo.space().max(b.sp_hi.space());
                ratio_lines(
                    &mut text,
                    cfg,
                    algo,
                    c,
                    polymul::analysis::to_f64(&predict_sp_ratio(c)),
                    &rows,
                );
            }
            _ => predict_mp(&mut text, cfg, b.mp.space(), &rows),
        }
    }
    Report { text, status: 0 }
}

fn predict_mp(text: &mut String, cfg: &RunConfig, c: SpaceConstant, rows: &[BenchRow]) {
    let w = |text: &mut String, s: String| writeln!(text, "{s}").expect("write to string");
    let (g, exact) = growth(cfg.base);
    let Growth::Power(gamma) = g else { unreachable!() };
    w(
        text,
        format!(
            "# imp over {} base, space constant c = {c}, gamma = {gamma:.10}",
            cfg.base
        ),
    );
    if let Some(e) = exact {
        let (mu, nu) = mp_constants_exact(c, e).expect("integer exponent above 1");
        w(
            text,
            format!("# mu = {mu}, nu = {nu}, (mu+nu) = {}", mu.clone() + nu.clone()),
        );
    }
    let ql = predict_mp_bound(c, 2.0, 1.0, Growth::QuasiLinear, 1.0).expect("quasi-linear prediction");
    if let MpBound::QuasiLinear { log_base, constant, .. } = ql {
        w(
            text,
            format!(
                "# quasi-linear regime: M(n) (log_b n + {constant}) with b = (c+2)/(c+1) = {log_base:.10}; the reciprocal base (c+1)/(c+2) would make the log term negative"
            ),
        );
    }
    for r in rows.iter().filter(|r| r.algo == Algo::Imp) {
        let nf = r.n as f64;
        let lambda = r.base_total as f64 / nf.powf(gamma);
        let bound = predict_mp_bound(c, nf, r.base_total as f64, g, lambda).expect("gamma above 1");
        let MpBound::Power { mu, nu, value, .. } = bound else {
            unreachable!()
        };
        let status = if (r.total() as f64) <= value { "ok" } else { "above" };
        w(
            text,
            format!(
                "imp {} n={} total {} lambda {lambda:.6} (mu+nu)lambda {:.6} bound {value:.1} ratio {:.6} {status}",
                cfg.base,
                r.n,
                r.total(),
                (mu + nu) * lambda,
                r.total() as f64 / value
            ),
        );
    }
}
