//! Acceptance criteria, one line each. Run with
//! `cargo test -p polymul-cli --test acceptance`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Proc;
use std::sync::Arc;
use std::time::Instant;

use clap::Parser;
use polymul::analysis::{check_sum_lemmas, integer, log_depth, mp_constants_exact, to_f64, Recurrence};
use polymul::baseline::*;
use polymul::inplace::{ifp_hi, ifp_lo, imp, isp_hi, isp_lo, InPlaceFp, InPlaceMp, InPlaceSp, RangeMutation};
use polymul::tisp::*;
use polymul::*;
use polymul_cli::algos::mutated;
use polymul_cli::{verify_profiles, Cli, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type E = <Zm64 as Ring>::Elem;
type Outcome = Result<String, String>;

const MODULI: [u64; 4] = [2, 7, 97, 998_244_353];

fn view(v: &[E]) -> InputView<'_, E> {
    InputView::new(v, Zm64::new(2).unwrap().zero())
}

fn draw(r: &Zm64, rng: &mut ChaCha8Rng, len: usize) -> Vec<E> {
    (0..len).map(|_| r.sample(rng)).collect()
}

fn kara() -> Profile<Zm64> {
    Arc::new(karatsuba_profile())
}

fn naive() -> Profile<Zm64> {
    Arc::new(naive_fp_profile())
}

fn hash(v: &[E]) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------------------
// 1. oracle equivalence

fn profiles() -> Vec<(&'static str, Profile<Zm64>)> {
    let (sp_lo, sp_hi) = derive_osp(kara());
    let (lo_add, hi_add) = derive_fp_plus(kara());
    let mp: Profile<Zm64> = Arc::new(naive_mp_profile());
    vec![
        ("naive fp", naive()),
        ("naive fp+lo", Arc::new(naive_fp_plus_lo_profile())),
        ("naive fp+hi", Arc::new(naive_fp_plus_hi_profile())),
        ("naive splo", Arc::new(naive_sp_lo_profile())),
        ("naive sphi", Arc::new(naive_sp_hi_profile())),
        ("naive mp", mp.clone()),
        ("karatsuba", kara()),
        ("buffered splo", sp_lo.clone()),
        ("buffered sphi", sp_hi.clone()),
        ("buffered mp", derive_omp(kara())),
        ("buffered fp+lo", lo_add.clone()),
        ("buffered fp+hi", hi_add.clone()),
        ("fp from fp+lo", fp_from_fp_plus(lo_add.clone())),
        ("sphi reversed", sphi_via_splo(sp_lo.clone())),
        ("fp+hi reflected", fphi_via_fplo(lo_add.clone())),
        ("fp+lo reflected", fplo_via_fphi(hi_add.clone())),
        ("fp+lo from sp", fpplus_via_sp_profile(sp_lo.clone(), sp_hi.clone())),
        ("splo from halves", sp_via_fpplus_profile(kara(), lo_add, hi_add)),
        ("splo via mp", via_mp(Kind::SpLo, mp.clone())),
        ("sphi via mp", via_mp(Kind::SpHi, mp.clone())),
        ("fp via mp", via_mp(Kind::Fp, mp)),
        ("ifp_lo", ifp_lo(kara())),
        ("isp_hi", isp_hi(sp_lo.clone(), sp_hi.clone())),
        ("isp_lo profile", Arc::new(InPlaceSp::new(sp_lo, sp_hi))),
        ("imp profile", Arc::new(InPlaceMp::new(derive_omp(kara())))),
    ]
}

/// One random instance of a direct (non-profile) operation: returns the
/// computed and the expected output.
type Direct = fn(&Zm64, usize, usize, &mut ChaCha8Rng) -> (Vec<E>, Vec<E>);

fn directs() -> Vec<(&'static str, Direct)> {
    vec![
        ("ifp_hi", |r, n, _, rng| {
            let (f, g, out0) = (draw(r, rng, n), draw(r, rng, n), draw(r, rng, 2 * n - 1));
            let mut out = out0.clone();
            ifp_hi(&InPlaceFp::new(kara()), &Session::new(*r), view(&f), view(&g), &mut out);
            (out, toeplitz::fp_plus_lo(r, &f, &g, &out0[..n - 1]))
        }),
        ("isp_lo", |r, n, _, rng| {
            let (f, g) = (draw(r, rng, n), draw(r, rng, n));
            let (lo, hi) = derive_osp(kara());
            let mut out = draw(r, rng, n);
            isp_lo(&InPlaceSp::new(lo, hi), &Session::new(*r), view(&f), view(&g), &mut out);
            (out, toeplitz::sp_lo(r, &f, &g))
        }),
        ("imp", |r, n, m, rng| {
            let (f, g) = (draw(r, rng, n + m - 1), draw(r, rng, n));
            let mut out = draw(r, rng, m);
            imp(
                &InPlaceMp::new(derive_omp(kara())),
                &Session::new(*r),
                view(&f),
                view(&g),
                &mut out,
            );
            (out, toeplitz::mp(r, &f, &g))
        }),
        ("fp_unbal_additive", |r, n, m, rng| {
            let big = n.max(m);
            let (small, large) = (draw(r, rng, n), draw(r, rng, big));
            let h = draw(r, rng, n + big - 1);
            let fp = kara();
            let mut out = h.clone();
            let mut work = vec![r.zero(); fp_unbal_additive_work_len(fp.as_ref(), n)];
            fp_unbal_additive(
                &Session::new(*r),
                fp.as_ref(),
                view(&small),
                view(&large),
                &mut out,
                &mut work,
            );
            let prod = toeplitz::fp(r, &large, &small);
            (out, h.iter().zip(prod).map(|(&a, b)| r.add(a, b)).collect())
        }),
        ("unbal_fp_via_fphi", |r, n, m, rng| {
            let big = n.max(m) + 1;
            let (f, g) = (draw(r, rng, big), draw(r, rng, n));
            let fp = kara();
            let (_, hi) = derive_fp_plus(fp.clone());
            let mut out = draw(r, rng, big + n - 1);
            let mut work = vec![r.zero(); hi.work_len(n)];
            unbal_fp_via_fphi(
                &Session::new(*r),
                fp.as_ref(),
                hi.as_ref(),
                view(&f),
                view(&g),
                &mut out,
                &mut work,
            );
            (out, toeplitz::fp(r, &f, &g))
        }),
    ]
}

fn log_uniform(rng: &mut ChaCha8Rng, max: usize) -> usize {
    let x: f64 = rng.gen_range(0.0..((max + 1) as f64).ln());
    (x.exp() as usize).clamp(1, max)
}

fn oracle(r: &Zm64, kind: Kind, f: &[E], g: &[E], out0: &[E]) -> Vec<E> {
    let n = g.len();
    match kind {
        Kind::Fp => toeplitz::fp(r, f, g),
        Kind::FpPlusLo => toeplitz::fp_plus_lo(r, f, g, &out0[..n - 1]),
        Kind::FpPlusHi => toeplitz::fp_plus_hi(r, f, g, &out0[n..]),
        Kind::SpLo => toeplitz::sp_lo(r, f, g),
        Kind::SpHi => toeplitz::sp_hi(r, f, g),
        Kind::Mp => toeplitz::mp(r, f, g),
    }
}

fn oracle_equivalence() -> Outcome {
    const INSTANCES: usize = 1000;
    let profiles = profiles();
    let directs = directs();
    let count = profiles.len() + directs.len();
    let failures: Vec<String> = (0..count * INSTANCES)
        .into_par_iter()
        .filter_map(|job| {
            let (op, i) = (job / INSTANCES, job % INSTANCES);
            let r = Zm64::new(MODULI[i % MODULI.len()]).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(job as u64);
            let (n, m) = (log_uniform(&mut rng, 512), log_uniform(&mut rng, 512));
            let (name, got, want) = if op < profiles.len() {
                let (name, p) = &profiles[op];
                let m = if p.kind() == Kind::Mp && p.general_shape() {
                    m
                } else {
                    n
                };
                let flen = if p.kind() == Kind::Mp { n + m - 1 } else { n };
                let olen = if p.kind() == Kind::Mp { m } else { p.kind().out_len(n) };
                let (f, g, out0) = (
                    draw(&r, &mut rng, flen),
                    draw(&r, &mut rng, n),
                    draw(&r, &mut rng, olen),
                );
                let mut out = out0.clone();
                run_out_of_place(p.as_ref(), &Session::new(r), view(&f), view(&g), &mut out);
                (*name, out, oracle(&r, p.kind(), &f, &g, &out0))
            } else {
                let (name, d) = directs[op - profiles.len()];
                let (got, want) = d(&r, n, m, &mut rng);
                (name, got, want)
            };
            (got != want).then(|| format!("{name} n={n} m={m} modulus={}", r.modulus()))
        })
        .collect();
    ensure(
        failures.is_empty(),
        format!(
            "{count} operations x {INSTANCES} instances, {} mismatches{}",
            failures.len(),
            failures.first().map(|f| format!(", first {f}")).unwrap_or_default()
        ),
    )
}

// ---------------------------------------------------------------------------
// 2. identities

fn algebraic_identities() -> Outcome {
    let rev = |v: &[E]| -> Vec<E> { v.iter().rev().copied().collect() };
    let mut checked = 0;
    for (i, q) in MODULI.iter().cycle().take(512).enumerate() {
        let r = Zm64::new(*q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        let n = rng.gen_range(1..=128);
        let (f, g, h) = (draw(&r, &mut rng, n), draw(&r, &mut rng, n), draw(&r, &mut rng, n - 1));
        let s = Session::new(r);
        let mut full = vec![r.zero(); 2 * n - 1];
        naive_fp(&s, view(&f), view(&g), &mut full);
        let mut lo = vec![r.zero(); n];
        naive_sp_lo(&s, view(&f), view(&g), &mut lo);
        let mut hi = vec![r.zero(); n - 1];
        naive_sp_hi(&s, view(&f), view(&g), &mut hi);
        if full != [lo.clone(), hi.clone()].concat() {
            return Err(format!("fg != SPlo + X^n SPhi at n={n}, modulus {q}"));
        }

        let mut rlo = vec![r.zero(); n - 1];
        naive_sp_lo(&s, view(&rev(&f[1..])), view(&rev(&g[1..])), &mut rlo);
        if hi != rev(&rlo) {
            return Err(format!("SPhi != rev(SPlo(rev, rev)) at n={n}, modulus {q}"));
        }

        let mut high = vec![r.zero(); 2 * n - 1];
        high[n..].copy_from_slice(&h);
        naive_fp_additive(&s, view(&f), view(&g), &mut high);
        let mut low = vec![r.zero(); 2 * n - 1];
        low[..n - 1].copy_from_slice(&rev(&h));
        naive_fp_additive(&s, view(&rev(&f)), view(&rev(&g)), &mut low);
        if high != rev(&low) {
            return Err(format!("FPhi != rev(FPlo(rev, rev, rev)) at n={n}, modulus {q}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} instances, three identities each, n <= 128"))
}

// ---------------------------------------------------------------------------
// 3. in-place certificate

fn certified_peaks() -> Outcome {
    let sizes = [1 << 4, 1 << 6, 1 << 8, 1 << 10, 1 << 12, 1 << 14];
    let r = Zm64::new(998_244_353).unwrap();
    let ifp = InPlaceFp::new(kara());
    let (lo, hi) = derive_osp(kara());
    let isp = InPlaceSp::new(lo.clone(), hi.clone());
    let isphi = isp_hi(lo, hi);
    let impl_ = InPlaceMp::new(derive_omp(kara()));
    let names = ["ifp_hi", "isp_lo", "isp_hi", "imp"];
    let jobs: Vec<(usize, usize)> = (0..names.len())
        .flat_map(|a| sizes.iter().map(move |&n| (a, n)))
        .collect();
    let peaks: Vec<(usize, usize, usize, bool)> = jobs
        .par_iter()
        .map(|&(a, n)| {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            let f = draw(&r, &mut rng, 2 * n - 1);
            let g = draw(&r, &mut rng, n);
            let before = (hash(&f), hash(&g));
            let s = Session::new(r);
            match a {
                0 => ifp_hi(&ifp, &s, view(&f[..n]), view(&g), &mut draw(&r, &mut rng, 2 * n - 1)),
                1 => isp_lo(&isp, &s, view(&f[..n]), view(&g), &mut vec![r.zero(); n]),
                2 => run_out_of_place(isphi.as_ref(), &s, view(&f[..n]), view(&g), &mut vec![r.zero(); n - 1]),
                _ => imp(&impl_, &s, view(&f), view(&g), &mut vec![r.zero(); n]),
            }
            (a, n, s.meter().peak(), before == (hash(&f), hash(&g)))
        })
        .collect();
    let mut detail = Vec::new();
    let mut ok = true;
    for (a, name) in names.iter().enumerate() {
        let mine: Vec<_> = peaks.iter().filter(|p| p.0 == a).collect();
        let constant = mine.iter().all(|p| p.2 == mine[0].2);
        let intact = mine.iter().all(|p| p.3);
        ok &= constant && intact;
        detail.push(format!(
            "{name} peaks {:?}{}",
            mine.iter().map(|p| p.2).collect::<Vec<_>>(),
            if intact { "" } else { " inputs modified" }
        ));
    }
    ensure(ok, detail.join("; "))
}

// ---------------------------------------------------------------------------
// 4. space certification

fn peak_of(p: &dyn Product<Zm64>, n: usize) -> Result<usize, String> {
    let r = Zm64::new(97).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let kind = p.kind();
    let flen = if kind == Kind::Mp { 2 * n - 1 } else { n };
    let (f, g) = (draw(&r, &mut rng, flen), draw(&r, &mut rng, n));
    let mut out = draw(&r, &mut rng, kind.out_len(n));
    let s = Session::with_meter(r, WorkMeter::with_cap(p.space().workspace(n)));
    run_out_of_place(p, &s, view(&f), view(&g), &mut out);
    match s.meter().violation() {
        None => Ok(s.meter().peak()),
        Some(v) => Err(format!(
            "{} at n={n} used {v} > cap {}",
            p.name(),
            p.space().workspace(n)
        )),
    }
}

/// Adapter, its bases, and the base size used at problem size `n`.
type Adapter = (&'static str, Profile<Zm64>, Vec<Profile<Zm64>>, fn(usize) -> usize);

fn space_certification() -> Outcome {
    let sizes: Vec<usize> = (1..=40).chain([64, 100, 128, 255, 256, 512, 1000, 1024]).collect();
    let mut all: Vec<Profile<Zm64>> = profiles().into_iter().map(|p| p.1).collect();
    all.extend([
        naive(),
        derive_omp(naive()),
        derive_osp(naive()).0,
        derive_osp(naive()).1,
    ]);
    let mut runs = 0;
    for p in &all {
        for &n in &sizes {
            peak_of(p.as_ref(), n)?;
            runs += 1;
        }
    }

    // adapter, base, base size for problem size n
    let (lo, hi) = derive_osp(kara());
    let (lo_add, hi_add) = derive_fp_plus(kara());
    let mp: Profile<Zm64> = Arc::new(naive_mp_profile());
    let same = |n: usize| n;
    let halves = |n: usize| n.div_ceil(2);
    let adapters: Vec<Adapter> = vec![
        ("sphi reversed", sphi_via_splo(lo.clone()), vec![lo.clone()], |n| {
            n.max(2) - 1
        }),
        (
            "fp+hi reflected",
            fphi_via_fplo(lo_add.clone()),
            vec![lo_add.clone()],
            same,
        ),
        (
            "fp+lo reflected",
            fplo_via_fphi(hi_add.clone()),
            vec![hi_add.clone()],
            same,
        ),
        (
            "fp+lo from sp",
            fpplus_via_sp_profile(lo.clone(), hi.clone()),
            vec![lo.clone(), hi.clone()],
            same,
        ),
        (
            "splo from halves",
            sp_via_fpplus_profile(kara(), lo_add.clone(), hi_add.clone()),
            vec![kara(), lo_add.clone(), hi_add.clone()],
            halves,
        ),
        ("splo via mp", via_mp(Kind::SpLo, mp.clone()), vec![mp], same),
        ("fp from fp+lo", fp_from_fp_plus(lo_add.clone()), vec![lo_add], same),
    ];
    let mut worst = 0i64;
    for (name, adapter, bases, base_n) in &adapters {
        let declared = adapter.space();
        for &n in &sizes {
            let peak = peak_of(adapter.as_ref(), n)? as i64;
            let mut base_peak = 0;
            let mut base_space = declared;
            for b in bases {
                base_peak = base_peak.max(peak_of(b.as_ref(), base_n(n))?);
                base_space = base_space.min(b.space());
            }
            let overhead = declared.workspace(n) as i64 - base_space.workspace(n) as i64;
            let allowed = base_peak as i64 + overhead;
            if peak > allowed {
                return Err(format!(
                    "{name} at n={n}: peak {peak} > base {base_peak} + declared overhead"
                ));
            }
            worst = worst.max(peak - base_peak as i64);
        }
    }
    Ok(format!(
        "{runs} capped runs without violation; {} adapters within declared overhead (largest excess {worst})",
        adapters.len()
    ))
}

// ---------------------------------------------------------------------------
// 5, 6. time constants

fn total_ops(p: &dyn Product<Zm64>, n: usize) -> u64 {
    let r = Zm64::new(998_244_353).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let flen = if p.kind() == Kind::Mp { 2 * n - 1 } else { n };
    let (f, g) = (draw(&r, &mut rng, flen), draw(&r, &mut rng, n));
    let mut out = draw(&r, &mut rng, p.kind().out_len(n));
    let s = Session::new(r);
    run_out_of_place(p, &s, view(&f), view(&g), &mut out);
    s.ops().total()
}

fn fp_time_constant() -> Outcome {
    let n = 1 << 14;
    let r = Zm64::new(998_244_353).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (f, g) = (draw(&r, &mut rng, n), draw(&r, &mut rng, n));
    let ifp = InPlaceFp::new(kara());
    let s = Session::new(r);
    ifp_hi(&ifp, &s, view(&f), view(&g), &mut vec![r.zero(); 2 * n - 1]);
    let ratio = s.ops().total() as f64 / total_ops(kara().as_ref(), n) as f64;
    let target = to_f64(&analysis::predict_fp_ratio(kara().space()));
    ensure(
        ratio <= target * 1.10,
        format!("c = 2, ratio {ratio:.4} <= {target} x 1.10 at n = {n}"),
    )
}

fn sp_time_constant() -> Outcome {
    let n = 1 << 14;
    let (lo, hi) = derive_osp(kara());
    let c = lo.space();
    let isp: Profile<Zm64> = Arc::new(InPlaceSp::new(lo.clone(), hi));
    let ratio = total_ops(isp.as_ref(), n) as f64 / total_ops(lo.as_ref(), n) as f64;
    let target = to_f64(&analysis::predict_sp_ratio(c));
    ensure(
        ratio <= target * 1.10,
        format!("c' = {c}, ratio {ratio:.4} <= {target} x 1.10 at n = {n}"),
    )
}

// ---------------------------------------------------------------------------
// 7, 8. middle products

fn imp_ops(p: &InPlaceMp<Zm64>, n: usize, trace: bool) -> (OpCount, Vec<LevelRecord>) {
    let r = Zm64::new(998_244_353).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let (f, g) = (draw(&r, &mut rng, 2 * n - 1), draw(&r, &mut rng, n));
    let s = Session::new(r);
    if trace {
        s.enable_trace();
    }
    imp(p, &s, view(&f), view(&g), &mut vec![r.zero(); n]);
    (s.ops(), s.take_trace())
}

fn mp_power_regime() -> Outcome {
    let base = derive_omp(naive());
    let c = base.space();
    let (mu, nu) = mp_constants_exact(c, 2).map_err(|e| e.to_string())?;
    let lead = to_f64(&(mu.clone() + nu.clone()));
    if mu != integer(1) || nu != analysis::rational(1, 7) {
        return Err(format!("closed forms give mu = {mu}, nu = {nu}"));
    }
    let p = InPlaceMp::new(base.clone());
    let sizes: Vec<usize> = (6..=12).map(|e| 1 << e).collect();
    let mut detail = vec![format!("mu + nu = {}", mu + nu)];
    for (label, pick) in [("muls", 0), ("total", 1)] {
        let measure = |o: OpCount| if pick == 0 { o.muls } else { o.total() } as f64;
        let lambda = {
            let n = *sizes.last().unwrap();
            let r = Zm64::new(998_244_353).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let (f, g) = (draw(&r, &mut rng, 2 * n - 1), draw(&r, &mut rng, n));
            let s = Session::new(r);
            run_out_of_place(base.as_ref(), &s, view(&f), view(&g), &mut vec![r.zero(); n]);
            measure(s.ops()) / (n * n) as f64
        };
        let measured: Vec<f64> = sizes.iter().map(|&n| measure(imp_ops(&p, n, false).0)).collect();
        let n0 = sizes[0] as f64;
        let k = ((measured[0] - lead * lambda * n0 * n0) / n0).max(0.0);
        for (&n, &ops) in sizes.iter().zip(&measured) {
            let bound = lead * lambda * (n * n) as f64 + k * n as f64;
            if ops > bound {
                return Err(format!(
                    "{label}: n = {n} ops {ops} > bound {bound:.1} (lambda {lambda:.4}, K {k:.2})"
                ));
            }
        }
        let last = *sizes.last().unwrap() as f64;
        detail.push(format!(
            "{label}: lambda {lambda:.4}, K {k:.2}, ops/(lambda n^2) {:.4} at n = {last}",
            measured.last().unwrap() / (lambda * last * last)
        ));
    }
    Ok(detail.join("; "))
}

fn mp_self_consistency() -> Outcome {
    let mut detail = Vec::new();
    for (label, base) in [("naive", naive()), ("karatsuba", kara())] {
        let p = InPlaceMp::new(derive_omp(base));
        let rec = Recurrence::in_place(Kind::Mp, p.constant());
        for n in [7usize, 64, 100, 1000, 4096] {
            let (ops, trace) = imp_ops(&p, n, true);
            let terminal = *trace.last().ok_or("empty trace")?;
            let unrolled = rec.unroll(
                n as u64,
                |size| {
                    let l = trace.iter().find(|l| l.size as u64 == size && l.block > 0);
                    integer(l.map_or(u64::MAX, |l| l.ops.total()))
                },
                |_| integer(terminal.ops.total()),
            );
            if unrolled.total != integer(ops.total()) || unrolled.levels.len() + 1 != trace.len() {
                return Err(format!(
                    "{label} n = {n}: unrolled {} vs measured {}",
                    unrolled.total,
                    ops.total()
                ));
            }
        }
        detail.push(format!("{label}: unroll reproduces totals exactly"));
        let (alpha, beta) = (rec.alpha().clone(), rec.beta().clone());
        for n in [1000u64, 10_000, 1 << 14] {
            let k = log_depth(&alpha, n);
            let lambda = 1.0 / (p.constant() as f64 + 2.0);
            let report = check_sum_lemmas(&rec, n, k, |x| x * x, lambda, 1.0);
            if !report.all_hold() {
                return Err(format!("{label} n = {n}:\n{report}"));
            }
        }
        detail.push(format!("alpha = {alpha}, beta = {beta}: sum lemmas hold"));
    }
    Ok(detail.join("; "))
}

// ---------------------------------------------------------------------------
// 9. negative controls

fn negative_controls() -> Outcome {
    const SEEDS: u64 = 100;
    let mut detail = Vec::new();
    let mut ok = true;
    for m in RangeMutation::ALL {
        let detected = (1..=SEEDS)
            .into_par_iter()
            .filter(|&seed| {
                let cli = Cli::parse_from(["polymul", "verify", "--seed", &seed.to_string()]);
                let (command, options) = cli.command.split();
                let cfg = RunConfig::new(command, options).expect("default flags");
                let (algo, p) = mutated(m, cfg.base);
                verify_profiles(&cfg, &[(algo.name().to_string(), p)]).status != 0
            })
            .count();
        let rate = detected as f64 / SEEDS as f64;
        ok &= rate >= 0.99;
        detail.push(format!("{m:?} {detected}/{SEEDS}"));
    }
    ensure(ok, detail.join(", "))
}

// ---------------------------------------------------------------------------
// 10. determinism

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_polymul");
    let runs: [&[&str]; 6] = [
        &["verify"],
        &["bench", "--base", "naive", "--trials", "2"],
        &["bench", "--step", "7", "--max-n", "50"],
        &["space", "--max-n", "256"],
        &["predict", "--max-n", "512"],
        &["verify", "--algo", "imp", "--base", "naive", "--seed", "9"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "4"] {
            let out = Proc::new(bin)
                .args(args)
                .env("POLYMUL_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("{args:?} exited with {}", out.status));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    Ok(format!("{} commands, three runs each, byte-identical", runs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("algebraic identities", algebraic_identities),
        ("in-place certificate", certified_peaks),
        ("space certification", space_certification),
        ("fp time constant", fp_time_constant),
        ("sp time constant", sp_time_constant),
        ("mp power regime", mp_power_regime),
        ("mp recurrence self-consistency", mp_self_consistency),
        ("negative controls", negative_controls),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("acceptance {} {name}: PASS ({d}) [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("acceptance {} {name}: FAIL ({d}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance summary: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
