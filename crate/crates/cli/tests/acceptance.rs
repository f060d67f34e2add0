//! End-to-end acceptance criteria A1–A9, one line per criterion.
//!
//! Criteria listed in `EXPECTED_RED` are known not to hold for this model as
//! stated; they are still evaluated in full and reported as failing. The run
//! succeeds only when the failing set is exactly `EXPECTED_RED`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clusterchain::entanglement::{block_entropy_from, cmi_from, make_partition_with, region_entropy, Remainder};
use clusterchain::{
    binary_entropy, closed_form_entropy_oddodd, cmi, correlation_matrix, entropy_bounds_check, ground_state,
    low_spectrum, make_partition, reduced_gamma, EntropyResult, ModelParamsF64,
};
use clusterchain_cli::tasks::critical_scaling;
use clusterchain_cli::Grid;

const EXPECTED_RED: [&str; 2] = ["A2", "A6"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(n: usize, m: usize, h: f64) -> ModelParamsF64 {
    ModelParamsF64::new(n, m, 1.0, h).expect("valid parameters")
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn verdict(failures: Vec<String>, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join("; ")))
    }
}

fn profile(n: usize, m: usize, h: f64, ls: impl Iterator<Item = usize>) -> Vec<EntropyResult> {
    let p = params(n, m, h);
    let corr = correlation_matrix(&p, &ground_state(&p)).expect("correlations");
    ls.map(|l| block_entropy_from(&corr, &p, l, 0).expect("block entropy"))
        .collect()
}

fn a1() -> Outcome {
    let mut failures = Vec::new();
    let mut times = Vec::new();
    for (n, m) in [(1001, 4), (1000, 3), (1000, 4)] {
        let t = Instant::now();
        let prof = profile(n, m, 0.0, m..=n / 2);
        let secs = t.elapsed().as_secs_f64();
        times.push(format!("N={n} m={m} {secs:.1}s"));
        let worst = prof.iter().map(|r| (r.value - m as f64).abs()).fold(0.0, f64::max);
        check(&mut failures, worst < 1e-9, || {
            format!("N={n} m={m}: max |S_l - m| = {worst:e}")
        });
        check(&mut failures, secs < 120.0, || {
            format!("N={n} m={m}: {secs:.0}s over budget")
        });
    }
    verdict(failures, times.join(", "))
}

fn a2() -> Outcome {
    let (n, m) = (1001, 3);
    let prof = profile(n, m, 0.0, m..=500);
    let mut failures = Vec::new();
    let worst = prof
        .iter()
        .map(|r| {
            let l = r.region.len();
            (r.value - closed_form_entropy_oddodd::<f64>(n, l, m).expect("closed form").entropy).abs()
        })
        .fold(0.0, f64::max);
    check(&mut failures, worst < 1e-9, || format!("closed form off by {worst:e}"));

    let s3 = prof[0].value;
    let want = (m - 1) as f64 + binary_entropy(0.5 + 3.0 / n as f64);
    check(&mut failures, (s3 - want).abs() < 1e-9, || {
        format!("S_3 = {s3} vs {want}")
    });

    let s500 = prof.last().expect("l = 500").value;
    check(&mut failures, (s500 - (m + 1) as f64).abs() < 0.01, || {
        format!("S_500 = {s500}")
    });

    let bounds = entropy_bounds_check(&prof, m);
    let bad: Vec<_> = bounds.failures().collect();
    check(&mut failures, bad.is_empty(), || {
        format!(
            "bounds [m, m+1] violated at {} l values, first l={} S={:.9}",
            bad.len(),
            bad[0].l,
            bad[0].entropy
        )
    });
    verdict(failures, format!("S_3={s3:.9} S_500={s500:.6}"))
}

fn a3() -> Outcome {
    let (n, m, l) = (1001, 3, 400);
    let nu = &profile(n, m, 0.0, std::iter::once(l))[0].nu_spectrum;
    let cf = closed_form_entropy_oddodd::<f64>(n, l, m).expect("closed form");
    let zeros = nu.iter().filter(|v| v.abs() < 1e-8).count();
    let units = nu.iter().filter(|v| (*v - 1.0).abs() < 1e-8).count();
    let rest: Vec<f64> = nu
        .iter()
        .copied()
        .filter(|v| v.abs() >= 1e-8 && (v - 1.0).abs() >= 1e-8)
        .collect();
    let mut failures = Vec::new();
    check(&mut failures, 2 * zeros == 2 * (m - 1), || {
        format!("{} zero eigenvalues", 2 * zeros)
    });
    check(&mut failures, 2 * units == 2 * (l - m - 1), || {
        format!("{} unit eigenvalues", 2 * units)
    });
    let mut want = [cf.v1, cf.v2];
    want.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let matched = rest.len() == 2 && rest.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-8);
    check(&mut failures, matched, || {
        format!("remaining ν {rest:?} vs v₁, v₂ = {want:?}")
    });
    verdict(
        failures,
        format!(
            "zeros={} units={} v=({:.10}, {:.10})",
            2 * zeros,
            2 * units,
            cf.v1,
            cf.v2
        ),
    )
}

fn cmis(n: usize, m: usize, h: f64) -> (f64, f64) {
    let p = params(n, m, h);
    let gs = ground_state(&p);
    let t = cmi(&p, &gs, &make_partition(n, 3).expect("partition")).expect("cmi");
    let q = cmi(&p, &gs, &make_partition(n, 4).expect("partition")).expect("cmi");
    (t, q)
}

fn a4() -> Outcome {
    let sizes = [25, 49, 101, 201];
    let mut failures = Vec::new();
    let odd: Vec<(f64, f64)> = sizes.iter().map(|&n| cmis(n, 3, 0.0)).collect();
    let even: Vec<(f64, f64)> = sizes.iter().map(|&n| cmis(n, 4, 0.0)).collect();
    for (&n, &(_, q)) in sizes.iter().zip(&odd) {
        check(&mut failures, q > 0.05, || format!("m=3 N={n}: S_q = {q}"));
    }
    check(&mut failures, odd.windows(2).all(|w| w[1].0 > w[0].0), || {
        format!(
            "m=3 S_t not increasing: {:?}",
            odd.iter().map(|x| x.0).collect::<Vec<_>>()
        )
    });
    for (&n, &(_, q)) in sizes.iter().zip(&even) {
        check(&mut failures, q.abs() < 1e-8, || format!("m=4 N={n}: S_q = {q:e}"));
    }
    let spread = even.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max)
        - even.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
    check(&mut failures, spread < 1e-6, || format!("m=4 S_t spread {spread:e}"));
    let t3: Vec<String> = odd.iter().map(|x| format!("{:.3}", x.0)).collect();
    verdict(
        failures,
        format!("m=3 S_t=[{}], m=4 S_t={:.6}", t3.join(", "), even[0].0),
    )
}

fn a5() -> Outcome {
    // finite-size tails at h = 1.8 stay above 1e-8 below N ≈ 300
    let sizes = [301, 401, 501];
    let mut failures = Vec::new();
    for &n in &sizes {
        let (_, q3) = cmis(n, 3, 0.5);
        let (_, q4) = cmis(n, 4, 0.5);
        check(&mut failures, q3 > 0.02, || format!("h=0.5 m=3 N={n}: S_q = {q3}"));
        check(&mut failures, q4.abs() < 1e-8, || {
            format!("h=0.5 m=4 N={n}: S_q = {q4:e}")
        });
        for m in [3, 4] {
            let (_, q) = cmis(n, m, 1.8);
            check(&mut failures, q.abs() < 1e-8, || {
                format!("h=1.8 m={m} N={n}: S_q = {q:e}")
            });
        }
    }
    let n = sizes[0];
    let mut tails = Vec::new();
    for m in [3, 4] {
        let t: Vec<f64> = [1.8, 3.0, 5.0].iter().map(|&h| cmis(n, m, h).0).collect();
        check(&mut failures, t.windows(2).all(|w| w[1] < w[0]), || {
            format!("m={m} S_t not decreasing: {t:?}")
        });
        tails.push(format!("m={m} S_t(h=1.8,3,5)=[{:.3}, {:.3}, {:.3}]", t[0], t[1], t[2]));
    }
    verdict(failures, format!("N={sizes:?}, {}", tails.join(", ")))
}

fn first_gap(n: usize, m: usize, h: f64) -> f64 {
    let e = low_spectrum(&params(n, m, h), 2).expect("spectrum");
    e[1] - e[0]
}

fn a6() -> Outcome {
    let mut failures = Vec::new();
    let levels = low_spectrum(&params(25, 3, 0.0), 60).expect("spectrum");
    let zeros = levels.iter().filter(|e| (*e - levels[0]).abs() < 1e-9).count();
    check(&mut failures, zeros == 50, || {
        format!("N=25 m=3 h=0: {zeros} ground states")
    });
    let sizes = [25, 51, 101];
    for h in [0.3, 0.5, 0.8] {
        let g3: Vec<f64> = sizes.iter().map(|&n| first_gap(n, 3, h)).collect();
        check(&mut failures, g3.windows(2).all(|w| w[1] < w[0]), || {
            format!("h={h} m=3 gap not shrinking over N={sizes:?}: {g3:?}")
        });
        for &n in &sizes {
            let g = first_gap(n, 4, h);
            check(&mut failures, g >= 0.05, || format!("h={h} m=4 N={n}: gap {g}"));
        }
    }
    for m in [3, 4] {
        for &n in &sizes {
            let g = first_gap(n, m, 1.8);
            check(&mut failures, g > 0.05, || format!("h=1.8 m={m} N={n}: gap {g}"));
        }
    }
    verdict(failures, format!("N=25 zero-field ground states: {zeros}"))
}

fn a7() -> Outcome {
    let t = Instant::now();
    let grid = Grid {
        n: (201..=2001).step_by(100).collect(),
        m: vec![2, 3, 4, 5],
        h: vec![1.0],
        j: 1.0,
    };
    let (_, fit) = critical_scaling(&grid).map_err(|e| e.to_string())?;
    let windows = [
        (2, 0.3327, 0.02),
        (3, 0.4966, 0.02),
        (4, 0.6667, 0.03),
        (5, 0.8389, 0.03),
    ];
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (f, &(m, want, tol)) in fit["fits"].as_array().expect("fits").iter().zip(&windows) {
        assert_eq!(f["m"].as_u64(), Some(m as u64));
        let slope = f["slope"].as_f64().expect("slope");
        let c = f["central_charge"].as_f64().expect("central charge");
        let target = m as f64 / 2.0;
        check(&mut failures, (slope - want).abs() <= tol, || {
            format!("m={m}: slope {slope:.4} vs {want} ± {tol}")
        });
        check(&mut failures, ((c - target) / target).abs() <= 0.07, || {
            format!("m={m}: c = {c:.4}")
        });
        detail.push(format!("m={m} slope={slope:.4} c={c:.3}"));
    }
    let secs = t.elapsed().as_secs_f64();
    check(&mut failures, secs < 1800.0, || format!("{secs:.0}s over budget"));
    detail.push(format!("{secs:.1}s"));
    verdict(failures, detail.join(", "))
}

fn a8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("verify.csv");
    let run = Command::new(env!("CARGO_BIN_EXE_clusterchain"))
        .args(["verify", "--n", "6:12", "--m", "1:4", "--h", "0,0.5,1.0,1.5", "--out"])
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&run.stdout);
    let summary = stdout.lines().next().unwrap_or("").to_string();
    let csv = std::fs::read_to_string(&out).unwrap_or_default();
    let rows = csv.lines().skip(1).count();
    if run.status.success() && rows > 0 && csv.lines().skip(1).all(|l| l.ends_with(",pass")) {
        Ok(format!("{summary} ({rows} rows)"))
    } else {
        Err(format!(
            "{:?}: {}{}",
            run.status.code(),
            stdout,
            String::from_utf8_lossy(&run.stderr)
        ))
    }
}

fn a9() -> Outcome {
    const POINTS: usize = 64;
    let clip = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for _ in 0..POINTS {
        let n = rng.gen_range(6..=60);
        let m = rng.gen_range(1..n.min(9));
        let h = match rng.gen_range(0..4) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0.0..2.5),
        };
        let at = format!("N={n} m={m} h={h:.4}");
        let p = params(n, m, h);
        let corr = correlation_matrix(&p, &ground_state(&p)).expect("correlations");
        let entropy = |sites: &[usize]| region_entropy(&corr, sites, clip).expect("entropy").value;

        check(&mut failures, corr.antisymmetry_defect() < 1e-12, || {
            format!("{at}: Γ not antisymmetric")
        });

        let mask: u64 = rng.gen();
        let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        if !a.is_empty() && !b.is_empty() {
            let mut s: Vec<f64> = reduced_gamma(&corr, &a)
                .expect("reduced")
                .singular_values()
                .iter()
                .copied()
                .collect();
            s.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let paired = s[0] <= 1.0 + 1e-10 && s.chunks(2).all(|c| (c[0] - c[1]).abs() < 1e-9);
            check(&mut failures, paired, || format!("{at}: ν spectrum not paired"));
            let (sa, sb) = (entropy(&a), entropy(&b));
            check(&mut failures, (sa - sb).abs() < 1e-9, || {
                format!("{at}: S_A={sa} S_B={sb}")
            });
        }

        let start = rng.gen_range(0..n);
        let (la, lb) = (rng.gen_range(1..=n / 3), rng.gen_range(1..=n / 3));
        let lc = rng.gen_range(1..=n - la - lb);
        let arc = |from: usize, len: usize| -> Vec<usize> { (from..from + len).map(|k| (start + k) % n).collect() };
        let ssa = entropy(&arc(0, la + lb)) + entropy(&arc(la, lb + lc))
            - entropy(&arc(la, lb))
            - entropy(&arc(0, la + lb + lc));
        check(&mut failures, ssa >= -1e-10, || {
            format!("{at}: SSA violated by {ssa:e}")
        });

        let l = rng.gen_range(m..n);
        let off = rng.gen_range(1..n);
        let s0 = block_entropy_from(&corr, &p, l, 0).expect("block").value;
        let s1 = block_entropy_from(&corr, &p, l, off).expect("block").value;
        check(&mut failures, (s0 - s1).abs() < 1e-10, || {
            format!("{at}: S_l depends on offset")
        });

        for parts in [3, 4] {
            let back = make_partition_with(n, parts, Remainder::Back).expect("partition");
            let front = make_partition_with(n, parts, Remainder::Front).expect("partition");
            let shift = rng.gen_range(1..n);
            let qb = cmi_from(&corr, &back, clip).expect("cmi");
            let qr = cmi_from(&corr, &back.rotated(shift), clip).expect("cmi");
            let qf = cmi_from(&corr, &front, clip).expect("cmi");
            check(&mut failures, qb >= -1e-10 && (qb - qr).abs() < 1e-10, || {
                format!("{at} parts={parts}: rotated CMI {qb} vs {qr}")
            });
            if h == 0.0 && parts == 4 && n >= 12 && m < n / 4 {
                let long_range = n % 2 == 1 && m % 2 == 1;
                let same = if long_range {
                    qb > 0.05 && qf > 0.05
                } else {
                    qb.abs() < 1e-8 && qf.abs() < 1e-8
                };
                check(&mut failures, same, || {
                    format!("{at}: remainder placement changes the dichotomy ({qb}, {qf})")
                });
            }
        }
    }
    verdict(failures, format!("{POINTS} random points"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let expected: BTreeSet<&str> = EXPECTED_RED.into_iter().collect();
    let mut red = BTreeSet::new();
    let mut ran = BTreeSet::new();
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        ran.insert(name);
        match f() {
            Ok(detail) => {
                let note = if expected.contains(name) {
                    " (expected to fail)"
                } else {
                    ""
                };
                println!("{name} PASS{note}: {detail}");
            }
            Err(detail) => {
                red.insert(name);
                let note = if expected.contains(name) { " (known)" } else { "" };
                println!("{name} FAIL{note}: {detail}");
            }
        }
    }
    let want: BTreeSet<&str> = expected.intersection(&ran).copied().collect();
    if red == want {
        println!(
            "acceptance: {} criteria run, failing set {:?} as expected",
            ran.len(),
            red
        );
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing set {red:?}, expected {want:?}");
        ExitCode::FAILURE
    }
}
